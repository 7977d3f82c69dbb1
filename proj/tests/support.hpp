#pragma once

// Shared test helpers: fixture loading, brute-force reference computations
// kept independent of the solver paths they check, and seeded random
// instance generation.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tempoflow/network.hpp"
#include "tempoflow/static_flow.hpp"

namespace testsupport {

using tempoflow::Capacity;
using tempoflow::Network;
using tempoflow::Orientation;
using tempoflow::Rational;

inline std::string fixture_path(const std::string& name) {
  return std::string(TEMPOFLOW_FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::shared_ptr<const Network> load_network(const std::string& name) {
  return std::make_shared<Network>(Network::parse(read_fixture(name)));
}

inline unsigned test_seed(unsigned fallback) {
  if (const char* env = std::getenv("TEMPOFLOW_SEED")) return std::stoul(env);
  return fallback;
}

// Minimum residual cost over *simple* paths from the super node, by
// exhaustive DFS. Reference for the label-correcting engine.
inline std::optional<Rational> brute_force_distance(const tempoflow::StaticFlow& x,
                                                    int target) {
  const tempoflow::ExtendedNetwork& net = x.host();
  std::optional<Rational> best;
  std::vector<char> used(net.node_count(), 0);
  std::function<void(int, Rational)> dfs = [&](int node, Rational cost) {
    if (node == target && (!best || cost < *best)) best = cost;
    used[node] = 1;
    for (int s = 0; s < net.slot_count(); ++s) {
      for (int b = 0; b < 2; ++b) {
        Orientation o{s, b == 1};
        if (net.from(o) != node || used[net.to(o)]) continue;
        Capacity res = residual_capacity(x, o);
        if (res.is_finite() && res.finite().is_zero()) continue;
        dfs(net.to(o), cost + net.transit(o));
      }
    }
    used[node] = 0;
  };
  dfs(net.super_node(), Rational(0));
  return best;
}

// Costs of all simple residual cycles through the super node, exhaustively.
inline std::vector<Rational> brute_force_super_cycle_costs(const tempoflow::StaticFlow& x) {
  const tempoflow::ExtendedNetwork& net = x.host();
  std::vector<Rational> costs;
  std::vector<char> used(net.node_count(), 0);
  std::function<void(int, Rational)> dfs = [&](int node, Rational cost) {
    used[node] = 1;
    for (int s = 0; s < net.slot_count(); ++s) {
      for (int b = 0; b < 2; ++b) {
        Orientation o{s, b == 1};
        if (net.from(o) != node) continue;
        Capacity res = residual_capacity(x, o);
        if (res.is_finite() && res.finite().is_zero()) continue;
        int next = net.to(o);
        if (next == net.super_node()) {
          costs.push_back(cost + net.transit(o));
        } else if (!used[next]) {
          dfs(next, cost + net.transit(o));
        }
      }
    }
    used[node] = 0;
  };
  dfs(net.super_node(), Rational(0));
  return costs;
}

// Orientation from `tail` to `head` by node name, "@" naming the super node;
// picks the stored arc forward or backward as needed.
inline Orientation orient(const tempoflow::ExtendedNetwork& ext, const std::string& tail,
                          const std::string& head) {
  auto resolve = [&ext](const std::string& name) {
    return name == "@" ? ext.super_node() : ext.base().node_index(name);
  };
  int t = resolve(tail), h = resolve(head);
  for (int s = 0; s < ext.slot_count(); ++s) {
    if (ext.tail(s) == t && ext.head(s) == h) return Orientation{s, false};
    if (ext.tail(s) == h && ext.head(s) == t) return Orientation{s, true};
  }
  throw std::logic_error("no arc between " + tail + " and " + head);
}

// Chain flow along the closed node walk `names` (starting at "@").
inline tempoflow::ChainFlow make_chain(const tempoflow::ExtendedNetwork& ext,
                                       const Rational& value,
                                       std::vector<std::string> names) {
  tempoflow::ChainFlow chain;
  chain.value = value;
  chain.standard = false;
  names.push_back(names.front());
  for (std::size_t i = 0; i + 1 < names.size(); ++i)
    chain.cycle.push_back(orient(ext, names[i], names[i + 1]));
  return chain;
}

// Random integral instance: at most `max_nodes` nodes, capacities and transit
// times in {1..4}, at least one source and sink, no parallel or opposite
// arcs, sources without incoming and sinks without outgoing arcs.
inline std::shared_ptr<const Network> random_network(std::mt19937& rng, int max_nodes = 8,
                                                     int max_terminals = 4) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  int n = pick(2, max_nodes);
  int sources = pick(1, std::min(max_terminals - 1, std::max(1, n - 1)));
  int sinks = pick(1, std::min(max_terminals - sources, n - sources));
  tempoflow::NetworkBuilder builder;
  std::vector<std::string> names;
  std::vector<int> kind;  // 1 source, 2 sink, 0 inner
  for (int i = 0; i < n; ++i) {
    std::string name;
    if (i < sources) {
      name = "s" + std::to_string(i);
      builder.source(name);
      kind.push_back(1);
    } else if (i < sources + sinks) {
      name = "t" + std::to_string(i - sources);
      builder.sink(name);
      kind.push_back(2);
    } else {
      name = "v" + std::to_string(i - sources - sinks);
      builder.node(name);
      kind.push_back(0);
    }
    names.push_back(name);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int choice = pick(0, 2);  // none / a->b / b->a
      if (choice == 0) continue;
      int tail = choice == 1 ? a : b;
      int head = choice == 1 ? b : a;
      if (kind[tail] == 2 || kind[head] == 1) {
        if (kind[head] == 2 || kind[tail] == 1)
          continue;  // no orientation is admissible
        std::swap(tail, head);
      }
      if (kind[tail] == 2 || kind[head] == 1) continue;
      builder.arc(names[tail], names[head], Capacity(Rational(pick(1, 4))),
                  Rational(pick(1, 4)));
    }
  }
  return std::make_shared<Network>(builder.build());
}

}  // namespace testsupport
