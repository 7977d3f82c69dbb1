#include "tempoflow/oracle.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace tempoflow {

namespace {

long long integral_or_throw(const Rational& r, const std::string& what) {
  if (!r.is_integer()) throw std::invalid_argument(what + " is not integral");
  return static_cast<long long>(r.numerator());
}

}  // namespace

TimeExpandedNetwork::TimeExpandedNetwork(const Network& net, long long horizon)
    : net_(net), horizon_(horizon) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  copies_ = static_cast<int>(net.node_count() * horizon);
  for (const Arc& a : net.arcs()) {
    long long transit = integral_or_throw(a.transit, "transit time");
    for (long long layer = 1; layer + transit <= horizon; ++layer)
      arcs_.push_back({copy_index(a.tail, layer), copy_index(a.head, layer + transit),
                       a.capacity});
  }
}

int TimeExpandedNetwork::copy_index(int node, long long layer) const {
  return static_cast<int>((layer - 1) * net_.node_count() + node);
}

Rational TimeExpandedNetwork::max_flow_between(unsigned x_mask) const {
  // Edmonds-Karp on the expansion plus a super source/sink pair.
  int source = copies_;
  int sink = copies_ + 1;
  struct Edge {
    int to;
    Capacity cap;
    Rational flow;
    int twin;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj(copies_ + 2);
  auto add_edge = [&](int u, int v, Capacity cap) {
    adj[u].push_back(static_cast<int>(edges.size()));
    edges.push_back({v, std::move(cap), Rational(0), static_cast<int>(edges.size()) + 1});
    adj[v].push_back(static_cast<int>(edges.size()));
    edges.push_back({u, Capacity(Rational(0)), Rational(0), static_cast<int>(edges.size()) - 1});
  };
  for (const CopyArc& a : arcs_) add_edge(a.tail, a.head, a.capacity);
  for (int i = 0; i < net_.terminal_count(); ++i) {
    int r = net_.terminals()[i];
    bool in_x = (x_mask >> i) & 1u;
    for (long long layer = 1; layer <= horizon_; ++layer) {
      if (net_.is_source(r) && in_x) add_edge(source, copy_index(r, layer), Capacity::infinite());
      if (net_.is_sink(r) && !in_x) add_edge(copy_index(r, layer), sink, Capacity::infinite());
    }
  }

  Rational total(0);
  while (true) {
    std::vector<int> via(copies_ + 2, -1);
    std::queue<int> queue;
    queue.push(source);
    via[source] = -2;
    while (!queue.empty() && via[sink] == -1) {
      int u = queue.front();
      queue.pop();
      for (int e : adj[u]) {
        const Edge& edge = edges[e];
        if (via[edge.to] != -1) continue;
        Capacity residual = edge.cap - edge.flow;
        if (residual.is_finite() && residual.finite().is_zero()) continue;
        via[edge.to] = e;
        queue.push(edge.to);
      }
    }
    if (via[sink] == -1) break;
    Capacity bottleneck = Capacity::infinite();
    for (int v = sink; v != source; v = edges[edges[via[v]].twin].to)
      bottleneck = min(bottleneck, edges[via[v]].cap - edges[via[v]].flow);
    if (bottleneck.is_infinite())
      throw std::logic_error("unbounded flow in time expansion");
    for (int v = sink; v != source; v = edges[edges[via[v]].twin].to) {
      edges[via[v]].flow += bottleneck.finite();
      edges[edges[via[v]].twin].flow -= bottleneck.finite();
    }
    total += bottleneck.finite();
  }
  return total;
}

TimeExpandedNetwork time_expand(const Network& net, long long horizon) {
  return TimeExpandedNetwork(net, horizon);
}

Rational oracle_o_value(const Network& net, long long horizon, unsigned x_mask) {
  return TimeExpandedNetwork(net, horizon).max_flow_between(x_mask);
}

std::optional<std::pair<unsigned, Rational>> exhaustive_violating_subset(
    const std::function<Rational(unsigned)>& o, const std::function<Rational(unsigned)>& b_of,
    int k) {
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Rational gap = b_of(mask) - o(mask);
    if (gap.sign() > 0) return std::make_pair(mask, gap);
  }
  return std::nullopt;
}

}  // namespace tempoflow
