#include "tempoflow/static_flow.hpp"

#include <algorithm>

namespace tempoflow {

StaticFlow::StaticFlow(std::shared_ptr<const ExtendedNetwork> host)
    : host_(std::move(host)), value_(host_->slot_count(), Rational(0)) {}

void StaticFlow::add(const Orientation& o, const Rational& amount) {
  if (o.backward)
    value_[o.slot] -= amount;
  else
    value_[o.slot] += amount;
}

Rational StaticFlow::cost() const {
  Rational c(0);
  for (int s = 0; s < host_->slot_count(); ++s) c += host_->transit(s) * value_[s];
  return c;
}

bool StaticFlow::is_zero() const {
  return std::all_of(value_.begin(), value_.end(),
                     [](const Rational& v) { return v.is_zero(); });
}

Rational StaticFlow::divergence(int node) const {
  Rational d(0);
  for (int s = 0; s < host_->slot_count(); ++s) {
    if (host_->tail(s) == node) d += value_[s];
    if (host_->head(s) == node) d -= value_[s];
  }
  return d;
}

bool StaticFlow::is_feasible() const {
  for (int s = 0; s < host_->slot_count(); ++s) {
    if (!host_->slot_active(s)) {
      if (!value_[s].is_zero()) return false;
      continue;
    }
    if (value_[s].sign() < 0) return false;  // opposite orientation over capacity 0
    if (host_->capacity(s).is_finite() && value_[s] > host_->capacity(s).finite())
      return false;
  }
  return true;
}

StaticFlow StaticFlow::rehosted(std::shared_ptr<const ExtendedNetwork> host) const {
  if (host->slot_count() != host_->slot_count() || &host->base() != &host_->base())
    throw std::logic_error("flow rehosted onto a different base network");
  StaticFlow out(std::move(host));
  out.value_ = value_;
  return out;
}

Capacity residual_capacity(const StaticFlow& x, const Orientation& o) {
  const ExtendedNetwork& net = x.host();
  if (!net.slot_active(o.slot)) return Capacity(Rational(0));
  return net.capacity(o) - x.value(o);
}

Rational ChainFlow::length(const ExtendedNetwork& host) const {
  Rational len(0);
  for (const Orientation& o : cycle) len += host.transit(o);
  return len;
}

bool ChainFlow::through_super(const ExtendedNetwork& host) const {
  for (const Orientation& o : cycle)
    if (host.from(o) == host.super_node()) return true;
  return false;
}

Rational ChainDecomposition::cost() const {
  Rational c(0);
  for (const ChainFlow& g : chains) c += g.cost(*host);
  return c;
}

StaticFlow ChainDecomposition::sum() const {
  StaticFlow x(host);
  for (const ChainFlow& g : chains)
    for (const Orientation& o : g.cycle) x.add(o, g.value);
  return x;
}

namespace {

// Relaxation sweep per round, slot ascending, forward before backward. This
// fixed order makes every equal-cost tie resolve the same way.
struct Relaxer {
  const StaticFlow& x;
  const ExtendedNetwork& net;
  bool skip_into_super;
  std::vector<std::optional<Rational>>& dist;
  std::vector<Orientation>& pred;

  /// One full sweep; returns the last improved node, or -1.
  int relax_all() {
    int improved = -1;
    for (int s = 0; s < net.slot_count(); ++s) {
      for (int b = 0; b < 2; ++b) {
        Orientation o{s, b == 1};
        if (skip_into_super && net.to(o) == net.super_node()) continue;
        Capacity res = residual_capacity(x, o);
        if (res.is_finite() && res.finite().is_zero()) continue;
        int u = net.from(o), v = net.to(o);
        if (!dist[u]) continue;
        Rational cand = *dist[u] + net.transit(o);
        if (!dist[v] || cand < *dist[v]) {
          dist[v] = cand;
          pred[v] = o;
          improved = v;
        }
      }
    }
    return improved;
  }
};

std::vector<Orientation> extract_cycle(const ExtendedNetwork& net,
                                       const std::vector<Orientation>& pred, int start) {
  // Walk predecessors n+1 steps to land inside the cycle, then collect it.
  int v = start;
  for (int i = 0; i <= net.node_count(); ++i) v = net.from(pred[v]);
  std::vector<Orientation> cycle;
  int u = v;
  do {
    cycle.push_back(pred[u]);
    u = net.from(pred[u]);
  } while (u != v);
  std::reverse(cycle.begin(), cycle.end());
  // Rotate cycles through the super node to start there.
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (net.from(cycle[i]) == net.super_node()) {
      std::rotate(cycle.begin(), cycle.begin() + static_cast<long>(i), cycle.end());
      break;
    }
  return cycle;
}

}  // namespace

ShortestPaths shortest_walk_from_super(const StaticFlow& x, bool skip_into_super) {
  const ExtendedNetwork& net = x.host();
  ShortestPaths out;
  out.dist.assign(net.node_count(), std::nullopt);
  out.pred.assign(net.node_count(), Orientation{});
  out.dist[net.super_node()] = Rational(0);
  Relaxer relaxer{x, net, skip_into_super, out.dist, out.pred};
  int improved = 0;
  for (int round = 0; round < net.node_count() && improved >= 0; ++round)
    improved = relaxer.relax_all();
  if (improved >= 0 && (improved = relaxer.relax_all()) >= 0) {
    // Still improving after n rounds: walk predecessors into the cycle.
    out.negative_cycle = extract_cycle(net, out.pred, improved);
  }
  return out;
}

bool has_negative_residual_cycle(const StaticFlow& x) {
  const ExtendedNetwork& net = x.host();
  // All labels start at 0, so cycles anywhere are detected.
  std::vector<std::optional<Rational>> dist(net.node_count(), Rational(0));
  std::vector<Orientation> pred(net.node_count());
  Relaxer relaxer{x, net, false, dist, pred};
  int improved = 0;
  for (int round = 0; round < net.node_count() && improved >= 0; ++round)
    improved = relaxer.relax_all();
  return improved >= 0 && relaxer.relax_all() >= 0;
}

namespace {

struct CyclePick {
  std::vector<Orientation> cycle;
  Rational cost;
  Capacity bottleneck;
};

// Cheapest residual cycle through the super node: distances with the
// super-entering orientations held back, closed by the best such orientation.
std::optional<CyclePick> cheapest_super_cycle(const StaticFlow& x) {
  const ExtendedNetwork& net = x.host();
  ShortestPaths sp = shortest_walk_from_super(x, /*skip_into_super=*/true);
  if (sp.has_negative_cycle())
    throw std::logic_error("negative residual cycle avoiding the super node");
  std::optional<CyclePick> best;
  for (int s = 0; s < net.slot_count(); ++s) {
    for (int b = 0; b < 2; ++b) {
      Orientation o{s, b == 1};
      if (net.to(o) != net.super_node()) continue;
      Capacity res = residual_capacity(x, o);
      if (res.is_finite() && res.finite().is_zero()) continue;
      int w = net.from(o);
      if (!sp.dist[w]) continue;
      Rational cost = *sp.dist[w] + net.transit(o);
      if (best && cost >= best->cost) continue;
      CyclePick pick;
      pick.cost = cost;
      pick.bottleneck = res;
      int v = w;
      while (v != net.super_node()) {
        pick.cycle.push_back(sp.pred[v]);
        pick.bottleneck = min(pick.bottleneck, residual_capacity(x, sp.pred[v]));
        v = net.from(sp.pred[v]);
      }
      std::reverse(pick.cycle.begin(), pick.cycle.end());
      pick.cycle.push_back(o);
      best = std::move(pick);
    }
  }
  return best;
}

void augment(StaticFlow& x, const std::vector<Orientation>& walk, const Rational& amount) {
  for (const Orientation& o : walk) x.add(o, amount);
}

// Peels flow-aligned cycles out of `remaining`. Walks start at `start` and
// follow the smallest-slot orientation carrying positive aligned flow; a
// revisited node closes a cycle.
class Peeler {
 public:
  Peeler(const ExtendedNetwork& net, std::vector<Rational> remaining)
      : net_(net), remaining_(std::move(remaining)) {}

  Rational aligned(const Orientation& o) const {
    return o.backward ? -remaining_[o.slot] : remaining_[o.slot];
  }

  std::optional<Orientation> first_out(int node) const {
    for (int s = 0; s < net_.slot_count(); ++s) {
      if (net_.tail(s) == node && remaining_[s].sign() > 0) return Orientation{s, false};
      if (net_.head(s) == node && remaining_[s].sign() < 0) return Orientation{s, true};
    }
    return std::nullopt;
  }

  std::optional<ChainFlow> peel_from(int start) {
    std::vector<Orientation> walk;
    std::vector<int> seen(net_.node_count(), -1);  // position in walk where node was entered
    int cur = start;
    seen[start] = 0;
    while (true) {
      auto o = first_out(cur);
      if (!o) {
        if (walk.empty()) return std::nullopt;
        throw std::logic_error("chain peeling stuck: not a circulation");
      }
      walk.push_back(*o);
      cur = net_.to(*o);
      if (seen[cur] >= 0) {
        int from = seen[cur];
        std::vector<Orientation> cycle(walk.begin() + from, walk.end());
        ChainFlow chain;
        chain.cycle = std::move(cycle);
        chain.value = aligned(chain.cycle[0]);
        for (const Orientation& o2 : chain.cycle) chain.value = min(chain.value, aligned(o2));
        for (const Orientation& o2 : chain.cycle) {
          if (o2.backward)
            remaining_[o2.slot] += chain.value;
          else
            remaining_[o2.slot] -= chain.value;
        }
        return chain;
      }
      seen[cur] = static_cast<int>(walk.size());
    }
  }

  bool any_left() const {
    return std::any_of(remaining_.begin(), remaining_.end(),
                       [](const Rational& v) { return !v.is_zero(); });
  }

  bool any_at(int node) const { return first_out(node).has_value(); }

  int first_node_with_flow() const {
    for (int v = 0; v < net_.node_count(); ++v)
      if (first_out(v)) return v;
    return -1;
  }

 private:
  const ExtendedNetwork& net_;
  std::vector<Rational> remaining_;
};

ChainDecomposition decompose_values(std::shared_ptr<const ExtendedNetwork> host,
                                    std::vector<Rational> values) {
  ChainDecomposition out;
  out.host = host;
  Peeler peeler(*host, std::move(values));
  int super = host->super_node();
  while (peeler.any_at(super)) {
    auto chain = peeler.peel_from(super);
    if (!chain) break;
    out.chains.push_back(std::move(*chain));
  }
  while (peeler.any_left()) {
    int start = peeler.first_node_with_flow();
    auto chain = peeler.peel_from(start);
    if (!chain) throw std::logic_error("chain peeling stuck: leftover flow");
    out.chains.push_back(std::move(*chain));
  }
  return out;
}

}  // namespace

ChainDecomposition decompose_standard(const StaticFlow& x) {
  return decompose_values(x.host_ptr(), x.values());
}

MinCostCirculationResult min_cost_circulation(std::shared_ptr<const ExtendedNetwork> host) {
  return min_cost_circulation(host, StaticFlow(host), {});
}

MinCostCirculationResult min_cost_circulation(std::shared_ptr<const ExtendedNetwork> host,
                                              const StaticFlow& warm_start,
                                              std::optional<int> must_cancel_source,
                                              int max_cancellations) {
  StaticFlow x = warm_start.rehosted(host);
  ChainDecomposition trace;
  trace.host = host;
  int cancellations = 0;
  auto bump = [&cancellations, max_cancellations] {
    if (++cancellations > max_cancellations)
      throw IterationLimitError("cycle canceling exceeded the iteration cap");
  };

  if (must_cancel_source) {
    // The super arc toward this source is gone from `host`; reroute the warm
    // start's flow on it back out of the super node, cheapest paths first.
    int slot = host->super_slot_of_terminal(*must_cancel_source);
    if (host->slot_active(slot)) throw std::logic_error("must_cancel arc still active");
    Rational pending = x.value(slot);
    if (pending.sign() < 0) throw std::logic_error("negative flow on removed super arc");
    x.set(slot, Rational(0));
    int target = *must_cancel_source;
    while (pending.sign() > 0) {
      ShortestPaths sp = shortest_walk_from_super(x, /*skip_into_super=*/true);
      if (sp.has_negative_cycle())
        throw std::logic_error("negative residual cycle while rerouting a source");
      if (!sp.dist[target])
        throw std::logic_error("cannot reroute flow away from removed super arc");
      ChainFlow chain;
      chain.standard = false;
      Capacity bottleneck = Capacity::infinite();
      int v = target;
      while (v != host->super_node()) {
        chain.cycle.push_back(sp.pred[v]);
        bottleneck = min(bottleneck, residual_capacity(x, sp.pred[v]));
        v = host->from(sp.pred[v]);
      }
      std::reverse(chain.cycle.begin(), chain.cycle.end());
      // Close via the removed arc's opposite orientation (source -> super).
      chain.cycle.push_back(Orientation{slot, true});
      chain.value = bottleneck.is_infinite() ? pending : min(bottleneck.finite(), pending);
      if (chain.value.is_zero()) throw std::logic_error("zero-bottleneck reroute path");
      bump();
      for (std::size_t i = 0; i + 1 < chain.cycle.size(); ++i) x.add(chain.cycle[i], chain.value);
      pending -= chain.value;
      trace.chains.push_back(std::move(chain));
    }
  }

  while (true) {
    auto pick = cheapest_super_cycle(x);
    if (!pick || pick->cost.sign() >= 0) break;
    if (pick->bottleneck.is_infinite())
      throw UnboundedError("negative cycle with infinite residual capacity");
    bump();
    augment(x, pick->cycle, pick->bottleneck.finite());
    ChainFlow chain;
    chain.value = pick->bottleneck.finite();
    chain.cycle = pick->cycle;
    chain.standard = false;
    trace.chains.push_back(std::move(chain));
  }

  MinCostCirculationResult result{StaticFlow(host), ChainDecomposition{}, std::move(trace),
                                  Rational(0)};
  std::vector<Rational> diff = x.values();
  for (int s = 0; s < host->slot_count(); ++s) diff[s] -= warm_start.value(s);
  result.delta = decompose_values(host, std::move(diff));
  result.augmented_cost = result.delta.cost();
  result.flow = std::move(x);
  return result;
}

}  // namespace tempoflow
