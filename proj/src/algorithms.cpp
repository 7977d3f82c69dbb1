#include "tempoflow/algorithms.hpp"

#include <algorithm>
#include <set>

namespace tempoflow {

MaxFlowOverTimeResult max_flow_over_time(std::shared_ptr<const Network> net,
                                         const Rational& horizon) {
  auto host = full_extension(net, horizon);
  MinCostCirculationResult mc = min_cost_circulation(host);
  ChainDecomposition gamma = decompose_standard(mc.flow);
  // Flow-aligned cycles that avoid the super node are zero-cost in an optimal
  // circulation and carry no source-sink value; drop them from the induction.
  ChainDecomposition through;
  through.host = gamma.host;
  for (ChainFlow& chain : gamma.chains) {
    if (chain.through_super(*host))
      through.chains.push_back(std::move(chain));
    else if (chain.length(*host).sign() != 0)
      throw std::logic_error("nonzero-cost cycle avoiding the super node in an optimum");
  }
  Rational value = -mc.flow.cost();
  return {induce_finite(through, horizon), std::move(value), extract_cut(mc.flow),
          std::move(through), std::move(mc.flow)};
}

EarliestArrivalResult earliest_arrival(std::shared_ptr<const Network> net,
                                       std::optional<Rational> horizon, int max_iterations) {
  // Without a deadline, any horizon beyond every simple path length makes the
  // cancel loop run until no residual source-sink path remains, which is the
  // unbounded stopping rule.
  Rational effective = horizon.value_or(Rational(0));
  if (!horizon) {
    for (const Arc& a : net->arcs()) effective += a.transit;
    effective += Rational(1);
  }
  auto host = full_extension(net, effective);
  MinCostCirculationResult mc = min_cost_circulation(host, StaticFlow(host), {}, max_iterations);
  ChainDecomposition gamma = std::move(mc.trace);
  FlowOverTime flow = horizon ? induce_finite(gamma, *horizon) : induce_unbounded(gamma);
  ArrivalPattern pattern = arrival_pattern(flow);
  int iterations = static_cast<int>(gamma.chains.size());
  return {std::move(flow), std::move(pattern), std::move(gamma), iterations};
}

LexOrder LexOrder::from_names(const Network& net, const std::vector<std::string>& names) {
  LexOrder order;
  for (auto& n : names) order.terminals.push_back(net.node_index(n));
  order.validate(net);
  return order;
}

void LexOrder::validate(const Network& net) const {
  std::set<int> seen(terminals.begin(), terminals.end());
  if (seen.size() != terminals.size())
    throw std::invalid_argument("order repeats a terminal");
  if (static_cast<int>(terminals.size()) != net.terminal_count())
    throw std::invalid_argument("order must list every terminal exactly once");
  for (int r : terminals)
    if (net.terminal_index(r) < 0)
      throw std::invalid_argument("order contains a non-terminal");
}

namespace {

std::vector<std::optional<Rational>> residual_labels(const StaticFlow& x) {
  ShortestPaths sp = shortest_walk_from_super(x);
  if (sp.has_negative_cycle())
    throw std::logic_error("labels requested on a non-optimal circulation");
  return sp.dist;
}

// Shortest-path distances from the super node never decrease while the
// algorithm runs; unreachable counts as infinite.
void check_label_monotone(const std::vector<std::optional<Rational>>& before,
                          const std::vector<std::optional<Rational>>& after) {
  for (std::size_t v = 0; v < before.size(); ++v) {
    if (!before[v]) {
      if (after[v]) throw std::logic_error("node label dropped from unreachable");
    } else if (after[v] && *after[v] < *before[v]) {
      throw std::logic_error("node label decreased");
    }
  }
}

// Every chain must visit each of its nodes at a prefix length inside
// [previous label, min(current label, horizon)]; this window is what makes
// the half-infinite induction feasible.
void check_label_window(const ExtendedNetwork& host, const ChainFlow& chain,
                        const std::vector<std::optional<Rational>>& before,
                        const std::vector<std::optional<Rational>>& after) {
  const Rational& horizon = host.horizon();
  Rational prefix(0);
  for (const Orientation& o : chain.cycle) {
    prefix += host.transit(o);
    int v = host.to(o);
    if (v == host.super_node()) continue;
    if (!before[v] || prefix < *before[v])
      throw std::logic_error("chain reaches a node earlier than its previous label");
    Rational upper = after[v] ? min(*after[v], horizon) : horizon;
    if (prefix > upper)
      throw std::logic_error("chain reaches a node later than its label window");
  }
}

}  // namespace

LexMaxResult lex_max(std::shared_ptr<const Network> net, const Rational& horizon,
                     const LexOrder& order) {
  order.validate(*net);
  int k = net->terminal_count();
  // Iteration i processes the lowest remaining priority, i.e. the list back.
  std::vector<char> in_subset(k, 1);
  std::shared_ptr<const ExtendedNetwork> host =
      std::make_shared<ExtendedNetwork>(net, in_subset, horizon);

  LexMaxResult result;
  result.decomposition.host = full_extension(net, horizon);
  result.net_outflow.assign(k, Rational(0));
  StaticFlow x(host);
  result.labels.push_back(residual_labels(x));
  result.prefix_values.push_back(-x.cost());

  for (int i = 1; i <= k; ++i) {
    int r = order.terminals[k - i];
    int ti = net->terminal_index(r);
    in_subset[ti] = 0;
    auto next_host = host->with_subset(in_subset);
    std::optional<int> must_cancel;
    if (net->is_source(r)) must_cancel = r;
    MinCostCirculationResult mc = min_cost_circulation(next_host, x, must_cancel);
    auto labels = residual_labels(mc.flow);
    check_label_monotone(result.labels.back(), labels);
    for (const ChainFlow& chain : mc.delta.chains) {
      if (!chain.through_super(*next_host))
        throw std::logic_error("iteration delta contains a cycle avoiding the super node");
      check_label_window(*next_host, chain, result.labels.back(), labels);
    }
    x = std::move(mc.flow);
    host = std::move(next_host);
    result.labels.push_back(std::move(labels));
    result.prefix_values.push_back(-x.cost());
    result.delta_costs.push_back(mc.delta.cost());
    result.net_outflow[ti] = result.delta_costs.back();
    for (const ChainFlow& chain : mc.delta.chains)
      result.decomposition.chains.push_back(chain);
    result.deltas.push_back(std::move(mc.delta));
  }

  if (!x.is_zero()) throw std::logic_error("final circulation is not the zero flow");
  result.flow = induce_infinite(result.decomposition, horizon);
  VerificationReport report = verify(result.flow);
  if (!report.ok())
    throw std::logic_error("induced lexicographic flow failed verification: " +
                           report.violations.front().describe(*net));
  return result;
}

}  // namespace tempoflow
