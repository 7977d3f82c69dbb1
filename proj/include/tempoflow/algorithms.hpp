#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tempoflow/flow_over_time.hpp"
#include "tempoflow/network.hpp"
#include "tempoflow/static_flow.hpp"

namespace tempoflow {

struct MaxFlowOverTimeResult {
  FlowOverTime flow;
  Rational value;  // equals -cost of the minimum-cost circulation
  CutOverTime cut;
  ChainDecomposition decomposition;  // standard
  StaticFlow circulation;
};

/// Maximum flow over time with horizon T: a temporally repeated flow induced
/// by a standard chain decomposition of a minimum-cost circulation in N_{S+},
/// with a matching cut-over-time certificate.
MaxFlowOverTimeResult max_flow_over_time(std::shared_ptr<const Network> net,
                                         const Rational& horizon);

struct EarliestArrivalResult {
  FlowOverTime flow;
  ArrivalPattern pattern;
  ChainDecomposition decomposition;  // nonstandard; the canceled residual cycles
  int iterations = 0;
};

/// Earliest arrival flow by shortest-cycle canceling in N_{S+}. With a finite
/// horizon the loop stops when no residual cycle through the super node has
/// negative cost; without one it stops when no residual source-sink path is
/// left. Arrivals are maximal at every time up to the horizon simultaneously.
EarliestArrivalResult earliest_arrival(std::shared_ptr<const Network> net,
                                       std::optional<Rational> horizon,
                                       int max_iterations = kDefaultIterationCap);

/// Priority list of all terminals, highest first.
struct LexOrder {
  std::vector<int> terminals;  // node indices; a permutation of net.terminals()

  static LexOrder from_names(const Network& net, const std::vector<std::string>& names);
  /// Throws std::invalid_argument unless this is a permutation of the
  /// network's terminals.
  void validate(const Network& net) const;
};

struct LexMaxResult {
  FlowOverTime flow;
  ChainDecomposition decomposition;            // union of all per-iteration deltas
  std::vector<ChainDecomposition> deltas;      // delta[i]: chains added in iteration i+1
  std::vector<Rational> delta_costs;           // cost(delta[i])
  std::vector<Rational> net_outflow;           // by terminal index; equals the matching delta cost
  std::vector<Rational> prefix_values;         // -cost(x^i) for i = 0..k (value sent by prefix set X_i)
  std::vector<std::vector<std::optional<Rational>>> labels;  // labels[i][v]: residual distance after i iterations
};

/// Lexicographically maximum flow over time for the given priority order:
/// processes terminals lowest priority first, adding the sink return arc or
/// removing the source arc of the current terminal from the extension,
/// augments to a minimum-cost circulation, and induces the collected chain
/// decomposition with half-infinite sending intervals. The result
/// simultaneously sends the maximum possible amount out of every priority
/// prefix.
LexMaxResult lex_max(std::shared_ptr<const Network> net, const Rational& horizon,
                     const LexOrder& order);

}  // namespace tempoflow
