#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tempoflow/network.hpp"
#include "tempoflow/rational.hpp"

namespace tempoflow {

/// Negative-cost cycle of infinite residual capacity.
class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured loop exceeded its iteration cap.
class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultIterationCap = 1'000'000;

/// Antisymmetric arc-value map on an extended network: value(slot) is the
/// flow on the stored orientation, the opposite orientation carries its
/// negation implicitly.
class StaticFlow {
 public:
  explicit StaticFlow(std::shared_ptr<const ExtendedNetwork> host);

  const ExtendedNetwork& host() const { return *host_; }
  const std::shared_ptr<const ExtendedNetwork>& host_ptr() const { return host_; }

  const Rational& value(int slot) const { return value_[slot]; }
  Rational value(const Orientation& o) const {
    return o.backward ? -value_[o.slot] : value_[o.slot];
  }
  const std::vector<Rational>& values() const { return value_; }

  void add(const Orientation& o, const Rational& amount);
  void set(int slot, Rational v) { value_[slot] = std::move(v); }

  /// Total cost over unordered arc pairs: sum of transit * value per slot.
  Rational cost() const;

  bool is_zero() const;
  /// Net outflow at a node (0 everywhere for a circulation).
  Rational divergence(int node) const;
  /// value <= capacity on every orientation of every active slot.
  bool is_feasible() const;

  /// Same values viewed in another extension of the same base network
  /// (identical slot layout).
  StaticFlow rehosted(std::shared_ptr<const ExtendedNetwork> host) const;

 private:
  std::shared_ptr<const ExtendedNetwork> host_;
  std::vector<Rational> value_;
};

/// Residual capacity of an orientation: capacity(o) - value(o). For a
/// backward orientation this equals the stored flow value. Inactive super
/// slots have no residual in either direction.
Capacity residual_capacity(const StaticFlow& x, const Orientation& o);

/// Positive flow along one cycle (through the super node) or path.
struct ChainFlow {
  Rational value;                   // > 0
  std::vector<Orientation> cycle;   // closed walk; cycles through the super node
                                    // start with the orientation leaving it
  bool standard = true;             // orientations agree with the decomposed flow

  /// Total signed transit of the traversed orientations.
  Rational length(const ExtendedNetwork& host) const;
  Rational cost(const ExtendedNetwork& host) const { return value * length(host); }
  bool through_super(const ExtendedNetwork& host) const;
};

/// Multiset of chain flows; when it decomposes a static flow the arc-wise sum
/// of the chains equals that flow.
struct ChainDecomposition {
  std::shared_ptr<const ExtendedNetwork> host;
  std::vector<ChainFlow> chains;

  Rational cost() const;
  /// Arc-wise sum of the chains as a static flow on `host`.
  StaticFlow sum() const;
  bool empty() const { return chains.empty(); }
};

/// Result of a shortest-path sweep from the super node over orientations with
/// positive residual capacity. Ties between equal-cost paths resolve by arc
/// slot order (the symbolic-perturbation stand-in).
struct ShortestPaths {
  std::vector<std::optional<Rational>> dist;  // by node; nullopt = unreachable
  std::vector<Orientation> pred;              // defined where dist is set (except the root)
  /// Present instead of distances when a negative-cost cycle was detected.
  std::optional<std::vector<Orientation>> negative_cycle;

  bool has_negative_cycle() const { return negative_cycle.has_value(); }
};

/// Minimum residual cost from the super node to every node, walking only
/// orientations with positive residual capacity. With the full residual
/// network this detects negative cycles and returns a witness; the engine
/// variant that skips orientations entering the super node is always
/// cycle-free for the flows this library constructs.
ShortestPaths shortest_walk_from_super(const StaticFlow& x, bool skip_into_super = false);

/// True when some negative-cost residual cycle exists anywhere (not only
/// reachable from the super node). Assertion helper.
bool has_negative_residual_cycle(const StaticFlow& x);

struct MinCostCirculationResult {
  StaticFlow flow;               // minimum-cost circulation in the host
  ChainDecomposition delta;      // standard chain decomposition of flow - warm start
  ChainDecomposition trace;      // residual cycles canceled, in cancellation order
  Rational augmented_cost;       // cost(flow) - cost(warm start)
};

/// Minimum-cost circulation by successive shortest cycle canceling through
/// the super node. Every negative residual cycle passes through the super
/// node (the only negative stored arcs enter it), so canceling the shortest
/// such cycle until none remains is exact.
///
/// `must_cancel` names a source terminal whose super arc was deactivated in
/// `host`: the warm start's flow on that arc is rerouted out of it first, by
/// cheapest residual paths from the super node, before regular canceling.
MinCostCirculationResult min_cost_circulation(std::shared_ptr<const ExtendedNetwork> host,
                                              const StaticFlow& warm_start,
                                              std::optional<int> must_cancel_source = {},
                                              int max_cancellations = kDefaultIterationCap);

/// Zero warm start convenience.
MinCostCirculationResult min_cost_circulation(std::shared_ptr<const ExtendedNetwork> host);

/// Standard chain decomposition of a circulation: repeatedly peels a
/// flow-aligned cycle, preferring cycles through the super node, choosing the
/// smallest slot at every step. At most one chain per slot.
ChainDecomposition decompose_standard(const StaticFlow& x);

}  // namespace tempoflow
