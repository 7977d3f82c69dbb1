#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempoflow/network.hpp"
#include "tempoflow/static_flow.hpp"
#include "tempoflow/step_function.hpp"

namespace tempoflow {

/// Flow over time on the base network: one entering-rate step function per
/// stored arc. The opposite orientation's rate is implicit through the
/// identity f_wv(t) = -f_vw(t - transit_vw). A missing horizon means the flow
/// runs forever (infinite-horizon mode).
struct FlowOverTime {
  std::shared_ptr<const Network> network;
  std::vector<StepFunction> rate;  // by stored arc index
  std::optional<Rational> horizon;

  /// Exact amount of flow that leaves terminal r net over all time; requires
  /// bounded support on every arc touching r.
  Rational net_outflow(int terminal_node) const;
};

struct Violation {
  enum class Kind { Capacity, Horizon, Conservation };
  Kind kind;
  int arc = -1;   // stored arc index (capacity / horizon)
  int node = -1;  // node index (conservation)
  Rational from;  // violation window [from, to); no `to` = forever
  std::optional<Rational> to;
  Rational value;  // offending rate (net rate for conservation)
  std::string describe(const Network& net) const;
};

/// Feasibility report: empty list iff the flow satisfies capacity bounds in
/// both orientations, vanishes outside [0, horizon), and conserves flow at
/// every non-terminal node. Capacity windows are reported at the times flow
/// enters the violated orientation: a rate above the arc capacity as stored,
/// a rate below zero shifted by the transit time (that is when the opposite
/// orientation, of capacity 0, is being entered).
struct VerificationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

VerificationReport verify(const FlowOverTime& f);

/// Finite-horizon induced flow: every chain must enter through a super arc
/// toward a source and have path length at most T; it sends at its value into
/// its path during [0, T - length(path)).
FlowOverTime induce_finite(const ChainDecomposition& gamma, const Rational& horizon);

/// Half-infinite induced flow: each chain sends into its path from the
/// transit time of its first super orientation on (0 from a source arc, T
/// backwards through a sink arc), forever. When the decomposition sums to the
/// zero flow all rates cancel after bounded time and the result has horizon
/// T; otherwise trailing rates remain and verify reports them.
FlowOverTime induce_infinite(const ChainDecomposition& gamma, const Rational& horizon);

/// Infinite-horizon variant of induce_finite: every chain sends during
/// [0, infinity), used by the earliest-arrival loop without a deadline.
FlowOverTime induce_unbounded(const ChainDecomposition& gamma);

/// Cumulative flow arrived at all sinks by each point in time; piecewise
/// linear with exact breakpoints.
class ArrivalPattern {
 public:
  struct Breakpoint {
    Rational time;
    Rational value;  // cumulative arrivals at `time`
    Rational slope;  // arrival rate from `time` on
  };

  explicit ArrivalPattern(StepFunction arrival_rate);

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  Rational value_at(const Rational& t) const;
  /// Final cumulative value; requires the arrival rate to die out.
  Rational total() const;

 private:
  std::vector<Breakpoint> breakpoints_;
  StepFunction rate_;
};

ArrivalPattern arrival_pattern(const FlowOverTime& f);

/// Cut over time: per-node switchover times alpha, with alpha <= 0 on sources
/// and alpha >= T on sinks.
struct CutOverTime {
  std::vector<Rational> alpha;  // by node index

  bool valid(const Network& net, const Rational& horizon) const;
};

/// Capacity of a cut over time: sum over stored arcs of
/// max(0, alpha_head - transit - alpha_tail) * capacity. Infinite when an
/// infinite-capacity arc has a positive coefficient.
Capacity cut_capacity(const CutOverTime& cut, const Network& net, const Rational& horizon);

/// Dual certificate from a minimum-cost circulation in N_{S+}: alpha_v is the
/// residual distance from the super node truncated at T; unreachable nodes
/// get T.
CutOverTime extract_cut(const StaticFlow& circulation);

}  // namespace tempoflow
