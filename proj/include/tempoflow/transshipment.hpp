#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "tempoflow/algorithms.hpp"
#include "tempoflow/network.hpp"

namespace tempoflow {

/// Supplies at sources (>= 0) and demands at sinks (<= 0), summing to zero.
/// Indexed like Network::terminals().
struct SupplyVector {
  std::vector<Rational> b;

  static SupplyVector from_network_file(const Network& net);
  static SupplyVector from_map(const Network& net, const std::map<std::string, Rational>& m);
  void validate(const Network& net) const;

  Rational of_mask(unsigned mask) const;
  bool is_zero() const;
};

/// Maximum-flow-over-time values o(X) for subsets of terminals, each one a
/// minimum-cost circulation in N_X; memoized per subset.
class OValueOracle {
 public:
  OValueOracle(std::shared_ptr<const Network> net, Rational horizon);

  const Network& network() const { return *net_; }
  const std::shared_ptr<const Network>& network_ptr() const { return net_; }
  const Rational& horizon() const { return horizon_; }
  int k() const { return net_->terminal_count(); }

  Rational value(unsigned x_mask) const;

 private:
  std::shared_ptr<const Network> net_;
  Rational horizon_;
  mutable std::mutex mutex_;
  mutable std::map<unsigned, Rational> cache_;
};

/// Base polytope vertex of the o-oracle for a priority order, by the greedy
/// difference procedure; equals the per-terminal nets of the matching
/// lexicographically maximum flow over time.
std::vector<Rational> greedy_vertex(const OValueOracle& oracle, const LexOrder& order);

struct SfmTerm {
  std::vector<int> order;  // ground-set processing order (element indices)
  Rational coefficient;    // > 0
};

struct SfmResult {
  Rational min_value;
  unsigned minimizer = 0;       // the minimal minimizing subset
  std::vector<SfmTerm> terms;   // convex combination of greedy vertices = min-norm point
  std::vector<Rational> min_norm_point;
  int major_cycles = 0;
  int max_coordinate_bits = 0;  // precision statistic
};

/// Exact submodular function minimization by the minimum-norm-point method
/// over the base polytope. `g` maps subsets (bitmask over k elements) to
/// values, g(0) must be 0 and g must be submodular. The returned convex
/// combination of greedy vertices represents the minimum-norm point; when the
/// minimum is 0 that point is the zero vector.
SfmResult sfm_min_norm(const std::function<Rational(unsigned)>& g, int k,
                       int max_major_cycles = 100'000);

struct ConvexCombination {
  std::vector<std::pair<LexOrder, Rational>> terms;  // coefficients > 0, summing to 1
};

struct FeasibilityCertificate {
  bool feasible = false;
  std::optional<unsigned> violating_set;   // with b(X) > o(X), when infeasible
  std::optional<Rational> gap;             // b(X) - o(X) > 0
  ConvexCombination combination;           // reconstructs b, when feasible
  int sfm_major_cycles = 0;
  int sfm_max_bits = 0;
};

/// Transshipment feasibility: b is satisfiable within the horizon iff
/// min over X of o(X) - b(X) is zero; the minimization's dual combination
/// expresses b as a convex combination of greedy vertices.
FeasibilityCertificate feasible(const OValueOracle& oracle, const SupplyVector& b);

/// Infeasible transshipment instances carry their violating-set certificate.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string what, FeasibilityCertificate cert)
      : std::runtime_error(std::move(what)), certificate(std::move(cert)) {}
  FeasibilityCertificate certificate;
};

struct TransshipmentResult {
  FlowOverTime flow;
  FeasibilityCertificate certificate;
  ChainDecomposition decomposition;  // union of the scaled lex-max decompositions
};

/// Feasible transshipment over time: the convex combination of the
/// lexicographically maximum flows named by the feasibility certificate,
/// induced once from the union of their scaled chain decompositions. The
/// result satisfies b exactly; throws InfeasibleError otherwise.
TransshipmentResult transshipment(std::shared_ptr<const Network> net, const Rational& horizon,
                                  const SupplyVector& b);

/// Smallest horizon (up to `precision`) at which b becomes feasible, found by
/// doubling and bisection over the monotone feasibility predicate. Throws
/// InfeasibleError when no finite horizon works.
Rational quickest_horizon(std::shared_ptr<const Network> net, const SupplyVector& b,
                          const Rational& precision);

}  // namespace tempoflow
