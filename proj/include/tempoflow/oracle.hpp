#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tempoflow/network.hpp"

namespace tempoflow {

/// Discrete-model expansion of a network with integral transit times and an
/// integral horizon: one copy of every node per time layer 1..T, one copy of
/// every arc per layer it fits into, no holdover arcs. Brute-force reference
/// only; its size grows with T.
class TimeExpandedNetwork {
 public:
  TimeExpandedNetwork(const Network& net, long long horizon);

  long long horizon() const { return horizon_; }
  int copy_count() const { return copies_; }
  int copy_index(int node, long long layer) const;  // layers are 1-based

  /// Static maximum flow from every copy of a source in X to every copy of a
  /// sink outside X, by augmenting paths.
  Rational max_flow_between(unsigned x_mask) const;

 private:
  const Network& net_;
  long long horizon_;
  int copies_;
  struct CopyArc {
    int tail, head;
    Capacity capacity;
  };
  std::vector<CopyArc> arcs_;
};

/// Errors for non-integral transit times or horizon.
TimeExpandedNetwork time_expand(const Network& net, long long horizon);

/// Maximum amount sendable from sources in X to sinks outside X within an
/// integral horizon, computed on the time expansion. Agrees with the
/// circulation-based value on every integral instance.
Rational oracle_o_value(const Network& net, long long horizon, unsigned x_mask);

/// First subset violating b(X) <= o(X) under exhaustive enumeration, together
/// with its gap, or nullopt when every subset passes. `o` maps a terminal
/// mask to its value; `b_of` maps a mask to its supply sum.
std::optional<std::pair<unsigned, Rational>> exhaustive_violating_subset(
    const std::function<Rational(unsigned)>& o, const std::function<Rational(unsigned)>& b_of,
    int k);

}  // namespace tempoflow
