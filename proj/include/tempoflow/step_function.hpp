#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tempoflow/rational.hpp"

namespace tempoflow {

/// Piecewise-constant function of time with exact rational breakpoints.
/// The rate is 0 before the first breakpoint; each breakpoint (t, r) sets the
/// rate to r on [t, next breakpoint). Canonical form: strictly increasing
/// times, consecutive rates differ, no redundant leading zero-rate entries —
/// so equality of functions is plain syntactic equality.
class StepFunction {
 public:
  struct Segment {
    Rational start;
    std::optional<Rational> end;  // nullopt: extends to +infinity
    Rational rate;                // nonzero
  };

  StepFunction() = default;

  /// Rate `rate` on [from, to); identically 0 elsewhere. `to` omitted means
  /// the rate extends forever.
  static StepFunction pulse(const Rational& from, const std::optional<Rational>& to,
                            const Rational& rate);

  /// Builds the pointwise sum of a list of pulses in one sweep.
  static StepFunction sum_of_pulses(
      std::vector<std::tuple<Rational, std::optional<Rational>, Rational>> pulses);

  bool is_zero() const { return points_.empty(); }

  const std::vector<std::pair<Rational, Rational>>& points() const { return points_; }

  Rational rate_at(const Rational& t) const;

  /// Maximal intervals of nonzero rate.
  std::vector<Segment> segments() const;

  /// True when the rate is 0 from some finite time on.
  bool has_bounded_support() const;

  /// Integral over all of time; requires bounded support.
  Rational integral() const;

  /// Integral over (-inf, t).
  Rational integral_up_to(const Rational& t) const;

  StepFunction operator+(const StepFunction& other) const;
  StepFunction operator-() const;
  StepFunction scaled(const Rational& factor) const;
  /// Same function with time translated by delta (f'(t) = f(t - delta)).
  StepFunction shifted(const Rational& delta) const;

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.points_ == b.points_;
  }

 private:
  void canonicalize();

  std::vector<std::pair<Rational, Rational>> points_;  // (time, rate from that time on)
};

}  // namespace tempoflow
