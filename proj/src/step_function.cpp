#include "tempoflow/step_function.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace tempoflow {

StepFunction StepFunction::pulse(const Rational& from, const std::optional<Rational>& to,
                                 const Rational& rate) {
  return sum_of_pulses({{from, to, rate}});
}

StepFunction StepFunction::sum_of_pulses(
    std::vector<std::tuple<Rational, std::optional<Rational>, Rational>> pulses) {
  // Sweep over rate deltas: +r at the start of each pulse, -r at its end.
  std::map<Rational, Rational> delta;
  for (auto& [from, to, rate] : pulses) {
    if (rate.is_zero()) continue;
    if (to && *to <= from) continue;  // empty interval
    delta[from] += rate;
    if (to) delta[*to] -= rate;
  }
  StepFunction f;
  Rational level(0);
  for (auto& [t, d] : delta) {
    if (d.is_zero()) continue;
    level += d;
    f.points_.emplace_back(t, level);
  }
  f.canonicalize();
  return f;
}

void StepFunction::canonicalize() {
  std::vector<std::pair<Rational, Rational>> out;
  for (auto& p : points_) {
    if (!out.empty() && out.back().second == p.second) continue;
    if (out.empty() && p.second.is_zero()) continue;
    out.push_back(p);
  }
  points_ = std::move(out);
}

Rational StepFunction::rate_at(const Rational& t) const {
  Rational r(0);
  for (auto& p : points_) {
    if (p.first > t) break;
    r = p.second;
  }
  return r;
}

std::vector<StepFunction::Segment> StepFunction::segments() const {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].second.is_zero()) continue;
    Segment s;
    s.start = points_[i].first;
    s.rate = points_[i].second;
    if (i + 1 < points_.size()) s.end = points_[i + 1].first;
    out.push_back(std::move(s));
  }
  return out;
}

bool StepFunction::has_bounded_support() const {
  return points_.empty() || points_.back().second.is_zero();
}

Rational StepFunction::integral() const {
  if (!has_bounded_support()) throw std::logic_error("integral of unbounded step function");
  Rational total(0);
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    total += points_[i].second * (points_[i + 1].first - points_[i].first);
  return total;
}

Rational StepFunction::integral_up_to(const Rational& t) const {
  Rational total(0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].first >= t) break;
    Rational end = (i + 1 < points_.size()) ? min(points_[i + 1].first, t) : t;
    total += points_[i].second * (end - points_[i].first);
  }
  return total;
}

StepFunction StepFunction::operator+(const StepFunction& other) const {
  std::vector<std::tuple<Rational, std::optional<Rational>, Rational>> pulses;
  auto collect = [&pulses](const StepFunction& f) {
    for (std::size_t i = 0; i < f.points_.size(); ++i) {
      std::optional<Rational> end;
      if (i + 1 < f.points_.size()) end = f.points_[i + 1].first;
      if (!f.points_[i].second.is_zero())
        pulses.emplace_back(f.points_[i].first, end, f.points_[i].second);
    }
  };
  collect(*this);
  collect(other);
  return sum_of_pulses(std::move(pulses));
}

StepFunction StepFunction::operator-() const { return scaled(Rational(-1)); }

StepFunction StepFunction::scaled(const Rational& factor) const {
  StepFunction f;
  if (factor.is_zero()) return f;
  f.points_ = points_;
  for (auto& p : f.points_) p.second *= factor;
  return f;
}

StepFunction StepFunction::shifted(const Rational& delta) const {
  StepFunction f;
  f.points_ = points_;
  for (auto& p : f.points_) p.first += delta;
  return f;
}

}  // namespace tempoflow
