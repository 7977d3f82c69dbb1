#include "tempoflow/flow_over_time.hpp"

#include <algorithm>
#include <tuple>

namespace tempoflow {

Rational FlowOverTime::net_outflow(int terminal_node) const {
  Rational out(0);
  for (int a = 0; a < network->arc_count(); ++a) {
    if (network->arc(a).tail == terminal_node) out += rate[a].integral();
    if (network->arc(a).head == terminal_node) out -= rate[a].integral();
  }
  return out;
}

std::string Violation::describe(const Network& net) const {
  std::string what;
  switch (kind) {
    case Kind::Capacity: what = "capacity"; break;
    case Kind::Horizon: what = "horizon"; break;
    case Kind::Conservation: what = "conservation"; break;
  }
  std::string where = arc >= 0 ? net.node_name(net.arc(arc).tail) + "->" +
                                     net.node_name(net.arc(arc).head)
                               : net.node_name(node);
  std::string window = "[" + from.str() + ", " + (to ? to->str() : "inf") + ")";
  return what + " violation at " + where + " during " + window + ", rate " + value.str();
}

namespace {

using Pulse = std::tuple<Rational, std::optional<Rational>, Rational>;

struct PulseAccumulator {
  std::vector<std::vector<Pulse>> per_arc;

  explicit PulseAccumulator(int arcs) : per_arc(arcs) {}

  void add(int arc, const Rational& from, const std::optional<Rational>& to,
           const Rational& rate) {
    per_arc[arc].emplace_back(from, to, rate);
  }
};

// Per-chain contributions to the stored arcs. The chain enters its path at
// `start`; a node visited at signed prefix distance d along the path is
// reached from time start + d on. A forward traversal of stored arc vw adds
// the chain value at v's visit time; a backward traversal subtracts it, also
// at v's visit time, per the identity f_wv(t) = -f_vw(t - transit_vw).
void accumulate_chain(const ExtendedNetwork& host, const ChainFlow& chain,
                      const Rational& start, const std::optional<Rational>& interval_length,
                      PulseAccumulator& acc) {
  if (interval_length && interval_length->is_zero()) return;
  int base_arcs = host.base_arc_count();
  Rational prefix(0);
  for (const Orientation& o : chain.cycle) {
    Rational at_tail = prefix;        // visit time offset of o's start node
    prefix += host.transit(o);        // visit time offset of o's end node
    if (o.slot >= base_arcs) continue;  // super arcs carry no over-time rate
    Rational stored_tail_visit = o.backward ? prefix : at_tail;
    Rational from = start + stored_tail_visit;
    std::optional<Rational> to;
    if (interval_length) to = from + *interval_length;
    acc.add(o.slot, from, to, o.backward ? -chain.value : chain.value);
  }
}

FlowOverTime build(const ChainDecomposition& gamma, std::optional<Rational> horizon,
                   bool infinite_mode) {
  const ExtendedNetwork& host = *gamma.host;
  FlowOverTime f;
  f.network = host.base_ptr();
  f.horizon = horizon;
  PulseAccumulator acc(host.base_arc_count());
  for (const ChainFlow& chain : gamma.chains) {
    if (chain.cycle.empty()) throw std::logic_error("empty chain");
    const Orientation& first = chain.cycle.front();
    int entry = host.to(first);
    if (!host.is_super_slot(first.slot) || host.from(first) != host.super_node())
      throw std::logic_error("chain does not leave the super node first");
    if (infinite_mode) {
      // Sends from the first orientation's transit time on, forever; the
      // cycle prefix starts with that transit, so no extra offset here.
      accumulate_chain(host, chain, Rational(0), std::nullopt, acc);
    } else {
      if (!host.base().is_source(entry) || first.backward)
        throw std::logic_error("finite induction needs chains entering through a source arc");
      Rational path_length(0);
      for (std::size_t i = 1; i + 1 < chain.cycle.size(); ++i)
        path_length += host.transit(chain.cycle[i]);
      std::optional<Rational> window;
      if (horizon) {
        if (path_length > *horizon)
          throw std::logic_error("chain path longer than the time horizon");
        window = *horizon - path_length;
      }
      accumulate_chain(host, chain, Rational(0), window, acc);
    }
  }
  f.rate.reserve(host.base_arc_count());
  for (auto& pulses : acc.per_arc)
    f.rate.push_back(StepFunction::sum_of_pulses(std::move(pulses)));
  return f;
}

}  // namespace

FlowOverTime induce_finite(const ChainDecomposition& gamma, const Rational& horizon) {
  return build(gamma, horizon, /*infinite_mode=*/false);
}

FlowOverTime induce_infinite(const ChainDecomposition& gamma, const Rational& horizon) {
  return build(gamma, horizon, /*infinite_mode=*/true);
}

FlowOverTime induce_unbounded(const ChainDecomposition& gamma) {
  return build(gamma, std::nullopt, /*infinite_mode=*/false);
}

VerificationReport verify(const FlowOverTime& f) {
  const Network& net = *f.network;
  VerificationReport report;
  for (int a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    for (const StepFunction::Segment& seg : f.rate[a].segments()) {
      if (seg.rate.sign() < 0) {
        // The opposite orientation (capacity 0) is entered transit later.
        Violation v{Violation::Kind::Capacity, a, -1, seg.start + arc.transit, std::nullopt,
                    seg.rate};
        if (seg.end) v.to = *seg.end + arc.transit;
        report.violations.push_back(std::move(v));
      } else if (arc.capacity.is_finite() && seg.rate > arc.capacity.finite()) {
        report.violations.push_back(
            {Violation::Kind::Capacity, a, -1, seg.start, seg.end, seg.rate});
      }
      if (seg.start.sign() < 0) {
        Rational until = seg.end ? min(*seg.end, Rational(0)) : Rational(0);
        report.violations.push_back(
            {Violation::Kind::Horizon, a, -1, seg.start, until, seg.rate});
      }
      if (f.horizon) {
        Rational from = max(seg.start, *f.horizon);
        if (!seg.end || from < *seg.end)
          report.violations.push_back(
              {Violation::Kind::Horizon, a, -1, from, seg.end, seg.rate});
      }
    }
  }
  // Conservation: net entering rate out of each non-terminal is 0 at all
  // times; incoming arcs count with their arrival shift.
  for (int v = 0; v < net.node_count(); ++v) {
    if (net.is_terminal(v)) continue;
    StepFunction net_rate;
    for (int a = 0; a < net.arc_count(); ++a) {
      if (net.arc(a).tail == v) net_rate = net_rate + f.rate[a];
      if (net.arc(a).head == v)
        net_rate = net_rate + (-f.rate[a].shifted(net.arc(a).transit));
    }
    for (const StepFunction::Segment& seg : net_rate.segments())
      report.violations.push_back(
          {Violation::Kind::Conservation, -1, v, seg.start, seg.end, seg.rate});
  }
  return report;
}

ArrivalPattern::ArrivalPattern(StepFunction arrival_rate) : rate_(std::move(arrival_rate)) {
  Rational t(0), v(0);
  auto pts = rate_.points();
  breakpoints_.push_back({t, v, rate_.rate_at(Rational(0))});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].first <= Rational(0)) continue;
    v += breakpoints_.back().slope * (pts[i].first - breakpoints_.back().time);
    breakpoints_.push_back({pts[i].first, v, pts[i].second});
  }
}

Rational ArrivalPattern::value_at(const Rational& t) const {
  if (t <= Rational(0)) return Rational(0);
  const Breakpoint* last = &breakpoints_.front();
  for (const Breakpoint& b : breakpoints_) {
    if (b.time > t) break;
    last = &b;
  }
  return last->value + last->slope * (t - last->time);
}

Rational ArrivalPattern::total() const {
  if (!breakpoints_.back().slope.is_zero())
    throw std::logic_error("arrival pattern never settles");
  return breakpoints_.back().value;
}

ArrivalPattern arrival_pattern(const FlowOverTime& f) {
  const Network& net = *f.network;
  StepFunction arrivals;
  for (int a = 0; a < net.arc_count(); ++a)
    if (net.is_sink(net.arc(a).head))
      arrivals = arrivals + f.rate[a].shifted(net.arc(a).transit);
  return ArrivalPattern(std::move(arrivals));
}

bool CutOverTime::valid(const Network& net, const Rational& horizon) const {
  for (int v = 0; v < net.node_count(); ++v) {
    if (net.is_source(v) && alpha[v].sign() > 0) return false;
    if (net.is_sink(v) && alpha[v] < horizon) return false;
  }
  return true;
}

Capacity cut_capacity(const CutOverTime& cut, const Network& net,
                      const Rational& /*horizon*/) {
  Rational total(0);
  for (const Arc& a : net.arcs()) {
    Rational coeff = cut.alpha[a.head] - a.transit - cut.alpha[a.tail];
    if (coeff.sign() <= 0) continue;
    if (a.capacity.is_infinite()) return Capacity::infinite();
    total += coeff * a.capacity.finite();
  }
  return Capacity(total);
}

CutOverTime extract_cut(const StaticFlow& circulation) {
  const ExtendedNetwork& host = circulation.host();
  ShortestPaths sp = shortest_walk_from_super(circulation);
  if (sp.has_negative_cycle())
    throw std::logic_error("cut extraction from a non-optimal circulation");
  const Rational& horizon = host.horizon();
  CutOverTime cut;
  cut.alpha.resize(host.base().node_count());
  for (int v = 0; v < host.base().node_count(); ++v)
    cut.alpha[v] = sp.dist[v] ? min(*sp.dist[v], horizon) : horizon;
  return cut;
}

}  // namespace tempoflow
