#include "tempoflow/io.hpp"

#include <map>

namespace tempoflow {

namespace {

Rational rational_from(const OrderedJson& j, const std::string& context) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError(context + ": expected integer or \"p/q\" string");
}

}  // namespace

OrderedJson schedule_to_json(const FlowOverTime& flow) {
  const Network& net = *flow.network;
  OrderedJson doc;
  doc["horizon"] = flow.horizon ? flow.horizon->str() : "inf";
  doc["arcs"] = OrderedJson::array();
  for (int a = 0; a < net.arc_count(); ++a) {
    OrderedJson entry;
    entry["tail"] = net.node_name(net.arc(a).tail);
    entry["head"] = net.node_name(net.arc(a).head);
    entry["segments"] = OrderedJson::array();
    for (const StepFunction::Segment& seg : flow.rate[a].segments()) {
      OrderedJson s;
      s["from"] = seg.start.str();
      s["to"] = seg.end ? OrderedJson(seg.end->str()) : OrderedJson("inf");
      s["rate"] = seg.rate.str();
      entry["segments"].push_back(std::move(s));
    }
    doc["arcs"].push_back(std::move(entry));
  }
  return doc;
}

FlowOverTime schedule_from_json(std::shared_ptr<const Network> net, const OrderedJson& doc) {
  FlowOverTime flow;
  flow.network = net;
  if (!doc.contains("horizon")) throw ParseError("schedule without horizon");
  if (doc["horizon"].is_string() && doc["horizon"].get<std::string>() == "inf")
    flow.horizon = std::nullopt;
  else
    flow.horizon = rational_from(doc["horizon"], "horizon");
  flow.rate.assign(net->arc_count(), StepFunction());

  std::map<std::pair<int, int>, int> arc_of;
  for (int a = 0; a < net->arc_count(); ++a)
    arc_of[{net->arc(a).tail, net->arc(a).head}] = a;
  if (!doc.contains("arcs") || !doc["arcs"].is_array())
    throw ParseError("schedule without arcs array");
  for (const auto& entry : doc["arcs"]) {
    int tail = net->node_index(entry.at("tail").get<std::string>());
    int head = net->node_index(entry.at("head").get<std::string>());
    auto it = arc_of.find({tail, head});
    if (it == arc_of.end())
      throw ParseError("schedule names arc " + entry.at("tail").get<std::string>() + "->" +
                       entry.at("head").get<std::string>() + " that the network lacks");
    std::vector<std::tuple<Rational, std::optional<Rational>, Rational>> pulses;
    for (const auto& seg : entry.at("segments")) {
      Rational from = rational_from(seg.at("from"), "segment start");
      std::optional<Rational> to;
      if (!(seg.at("to").is_string() && seg.at("to").get<std::string>() == "inf"))
        to = rational_from(seg.at("to"), "segment end");
      if (to && *to <= from) throw ParseError("segment with non-positive length");
      pulses.emplace_back(std::move(from), std::move(to),
                          rational_from(seg.at("rate"), "segment rate"));
    }
    flow.rate[it->second] = StepFunction::sum_of_pulses(std::move(pulses));
  }
  return flow;
}

OrderedJson violations_to_json(const VerificationReport& report, const Network& net) {
  OrderedJson out = OrderedJson::array();
  for (const Violation& v : report.violations) {
    OrderedJson j;
    switch (v.kind) {
      case Violation::Kind::Capacity: j["kind"] = "capacity"; break;
      case Violation::Kind::Horizon: j["kind"] = "horizon"; break;
      case Violation::Kind::Conservation: j["kind"] = "conservation"; break;
    }
    if (v.arc >= 0) {
      j["tail"] = net.node_name(net.arc(v.arc).tail);
      j["head"] = net.node_name(net.arc(v.arc).head);
    }
    if (v.node >= 0) j["node"] = net.node_name(v.node);
    j["from"] = v.from.str();
    j["to"] = v.to ? OrderedJson(v.to->str()) : OrderedJson("inf");
    j["rate"] = v.value.str();
    out.push_back(std::move(j));
  }
  return out;
}

OrderedJson cut_to_json(const CutOverTime& cut, const Network& net, const Rational& horizon) {
  OrderedJson j;
  j["alpha"] = OrderedJson::object();
  for (int v = 0; v < net.node_count(); ++v) j["alpha"][net.node_name(v)] = cut.alpha[v].str();
  j["capacity"] = cut_capacity(cut, net, horizon).str();
  return j;
}

OrderedJson pattern_to_json(const ArrivalPattern& pattern) {
  OrderedJson j = OrderedJson::array();
  for (const ArrivalPattern::Breakpoint& b : pattern.breakpoints()) {
    OrderedJson e;
    e["time"] = b.time.str();
    e["value"] = b.value.str();
    e["slope"] = b.slope.str();
    j.push_back(std::move(e));
  }
  return j;
}

OrderedJson chains_to_json(const ChainDecomposition& gamma, bool infinite_intervals) {
  const ExtendedNetwork& host = *gamma.host;
  OrderedJson j = OrderedJson::array();
  for (const ChainFlow& chain : gamma.chains) {
    OrderedJson e;
    e["value"] = chain.value.str();
    e["nodes"] = OrderedJson::array();
    for (std::size_t i = 0; i + 1 < chain.cycle.size(); ++i)
      e["nodes"].push_back(host.base().node_name(host.to(chain.cycle[i])));
    Rational start = infinite_intervals ? host.transit(chain.cycle.front()) : Rational(0);
    e["startTime"] = start.str();
    j.push_back(std::move(e));
  }
  return j;
}

OrderedJson certificate_to_json(const FeasibilityCertificate& cert, const Network& net) {
  OrderedJson j;
  j["feasible"] = cert.feasible;
  if (!cert.feasible) {
    j["violating_set"] = OrderedJson::array();
    for (int i = 0; i < net.terminal_count(); ++i)
      if (*cert.violating_set & (1u << i))
        j["violating_set"].push_back(net.node_name(net.terminals()[i]));
    if (cert.gap) j["gap"] = cert.gap->str();
  } else {
    j["combination"] = OrderedJson::array();
    for (auto& [order, coefficient] : cert.combination.terms) {
      OrderedJson term;
      term["order"] = OrderedJson::array();
      for (int r : order.terminals) term["order"].push_back(net.node_name(r));
      term["coefficient"] = coefficient.str();
      j["combination"].push_back(std::move(term));
    }
  }
  return j;
}

}  // namespace tempoflow
