#include "tempoflow/network.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <utility>

namespace tempoflow {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const std::string& context) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError(context + ": expected integer or \"p/q\" string");
}

Capacity capacity_field(const json& j, const std::string& context) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
    return Capacity::infinite();
  return Capacity(rational_field(j, context));
}

}  // namespace

int Network::node_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ParseError("unknown node '" + name + "'");
  return it->second;
}

void Network::validate() const {
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    std::string where = "arc " + node_names_[a.tail] + "->" + node_names_[a.head];
    if (a.tail == a.head) throw ParseError(where + ": self-loop");
    if (!seen.insert({a.tail, a.head}).second) throw ParseError(where + ": duplicate arc");
    if (seen.count({a.head, a.tail}))
      throw ParseError(where + ": opposite of an existing arc (opposites are implicit)");
    if (a.capacity.is_finite() && a.capacity.finite().is_zero())
      throw ParseError(where + ": capacity must be positive");
    if (a.transit.sign() < 0) throw ParseError(where + ": negative transit time");
    if (is_sink_[a.tail])
      throw ParseError(where + ": sink " + node_names_[a.tail] + " has an outgoing arc");
    if (is_source_[a.head])
      throw ParseError(where + ": source " + node_names_[a.head] + " has an incoming arc");
  }
  for (int v = 0; v < node_count(); ++v)
    if (is_source_[v] && is_sink_[v])
      throw ParseError("node " + node_names_[v] + " is both a source and a sink");
  for (auto& [v, b] : supplies_)
    if (!is_terminal(v))
      throw ParseError("supply given for non-terminal node " + node_names_[v]);
}

Network Network::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document root must be an object");

  NetworkBuilder b;
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw ParseError("missing 'nodes' array");
  std::set<std::string> sources, sinks;
  if (doc.contains("sources"))
    for (auto& s : doc["sources"]) sources.insert(s.get<std::string>());
  if (doc.contains("sinks"))
    for (auto& s : doc["sinks"]) sinks.insert(s.get<std::string>());
  for (auto& s : sources)
    if (sinks.count(s))
      throw ParseError("node " + s + " is both a source and a sink");
  for (auto& n : doc["nodes"]) {
    std::string name = n.get<std::string>();
    if (sources.count(name))
      b.source(name);
    else if (sinks.count(name))
      b.sink(name);
    else
      b.node(name);
  }
  if (doc.contains("arcs")) {
    if (!doc["arcs"].is_array()) throw ParseError("'arcs' must be an array");
    for (auto& a : doc["arcs"]) {
      if (!a.contains("tail") || !a.contains("head"))
        throw ParseError("arc without tail/head");
      std::string where =
          "arc " + a["tail"].get<std::string>() + "->" + a["head"].get<std::string>();
      if (!a.contains("capacity") || !a.contains("transit"))
        throw ParseError(where + ": missing capacity or transit");
      b.arc(a["tail"].get<std::string>(), a["head"].get<std::string>(),
            capacity_field(a["capacity"], where), rational_field(a["transit"], where));
    }
  }
  if (doc.contains("supplies")) {
    if (!doc["supplies"].is_object()) throw ParseError("'supplies' must be an object");
    for (auto& [name, val] : doc["supplies"].items())
      b.supply(name, rational_field(val, "supply of " + name));
  }
  // Every listed terminal must appear in the node list.
  for (auto& s : sources)
    if (std::find_if(doc["nodes"].begin(), doc["nodes"].end(),
                     [&](const json& n) { return n.get<std::string>() == s; }) ==
        doc["nodes"].end())
      throw ParseError("source '" + s + "' not in node list");
  for (auto& s : sinks)
    if (std::find_if(doc["nodes"].begin(), doc["nodes"].end(),
                     [&](const json& n) { return n.get<std::string>() == s; }) ==
        doc["nodes"].end())
      throw ParseError("sink '" + s + "' not in node list");
  return b.build();
}

NetworkBuilder& NetworkBuilder::node(const std::string& name) {
  nodes_.emplace_back(name, 0);
  return *this;
}
NetworkBuilder& NetworkBuilder::source(const std::string& name) {
  nodes_.emplace_back(name, 1);
  return *this;
}
NetworkBuilder& NetworkBuilder::sink(const std::string& name) {
  nodes_.emplace_back(name, 2);
  return *this;
}
NetworkBuilder& NetworkBuilder::arc(const std::string& tail, const std::string& head,
                                    Capacity capacity, Rational transit) {
  arcs_.push_back({tail, head, std::move(capacity), std::move(transit)});
  return *this;
}
NetworkBuilder& NetworkBuilder::supply(const std::string& node, Rational b) {
  supplies_.emplace_back(node, std::move(b));
  return *this;
}

Network NetworkBuilder::build() const {
  Network net;
  for (auto& [name, kind] : nodes_) {
    if (net.index_.count(name)) throw ParseError("duplicate node id '" + name + "'");
    net.index_[name] = static_cast<int>(net.node_names_.size());
    net.node_names_.push_back(name);
    net.is_source_.push_back(kind == 1);
    net.is_sink_.push_back(kind == 2);
  }
  net.terminal_pos_.assign(net.node_count(), -1);
  for (int v = 0; v < net.node_count(); ++v)
    if (net.is_source_[v] || net.is_sink_[v]) {
      net.terminal_pos_[v] = static_cast<int>(net.terminal_nodes_.size());
      net.terminal_nodes_.push_back(v);
    }
  for (auto& ra : arcs_) {
    Arc a;
    a.tail = net.node_index(ra.tail);
    a.head = net.node_index(ra.head);
    a.capacity = ra.capacity;
    a.transit = ra.transit;
    net.arcs_.push_back(std::move(a));
  }
  for (auto& [name, b] : supplies_) {
    int v = net.node_index(name);
    if (net.supplies_.count(v)) throw ParseError("duplicate supply for '" + name + "'");
    net.supplies_.emplace(v, b);
  }
  net.validate();
  return net;
}

ExtendedNetwork::ExtendedNetwork(std::shared_ptr<const Network> base,
                                 std::vector<char> in_subset, Rational horizon)
    : base_(std::move(base)), horizon_(std::move(horizon)), in_subset_(std::move(in_subset)) {
  if (horizon_.sign() < 0) throw std::invalid_argument("negative time horizon");
  if (in_subset_.size() != static_cast<std::size_t>(base_->terminal_count()))
    throw std::invalid_argument("subset flags do not match terminal count");
  for (const Arc& a : base_->arcs()) {
    tail_.push_back(a.tail);
    head_.push_back(a.head);
    capacity_.push_back(a.capacity);
    transit_.push_back(a.transit);
    active_.push_back(1);
  }
  int super = super_node();
  terminal_slot_.assign(base_->terminal_count(), -1);
  for (int i = 0; i < base_->terminal_count(); ++i) {
    int r = base_->terminals()[i];
    terminal_slot_[i] = static_cast<int>(tail_.size());
    if (base_->is_source(r)) {
      tail_.push_back(super);
      head_.push_back(r);
      transit_.push_back(Rational(0));
      active_.push_back(in_subset_[i]);  // super->s present for sources in X
    } else {
      tail_.push_back(r);
      head_.push_back(super);
      transit_.push_back(-horizon_);
      active_.push_back(!in_subset_[i]);  // t->super present for sinks outside X
    }
    capacity_.push_back(Capacity::infinite());
  }
}

int ExtendedNetwork::super_slot_of_terminal(int r) const {
  int i = base_->terminal_index(r);
  if (i < 0) throw std::invalid_argument("node is not a terminal");
  return terminal_slot_[i];
}

bool ExtendedNetwork::in_subset(int terminal_node) const {
  int i = base_->terminal_index(terminal_node);
  if (i < 0) throw std::invalid_argument("node is not a terminal");
  return in_subset_[i] != 0;
}

std::vector<int> ExtendedNetwork::active_super_slots() const {
  std::vector<int> out;
  for (int s = base_arc_count(); s < slot_count(); ++s)
    if (slot_active(s)) out.push_back(s);
  return out;
}

std::shared_ptr<const ExtendedNetwork> ExtendedNetwork::with_subset(
    std::vector<char> in_subset) const {
  return std::make_shared<ExtendedNetwork>(base_, std::move(in_subset), horizon_);
}

std::shared_ptr<const ExtendedNetwork> extend(std::shared_ptr<const Network> net,
                                              const std::vector<std::string>& x,
                                              const Rational& horizon) {
  std::vector<char> flags(net->terminal_count(), 0);
  for (auto& name : x) {
    int v = net->node_index(name);
    int i = net->terminal_index(v);
    if (i < 0) throw ParseError("subset member '" + name + "' is not a terminal");
    flags[i] = 1;
  }
  return std::make_shared<ExtendedNetwork>(std::move(net), std::move(flags), horizon);
}

std::shared_ptr<const ExtendedNetwork> extend_mask(std::shared_ptr<const Network> net,
                                                   unsigned mask, const Rational& horizon) {
  std::vector<char> flags(net->terminal_count(), 0);
  for (int i = 0; i < net->terminal_count(); ++i)
    if (mask & (1u << i)) flags[i] = 1;
  return std::make_shared<ExtendedNetwork>(std::move(net), std::move(flags), horizon);
}

std::shared_ptr<const ExtendedNetwork> full_extension(std::shared_ptr<const Network> net,
                                                      const Rational& horizon) {
  std::vector<char> flags(net->terminal_count(), 0);
  for (int i = 0; i < net->terminal_count(); ++i)
    flags[i] = net->is_source(net->terminals()[i]) ? 1 : 0;
  return std::make_shared<ExtendedNetwork>(std::move(net), std::move(flags), horizon);
}

}  // namespace tempoflow
