#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tempoflow/rational.hpp"

namespace tempoflow {

/// Malformed or invalid input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  int tail = 0;
  int head = 0;
  Capacity capacity;  // > 0 for stored arcs; the implicit opposite arc has capacity 0
  Rational transit;   // >= 0 for stored arcs; the opposite arc has transit -transit
};

/// Flow network with transit times. Directed graph, no parallel or opposite
/// stored arcs; terminals are partitioned into sources (no incoming arcs) and
/// sinks (no outgoing arcs). Immutable after construction.
class Network {
 public:
  /// Parses and validates the JSON document format described in the README.
  static Network parse(const std::string& text);

  int node_count() const { return static_cast<int>(node_names_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::string& node_name(int v) const { return node_names_[v]; }
  /// Index of a named node; throws ParseError for unknown names.
  int node_index(const std::string& name) const;
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int a) const { return arcs_[a]; }

  bool is_source(int v) const { return is_source_[v] != 0; }
  bool is_sink(int v) const { return is_sink_[v] != 0; }
  bool is_terminal(int v) const { return is_source(v) || is_sink(v); }

  /// Terminal node indices in input order (sources and sinks interleaved as
  /// the node list gives them); the canonical ground set for subsets X.
  const std::vector<int>& terminals() const { return terminal_nodes_; }
  int terminal_count() const { return static_cast<int>(terminal_nodes_.size()); }
  /// Position of node v in terminals(); -1 when v is not a terminal.
  int terminal_index(int v) const { return terminal_pos_[v]; }

  /// Supplies/demands from the document's optional "supplies" field, keyed by
  /// node index. Validation of the supply-vector invariants happens at use.
  const std::map<int, Rational>& file_supplies() const { return supplies_; }

  friend class NetworkBuilder;

 private:
  Network() = default;
  void validate() const;

  std::vector<std::string> node_names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Arc> arcs_;
  std::vector<char> is_source_;
  std::vector<char> is_sink_;
  std::vector<int> terminal_nodes_;
  std::vector<int> terminal_pos_;
  std::map<int, Rational> supplies_;
};

/// Programmatic construction, used by tests and generators.
class NetworkBuilder {
 public:
  NetworkBuilder& node(const std::string& name);
  NetworkBuilder& source(const std::string& name);
  NetworkBuilder& sink(const std::string& name);
  NetworkBuilder& arc(const std::string& tail, const std::string& head, Capacity capacity,
                      Rational transit);
  NetworkBuilder& supply(const std::string& node, Rational b);
  /// Validates all network invariants; throws ParseError on violation.
  Network build() const;

 private:
  struct RawArc {
    std::string tail, head;
    Capacity capacity;
    Rational transit;
  };
  std::vector<std::pair<std::string, int>> nodes_;  // name, kind (0 plain, 1 source, 2 sink)
  std::vector<RawArc> arcs_;
  std::vector<std::pair<std::string, Rational>> supplies_;
};

/// A directed traversal of a stored arc slot: forward uses (capacity, transit)
/// as stored, backward is the implicit opposite arc (capacity 0, transit -t).
struct Orientation {
  int slot = -1;
  bool backward = false;

  friend bool operator==(const Orientation& a, const Orientation& b) {
    return a.slot == b.slot && a.backward == b.backward;
  }
};

/// Extension of a network by the super node and its arcs for a terminal
/// subset X and horizon T: arcs super->s (capacity inf, transit 0) for
/// sources s in X, and t->super (capacity inf, transit -T) for sinks t not
/// in X.
///
/// Arc slots are stable across every subset X of the same base network: slots
/// [0, m) are the base arcs, followed by one reserved slot per source
/// (super->s) and one per sink (t->super), in terminal order. Slots whose
/// terminal does not match X are inactive and behave as absent. Stable slots
/// let static flows and chain decompositions move between the extensions an
/// algorithm builds while it adds or removes super arcs.
class ExtendedNetwork {
 public:
  ExtendedNetwork(std::shared_ptr<const Network> base, std::vector<char> in_subset,
                  Rational horizon);

  const Network& base() const { return *base_; }
  const std::shared_ptr<const Network>& base_ptr() const { return base_; }
  const Rational& horizon() const { return horizon_; }
  int super_node() const { return base_->node_count(); }
  int node_count() const { return base_->node_count() + 1; }

  int slot_count() const { return static_cast<int>(tail_.size()); }
  int base_arc_count() const { return base_->arc_count(); }
  bool is_super_slot(int slot) const { return slot >= base_->arc_count(); }
  bool slot_active(int slot) const { return active_[slot] != 0; }

  int tail(int slot) const { return tail_[slot]; }
  int head(int slot) const { return head_[slot]; }
  const Capacity& capacity(int slot) const { return capacity_[slot]; }
  const Rational& transit(int slot) const { return transit_[slot]; }

  int from(const Orientation& o) const { return o.backward ? head_[o.slot] : tail_[o.slot]; }
  int to(const Orientation& o) const { return o.backward ? tail_[o.slot] : head_[o.slot]; }
  Capacity capacity(const Orientation& o) const {
    return o.backward ? Capacity(Rational(0)) : capacity_[o.slot];
  }
  Rational transit(const Orientation& o) const {
    return o.backward ? -transit_[o.slot] : transit_[o.slot];
  }

  /// Reserved slot of the super arc attached to terminal r (super->r for a
  /// source, r->super for a sink), active or not.
  int super_slot_of_terminal(int r) const;

  bool in_subset(int terminal_node) const;
  const std::vector<char>& subset_flags() const { return in_subset_; }

  /// Active super-arc slots, ascending.
  std::vector<int> active_super_slots() const;

  /// Same base and horizon with terminal r added to / removed from X.
  std::shared_ptr<const ExtendedNetwork> with_subset(std::vector<char> in_subset) const;

 private:
  std::shared_ptr<const Network> base_;
  Rational horizon_;
  std::vector<char> in_subset_;  // by terminal index
  std::vector<int> tail_, head_;
  std::vector<Capacity> capacity_;
  std::vector<Rational> transit_;
  std::vector<char> active_;
  std::vector<int> terminal_slot_;  // by terminal index
};

/// The extension N_X. X is given by node names; throws ParseError when X
/// contains a non-terminal. T must be >= 0.
std::shared_ptr<const ExtendedNetwork> extend(std::shared_ptr<const Network> net,
                                              const std::vector<std::string>& x,
                                              const Rational& horizon);

/// N_X by terminal-index mask.
std::shared_ptr<const ExtendedNetwork> extend_mask(std::shared_ptr<const Network> net,
                                                   unsigned mask, const Rational& horizon);

/// The extension hosting every chain decomposition: all super arcs active
/// (this is N_{S+}, which carries super->s for every source and t->super for
/// every sink).
std::shared_ptr<const ExtendedNetwork> full_extension(std::shared_ptr<const Network> net,
                                                      const Rational& horizon);

}  // namespace tempoflow
