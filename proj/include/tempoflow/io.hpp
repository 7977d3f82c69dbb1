#pragma once

#include <nlohmann/json.hpp>

#include "tempoflow/algorithms.hpp"
#include "tempoflow/flow_over_time.hpp"
#include "tempoflow/transshipment.hpp"

namespace tempoflow {

/// Deterministic JSON: insertion-ordered keys, canonical rational strings.
using OrderedJson = nlohmann::ordered_json;

/// Schedule document: {"horizon": "p/q" | "inf", "arcs": [{tail, head,
/// segments: [{from, to, rate}]}]} with one entry per stored arc, in arc
/// order. Segment ends may be "inf" for flows that never settle.
OrderedJson schedule_to_json(const FlowOverTime& flow);

/// Parses a schedule against its network; arcs are matched by endpoints and
/// may appear in any order, unknown arcs are an error.
FlowOverTime schedule_from_json(std::shared_ptr<const Network> net, const OrderedJson& doc);

OrderedJson violations_to_json(const VerificationReport& report, const Network& net);
OrderedJson cut_to_json(const CutOverTime& cut, const Network& net, const Rational& horizon);
OrderedJson pattern_to_json(const ArrivalPattern& pattern);
OrderedJson chains_to_json(const ChainDecomposition& gamma, bool infinite_intervals);
OrderedJson certificate_to_json(const FeasibilityCertificate& cert, const Network& net);

}  // namespace tempoflow
