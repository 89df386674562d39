#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bayesball/decision.hpp"
#include "bayesball/graph.hpp"

namespace bayesball {

// On-disk description of a network or influence diagram. Field order inside
// `nodes` and `arcs` is part of the document: it fixes adjacency iteration
// order and therefore the deterministic trace of a traversal.
//
// A document describes an influence diagram exactly when decision_order is
// present (an empty list is a diagram with no decisions). evidence and
// value_aggregation are only allowed alongside decision_order.
struct NetworkDocument {
  int format_version = 1;
  std::vector<std::pair<NodeId, NodeKind>> nodes;
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::optional<std::vector<NodeId>> decision_order;
  std::optional<std::vector<NodeId>> evidence;
  std::optional<ValueAggregation> value_aggregation;

  bool operator==(const NetworkDocument&) const = default;
};

// Strict JSON reader: unknown fields, wrong types, unknown node kinds and
// unsupported format versions are all SchemaError; malformed JSON is
// ParseError with line and column.
NetworkDocument parse_document(const std::string& text);

// Deterministic writer; parse_document(serialize_document(d)) == d.
std::string serialize_document(const NetworkDocument& document);

NetworkDocument to_document(const Network& net);
NetworkDocument to_document(const InfluenceDiagram& diagram);

using ParsedModel = std::variant<Network, InfluenceDiagram>;

// Build and validate the model a document describes. Any validation errors
// are thrown as ValidationError carrying the report findings verbatim.
ParsedModel load_model(const NetworkDocument& document);

// parse_document + load_model.
ParsedModel load_model_from_text(const std::string& text);

}  // namespace bayesball
