#include "bayesball/document.hpp"

#include <set>

#include <json.hpp>

namespace bayesball {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

NodeKind parse_kind(const std::string& text) {
  if (text == "chance") return NodeKind::Chance;
  if (text == "deterministic") return NodeKind::Deterministic;
  if (text == "decision") return NodeKind::Decision;
  if (text == "value") return NodeKind::Value;
  throw SchemaError("unknown node kind '" + text + "'");
}

std::vector<NodeId> parse_id_list(const json& value, const std::string& field) {
  if (!value.is_array())
    throw SchemaError("field '" + field + "' must be an array of node ids");
  std::vector<NodeId> out;
  for (const auto& entry : value) {
    if (!entry.is_string())
      throw SchemaError("field '" + field + "' must contain only strings");
    out.push_back(entry.get<std::string>());
  }
  return out;
}

}  // namespace

NetworkDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& error) {
    auto [line, column] = line_and_column(text, error.byte ? error.byte - 1 : 0);
    throw ParseError(line, column, error.what());
  }
  if (!root.is_object())
    throw SchemaError("document root must be a JSON object");

  static const std::set<std::string> known_fields = {
      "format_version", "nodes",    "arcs",
      "decision_order", "evidence", "value_aggregation"};
  for (const auto& [key, value] : root.items())
    if (!known_fields.count(key))
      throw SchemaError("unknown field '" + key + "'");
  if (!root.contains("format_version") ||
      !root["format_version"].is_number_integer())
    throw SchemaError("field 'format_version' must be an integer");
  if (root["format_version"].get<int>() != 1)
    throw SchemaError("unsupported format_version " +
                      root["format_version"].dump() + "; expected 1");
  if (!root.contains("nodes") || !root["nodes"].is_array())
    throw SchemaError("field 'nodes' must be an array");
  if (!root.contains("arcs") || !root["arcs"].is_array())
    throw SchemaError("field 'arcs' must be an array");

  NetworkDocument doc;
  for (const auto& node : root["nodes"]) {
    if (!node.is_object())
      throw SchemaError("each node must be an object {id, kind}");
    for (const auto& [key, value] : node.items())
      if (key != "id" && key != "kind")
        throw SchemaError("unknown node field '" + key + "'");
    if (!node.contains("id") || !node["id"].is_string())
      throw SchemaError("node field 'id' must be a string");
    if (!node.contains("kind") || !node["kind"].is_string())
      throw SchemaError("node field 'kind' must be a string");
    doc.nodes.emplace_back(node["id"].get<std::string>(),
                           parse_kind(node["kind"].get<std::string>()));
  }
  for (const auto& arc : root["arcs"]) {
    if (!arc.is_array() || arc.size() != 2 || !arc[0].is_string() ||
        !arc[1].is_string())
      throw SchemaError("each arc must be a pair [parent, child] of strings");
    doc.arcs.emplace_back(arc[0].get<std::string>(), arc[1].get<std::string>());
  }
  if (root.contains("decision_order"))
    doc.decision_order = parse_id_list(root["decision_order"], "decision_order");
  if (root.contains("evidence")) {
    if (!doc.decision_order)
      throw SchemaError("field 'evidence' requires 'decision_order'");
    doc.evidence = parse_id_list(root["evidence"], "evidence");
  }
  if (root.contains("value_aggregation")) {
    if (!doc.decision_order)
      throw SchemaError("field 'value_aggregation' requires 'decision_order'");
    const auto& mode = root["value_aggregation"];
    if (!mode.is_string())
      throw SchemaError("field 'value_aggregation' must be a string");
    std::string name = mode.get<std::string>();
    if (name == "sum")
      doc.value_aggregation = ValueAggregation::Sum;
    else if (name == "product")
      doc.value_aggregation = ValueAggregation::Product;
    else
      throw SchemaError("value_aggregation must be 'sum' or 'product', got '" +
                        name + "'");
  }
  return doc;
}

std::string serialize_document(const NetworkDocument& document) {
  json root;
  root["format_version"] = document.format_version;
  root["nodes"] = json::array();
  for (const auto& [id, kind] : document.nodes)
    root["nodes"].push_back({{"id", id}, {"kind", to_string(kind)}});
  root["arcs"] = json::array();
  for (const auto& [parent, child] : document.arcs)
    root["arcs"].push_back({parent, child});
  if (document.decision_order) root["decision_order"] = *document.decision_order;
  if (document.evidence) root["evidence"] = *document.evidence;
  if (document.value_aggregation)
    root["value_aggregation"] = to_string(*document.value_aggregation);
  return root.dump(2) + "\n";
}

NetworkDocument to_document(const Network& net) {
  NetworkDocument doc;
  for (const auto& id : net.node_ids()) doc.nodes.emplace_back(id, net.kind(id));
  doc.arcs = net.arcs();
  return doc;
}

NetworkDocument to_document(const InfluenceDiagram& diagram) {
  NetworkDocument doc = to_document(diagram.net());
  doc.decision_order = diagram.decision_order();
  doc.evidence = std::vector<NodeId>(diagram.evidence().begin(),
                                     diagram.evidence().end());
  doc.value_aggregation = diagram.value_aggregation();
  return doc;
}

ParsedModel load_model(const NetworkDocument& document) {
  Network net(document.nodes, document.arcs);
  ValidationMode mode = document.decision_order
                            ? ValidationMode::InfluenceDiagram
                            : ValidationMode::BeliefNetwork;
  ValidationReport report = validate(net, mode);
  if (!report.ok()) throw ValidationError(report.errors);
  if (!document.decision_order) return net;
  NodeSet evidence;
  if (document.evidence)
    evidence.insert(document.evidence->begin(), document.evidence->end());
  for (const auto& id : evidence) net.index_of(id);  // reject unknown evidence
  return InfluenceDiagram(
      std::move(net), *document.decision_order, std::move(evidence),
      document.value_aggregation.value_or(ValueAggregation::Sum));
}

ParsedModel load_model_from_text(const std::string& text) {
  return load_model(parse_document(text));
}

}  // namespace bayesball
