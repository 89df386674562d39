#include "bayesball/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace bayesball {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Chance: return "chance";
    case NodeKind::Deterministic: return "deterministic";
    case NodeKind::Decision: return "decision";
    case NodeKind::Value: return "value";
  }
  return "?";
}

Network::Network(const std::vector<std::pair<NodeId, NodeKind>>& nodes,
                 const std::vector<std::pair<NodeId, NodeId>>& arcs) {
  ids_.reserve(nodes.size());
  kinds_.reserve(nodes.size());
  for (const auto& [id, kind] : nodes) {
    if (id.empty()) {
      load_findings_.push_back({"empty-node-id", "node with empty id", {}});
      continue;
    }
    if (index_.count(id)) {
      load_findings_.push_back(
          {"duplicate-node-id", "node '" + id + "' declared twice", {id}});
      continue;
    }
    index_.emplace(id, static_cast<std::int32_t>(ids_.size()));
    ids_.push_back(id);
    kinds_.push_back(kind);
  }

  parents_.resize(ids_.size());
  children_.resize(ids_.size());
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  for (const auto& [parent, child] : arcs) {
    auto pit = index_.find(parent);
    auto cit = index_.find(child);
    if (pit == index_.end() || cit == index_.end()) {
      load_findings_.push_back({"unknown-arc-endpoint",
                                "arc (" + parent + ", " + child +
                                    ") references a missing node",
                                {parent, child}});
      continue;
    }
    if (pit->second == cit->second) {
      load_findings_.push_back(
          {"self-arc", "arc (" + parent + ", " + child + ") is a self-loop",
           {parent}});
      continue;
    }
    if (!seen.insert({pit->second, cit->second}).second) {
      load_findings_.push_back({"duplicate-arc",
                                "arc (" + parent + ", " + child +
                                    ") declared twice",
                                {parent, child}});
      continue;
    }
    arcs_.emplace_back(parent, child);
    children_[pit->second].push_back(cit->second);
    parents_[cit->second].push_back(pit->second);
  }

  // Kahn's algorithm with an id-ordered frontier: topological positions are
  // deterministic and ties fall back to lexicographic node id.
  auto by_id = [this](std::int32_t a, std::int32_t b) {
    return ids_[a] > ids_[b];  // min-heap on id
  };
  std::priority_queue<std::int32_t, std::vector<std::int32_t>, decltype(by_id)>
      frontier(by_id);
  std::vector<std::int32_t> indegree(ids_.size(), 0);
  for (std::size_t i = 0; i < ids_.size(); ++i)
    indegree[i] = static_cast<std::int32_t>(parents_[i].size());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (indegree[i] == 0) frontier.push(static_cast<std::int32_t>(i));
  topo_order_.reserve(ids_.size());
  while (!frontier.empty()) {
    std::int32_t i = frontier.top();
    frontier.pop();
    topo_order_.push_back(ids_[i]);
    for (std::int32_t c : children_[i])
      if (--indegree[c] == 0) frontier.push(c);
  }
  if (topo_order_.size() != ids_.size()) {
    acyclic_ = false;
    std::vector<NodeId> cyclic;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (indegree[i] > 0) cyclic.push_back(ids_[i]);
    load_findings_.push_back(
        {"cycle", "arcs form a directed cycle", cyclic});
    topo_order_ = ids_;  // fallback so iteration stays well defined
  }
}

NodeKind Network::kind(const NodeId& id) const {
  return kinds_[index_of(id)];
}

bool Network::is_informational(const NodeId& parent, const NodeId& child) const {
  std::size_t p = index_of(parent);
  std::size_t c = index_of(child);
  if (kinds_[c] != NodeKind::Decision) return false;
  const auto& up = parents_[c];
  return std::find(up.begin(), up.end(), static_cast<std::int32_t>(p)) !=
         up.end();
}

std::vector<std::pair<NodeId, NodeId>> Network::informational_arcs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& arc : arcs_)
    if (kinds_[index_of(arc.second)] == NodeKind::Decision) out.push_back(arc);
  return out;
}

std::size_t Network::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNodeError(id);
  return static_cast<std::size_t>(it->second);
}

NodeSet Network::parents(const NodeId& j) const {
  NodeSet out;
  for (std::int32_t p : parents_[index_of(j)]) out.insert(ids_[p]);
  return out;
}

NodeSet Network::children(const NodeId& j) const {
  NodeSet out;
  for (std::int32_t c : children_[index_of(j)]) out.insert(ids_[c]);
  return out;
}

NodeSet Network::descendants(const NodeId& j, bool ignore_informational) const {
  std::size_t start = index_of(j);
  std::vector<char> reached(ids_.size(), 0);
  std::vector<std::int32_t> stack{static_cast<std::int32_t>(start)};
  while (!stack.empty()) {
    std::int32_t i = stack.back();
    stack.pop_back();
    for (std::int32_t c : children_[i]) {
      if (ignore_informational && kinds_[c] == NodeKind::Decision) continue;
      if (!reached[c]) {
        reached[c] = 1;
        stack.push_back(c);
      }
    }
  }
  NodeSet out;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (reached[i] && i != start) out.insert(ids_[i]);
  return out;
}

NodeSet Network::functionally_determined(const NodeSet& observed) const {
  std::vector<char> determined(ids_.size(), 0);
  std::vector<std::int32_t> missing(ids_.size(), 0);
  std::vector<std::int32_t> worklist;
  auto settle = [&](std::int32_t i) {
    if (!determined[i]) {
      determined[i] = 1;
      worklist.push_back(i);
    }
  };
  for (std::size_t i = 0; i < ids_.size(); ++i)
    missing[i] = static_cast<std::int32_t>(parents_[i].size());
  for (const auto& id : observed) settle(static_cast<std::int32_t>(index_of(id)));
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (kinds_[i] == NodeKind::Deterministic && missing[i] == 0)
      settle(static_cast<std::int32_t>(i));
  while (!worklist.empty()) {
    std::int32_t i = worklist.back();
    worklist.pop_back();
    for (std::int32_t c : children_[i]) {
      if (kinds_[c] != NodeKind::Deterministic || determined[c]) continue;
      if (--missing[c] == 0) settle(c);
    }
  }
  NodeSet out;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (determined[i]) out.insert(ids_[i]);
  return out;
}

ValidationReport validate(const Network& net, ValidationMode mode) {
  ValidationReport report;
  report.errors = net.load_findings();

  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const NodeId& id = net.id_of(i);
    NodeKind kind = net.kind_of(i);
    if (mode == ValidationMode::BeliefNetwork) {
      if (kind == NodeKind::Decision || kind == NodeKind::Value)
        report.errors.push_back({"kind-not-allowed",
                                 "node '" + id + "' has kind " +
                                     to_string(kind) +
                                     ", not allowed in a belief network",
                                 {id}});
      continue;
    }
    // influence-diagram mode
    if (kind == NodeKind::Value) {
      if (!net.child_indices(i).empty())
        report.errors.push_back(
            {"value-has-children",
             "value node '" + id + "' must not have outgoing arcs",
             {id}});
      if (net.parent_indices(i).empty())
        report.errors.push_back(
            {"value-without-parents",
             "value node '" + id + "' has no incoming arcs",
             {id}});
    } else if (kind == NodeKind::Decision && net.is_acyclic()) {
      NodeSet below = net.descendants(id, /*ignore_informational=*/true);
      bool reaches_value = false;
      for (const auto& d : below)
        if (net.kind(d) == NodeKind::Value) {
          reaches_value = true;
          break;
        }
      if (!reaches_value)
        report.warnings.push_back(
            {"decision-no-value-descendant",
             "decision '" + id + "' cannot influence any value node",
             {id}});
    }
  }
  return report;
}

}  // namespace bayesball
