#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bayesball/errors.hpp"

namespace bayesball {

using NodeId = std::string;
using NodeSet = std::set<NodeId>;

enum class NodeKind { Chance, Deterministic, Decision, Value };

const char* to_string(NodeKind kind);

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;
  bool ok() const { return errors.empty(); }
};

enum class ValidationMode { BeliefNetwork, InfluenceDiagram };

// Immutable directed graph of typed nodes.
//
// Construction is total: structural faults (empty or duplicate ids, arcs
// with missing endpoints, self-arcs, duplicate arcs, cycles) never throw.
// The offending input is dropped from the resolved arc and node lists and a
// finding is recorded, so a loader can report every problem at once through
// validate(). Query operations are only meaningful on networks that
// validate cleanly.
//
// Arcs whose child is a Decision node are informational: they say what is
// known when the decision is made, not that the child is a function of the
// parent. Every arc into a Decision node is informational by definition, so
// the distinction is derived rather than stored.
class Network {
 public:
  Network() = default;
  Network(const std::vector<std::pair<NodeId, NodeKind>>& nodes,
          const std::vector<std::pair<NodeId, NodeId>>& arcs);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  bool contains(const NodeId& id) const { return index_.count(id) != 0; }

  // Node ids in insertion order.
  const std::vector<NodeId>& node_ids() const { return ids_; }

  // Resolved arcs in insertion order: endpoints exist, no self-arcs, no
  // duplicates. This order drives adjacency iteration, so it also fixes the
  // visit order of any deterministic traversal schedule.
  const std::vector<std::pair<NodeId, NodeId>>& arcs() const { return arcs_; }

  NodeKind kind(const NodeId& id) const;
  bool is_informational(const NodeId& parent, const NodeId& child) const;
  std::vector<std::pair<NodeId, NodeId>> informational_arcs() const;

  bool is_acyclic() const { return acyclic_; }

  // Topological order of the resolved arcs, ties broken by node id.
  // Falls back to insertion order when the graph is cyclic.
  const std::vector<NodeId>& topological_order() const { return topo_order_; }

  // Direct parents of j; informational arcs are included. Callers that must
  // ignore them (the influence-diagram sweep does) say so where they
  // traverse, not here.
  NodeSet parents(const NodeId& j) const;
  NodeSet children(const NodeId& j) const;

  // Strict descendants of j (j itself excluded). With ignore_informational,
  // arcs into Decision nodes do not count, so decisions never appear as
  // descendants: every arc into a decision is informational.
  NodeSet descendants(const NodeId& j, bool ignore_informational = false) const;

  // Least fixed point of: F = observed ∪ { deterministic i : parents(i) ⊆ F }.
  // A node in the result has a value fixed once `observed` is known, either
  // because it is observed itself or because it is a deterministic function
  // of nodes that are. Deterministic roots belong to every result, including
  // the one for an empty observed set.
  NodeSet functionally_determined(const NodeSet& observed) const;

  // Index-based view used by the traversal engine and the exporters.
  std::size_t index_of(const NodeId& id) const;  // throws UnknownNodeError
  const NodeId& id_of(std::size_t index) const { return ids_[index]; }
  NodeKind kind_of(std::size_t index) const { return kinds_[index]; }
  const std::vector<std::int32_t>& parent_indices(std::size_t index) const {
    return parents_[index];
  }
  const std::vector<std::int32_t>& child_indices(std::size_t index) const {
    return children_[index];
  }

  // Faults recorded while resolving the constructor input.
  const std::vector<Finding>& load_findings() const { return load_findings_; }

 private:
  std::vector<NodeId> ids_;
  std::vector<NodeKind> kinds_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::vector<std::pair<NodeId, NodeId>> arcs_;
  std::vector<std::vector<std::int32_t>> parents_;
  std::vector<std::vector<std::int32_t>> children_;
  std::vector<NodeId> topo_order_;
  bool acyclic_ = true;
  std::vector<Finding> load_findings_;
};

// Structural checks over a constructed network. Load findings (dangling or
// duplicate arcs, bad ids, cycles) surface as errors in either mode. Belief
// networks additionally reject Decision and Value nodes. Influence diagrams
// reject value nodes with children or without parents, and warn about
// decisions that cannot reach any value node.
ValidationReport validate(const Network& net, ValidationMode mode);

}  // namespace bayesball
