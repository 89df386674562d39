#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bayesball/bayes_ball.hpp"
#include "bayesball/graph.hpp"

namespace bayesball {

enum class ValueAggregation { Sum, Product };

const char* to_string(ValueAggregation aggregation);

// A network with Decision and Value nodes, a total time order over the
// decisions, and the set of nodes already observed before the first
// decision. The aggregation mode records how the separable value nodes
// combine; structural analysis stores it but never needs it.
class InfluenceDiagram {
 public:
  InfluenceDiagram(Network net, std::vector<NodeId> decision_order,
                   NodeSet evidence,
                   ValueAggregation aggregation = ValueAggregation::Sum);

  const Network& net() const { return net_; }
  const std::vector<NodeId>& decision_order() const { return decision_order_; }
  const NodeSet& evidence() const { return evidence_; }
  ValueAggregation value_aggregation() const { return aggregation_; }
  std::size_t decision_count() const { return decision_order_.size(); }

 private:
  Network net_;
  std::vector<NodeId> decision_order_;
  NodeSet evidence_;
  ValueAggregation aggregation_;
};

// What is known when each decision is made, derived from the informational
// arcs under the no-forgetting convention: a decision maker remembers the
// evidence, all earlier decisions, and everything observed before them.
//
//   observed_before[i-1] = W_i, the non-decision informational parents of
//                          d_i not already known at d_{i-1};
//   information[i-1]     = I(d_i) = W_i ∪ {d_{i-1}} ∪ I(d_{i-1}),
//                          with I(d_1) = W_1 ∪ evidence.
//
// The chain evidence ⊆ {d_1} ∪ I(d_1) ⊆ … ⊆ {d_m} ∪ I(d_m) is monotone by
// construction.
struct InformationSets {
  std::vector<NodeSet> observed_before;
  std::vector<NodeSet> information;
};

// Throws ValidationError with code "temporal-inconsistency" when an
// informational arc claims a node is observed before a decision although the
// node can only be realized after a decision made at or after that point
// (the node is a later decision, or a functional descendant of one).
InformationSets information_sets(const InfluenceDiagram& diagram);

// The value nodes charged to stage i (1-based): value descendants of d_i
// that are not value descendants of d_{i+1}, computed over functional arcs
// only. For i = m every value descendant of d_m counts.
NodeSet relevant_values(const InfluenceDiagram& diagram, std::size_t stage);

struct StageRequisites {
  int stage = 0;            // m … 1, then 0 for the pre-decision view
  NodeId decision;          // empty at stage 0
  NodeSet requisite_observations;  // visited ∩ information set of the stage
  NodeSet requisite_probability;   // all top-marked nodes so far
  bool decision_irrelevant = false;
};

struct DecisionRequisites {
  std::vector<StageRequisites> stages;  // ordered stage m first, stage 0 last
  std::vector<NodeId> irrelevant_decisions;  // in decision order
  MarkState marks;  // final cumulative mark state of the sweep
};

// Backward sweep over the decisions that reuses one mark state throughout.
//
// Stage m runs a fresh traversal on the stage-m values given
// {d_m} ∪ I(d_m); informational arcs are masked everywhere. Each earlier
// stage i shrinks the observed set to {d_i} ∪ I(d_i) and resumes on the
// stage-i values plus the stage-(i+1) requisite observations, scheduled as
// from-child visits. Re-scheduling those observations is what lets nodes
// that just lost their observed status pass the ball through to their
// parents; no marks are ever cleared. Stage 0 resumes once more on the
// stage-1 requisite observations given only the evidence.
//
// A decision is irrelevant iff it is still unvisited when its own stage has
// drained: no value it is charged with depends on it, so any fixed choice
// does as well as an optimized one. With no decisions at all the result has
// no stages; a plain traversal answers such diagrams.
DecisionRequisites decision_requisites(const InfluenceDiagram& diagram);

}  // namespace bayesball
