#include "bayesball/decision.hpp"

#include <algorithm>
#include <stdexcept>

namespace bayesball {

const char* to_string(ValueAggregation aggregation) {
  return aggregation == ValueAggregation::Sum ? "sum" : "product";
}

InfluenceDiagram::InfluenceDiagram(Network net, std::vector<NodeId> order,
                                   NodeSet evidence,
                                   ValueAggregation aggregation)
    : net_(std::move(net)),
      decision_order_(std::move(order)),
      evidence_(std::move(evidence)),
      aggregation_(aggregation) {
  NodeSet seen;
  for (const auto& d : decision_order_) {
    if (net_.kind(d) != NodeKind::Decision)
      throw ValidationError("decision-order-kind",
                            "decision_order entry '" + d +
                                "' is not a decision node",
                            {d});
    if (!seen.insert(d).second)
      throw ValidationError("decision-order-duplicate",
                            "decision_order lists '" + d + "' twice", {d});
  }
  for (const auto& id : net_.node_ids())
    if (net_.kind(id) == NodeKind::Decision && !seen.count(id))
      throw ValidationError("decision-order-incomplete",
                            "decision node '" + id +
                                "' is missing from decision_order",
                            {id});
  for (const auto& e : evidence_) {
    NodeKind kind = net_.kind(e);
    if (kind == NodeKind::Decision || kind == NodeKind::Value)
      throw ValidationError("evidence-kind",
                            "evidence node '" + e + "' has kind " +
                                std::string(to_string(kind)) +
                                "; only chance and deterministic nodes can "
                                "be observed as evidence",
                            {e});
  }
}

InformationSets information_sets(const InfluenceDiagram& diagram) {
  const Network& net = diagram.net();
  const auto& order = diagram.decision_order();
  std::size_t m = order.size();

  // Stage of each decision, and the functional descendants of each, for the
  // consistency check below.
  std::vector<NodeSet> decision_descendants(m);
  for (std::size_t i = 0; i < m; ++i)
    decision_descendants[i] = net.descendants(order[i], true);

  InformationSets sets;
  sets.observed_before.resize(m);
  sets.information.resize(m);
  NodeSet known = diagram.evidence();  // I(d_{i-1}) ∪ evidence so far
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId& d = order[i];
    for (const auto& parent : net.parents(d)) {
      // An informational arc is only consistent when the parent's value can
      // exist before d is decided: it must be neither a decision made at or
      // after d nor functionally downstream of one.
      for (std::size_t later = i; later < m; ++later) {
        if ((later > i && parent == order[later]) ||
            decision_descendants[later].count(parent))
          throw ValidationError(
              "temporal-inconsistency",
              "informational arc (" + parent + ", " + d + ") claims '" +
                  parent + "' is observed before '" + d +
                  "', but its value is only realized once '" + order[later] +
                  "' has been decided",
              {parent, d});
      }
      if (net.kind(parent) == NodeKind::Decision) continue;
      if (!known.count(parent)) sets.observed_before[i].insert(parent);
    }
    sets.information[i] = sets.observed_before[i];
    if (i == 0) {
      sets.information[i].insert(diagram.evidence().begin(),
                                 diagram.evidence().end());
    } else {
      sets.information[i].insert(order[i - 1]);
      sets.information[i].insert(sets.information[i - 1].begin(),
                                 sets.information[i - 1].end());
    }
    known = sets.information[i];
  }
  return sets;
}

NodeSet relevant_values(const InfluenceDiagram& diagram, std::size_t stage) {
  std::size_t m = diagram.decision_count();
  if (stage < 1 || stage > m)
    throw std::out_of_range("relevant_values: stage " + std::to_string(stage) +
                            " is outside 1.." + std::to_string(m));
  const Network& net = diagram.net();
  NodeSet below = net.descendants(diagram.decision_order()[stage - 1], true);
  NodeSet later;
  if (stage < m)
    later = net.descendants(diagram.decision_order()[stage], true);
  NodeSet values;
  for (const auto& id : below)
    if (net.kind(id) == NodeKind::Value && !later.count(id))
      values.insert(id);
  return values;
}

DecisionRequisites decision_requisites(const InfluenceDiagram& diagram) {
  const Network& net = diagram.net();
  DecisionRequisites result;
  result.marks = MarkState(net.node_count());
  std::size_t m = diagram.decision_count();
  if (m == 0) return result;

  InformationSets info = information_sets(diagram);
  RunOptions options;
  options.ignore_informational = true;

  auto visited_within = [&](const NodeSet& scope) {
    NodeSet out;
    for (const auto& id : scope)
      if (result.marks.visited(net.index_of(id))) out.insert(id);
    return out;
  };

  NodeSet carried;  // requisite observations of the stage above
  for (std::size_t i = m; i >= 1; --i) {
    const NodeId& decision = diagram.decision_order()[i - 1];
    NodeSet targets = relevant_values(diagram, i);
    targets.insert(carried.begin(), carried.end());
    NodeSet observed = info.information[i - 1];
    observed.insert(decision);
    if (i == m)
      result.marks = run(net, Query{targets, observed}, options);
    else
      resume(net, result.marks, targets, observed, options);

    StageRequisites stage;
    stage.stage = static_cast<int>(i);
    stage.decision = decision;
    stage.requisite_observations = visited_within(info.information[i - 1]);
    stage.requisite_probability = result.marks.top_set(net);
    stage.decision_irrelevant = !result.marks.visited(net.index_of(decision));
    carried = stage.requisite_observations;
    result.stages.push_back(std::move(stage));
  }

  resume(net, result.marks, carried, diagram.evidence(), options);
  StageRequisites now;
  now.stage = 0;
  now.requisite_observations = visited_within(diagram.evidence());
  now.requisite_probability = result.marks.top_set(net);
  result.stages.push_back(std::move(now));

  for (const auto& d : diagram.decision_order())
    for (const auto& stage : result.stages)
      if (stage.decision == d && stage.decision_irrelevant)
        result.irrelevant_decisions.push_back(d);
  return result;
}

}  // namespace bayesball
