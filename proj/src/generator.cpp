#include "bayesball/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bayesball {
namespace {

void check_probability(double value, const char* name) {
  if (value < 0.0 || value > 1.0)
    throw std::invalid_argument(std::string(name) + " must be within [0, 1]");
}

std::string node_name(std::size_t i) { return "n" + std::to_string(i); }

}  // namespace

Network random_network(const GenParams& params) {
  check_probability(params.arc_probability, "arc_probability");
  check_probability(params.deterministic_fraction, "deterministic_fraction");
  check_probability(params.observed_fraction, "observed_fraction");

  std::mt19937 rng(params.seed);
  std::bernoulli_distribution deterministic(params.deterministic_fraction);
  std::bernoulli_distribution arc(params.arc_probability);

  std::vector<std::pair<NodeId, NodeKind>> nodes;
  nodes.reserve(params.node_count);
  for (std::size_t i = 0; i < params.node_count; ++i)
    nodes.emplace_back(node_name(i), deterministic(rng)
                                         ? NodeKind::Deterministic
                                         : NodeKind::Chance);

  std::vector<std::size_t> order(params.node_count);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (arc(rng))
        arcs.emplace_back(node_name(order[a]), node_name(order[b]));
  return Network(nodes, arcs);
}

Query random_query(const Network& net, double observed_fraction,
                   double target_probability, std::uint32_t seed) {
  check_probability(observed_fraction, "observed_fraction");
  check_probability(target_probability, "target_probability");
  std::mt19937 rng(seed);
  std::bernoulli_distribution observe(observed_fraction);
  std::bernoulli_distribution target(target_probability);
  Query query;
  for (const auto& id : net.node_ids()) {
    if (observe(rng)) query.observed.insert(id);
    if (target(rng)) query.targets.insert(id);
  }
  return query;
}

InfluenceDiagram random_influence_diagram(const DiagramGenParams& params) {
  const GenParams& base = params.base;
  check_probability(base.arc_probability, "arc_probability");
  check_probability(base.deterministic_fraction, "deterministic_fraction");
  check_probability(base.observed_fraction, "observed_fraction");
  check_probability(params.value_fraction, "value_fraction");
  if (params.decision_count > base.node_count)
    throw std::invalid_argument("decision_count exceeds node_count");

  std::mt19937 rng(base.seed);
  std::bernoulli_distribution deterministic(base.deterministic_fraction);
  std::bernoulli_distribution arc(base.arc_probability);
  std::bernoulli_distribution value(params.value_fraction);
  std::bernoulli_distribution observe(base.observed_fraction);

  std::size_t n = base.node_count;
  std::vector<NodeKind> kinds(n);
  for (std::size_t i = 0; i < n; ++i)
    kinds[i] = deterministic(rng) ? NodeKind::Deterministic : NodeKind::Chance;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // Decisions occupy a random ascending subset of the topological positions;
  // their time order is their position order.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  std::shuffle(positions.begin(), positions.end(), rng);
  positions.resize(params.decision_count);
  std::sort(positions.begin(), positions.end());
  std::vector<NodeId> decision_order;
  for (std::size_t p : positions) {
    kinds[order[p]] = NodeKind::Decision;
    decision_order.push_back(node_name(order[p]));
  }

  std::vector<std::vector<std::size_t>> children_at(n);
  std::vector<std::size_t> parent_count(n, 0);
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (arc(rng)) {
        children_at[a].push_back(b);
        ++parent_count[order[b]];
      }

  // Sinks with parents may become value nodes. Their incoming arcs stay;
  // having no outgoing arcs keeps the diagram well formed.
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t i = order[p];
    if (kinds[i] == NodeKind::Decision) continue;
    if (children_at[p].empty() && parent_count[i] > 0 && value(rng))
      kinds[i] = NodeKind::Value;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b : children_at[a])
      arcs.emplace_back(node_name(order[a]), node_name(order[b]));

  std::vector<std::pair<NodeId, NodeKind>> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.emplace_back(node_name(i), kinds[i]);

  // Evidence precedes the first decision, so it can never be functionally
  // downstream of one.
  std::size_t first_decision = positions.empty() ? n : positions.front();
  NodeSet evidence;
  for (std::size_t p = 0; p < first_decision; ++p) {
    std::size_t i = order[p];
    if (kinds[i] == NodeKind::Value) continue;
    if (observe(rng)) evidence.insert(node_name(i));
  }

  return InfluenceDiagram(Network(nodes, arcs), std::move(decision_order),
                          std::move(evidence));
}

Network chain_network(std::size_t length) {
  std::vector<std::pair<NodeId, NodeKind>> nodes;
  std::vector<std::pair<NodeId, NodeId>> arcs;
  nodes.reserve(length);
  for (std::size_t i = 1; i <= length; ++i)
    nodes.emplace_back("c" + std::to_string(i), NodeKind::Chance);
  for (std::size_t i = 1; i < length; ++i)
    arcs.emplace_back("c" + std::to_string(i), "c" + std::to_string(i + 1));
  return Network(nodes, arcs);
}

}  // namespace bayesball
