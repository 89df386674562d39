#pragma once

#include <cstddef>
#include <cstdint>

#include "bayesball/bayes_ball.hpp"
#include "bayesball/decision.hpp"
#include "bayesball/graph.hpp"

namespace bayesball {

// Knobs for the seeded random-model generators. Identical parameters always
// produce identical models. observed_fraction is not used while building a
// plain network; random_query and the diagram generator draw the observed
// nodes from it.
struct GenParams {
  std::size_t node_count = 0;
  double arc_probability = 0.0;      // per ordered pair along the node order
  double deterministic_fraction = 0.0;
  double observed_fraction = 0.0;
  std::uint32_t seed = 0;
};

// Random DAG: nodes n0..n{k-1} with a shuffled topological order, each
// forward pair joined independently with arc_probability, each node
// deterministic with deterministic_fraction.
Network random_network(const GenParams& params);

// Random query against `net`: every node is observed with probability
// observed_fraction and targeted with probability target_probability.
// Targets may be empty and may overlap the observed set.
Query random_query(const Network& net, double observed_fraction,
                   double target_probability, std::uint32_t seed);

struct DiagramGenParams {
  GenParams base;
  std::size_t decision_count = 0;
  double value_fraction = 0.5;  // chance of turning an eligible sink into a value
};

// Random influence diagram. Decisions are placed along the generated
// topological order and take that order as their time order, which keeps
// every informational arc temporally consistent: nothing upstream of a
// decision can be functionally downstream of it or of any later decision.
// Values are drawn from the sinks that have parents; evidence is drawn from
// the chance and deterministic nodes placed before the first decision.
InfluenceDiagram random_influence_diagram(const DiagramGenParams& params);

// Chain c1 -> c2 -> … -> cn of chance nodes, used by the scaling benchmarks.
Network chain_network(std::size_t length);

}  // namespace bayesball
