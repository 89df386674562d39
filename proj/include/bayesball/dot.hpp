#pragma once

#include <string>

#include "bayesball/bayes_ball.hpp"
#include "bayesball/graph.hpp"

namespace bayesball {

// Graphviz rendering of a network, deterministic byte for byte: nodes in
// topological-then-id order, edges ordered by their endpoints' topological
// positions.
//
// Shapes follow the usual diagram conventions — chance nodes are ellipses,
// deterministic nodes double-bordered ellipses, decisions boxes, values
// rounded boxes. Informational arcs are dashed. When a mark state is given,
// observed nodes are filled, visited nodes get a bold outline, and top and
// bottom marks show as [t] / [b] label suffixes.
std::string export_dot(const Network& net, const MarkState* marks = nullptr);

}  // namespace bayesball
