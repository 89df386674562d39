#pragma once

#include <cstddef>

#include "bayesball/decision.hpp"
#include "bayesball/graph.hpp"

// Brute-force reference implementations used to cross-check the traversal
// engine. Everything here works from first principles — explicit enumeration
// of undirected trails with its own functional-determination fixed point —
// and deliberately shares no machinery with the fast engine. Runtime is
// exponential in the worst case, so every entry point refuses networks above
// a small node-count guard.
namespace bayesball::oracle {

inline constexpr std::size_t kDefaultGuard = 14;

// True iff some simple trail connects a target to `node` such that
// information can flow along it: every head-to-head node on the trail is
// observed or has an observed descendant, and every other node on the trail
// (endpoints included) is not functionally determined by the observed set.
// A single-node trail counts when `node` is itself a target.
bool active_path_exists(const Network& net, const NodeSet& targets,
                        const NodeId& node, const NodeSet& observed,
                        std::size_t guard = kDefaultGuard);

// Nodes with no active trail to any target.
NodeSet irrelevant(const Network& net, const NodeSet& targets,
                   const NodeSet& observed, std::size_t guard = kDefaultGuard);

// Nodes the traversal engine must check: j is visited iff an active trail
// reaches j once j itself is forced to be an ordinary unobserved chance
// node (its own observed or deterministic status must not hide the visit).
NodeSet visited(const Network& net, const NodeSet& targets,
                const NodeSet& observed, std::size_t guard = kDefaultGuard);

// Nodes whose conditional distribution or function is needed: j qualifies
// iff a fresh parentless chance parent attached to j would be visited, i.e.
// an active trail can leave j through the top.
NodeSet requisite_probability(const Network& net, const NodeSet& targets,
                              const NodeSet& observed,
                              std::size_t guard = kDefaultGuard);

// The staged decision sweep recomputed with different machinery: each stage
// applies the bounce rules as a naive fixed point over explicit delivery
// sets — no work queue, no pending-bit merging, no visit ordering. Marks
// inherited from earlier stages stay settled; only a mark that first appears
// in the current stage hands the ball onward, which is the defining
// behaviour of a resumed traversal. Cross-checks the sweep's queueing,
// mark bookkeeping and reseeding against a direct set-level reading.
DecisionRequisites decision_restart(const InfluenceDiagram& diagram);

}  // namespace bayesball::oracle
