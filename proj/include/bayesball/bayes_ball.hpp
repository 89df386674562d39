#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "bayesball/graph.hpp"

namespace bayesball {

// A single structural question: which parts of the network matter for
// Pr{targets | observed}?
struct Query {
  NodeSet targets;
  NodeSet observed;
};

// Which pending visit to execute next. The marks a traversal produces do not
// depend on this choice; the property tests exercise all three policies to
// prove it. Fifo is the default and fixes the trace order.
enum class SchedulePolicy { Fifo, Lifo, Random };

enum class VisitSource : std::uint8_t {
  Child = 1,
  Parent = 2,
  Both = 3,  // both directions merged into a single visit
};

struct VisitEvent {
  NodeId node;
  VisitSource from;
  bool marked_top;     // this visit set the top mark
  bool marked_bottom;  // this visit set the bottom mark
};

// "visit <id> from=<child|parent|both> top=<0|1> bottom=<0|1>"
std::string format_trace_line(const VisitEvent& event);

struct RunOptions {
  SchedulePolicy schedule = SchedulePolicy::Fifo;
  std::uint32_t schedule_seed = 0;  // used by SchedulePolicy::Random only
  // Skip informational arcs (arcs into Decision nodes) entirely, as the
  // influence-diagram sweep requires.
  bool ignore_informational = false;
  std::function<void(const VisitEvent&)> trace;
};

struct TraversalCounters {
  std::uint64_t visits_executed = 0;
  // Each (arc, direction) is traversed at most once: a node schedules its
  // parents only when its top mark is fresh and its children only when its
  // bottom mark is fresh.
  std::uint64_t arc_traversals = 0;
  std::uint64_t targets_scheduled = 0;
};

// Mark vector of one traversal, indexed like the network it was produced
// from. A node can carry three independent marks:
//
//   visited — the node was checked at least once;
//   top     — the ball passed up through it; its conditional distribution
//             (or function) is needed;
//   bottom  — the ball passed down through it; information can flow from it
//             to some target.
//
// Marks are never cleared. resume() re-opens a drained state with a new
// observed set, which is how the staged decision sweep reuses work.
class MarkState {
 public:
  MarkState() = default;
  explicit MarkState(std::size_t node_count) : flags_(node_count, 0) {}

  std::size_t node_count() const { return flags_.size(); }
  bool visited(std::size_t i) const { return flags_[i] & kVisited; }
  bool top(std::size_t i) const { return flags_[i] & kTop; }
  bool bottom(std::size_t i) const { return flags_[i] & kBottom; }
  bool observed(std::size_t i) const { return flags_[i] & kObserved; }

  NodeSet visited_set(const Network& net) const { return collect(net, kVisited); }
  NodeSet top_set(const Network& net) const { return collect(net, kTop); }
  NodeSet bottom_set(const Network& net) const { return collect(net, kBottom); }
  NodeSet observed_set(const Network& net) const { return collect(net, kObserved); }

  std::size_t pending_visits() const { return queue_.size(); }
  const TraversalCounters& counters() const { return counters_; }

  // Union of the visited/top/bottom marks of `other` into this state. Both
  // states must be drained and sized alike. Lets an analysis that replays a
  // sweep as independent runs accumulate the marks the sweep would share.
  void absorb(const MarkState& other);

  // Overwrite the persistent marks of node `i` directly. For analyses that
  // derive marks by other means and need to report them in this format.
  void impose(std::size_t i, bool visited, bool top, bool bottom) {
    flags_[i] = static_cast<std::uint8_t>((visited ? kVisited : 0) |
                                          (top ? kTop : 0) |
                                          (bottom ? kBottom : 0));
  }

 private:
  friend struct BayesBallEngine;

  static constexpr std::uint8_t kVisited = 1;
  static constexpr std::uint8_t kTop = 2;
  static constexpr std::uint8_t kBottom = 4;
  static constexpr std::uint8_t kObserved = 8;
  static constexpr std::uint8_t kPendingChild = 16;   // from-child visit queued
  static constexpr std::uint8_t kPendingParent = 32;  // from-parent visit queued

  NodeSet collect(const Network& net, std::uint8_t bit) const;

  std::vector<std::uint8_t> flags_;
  std::deque<std::int32_t> queue_;
  TraversalCounters counters_;
};

// Bounce the ball from the targets and return the resulting marks.
//
// Every target is scheduled as if visited from one of its children. Each
// popped visit marks the node visited, then applies the bounce rules:
//
//   from a child, node unobserved:  mark top (if new) and visit parents;
//                                   unless deterministic, mark bottom
//                                   (if new) and visit children;
//   from a child, node observed:    nothing further — the ball stops;
//   from a parent, node observed:   mark top (if new) and visit parents;
//   from a parent, node unobserved: mark bottom (if new) and visit children.
//
// A node queued from both directions is processed as one visit that applies
// both branches. Runtime is linear in the marked region: at most
// |targets| + 2·|arcs incident to visited nodes| visits are executed.
MarkState run(const Network& net, const Query& query,
              const RunOptions& options = {});

// Continue a drained traversal with a different observed set, scheduling
// `new_targets` as from-child visits on top of the existing marks. Existing
// marks are kept; the caller must keep `options` compatible across stages.
void resume(const Network& net, MarkState& marks, const NodeSet& new_targets,
            const NodeSet& observed, const RunOptions& options = {});

struct RequisiteResult {
  // Nodes whose distributions cannot influence the targets given the
  // observations: everything without a bottom mark.
  NodeSet irrelevant;
  // Nodes whose conditional distributions (or functions) are needed:
  // everything with a top mark.
  NodeSet requisite_probability;
  // Observed nodes whose values are needed: observed ∩ visited.
  NodeSet requisite_observations;
};

// Read the three requisite sets out of a finished traversal. `query` must be
// the query `marks` was produced from.
RequisiteResult requisites(const Network& net, const Query& query,
                           const MarkState& marks);

// True iff every node of `tested` is structurally irrelevant to `targets`
// given `observed`, i.e. the tested and target sets are d-separated by the
// observed set (with deterministic relations taken into account).
bool is_irrelevant(const Network& net, const NodeSet& targets,
                   const NodeSet& tested, const NodeSet& observed);

}  // namespace bayesball
