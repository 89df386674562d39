#include "bayesball/bayes_ball.hpp"

#include <random>
#include <stdexcept>

namespace bayesball {

std::string format_trace_line(const VisitEvent& event) {
  const char* from = event.from == VisitSource::Child    ? "child"
                     : event.from == VisitSource::Parent ? "parent"
                                                         : "both";
  std::string line = "visit " + event.node + " from=" + from;
  line += event.marked_top ? " top=1" : " top=0";
  line += event.marked_bottom ? " bottom=1" : " bottom=0";
  return line;
}

NodeSet MarkState::collect(const Network& net, std::uint8_t bit) const {
  NodeSet out;
  for (std::size_t i = 0; i < flags_.size(); ++i)
    if (flags_[i] & bit) out.insert(net.id_of(i));
  return out;
}

void MarkState::absorb(const MarkState& other) {
  if (other.flags_.size() != flags_.size())
    throw std::invalid_argument("absorb: mark states differ in size");
  if (!queue_.empty() || !other.queue_.empty())
    throw std::invalid_argument("absorb: mark states must be drained");
  for (std::size_t i = 0; i < flags_.size(); ++i)
    flags_[i] |= other.flags_[i] & (kVisited | kTop | kBottom);
}

struct BayesBallEngine {
  const Network& net;
  MarkState& state;
  const RunOptions& options;
  std::mt19937 rng;

  BayesBallEngine(const Network& n, MarkState& s, const RunOptions& o)
      : net(n), state(s), options(o), rng(o.schedule_seed) {
    if (state.flags_.size() != net.node_count())
      throw std::invalid_argument("mark state does not match network size");
  }

  void set_observed(const NodeSet& observed) {
    for (auto& flags : state.flags_) flags &= ~MarkState::kObserved;
    for (const auto& id : observed)
      state.flags_[net.index_of(id)] |= MarkState::kObserved;
  }

  void schedule_target(const NodeId& id) {
    ++state.counters_.targets_scheduled;
    schedule(static_cast<std::int32_t>(net.index_of(id)),
             MarkState::kPendingChild);
  }

  void schedule(std::int32_t j, std::uint8_t pending_bit) {
    std::uint8_t& flags = state.flags_[j];
    if (flags & pending_bit) return;  // this direction is already queued
    bool queued =
        flags & (MarkState::kPendingChild | MarkState::kPendingParent);
    flags |= pending_bit;
    if (!queued) state.queue_.push_back(j);
  }

  std::int32_t pick() {
    auto& queue = state.queue_;
    std::int32_t j;
    switch (options.schedule) {
      case SchedulePolicy::Fifo:
        j = queue.front();
        queue.pop_front();
        break;
      case SchedulePolicy::Lifo:
        j = queue.back();
        queue.pop_back();
        break;
      case SchedulePolicy::Random: {
        std::uniform_int_distribution<std::size_t> dist(0, queue.size() - 1);
        std::size_t at = dist(rng);
        j = queue[at];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(at));
        break;
      }
    }
    return j;
  }

  void visit_parents(std::int32_t j) {
    // All arcs into a decision are informational, so masking them removes
    // the node's parents wholesale.
    if (options.ignore_informational &&
        net.kind_of(static_cast<std::size_t>(j)) == NodeKind::Decision)
      return;
    for (std::int32_t p : net.parent_indices(static_cast<std::size_t>(j))) {
      ++state.counters_.arc_traversals;
      schedule(p, MarkState::kPendingChild);
    }
  }

  void visit_children(std::int32_t j) {
    for (std::int32_t c : net.child_indices(static_cast<std::size_t>(j))) {
      if (options.ignore_informational &&
          net.kind_of(static_cast<std::size_t>(c)) == NodeKind::Decision)
        continue;
      ++state.counters_.arc_traversals;
      schedule(c, MarkState::kPendingParent);
    }
  }

  void drain() {
    while (!state.queue_.empty()) {
      std::int32_t j = pick();
      std::uint8_t pending =
          state.flags_[j] &
          (MarkState::kPendingChild | MarkState::kPendingParent);
      state.flags_[j] &=
          ~(MarkState::kPendingChild | MarkState::kPendingParent);
      state.flags_[j] |= MarkState::kVisited;
      ++state.counters_.visits_executed;

      bool observed = state.flags_[j] & MarkState::kObserved;
      bool deterministic =
          net.kind_of(static_cast<std::size_t>(j)) == NodeKind::Deterministic;
      bool marked_top = false;
      bool marked_bottom = false;

      if ((pending & MarkState::kPendingChild) && !observed) {
        if (!(state.flags_[j] & MarkState::kTop)) {
          state.flags_[j] |= MarkState::kTop;
          marked_top = true;
          visit_parents(j);
        }
        if (!deterministic && !(state.flags_[j] & MarkState::kBottom)) {
          state.flags_[j] |= MarkState::kBottom;
          marked_bottom = true;
          visit_children(j);
        }
      }
      if (pending & MarkState::kPendingParent) {
        if (observed) {
          if (!(state.flags_[j] & MarkState::kTop)) {
            state.flags_[j] |= MarkState::kTop;
            marked_top = true;
            visit_parents(j);
          }
        } else if (!(state.flags_[j] & MarkState::kBottom)) {
          state.flags_[j] |= MarkState::kBottom;
          marked_bottom = true;
          visit_children(j);
        }
      }

      if (options.trace) {
        VisitEvent event{net.id_of(static_cast<std::size_t>(j)),
                         static_cast<VisitSource>(pending >> 4), marked_top,
                         marked_bottom};
        options.trace(event);
      }
    }
  }
};

MarkState run(const Network& net, const Query& query,
              const RunOptions& options) {
  MarkState state(net.node_count());
  BayesBallEngine engine(net, state, options);
  engine.set_observed(query.observed);
  for (const auto& id : query.targets) engine.schedule_target(id);
  engine.drain();
  return state;
}

void resume(const Network& net, MarkState& marks, const NodeSet& new_targets,
            const NodeSet& observed, const RunOptions& options) {
  BayesBallEngine engine(net, marks, options);
  engine.set_observed(observed);
  for (const auto& id : new_targets) engine.schedule_target(id);
  engine.drain();
}

RequisiteResult requisites(const Network& net, const Query& query,
                           const MarkState& marks) {
  RequisiteResult result;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (!marks.bottom(i)) result.irrelevant.insert(net.id_of(i));
    if (marks.top(i)) result.requisite_probability.insert(net.id_of(i));
  }
  for (const auto& id : query.observed)
    if (marks.visited(net.index_of(id))) result.requisite_observations.insert(id);
  return result;
}

bool is_irrelevant(const Network& net, const NodeSet& targets,
                   const NodeSet& tested, const NodeSet& observed) {
  for (const auto& id : tested) net.index_of(id);  // reject unknown ids
  MarkState marks = run(net, Query{targets, observed});
  for (const auto& id : tested)
    if (marks.bottom(net.index_of(id))) return false;
  return true;
}

}  // namespace bayesball
