#include "bayesball/oracle.hpp"

#include <cstdint>
#include <vector>

namespace bayesball::oracle {
namespace {

// Plain adjacency snapshot the enumerator works on. Copied out of the
// network so that the per-node modifications (forcing a node to chance,
// grafting an auxiliary parent) stay local to the oracle.
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::int32_t>> parents;
  std::vector<std::vector<std::int32_t>> children;
  std::vector<char> deterministic;
  std::vector<char> observed;

  Graph(const Network& net, const NodeSet& observed_ids) {
    n = net.node_count();
    parents.resize(n);
    children.resize(n);
    deterministic.assign(n, 0);
    observed.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::int32_t p : net.parent_indices(i)) parents[i].push_back(p);
      for (std::int32_t c : net.child_indices(i)) children[i].push_back(c);
      if (net.kind_of(i) == NodeKind::Deterministic) deterministic[i] = 1;
    }
    for (const auto& id : observed_ids) observed[net.index_of(id)] = 1;
  }
};

// Naive fixed point: sweep until nothing changes.
std::vector<char> functionally_determined(const Graph& g) {
  std::vector<char> determined(g.observed.begin(), g.observed.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.n; ++i) {
      if (determined[i] || !g.deterministic[i]) continue;
      bool all = true;
      for (std::int32_t p : g.parents[i])
        if (!determined[p]) {
          all = false;
          break;
        }
      if (all) {
        determined[i] = 1;
        changed = true;
      }
    }
  }
  return determined;
}

// observed_below[i]: i is observed or has an observed descendant.
std::vector<char> observed_at_or_below(const Graph& g) {
  std::vector<char> below(g.observed.begin(), g.observed.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.n; ++i) {
      if (below[i]) continue;
      for (std::int32_t c : g.children[i])
        if (below[c]) {
          below[i] = 1;
          changed = true;
          break;
        }
    }
  }
  return below;
}

enum class Entered { FromParent, FromChild };

struct TrailSearch {
  const Graph& g;
  std::int32_t goal;
  std::vector<char> determined;
  std::vector<char> observed_below;
  std::vector<char> on_trail;

  TrailSearch(const Graph& graph, std::int32_t target)
      : g(graph),
        goal(target),
        determined(functionally_determined(graph)),
        observed_below(observed_at_or_below(graph)),
        on_trail(graph.n, 0) {}

  // Extend the trail sitting at `at`, entered as recorded. `at` becomes an
  // interior node of any longer trail, so each extension must satisfy its
  // head-to-head or pass-through condition first.
  bool extend(std::int32_t at, Entered entered) {
    if (at == goal) return true;  // goal checked up front: not determined
    on_trail[at] = 1;
    bool pass_through_ok = !determined[at];
    // Up to a parent: both trail arcs point at `at` iff we also entered from
    // a parent; that makes `at` head-to-head and it needs observed support.
    bool up_ok = entered == Entered::FromParent ? static_cast<bool>(observed_below[at])
                                                : pass_through_ok;
    if (up_ok) {
      for (std::int32_t p : g.parents[at]) {
        if (on_trail[p]) continue;
        if (extend(p, Entered::FromChild)) {
          on_trail[at] = 0;
          return true;
        }
      }
    }
    // Down to a child: the outgoing trail arc leaves `at`, never head-to-head.
    if (pass_through_ok) {
      for (std::int32_t c : g.children[at]) {
        if (on_trail[c]) continue;
        if (extend(c, Entered::FromParent)) {
          on_trail[at] = 0;
          return true;
        }
      }
    }
    on_trail[at] = 0;
    return false;
  }
};

bool trail_exists(const Graph& g, const std::vector<std::int32_t>& sources,
                  std::int32_t goal) {
  TrailSearch search(g, goal);
  if (search.determined[goal]) return false;  // endpoints must stay free
  for (std::int32_t j : sources) {
    if (j == goal) return true;  // single-node trail
    if (search.determined[j]) continue;
    search.on_trail.assign(g.n, 0);
    search.on_trail[j] = 1;
    for (std::int32_t p : search.g.parents[j])
      if (!search.on_trail[p] && search.extend(p, Entered::FromChild))
        return true;
    for (std::int32_t c : search.g.children[j])
      if (!search.on_trail[c] && search.extend(c, Entered::FromParent))
        return true;
  }
  return false;
}

void check_guard(const Network& net, std::size_t guard) {
  if (net.node_count() > guard) throw SizeLimitError(net.node_count(), guard);
}

std::vector<std::int32_t> resolve(const Network& net, const NodeSet& ids) {
  std::vector<std::int32_t> out;
  for (const auto& id : ids)
    out.push_back(static_cast<std::int32_t>(net.index_of(id)));
  return out;
}

}  // namespace

bool active_path_exists(const Network& net, const NodeSet& targets,
                        const NodeId& node, const NodeSet& observed,
                        std::size_t guard) {
  check_guard(net, guard);
  Graph g(net, observed);
  return trail_exists(g, resolve(net, targets),
                      static_cast<std::int32_t>(net.index_of(node)));
}

NodeSet irrelevant(const Network& net, const NodeSet& targets,
                   const NodeSet& observed, std::size_t guard) {
  check_guard(net, guard);
  Graph g(net, observed);
  auto sources = resolve(net, targets);
  NodeSet out;
  for (std::size_t i = 0; i < net.node_count(); ++i)
    if (!trail_exists(g, sources, static_cast<std::int32_t>(i)))
      out.insert(net.id_of(i));
  return out;
}

NodeSet visited(const Network& net, const NodeSet& targets,
                const NodeSet& observed, std::size_t guard) {
  check_guard(net, guard);
  auto sources = resolve(net, targets);
  NodeSet out;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    Graph g(net, observed);
    g.observed[i] = 0;       // a visit check must see through j's own status
    g.deterministic[i] = 0;  // force j to an ordinary chance node
    if (trail_exists(g, sources, static_cast<std::int32_t>(i)))
      out.insert(net.id_of(i));
  }
  return out;
}

NodeSet requisite_probability(const Network& net, const NodeSet& targets,
                              const NodeSet& observed, std::size_t guard) {
  check_guard(net, guard);
  auto sources = resolve(net, targets);
  NodeSet out;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    // Graft a fresh parentless chance parent onto i and ask whether it would
    // be visited: that is exactly when i's distribution is interrogated.
    Graph g(net, observed);
    std::int32_t aux = static_cast<std::int32_t>(g.n);
    g.n += 1;
    g.parents.emplace_back();
    g.children.push_back({static_cast<std::int32_t>(i)});
    g.parents[i].push_back(aux);
    g.deterministic.push_back(0);
    g.observed.push_back(0);
    if (trail_exists(g, sources, aux)) out.insert(net.id_of(i));
  }
  return out;
}

DecisionRequisites decision_restart(const InfluenceDiagram& diagram) {
  const Network& net = diagram.net();
  std::size_t n = net.node_count();
  DecisionRequisites result;
  result.marks = MarkState(n);
  std::size_t m = diagram.decision_count();
  if (m == 0) return result;

  InformationSets info = information_sets(diagram);

  // Marks persist across stages. A mark made in an earlier stage is settled:
  // the ball it once handed onward is not handed again, which is exactly
  // what distinguishes resuming from starting over.
  std::vector<char> visited(n, 0), top(n, 0), bottom(n, 0);

  // One stage = the bounce rules applied as a naive fixed point over
  // per-direction delivery sets under the stage's observed set. Informational
  // arcs (arcs into decision nodes) are masked throughout.
  auto run_stage = [&](const NodeSet& seeds, const NodeSet& observed_ids) {
    std::vector<char> observed(n, 0), from_child(n, 0), from_parent(n, 0);
    for (const auto& id : observed_ids) observed[net.index_of(id)] = 1;
    for (const auto& id : seeds) from_child[net.index_of(id)] = 1;

    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t x = 0; x < n; ++x) {
        if (!from_child[x] && !from_parent[x]) continue;
        if (!visited[x]) {
          visited[x] = 1;
          changed = true;
        }
        bool deterministic = net.kind_of(x) == NodeKind::Deterministic;
        bool want_top = (from_child[x] && !observed[x]) ||
                        (from_parent[x] && observed[x]);
        bool want_bottom =
            !observed[x] &&
            (from_parent[x] || (from_child[x] && !deterministic));
        if (want_top && !top[x]) {
          top[x] = 1;
          changed = true;
          if (net.kind_of(x) != NodeKind::Decision)
            for (std::int32_t p : net.parent_indices(x)) from_child[p] = 1;
        }
        if (want_bottom && !bottom[x]) {
          bottom[x] = 1;
          changed = true;
          for (std::int32_t c : net.child_indices(x))
            if (net.kind_of(static_cast<std::size_t>(c)) != NodeKind::Decision)
              from_parent[c] = 1;
        }
      }
    }
  };

  auto harvest = [&](int number, const NodeId& decision, const NodeSet& scope) {
    StageRequisites stage;
    stage.stage = number;
    stage.decision = decision;
    for (const auto& id : scope)
      if (visited[net.index_of(id)]) stage.requisite_observations.insert(id);
    for (std::size_t x = 0; x < n; ++x)
      if (top[x]) stage.requisite_probability.insert(net.id_of(x));
    return stage;
  };

  NodeSet carried;
  for (std::size_t i = m; i >= 1; --i) {
    const NodeId& decision = diagram.decision_order()[i - 1];
    NodeSet seeds = relevant_values(diagram, i);
    seeds.insert(carried.begin(), carried.end());
    NodeSet observed = info.information[i - 1];
    observed.insert(decision);
    run_stage(seeds, observed);

    StageRequisites stage =
        harvest(static_cast<int>(i), decision, info.information[i - 1]);
    stage.decision_irrelevant = !visited[net.index_of(decision)];
    carried = stage.requisite_observations;
    result.stages.push_back(std::move(stage));
  }

  run_stage(carried, diagram.evidence());
  result.stages.push_back(harvest(0, NodeId{}, diagram.evidence()));

  for (std::size_t x = 0; x < n; ++x)
    result.marks.impose(x, visited[x], top[x], bottom[x]);

  for (const auto& d : diagram.decision_order())
    for (const auto& stage : result.stages)
      if (stage.decision == d && stage.decision_irrelevant)
        result.irrelevant_decisions.push_back(d);
  return result;
}

}  // namespace bayesball::oracle
