#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "bayesball/bayes_ball.hpp"
#include "bayesball/generator.hpp"
#include "bayesball/graph.hpp"
#include "test_helpers.hpp"

using namespace bayesball;
using testutil::load_network;

namespace {

// Arcs with at least one visited endpoint; the visit budget is measured
// against them.
std::size_t incident_arcs(const Network& net, const NodeSet& visited) {
  std::size_t count = 0;
  for (const auto& [parent, child] : net.arcs())
    if (visited.count(parent) || visited.count(child)) ++count;
  return count;
}

Network corpus_network(std::uint32_t seed) {
  GenParams params;
  params.node_count = 1 + seed % 10;
  params.arc_probability = 0.10 + 0.04 * static_cast<double>(seed % 10);
  params.deterministic_fraction = 0.2 * static_cast<double>(seed % 3);
  params.seed = seed;
  return random_network(params);
}

}  // namespace

TEST_CASE("two coins and a prize") {
  Network net = load_network("coin.json");
  MarkState marks = run(net, Query{{"Coin1"}, {}});

  CHECK(marks.visited_set(net) == NodeSet{"Coin1", "WinPrize"});
  CHECK(marks.top_set(net) == NodeSet{"Coin1"});
  CHECK(marks.bottom_set(net) == NodeSet{"Coin1", "WinPrize"});

  RequisiteResult result = requisites(net, Query{{"Coin1"}, {}}, marks);
  CHECK(result.irrelevant == NodeSet{"Coin2"});
  CHECK(result.requisite_probability == NodeSet{"Coin1"});
  CHECK(result.requisite_observations == NodeSet{});
}

TEST_CASE("five-node network with two observations") {
  Network net = load_network("fig3.json");
  Query query{{"6"}, {"2", "5"}};
  MarkState marks = run(net, query);

  CHECK(marks.visited_set(net) == NodeSet{"1", "2", "3", "5", "6"});
  CHECK(marks.top_set(net) == NodeSet{"1", "2", "3", "6"});
  CHECK(marks.bottom_set(net) == NodeSet{"1", "3", "6"});

  RequisiteResult result = requisites(net, query, marks);
  CHECK(result.irrelevant == NodeSet{"2", "5"});
  CHECK(result.requisite_probability == NodeSet{"1", "2", "3", "6"});
  CHECK(result.requisite_observations == NodeSet{"2", "5"});

  CHECK(marks.counters().targets_scheduled == 1);
  CHECK(marks.counters().visits_executed == 8);
  CHECK(marks.counters().arc_traversals == 7);
}

TEST_CASE("deterministic first-in-first-out trace") {
  Network net = load_network("fig3.json");
  std::vector<std::string> lines;
  RunOptions options;
  options.trace = [&lines](const VisitEvent& event) {
    lines.push_back(format_trace_line(event));
  };
  run(net, Query{{"6"}, {"2", "5"}}, options);

  std::vector<std::string> expected = {
      "visit 6 from=child top=1 bottom=1",
      "visit 5 from=child top=0 bottom=0",
      "visit 3 from=child top=1 bottom=1",
      "visit 6 from=parent top=0 bottom=0",
      "visit 2 from=parent top=1 bottom=0",
      "visit 1 from=child top=1 bottom=1",
      "visit 3 from=child top=0 bottom=0",
      "visit 2 from=parent top=0 bottom=0",
  };
  CHECK(lines == expected);
}

TEST_CASE("format_trace_line covers every source") {
  CHECK(format_trace_line({"x", VisitSource::Child, true, true}) ==
        "visit x from=child top=1 bottom=1");
  CHECK(format_trace_line({"x", VisitSource::Parent, false, true}) ==
        "visit x from=parent top=0 bottom=1");
  CHECK(format_trace_line({"x", VisitSource::Both, true, false}) ==
        "visit x from=both top=1 bottom=0");
}

TEST_CASE("degenerate queries") {
  Network net = load_network("fig3.json");

  SUBCASE("no targets, no marks") {
    MarkState marks = run(net, Query{{}, {"2"}});
    CHECK(marks.visited_set(net) == NodeSet{});
    RequisiteResult result = requisites(net, Query{{}, {"2"}}, marks);
    CHECK(result.irrelevant == NodeSet{"1", "2", "3", "5", "6"});
    CHECK(result.requisite_probability == NodeSet{});
    CHECK(result.requisite_observations == NodeSet{});
  }
  SUBCASE("an observed target is visited but bounces nothing") {
    Query query{{"2"}, {"2"}};
    MarkState marks = run(net, query);
    CHECK(marks.visited_set(net) == NodeSet{"2"});
    CHECK(marks.top_set(net) == NodeSet{});
    CHECK(marks.bottom_set(net) == NodeSet{});
    CHECK(requisites(net, query, marks).requisite_observations == NodeSet{"2"});
  }
  SUBCASE("an isolated unobserved target marks itself both ways") {
    Network single({{"x", NodeKind::Chance}}, {});
    MarkState marks = run(single, Query{{"x"}, {}});
    CHECK(marks.top_set(single) == NodeSet{"x"});
    CHECK(marks.bottom_set(single) == NodeSet{"x"});
  }
  SUBCASE("unknown ids are rejected") {
    CHECK_THROWS_AS(run(net, Query{{"nope"}, {}}), UnknownNodeError);
    CHECK_THROWS_AS(run(net, Query{{"6"}, {"nope"}}), UnknownNodeError);
  }
}

TEST_CASE("deterministic nodes never bounce down from a child visit") {
  Network net({{"p", NodeKind::Chance},
               {"d", NodeKind::Deterministic},
               {"c", NodeKind::Chance}},
              {{"p", "d"}, {"d", "c"}});

  SUBCASE("with a free parent the descent happens only through the parent") {
    std::vector<std::string> lines;
    RunOptions options;
    options.trace = [&lines](const VisitEvent& event) {
      lines.push_back(format_trace_line(event));
    };
    MarkState marks = run(net, Query{{"d"}, {}}, options);

    // The first visit climbs but does not descend; the ball reaches the
    // child only after the parent bounces it back down through d.
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "visit d from=child top=1 bottom=0");
    CHECK(lines[1] == "visit p from=child top=1 bottom=1");
    CHECK(lines[2] == "visit d from=parent top=0 bottom=1");
    CHECK(lines[3] == "visit c from=parent top=0 bottom=1");
    CHECK(marks.visited_set(net) == NodeSet{"c", "d", "p"});
    CHECK(marks.top_set(net) == NodeSet{"d", "p"});
    CHECK(marks.bottom_set(net) == NodeSet{"c", "d", "p"});
  }

  SUBCASE("with the parent observed the node is pinned and nothing flows") {
    Query query{{"d"}, {"p"}};
    MarkState marks = run(net, query);
    CHECK(marks.visited_set(net) == NodeSet{"d", "p"});
    CHECK(marks.bottom_set(net).empty());
    RequisiteResult sets = requisites(net, query, marks);
    CHECK(sets.irrelevant == NodeSet{"c", "d", "p"});
  }
}

TEST_CASE("a deterministic node can pass the ball down from a parent visit") {
  Network net({{"p", NodeKind::Chance}, {"d", NodeKind::Deterministic}},
              {{"p", "d"}});
  MarkState marks = run(net, Query{{"p"}, {}});
  CHECK(marks.bottom_set(net) == NodeSet{"d", "p"});
  CHECK(marks.top_set(net) == NodeSet{"p"});
}

TEST_CASE("final marks do not depend on the schedule policy") {
  auto marks_for = [](const Network& net, const Query& query,
                      SchedulePolicy policy, std::uint32_t seed) {
    RunOptions options;
    options.schedule = policy;
    options.schedule_seed = seed;
    return run(net, query, options);
  };

  auto check_invariance = [&](const Network& net, const Query& query) {
    MarkState base = marks_for(net, query, SchedulePolicy::Fifo, 0);
    MarkState lifo = marks_for(net, query, SchedulePolicy::Lifo, 0);
    CHECK(base.visited_set(net) == lifo.visited_set(net));
    CHECK(base.top_set(net) == lifo.top_set(net));
    CHECK(base.bottom_set(net) == lifo.bottom_set(net));
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
      MarkState random = marks_for(net, query, SchedulePolicy::Random, seed);
      CHECK(base.visited_set(net) == random.visited_set(net));
      CHECK(base.top_set(net) == random.top_set(net));
      CHECK(base.bottom_set(net) == random.bottom_set(net));
    }
  };

  check_invariance(load_network("fig3.json"), Query{{"6"}, {"2", "5"}});
  check_invariance(load_network("coin.json"), Query{{"Coin1"}, {}});
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    Network net = corpus_network(seed);
    check_invariance(net, random_query(net, 0.3, 0.3, seed + 1000));
  }
}

TEST_CASE("visit budget stays linear in the marked region") {
  for (std::uint32_t seed = 0; seed < 200; ++seed) {
    Network net = corpus_network(seed);
    Query query = random_query(net, 0.3, 0.3, seed + 2000);
    MarkState marks = run(net, query);
    const TraversalCounters& counters = marks.counters();
    CHECK(counters.visits_executed <=
          counters.targets_scheduled + counters.arc_traversals);
    CHECK(counters.arc_traversals <=
          2 * incident_arcs(net, marks.visited_set(net)));
    CHECK(counters.targets_scheduled == query.targets.size());
  }
}

TEST_CASE("a joint query decomposes into single-target queries") {
  for (std::uint32_t seed = 0; seed < 120; ++seed) {
    Network net = corpus_network(seed);
    Query query = random_query(net, 0.3, 0.4, seed + 3000);
    MarkState joint = run(net, query);

    NodeSet visited_union, top_union, bottom_union;
    for (const auto& target : query.targets) {
      MarkState single = run(net, Query{{target}, query.observed});
      for (const auto& id : single.visited_set(net)) visited_union.insert(id);
      for (const auto& id : single.top_set(net)) top_union.insert(id);
      for (const auto& id : single.bottom_set(net)) bottom_union.insert(id);
    }
    CHECK(joint.visited_set(net) == visited_union);
    CHECK(joint.top_set(net) == top_union);
    CHECK(joint.bottom_set(net) == bottom_union);
  }
}

TEST_CASE("observed and functionally determined nodes never carry bottom marks") {
  for (std::uint32_t seed = 0; seed < 120; ++seed) {
    Network net = corpus_network(seed);
    Query query = random_query(net, 0.35, 0.3, seed + 4000);
    MarkState marks = run(net, query);
    NodeSet bottom = marks.bottom_set(net);
    NodeSet determined = net.functionally_determined(query.observed);
    for (const auto& id : query.observed) CHECK(bottom.count(id) == 0);
    for (const auto& id : determined) CHECK(bottom.count(id) == 0);
  }
}

TEST_CASE("targeting a functionally determined set marks no bottoms") {
  for (std::uint32_t seed = 0; seed < 120; ++seed) {
    Network net = corpus_network(seed);
    Query base = random_query(net, 0.35, 0.0, seed + 5000);
    NodeSet determined = net.functionally_determined(base.observed);
    if (determined.empty()) continue;
    MarkState marks = run(net, Query{determined, base.observed});
    CHECK(marks.bottom_set(net) == NodeSet{});
  }
}

TEST_CASE("irrelevance between singletons is symmetric") {
  for (std::uint32_t seed = 0; seed < 80; ++seed) {
    Network net = corpus_network(seed);
    if (net.node_count() < 2) continue;
    Query base = random_query(net, 0.3, 0.0, seed + 6000);
    const auto& ids = net.node_ids();
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        CHECK(is_irrelevant(net, {ids[a]}, {ids[b]}, base.observed) ==
              is_irrelevant(net, {ids[b]}, {ids[a]}, base.observed));
  }
}

TEST_CASE("resuming with extra targets equals one joint run") {
  for (std::uint32_t seed = 0; seed < 80; ++seed) {
    Network net = corpus_network(seed);
    Query first = random_query(net, 0.3, 0.3, seed + 7000);
    Query second = random_query(net, 0.0, 0.3, seed + 8000);

    MarkState phased = run(net, first);
    resume(net, phased, second.targets, first.observed);

    NodeSet all_targets = first.targets;
    all_targets.insert(second.targets.begin(), second.targets.end());
    MarkState joint = run(net, Query{all_targets, first.observed});

    CHECK(phased.visited_set(net) == joint.visited_set(net));
    CHECK(phased.top_set(net) == joint.top_set(net));
    CHECK(phased.bottom_set(net) == joint.bottom_set(net));
  }
}

TEST_CASE("absorb unions marks and rejects misuse") {
  Network net = load_network("fig3.json");
  MarkState a = run(net, Query{{"6"}, {"2", "5"}});
  MarkState b = run(net, Query{{"1"}, {}});
  NodeSet expected_visited = a.visited_set(net);
  for (const auto& id : b.visited_set(net)) expected_visited.insert(id);

  MarkState merged = a;
  merged.absorb(b);
  CHECK(merged.visited_set(net) == expected_visited);

  MarkState wrong_size(net.node_count() + 1);
  CHECK_THROWS_AS(merged.absorb(wrong_size), std::invalid_argument);
}

TEST_CASE("resume rejects a mark state sized for another network") {
  Network net = load_network("fig3.json");
  MarkState wrong(net.node_count() + 2);
  CHECK_THROWS_AS(resume(net, wrong, {"6"}, {}), std::invalid_argument);
}
