#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bayesball/bayes_ball.hpp"
#include "bayesball/generator.hpp"
#include "bayesball/oracle.hpp"
#include "test_helpers.hpp"

using namespace bayesball;
using testutil::load_network;

namespace {

// The engine's requisite-observation set, derived the same way the oracle's
// is: observed nodes the traversal had to check.
NodeSet observation_subset(const NodeSet& observed, const NodeSet& visited) {
  NodeSet out;
  for (const auto& id : observed)
    if (visited.count(id)) out.insert(id);
  return out;
}

}  // namespace

TEST_CASE("trail enumeration matches the worked examples") {
  SUBCASE("two coins and a prize") {
    Network net = load_network("coin.json");
    NodeSet targets{"Coin1"};
    NodeSet observed{};
    CHECK(oracle::irrelevant(net, targets, observed) == NodeSet{"Coin2"});
    CHECK(oracle::visited(net, targets, observed) ==
          NodeSet{"Coin1", "WinPrize"});
    CHECK(oracle::requisite_probability(net, targets, observed) ==
          NodeSet{"Coin1"});

    // Observing the prize couples the coins through the collider.
    CHECK_FALSE(oracle::active_path_exists(net, targets, "Coin2", {}));
    CHECK(oracle::active_path_exists(net, targets, "Coin2", {"WinPrize"}));
  }
  SUBCASE("five-node network with two observations") {
    Network net = load_network("fig3.json");
    NodeSet targets{"6"};
    NodeSet observed{"2", "5"};
    CHECK(oracle::irrelevant(net, targets, observed) == NodeSet{"2", "5"});
    CHECK(oracle::visited(net, targets, observed) ==
          NodeSet{"1", "2", "3", "5", "6"});
    CHECK(oracle::requisite_probability(net, targets, observed) ==
          NodeSet{"1", "2", "3", "6"});
  }
}

TEST_CASE("functional determination blocks trails through known functions") {
  // b <- d1 <- a with d1 deterministic: once a is observed, d1 is a known
  // function of it, so nothing can flow through or out of d1 — but its
  // function is still needed to predict b.
  Network net({{"a", NodeKind::Chance},
               {"d1", NodeKind::Deterministic},
               {"b", NodeKind::Chance}},
              {{"a", "d1"}, {"d1", "b"}});
  NodeSet targets{"b"};
  CHECK(oracle::irrelevant(net, targets, {"a"}) == NodeSet{"a", "d1"});
  CHECK(oracle::requisite_probability(net, targets, {"a"}) ==
        NodeSet{"b", "d1"});
  // Without the observation the chain is open end to end.
  CHECK(oracle::irrelevant(net, targets, {}) == NodeSet{});
}

TEST_CASE("engine and oracle agree on random networks") {
  std::size_t checked = 0;
  for (std::uint32_t seed = 0; seed < 300; ++seed) {
    GenParams params;
    params.node_count = 1 + seed % 10;
    params.arc_probability = 0.10 + 0.05 * static_cast<double>(seed % 8);
    params.deterministic_fraction = 0.25 * static_cast<double>(seed % 3);
    params.seed = seed;
    Network net = random_network(params);
    Query query = random_query(net, 0.3, 0.3, seed + 9000);

    MarkState marks = run(net, query);
    RequisiteResult fast = requisites(net, query, marks);
    NodeSet visited = marks.visited_set(net);

    CAPTURE(seed);
    CHECK(fast.irrelevant ==
          oracle::irrelevant(net, query.targets, query.observed));
    CHECK(visited == oracle::visited(net, query.targets, query.observed));
    CHECK(fast.requisite_probability ==
          oracle::requisite_probability(net, query.targets, query.observed));
    CHECK(fast.requisite_observations ==
          observation_subset(query.observed, visited));
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("the size guard refuses oversized networks") {
  GenParams params;
  params.node_count = oracle::kDefaultGuard + 1;
  params.arc_probability = 0.2;
  params.seed = 7;
  Network big = random_network(params);

  CHECK_THROWS_AS(oracle::irrelevant(big, {"n0"}, {}), SizeLimitError);
  CHECK_THROWS_AS(oracle::visited(big, {"n0"}, {}), SizeLimitError);
  CHECK_THROWS_AS(oracle::requisite_probability(big, {"n0"}, {}),
                  SizeLimitError);
  CHECK_THROWS_AS(oracle::active_path_exists(big, {"n0"}, "n1", {}),
                  SizeLimitError);

  // A raised guard admits the same network; a lowered one refuses smaller.
  CHECK_NOTHROW(oracle::irrelevant(big, {"n0"}, {}, big.node_count()));
  Network small = load_network("fig3.json");
  CHECK_THROWS_AS(oracle::irrelevant(small, {"6"}, {}, 4), SizeLimitError);
  try {
    oracle::irrelevant(small, {"6"}, {}, 4);
  } catch (const SizeLimitError& error) {
    CHECK(error.node_count() == 5);
    CHECK(error.limit() == 4);
  }
}
