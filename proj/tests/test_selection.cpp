#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include <graphsel/selection.hpp>

#include "oracles.hpp"

using namespace graphsel;

namespace {

Graph star5() { return build_graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 5); }

Graph two_triangles() {
  return build_graph({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}, 6);
}

}  // namespace

TEST_CASE("select_all_at_once basics") {
  CentralityScores s{Measure::Degree, {3, 1, 2}};
  REQUIRE(select_all_at_once(s, 2).selected == std::vector<int>{0, 2});

  CentralityScores equal{Measure::Degree, {1, 1, 1}};
  REQUIRE(select_all_at_once(equal, 3).selected == std::vector<int>{0, 1, 2});

  REQUIRE(select_all_at_once(s, 0).selected.empty());
  REQUIRE_THROWS_AS(select_all_at_once(s, 4), std::invalid_argument);
}

TEST_CASE("smart_select single round equals select_all_at_once") {
  Rng rng(5);
  for (Measure m : {Measure::Degree, Measure::Closeness, Measure::Betweenness,
                    Measure::PageRank}) {
    const Graph g = oracles::random_connected_graph(rng, 12);
    const SelectionPlan smart = smart_select(g, m, 5, 5);
    const SelectionPlan once = select_all_at_once(compute_centrality(g, m), 5);
    REQUIRE(smart.selected == once.selected);

    const SelectionPlan bigger_round = smart_select(g, m, 5, 9);
    REQUIRE(bigger_round.selected == once.selected);
  }
}

TEST_CASE("smart_select on the star picks the hub, then the lowest leaf") {
  const SelectionPlan plan = smart_select(star5(), Measure::Degree, 2, 1);
  REQUIRE(plan.selected == std::vector<int>{0, 1});
}

TEST_CASE("smart_select covers both triangles") {
  const SelectionPlan plan = smart_select(two_triangles(), Measure::Degree, 2, 1);
  REQUIRE(plan.selected == std::vector<int>{0, 3});
}

TEST_CASE("smart_select never duplicates even when the residual goes edgeless") {
  const SelectionPlan plan = smart_select(star5(), Measure::Degree, 5, 1);
  std::set<int> unique(plan.selected.begin(), plan.selected.end());
  REQUIRE(unique.size() == 5);
  // after {0, 1} the residual is edgeless; remaining picks are lowest ids
  REQUIRE(plan.selected == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("smart_select leaves the caller's graph untouched") {
  const Graph g = two_triangles();
  const auto offsets = g.csr_offsets;
  const auto neighbors = g.csr_neighbors;
  (void)smart_select(g, Measure::Betweenness, 4, 1);
  REQUIRE(g.csr_offsets == offsets);
  REQUIRE(g.csr_neighbors == neighbors);
}

TEST_CASE("smart_select with VoteRank delegates to the voting loop") {
  Rng rng(7);
  const Graph g = oracles::random_connected_graph(rng, 10);
  const SelectionPlan plan = smart_select(g, Measure::VoteRank, 4, 1);
  REQUIRE(plan.selected == voterank(g, 4).selected);
}

TEST_CASE("smart_select is deterministic") {
  Rng rng(9);
  const Graph g = oracles::random_connected_graph(rng, 15);
  const SelectionPlan a = smart_select(g, Measure::PageRank, 6, 2);
  const SelectionPlan b = smart_select(g, Measure::PageRank, 6, 2);
  REQUIRE(a.selected == b.selected);
  REQUIRE_THROWS_AS(smart_select(g, Measure::Degree, 16, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(smart_select(g, Measure::Degree, 5, 0), std::invalid_argument);
}

TEST_CASE("random_select is a seeded uniform sample") {
  const SelectionPlan full = random_select(8, 8, 1);
  std::set<int> unique(full.selected.begin(), full.selected.end());
  REQUIRE(unique.size() == 8);

  REQUIRE(random_select(20, 5, 42).selected == random_select(20, 5, 42).selected);
  REQUIRE(random_select(1, 1, 0).selected == std::vector<int>{0});
  REQUIRE_THROWS_AS(random_select(3, 4, 0), std::invalid_argument);
}
