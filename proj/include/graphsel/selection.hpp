#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphsel/centrality.hpp"
#include "graphsel/graph.hpp"
#include "graphsel/rng.hpp"

namespace graphsel {

enum class Strategy { AllAtOnce, SmartSelection, Random, ActiveLearning };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::AllAtOnce: return "all";
    case Strategy::SmartSelection: return "smart";
    case Strategy::Random: return "random";
    case Strategy::ActiveLearning: return "al";
  }
  return "?";
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "all") return Strategy::AllAtOnce;
  if (s == "smart") return Strategy::SmartSelection;
  if (s == "random") return Strategy::Random;
  if (s == "al") return Strategy::ActiveLearning;
  throw std::invalid_argument("unknown selection strategy: " + s);
}

// Ordered list of chosen node ids plus the strategy that produced it.
struct SelectionPlan {
  Strategy strategy = Strategy::AllAtOnce;
  std::optional<Measure> measure;
  int budget = 0;
  int per_round = 0;
  std::vector<int> selected;
};

namespace detail {

// Ids of the k best-scoring active nodes, score descending, ties by smaller
// id. Every tie in the library breaks toward the smaller id.
inline std::vector<int> top_k_by_score(std::span<const double> scores, int k,
                                       std::span<const std::uint8_t> active = {}) {
  std::vector<int> ids;
  ids.reserve(scores.size());
  for (int v = 0; v < static_cast<int>(scores.size()); ++v)
    if (node_active(active, v)) ids.push_back(v);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  if (static_cast<int>(ids.size()) > k) ids.resize(k);
  return ids;
}

}  // namespace detail

// Baseline: the budget highest-scoring nodes, taken in one shot.
inline SelectionPlan select_all_at_once(const CentralityScores& scores, int budget) {
  const int n = static_cast<int>(scores.scores.size());
  if (budget < 0 || budget > n)
    throw std::invalid_argument("select_all_at_once: budget exceeds node count");
  SelectionPlan plan{Strategy::AllAtOnce, scores.measure, budget, budget, {}};
  plan.selected = detail::top_k_by_score(scores.scores, budget);
  return plan;
}

// Iterative selection: score the residual graph, take the top per_round
// nodes, delete them, recompute, until the budget is reached. Deleting is
// done through an active mask over the original CSR, so the caller's graph
// is never touched. VoteRank already weakens the neighborhood of each pick
// inside its own voting loop, so for it the spreaders are taken in one pass.
inline SelectionPlan smart_select(const Graph& g, Measure measure, int budget,
                                  int per_round,
                                  const CentralityOptions& opts = {}) {
  if (budget < 0 || budget > g.n)
    throw std::invalid_argument("smart_select: budget exceeds node count");
  if (per_round < 1)
    throw std::invalid_argument("smart_select: per_round must be >= 1");

  SelectionPlan plan{Strategy::SmartSelection, measure, budget, per_round, {}};
  if (budget == 0) return plan;

  if (measure == Measure::VoteRank) {
    plan.selected = voterank(g, budget).selected;
    return plan;
  }

  NodeMask active(g.n, 1);
  plan.selected.reserve(budget);
  while (static_cast<int>(plan.selected.size()) < budget) {
    const int remaining = budget - static_cast<int>(plan.selected.size());
    const int take = std::min(per_round, remaining);
    const CentralityScores scores = compute_centrality(g, measure, active, opts);
    const std::vector<int> picks =
        detail::top_k_by_score(scores.scores, take, active);
    for (int v : picks) {
      plan.selected.push_back(v);
      active[v] = 0;
    }
  }
  return plan;
}

// Seeded uniform sample without replacement (partial Fisher-Yates).
inline SelectionPlan random_select(int n, int budget, std::uint64_t seed) {
  if (budget < 0 || budget > n)
    throw std::invalid_argument("random_select: budget exceeds node count");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < budget; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(budget);
  SelectionPlan plan{Strategy::Random, std::nullopt, budget, 0, std::move(pool)};
  return plan;
}

}  // namespace graphsel
