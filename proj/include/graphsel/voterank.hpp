#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphsel/graph.hpp"

namespace graphsel {

// Outcome of the voting process: final per-node (voting score, voting
// ability) tuples plus the spreaders in selection order. round_scores[i] is
// the vote count the i-th winner was elected with.
struct VoteState {
  std::vector<double> voting_score;    // s_u at termination (0 for selected)
  std::vector<double> voting_ability;  // va_u at termination
  std::vector<int> selected;
  std::vector<double> round_scores;
};

// Iterative vote-based spreader identification.
//   1. every node starts with (s, va) = (0, 1);
//   2. each node's score is the sum of its neighbors' voting abilities,
//      already-selected nodes are kept at 0;
//   3. the max-score node wins the round (ties: smaller id) and its own
//      voting ability drops to 0;
//   4. each neighbor of the winner loses delta = 1/<mean degree> of voting
//      ability, clamped at 0;
//   5. repeat until r spreaders are selected.
inline VoteState voterank(const Graph& g, int r,
                          std::span<const std::uint8_t> active = {}) {
  const int n_act = count_active(active, g.n);
  if (r < 1 || r > n_act)
    throw std::invalid_argument("voterank: spreader count out of range");

  long long active_edge_endpoints = 0;
  for (int v = 0; v < g.n; ++v)
    if (node_active(active, v)) active_edge_endpoints += g.masked_degree(v, active);
  if (active_edge_endpoints == 0)
    throw std::invalid_argument("voterank: VoteRank undefined on an edgeless graph");
  const double delta =
      1.0 / (static_cast<double>(active_edge_endpoints) / n_act);

  VoteState state;
  state.voting_score.assign(g.n, 0.0);
  state.voting_ability.assign(g.n, 0.0);
  std::vector<std::uint8_t> is_selected(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    if (node_active(active, v)) state.voting_ability[v] = 1.0;

  state.selected.reserve(r);
  for (int round = 0; round < r; ++round) {
    int winner = -1;
    double best = -1.0;
    for (int u = 0; u < g.n; ++u) {
      if (!node_active(active, u)) continue;
      if (is_selected[u]) {
        state.voting_score[u] = 0.0;
        continue;
      }
      double s = 0.0;
      for (int w : g.neighbors(u))
        if (node_active(active, w)) s += state.voting_ability[w];
      state.voting_score[u] = s;
      if (s > best) {  // ascending scan, so ties keep the smaller id
        best = s;
        winner = u;
      }
    }
    state.selected.push_back(winner);
    state.round_scores.push_back(best);
    is_selected[winner] = 1;
    state.voting_score[winner] = 0.0;
    state.voting_ability[winner] = 0.0;
    for (int w : g.neighbors(winner))
      if (node_active(active, w))
        state.voting_ability[w] = std::max(0.0, state.voting_ability[w] - delta);
  }
  return state;
}

}  // namespace graphsel
