#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphsel/graph.hpp"
#include "graphsel/voterank.hpp"

namespace graphsel {

enum class Measure { Degree, Closeness, Betweenness, PageRank, VoteRank };

inline const char* measure_name(Measure m) {
  switch (m) {
    case Measure::Degree: return "degree";
    case Measure::Closeness: return "closeness";
    case Measure::Betweenness: return "betweenness";
    case Measure::PageRank: return "pagerank";
    case Measure::VoteRank: return "voterank";
  }
  return "?";
}

inline Measure parse_measure(const std::string& s) {
  if (s == "degree") return Measure::Degree;
  if (s == "closeness") return Measure::Closeness;
  if (s == "betweenness") return Measure::Betweenness;
  if (s == "pagerank") return Measure::PageRank;
  if (s == "voterank") return Measure::VoteRank;
  throw std::invalid_argument("unknown centrality measure: " + s);
}

// Per-node importance vector produced by one of the measures. Scores are
// finite, non-negative and length n for every measure.
struct CentralityScores {
  Measure measure;
  std::vector<double> scores;
};

struct PagerankOptions {
  double alpha = 0.15;  // teleport weight; damping factor is 1 - alpha
  double tol = 1e-10;   // L1 change threshold
  int max_iter = 500;
};

// Thrown when power iteration fails to converge; carries the last iterate.
struct PagerankDivergenceError : std::runtime_error {
  PagerankDivergenceError(std::string msg, std::vector<double> iterate)
      : std::runtime_error(std::move(msg)), last_iterate(std::move(iterate)) {}
  std::vector<double> last_iterate;
};

// Raw neighbor count (no normalization). Inactive nodes score 0; active
// nodes count only active neighbors.
inline CentralityScores degree_centrality(const Graph& g,
                                          std::span<const std::uint8_t> active = {}) {
  CentralityScores out{Measure::Degree, std::vector<double>(g.n, 0.0)};
  for (int v = 0; v < g.n; ++v)
    if (node_active(active, v))
      out.scores[v] = static_cast<double>(g.masked_degree(v, active));
  return out;
}

// Closeness as inverse farness, restricted to the node's connected
// component and scaled by (reachable-1)/(n-1) so scores stay comparable on
// disconnected graphs. Isolated nodes score 0.
inline CentralityScores closeness_centrality(const Graph& g,
                                             std::span<const std::uint8_t> active = {}) {
  CentralityScores out{Measure::Closeness, std::vector<double>(g.n, 0.0)};
  const int n_act = count_active(active, g.n);
  if (n_act <= 1) return out;

  std::vector<int> dist(g.n);
  std::vector<int> frontier;
  frontier.reserve(g.n);
  for (int s = 0; s < g.n; ++s) {
    if (!node_active(active, s)) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    frontier.assign(1, s);
    long long farness = 0;
    int reached = 1;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const int v = frontier[head];
      for (int w : g.neighbors(v)) {
        if (!node_active(active, w) || dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        farness += dist[w];
        ++reached;
        frontier.push_back(w);
      }
    }
    if (reached > 1) {
      const double r = static_cast<double>(reached - 1);
      out.scores[s] = (r / static_cast<double>(farness)) * (r / (n_act - 1));
    }
  }
  return out;
}

// Brandes' dependency accumulation, unweighted. The returned values use the
// unordered-pair convention: each {s,t} pair is counted once and endpoints
// are excluded, hence the final halving.
inline CentralityScores betweenness_centrality(const Graph& g,
                                               std::span<const std::uint8_t> active = {}) {
  CentralityScores out{Measure::Betweenness, std::vector<double>(g.n, 0.0)};
  std::vector<int> dist(g.n);
  std::vector<double> sigma(g.n), delta(g.n);
  std::vector<std::vector<int>> preds(g.n);
  std::vector<int> order;
  order.reserve(g.n);

  for (int s = 0; s < g.n; ++s) {
    if (!node_active(active, s)) continue;
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int v = order[head];
      for (int w : g.neighbors(v)) {
        if (!node_active(active, w)) continue;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) out.scores[w] += delta[w];
    }
  }
  for (double& v : out.scores) v *= 0.5;
  return out;
}

// Power iteration on M = (1-alpha) A D^{-1} + alpha S with S the uniform
// teleportation matrix; zero-degree columns are replaced by the uniform
// distribution. Returns the L1-normalized dominant eigenvector.
inline CentralityScores pagerank_centrality(const Graph& g,
                                            const PagerankOptions& opts = {},
                                            std::span<const std::uint8_t> active = {}) {
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
    throw std::invalid_argument("pagerank: alpha must lie in (0, 1)");
  CentralityScores out{Measure::PageRank, std::vector<double>(g.n, 0.0)};
  const int n_act = count_active(active, g.n);
  if (n_act == 0) return out;

  std::vector<int> act_deg(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    if (node_active(active, v)) act_deg[v] = g.masked_degree(v, active);

  std::vector<double> x(g.n, 0.0), next(g.n, 0.0);
  for (int v = 0; v < g.n; ++v)
    if (node_active(active, v)) x[v] = 1.0 / n_act;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    double dangling = 0.0;
    for (int v = 0; v < g.n; ++v)
      if (node_active(active, v) && act_deg[v] == 0) dangling += x[v];
    const double base = (1.0 - opts.alpha) * dangling / n_act + opts.alpha / n_act;
    for (int v = 0; v < g.n; ++v) {
      if (!node_active(active, v)) {
        next[v] = 0.0;
        continue;
      }
      double in = 0.0;
      for (int w : g.neighbors(v))
        if (node_active(active, w) && act_deg[w] > 0) in += x[w] / act_deg[w];
      next[v] = (1.0 - opts.alpha) * in + base;
    }
    double sum = 0.0;
    for (int v = 0; v < g.n; ++v) sum += next[v];
    for (int v = 0; v < g.n; ++v) next[v] /= sum;

    double change = 0.0;
    for (int v = 0; v < g.n; ++v) change += std::abs(next[v] - x[v]);
    x.swap(next);
    if (change < opts.tol) {
      out.scores = std::move(x);
      return out;
    }
  }
  throw PagerankDivergenceError(
      "pagerank: no convergence within " + std::to_string(opts.max_iter) +
          " iterations (tol " + std::to_string(opts.tol) + ")",
      std::move(x));
}

// VoteRank as a score vector: the i-th selected spreader (0-based) gets
// r - i, everything else 0, so sorting by score reproduces selection order.
inline CentralityScores voterank_centrality(const Graph& g, int r = 0,
                                            std::span<const std::uint8_t> active = {}) {
  const int n_act = count_active(active, g.n);
  if (r == 0) r = n_act;
  const VoteState state = voterank(g, r, active);
  CentralityScores out{Measure::VoteRank, std::vector<double>(g.n, 0.0)};
  for (std::size_t i = 0; i < state.selected.size(); ++i)
    out.scores[state.selected[i]] = static_cast<double>(r - static_cast<int>(i));
  return out;
}

struct CentralityOptions {
  PagerankOptions pagerank;
  int voterank_r = 0;  // 0 = rank every active node
};

inline CentralityScores compute_centrality(const Graph& g, Measure m,
                                           std::span<const std::uint8_t> active = {},
                                           const CentralityOptions& opts = {}) {
  switch (m) {
    case Measure::Degree: return degree_centrality(g, active);
    case Measure::Closeness: return closeness_centrality(g, active);
    case Measure::Betweenness: return betweenness_centrality(g, active);
    case Measure::PageRank: return pagerank_centrality(g, opts.pagerank, active);
    case Measure::VoteRank: return voterank_centrality(g, opts.voterank_r, active);
  }
  throw std::logic_error("compute_centrality: unhandled measure");
}

}  // namespace graphsel
