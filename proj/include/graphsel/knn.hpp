#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphsel/graph.hpp"
#include "graphsel/matrix.hpp"

namespace graphsel {

struct KnnGraphResult {
  Graph graph;
  int requested_k = 0;
  int effective_k = 0;
  bool clamped = false;  // true when k >= n forced a clamp to n - 1
};

// Connects every row to its k nearest rows by Euclidean distance (self
// excluded), then symmetrizes the directed relation by union. Distance ties
// break toward the smaller node id. k >= n is clamped to n - 1 and flagged
// in the result.
inline KnnGraphResult knn_graph(const DenseMatrix& embeddings, int k) {
  const int n = embeddings.rows;
  if (k < 1) throw std::invalid_argument("knn_graph: k must be >= 1");
  if (n < 2) throw std::invalid_argument("knn_graph: need at least 2 rows");

  KnnGraphResult result;
  result.requested_k = k;
  result.clamped = k >= n;
  result.effective_k = result.clamped ? n - 1 : k;

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * result.effective_k);
  std::vector<std::pair<double, int>> cand(n - 1);
  for (int i = 0; i < n; ++i) {
    const auto ri = embeddings.row(i);
    int idx = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto rj = embeddings.row(j);
      double d2 = 0.0;
      for (int c = 0; c < embeddings.cols; ++c) {
        const double diff = ri[c] - rj[c];
        d2 += diff * diff;
      }
      cand[idx++] = {d2, j};
    }
    std::partial_sort(cand.begin(), cand.begin() + result.effective_k, cand.end());
    for (int t = 0; t < result.effective_k; ++t) edges.emplace_back(i, cand[t].second);
  }
  result.graph = build_graph(edges, n);  // build_graph dedups = union
  return result;
}

}  // namespace graphsel
