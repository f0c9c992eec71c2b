#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphsel {

// Boolean node mask: 1 = active. An empty mask means "all nodes active".
// Centrality and selection routines take one of these instead of rebuilding
// residual graphs.
using NodeMask = std::vector<std::uint8_t>;

inline bool node_active(std::span<const std::uint8_t> mask, int v) {
  return mask.empty() || mask[v] != 0;
}

inline int count_active(std::span<const std::uint8_t> mask, int n) {
  if (mask.empty()) return n;
  int c = 0;
  for (int v = 0; v < n; ++v) c += mask[v] != 0;
  return c;
}

// Immutable undirected simple graph in CSR form. Neighbor lists are strictly
// increasing, no self loops, no duplicates; csr_offsets[n] == 2 * edge_count.
struct Graph {
  int n = 0;
  std::vector<int> csr_offsets;    // n + 1
  std::vector<int> csr_neighbors;  // 2 * edge_count
  int edge_count = 0;

  int degree(int v) const { return csr_offsets[v + 1] - csr_offsets[v]; }

  std::span<const int> neighbors(int v) const {
    return {csr_neighbors.data() + csr_offsets[v],
            csr_neighbors.data() + csr_offsets[v + 1]};
  }

  bool has_edge(int u, int v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Degree counting only neighbors that are active under the mask.
  int masked_degree(int v, std::span<const std::uint8_t> mask) const {
    if (mask.empty()) return degree(v);
    int d = 0;
    for (int w : neighbors(v)) d += mask[w] != 0;
    return d;
  }
};

// Builds an undirected simple graph from an edge list. Self loops are
// dropped, duplicate and reversed pairs are deduplicated.
inline Graph build_graph(std::span<const std::pair<int, int>> edges, int n) {
  if (n < 0) throw std::invalid_argument("build_graph: negative node count");
  std::vector<std::pair<int, int>> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::out_of_range("build_graph: edge (" + std::to_string(u) + ", " +
                              std::to_string(v) + ") references a node id >= " +
                              std::to_string(n));
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.n = n;
  g.csr_offsets.assign(n + 1, 0);
  g.csr_neighbors.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++g.csr_offsets[u + 1];
    g.csr_neighbors.push_back(v);
  }
  for (int v = 0; v < n; ++v) g.csr_offsets[v + 1] += g.csr_offsets[v];
  g.edge_count = static_cast<int>(directed.size() / 2);
  return g;
}

inline Graph build_graph(std::initializer_list<std::pair<int, int>> edges, int n) {
  return build_graph(std::span<const std::pair<int, int>>(edges.begin(), edges.size()), n);
}

// Mean degree 2E/n; 0 for the empty graph.
inline double mean_degree(const Graph& g) {
  return g.n == 0 ? 0.0 : 2.0 * g.edge_count / g.n;
}

}  // namespace graphsel
