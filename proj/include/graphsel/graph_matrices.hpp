#pragma once

#include <cmath>
#include <vector>

#include "graphsel/graph.hpp"
#include "graphsel/matrix.hpp"

namespace graphsel {

// Renormalized adjacency: with self loops added, entry (i,j) is
// 1/sqrt((deg(i)+1)(deg(j)+1)) for j in {i} union nbrs(i).
// Every degree is >= 1 after the self loop, so no zero-division case exists.
inline SparseMatrix normalized_adjacency(const Graph& g) {
  SparseMatrix m;
  m.rows = m.cols = g.n;
  m.offsets.assign(g.n + 1, 0);
  m.col_ids.reserve(g.csr_neighbors.size() + g.n);
  m.values.reserve(g.csr_neighbors.size() + g.n);

  std::vector<double> inv_sqrt_deg(g.n);
  for (int v = 0; v < g.n; ++v)
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v) + 1));

  for (int i = 0; i < g.n; ++i) {
    bool self_emitted = false;
    for (int j : g.neighbors(i)) {
      if (!self_emitted && j > i) {
        m.col_ids.push_back(i);
        m.values.push_back(inv_sqrt_deg[i] * inv_sqrt_deg[i]);
        self_emitted = true;
      }
      m.col_ids.push_back(j);
      m.values.push_back(inv_sqrt_deg[i] * inv_sqrt_deg[j]);
    }
    if (!self_emitted) {
      m.col_ids.push_back(i);
      m.values.push_back(inv_sqrt_deg[i] * inv_sqrt_deg[i]);
    }
    m.offsets[i + 1] = static_cast<int>(m.col_ids.size());
  }
  return m;
}

// Symmetric normalized Laplacian D^{-1/2} (D - W) D^{-1/2}. For zero-degree
// nodes the D^{-1/2} factor is taken as 0, so their row and column are all
// zero (an edgeless graph maps to the zero matrix). Eigenvalues lie in [0, 2].
inline SparseMatrix normalized_laplacian(const Graph& g) {
  SparseMatrix m;
  m.rows = m.cols = g.n;
  m.offsets.assign(g.n + 1, 0);

  std::vector<double> inv_sqrt_deg(g.n, 0.0);
  for (int v = 0; v < g.n; ++v) {
    const int d = g.degree(v);
    if (d > 0) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(d));
  }

  for (int i = 0; i < g.n; ++i) {
    if (g.degree(i) > 0) {
      bool self_emitted = false;
      for (int j : g.neighbors(i)) {
        if (!self_emitted && j > i) {
          m.col_ids.push_back(i);
          m.values.push_back(1.0);
          self_emitted = true;
        }
        m.col_ids.push_back(j);
        m.values.push_back(-inv_sqrt_deg[i] * inv_sqrt_deg[j]);
      }
      if (!self_emitted) {
        m.col_ids.push_back(i);
        m.values.push_back(1.0);
      }
    }
    m.offsets[i + 1] = static_cast<int>(m.col_ids.size());
  }
  return m;
}

}  // namespace graphsel
