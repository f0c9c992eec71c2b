#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphsel/graph.hpp"
#include "graphsel/graph_matrices.hpp"
#include "graphsel/matrix.hpp"
#include "graphsel/rng.hpp"

namespace graphsel {

// Largest eigenvalue of a symmetric PSD matrix by power iteration with a
// deterministic pseudo-random start vector. Returns 2.0 (a valid upper
// bound for the normalized Laplacian) when the iteration does not settle.
inline double estimate_lambda_max(const SparseMatrix& m, int max_iter = 100,
                                  double tol = 1e-10) {
  const int n = m.rows;
  if (n == 0) return 2.0;
  Rng rng(0x9e3779b97f4a7c15ULL);
  std::vector<double> v(n), mv(n);
  double norm = 0.0;
  for (double& e : v) {
    e = rng.uniform(-1.0, 1.0);
    norm += e * e;
  }
  norm = std::sqrt(norm);
  for (double& e : v) e /= norm;

  double lambda_prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    spmv(m, v, mv);
    double lambda = 0.0, mv_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      lambda += v[i] * mv[i];  // Rayleigh quotient
      mv_norm += mv[i] * mv[i];
    }
    mv_norm = std::sqrt(mv_norm);
    if (mv_norm < 1e-300) return 2.0;  // zero matrix: fall back to the bound
    for (int i = 0; i < n; ++i) v[i] = mv[i] / mv_norm;
    if (it > 0 && std::abs(lambda - lambda_prev) < tol) return lambda;
    lambda_prev = lambda;
  }
  return 2.0;
}

// Truncated Chebyshev expansion of a spectral filter applied to a node
// signal: sum_k theta_k T_k(L_hat) x with L_hat = (2/lambda_max) L - I and
// the recurrence T_0 = x, T_1 = L_hat x, T_k = 2 L_hat T_{k-1} - T_{k-2}.
// lambda_max defaults to the power-iteration estimate; pass it explicitly
// to pin the rescaling (e.g. 2.0, the bound the K=1 simplification assumes).
inline std::vector<double> chebyshev_filter(const Graph& g,
                                            std::span<const double> x,
                                            std::span<const double> thetas,
                                            std::optional<double> lambda_max = {}) {
  if (thetas.empty())
    throw std::invalid_argument("chebyshev_filter: need at least theta_0 (K >= 0)");
  if (static_cast<int>(x.size()) != g.n)
    throw std::invalid_argument("chebyshev_filter: signal length != node count");

  const SparseMatrix lap = normalized_laplacian(g);
  double lam = lambda_max ? *lambda_max : estimate_lambda_max(lap);
  if (!(lam > 1e-12)) lam = 2.0;
  const double scale = 2.0 / lam;

  const int n = g.n;
  const auto apply_l_hat = [&](const std::vector<double>& in,
                               std::vector<double>& out) {
    spmv(lap, in, out);
    for (int i = 0; i < n; ++i) out[i] = scale * out[i] - in[i];
  };

  std::vector<double> t_prev(x.begin(), x.end());  // T_0
  std::vector<double> result(n);
  for (int i = 0; i < n; ++i) result[i] = thetas[0] * t_prev[i];
  if (thetas.size() == 1) return result;

  std::vector<double> t_cur(n), tmp(n);
  apply_l_hat(t_prev, t_cur);  // T_1
  for (int i = 0; i < n; ++i) result[i] += thetas[1] * t_cur[i];

  for (std::size_t k = 2; k < thetas.size(); ++k) {
    apply_l_hat(t_cur, tmp);
    for (int i = 0; i < n; ++i) tmp[i] = 2.0 * tmp[i] - t_prev[i];
    t_prev.swap(t_cur);
    t_cur.swap(tmp);
    for (int i = 0; i < n; ++i) result[i] += thetas[k] * t_cur[i];
  }
  return result;
}

}  // namespace graphsel
