#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace graphsel {

// Row-major dense matrix of doubles. Houses features, weights and
// activations; all real arithmetic in the library is 64-bit.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // rows * cols, row-major

  DenseMatrix() = default;
  DenseMatrix(int r, int c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }

  std::span<double> row(int r) {
    return {data.data() + static_cast<std::size_t>(r) * cols,
            static_cast<std::size_t>(cols)};
  }
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols,
            static_cast<std::size_t>(cols)};
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

// Square or rectangular CSR matrix; per-row column ids sorted and unique.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> offsets;  // rows + 1
  std::vector<int> col_ids;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_ids.size()); }
};

namespace detail {
using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
}

// Dense products go through Eigen; everything stays single-threaded so
// seeded runs are bit-stable.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions differ");
  DenseMatrix out(a.rows, b.cols);
  Eigen::Map<const detail::EigenRowMajor> ma(a.data.data(), a.rows, a.cols);
  Eigen::Map<const detail::EigenRowMajor> mb(b.data.data(), b.rows, b.cols);
  Eigen::Map<detail::EigenRowMajor> mo(out.data.data(), out.rows, out.cols);
  mo.noalias() = ma * mb;
  return out;
}

// a^T * b
inline DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows)
    throw std::invalid_argument("matmul_at_b: row counts differ");
  DenseMatrix out(a.cols, b.cols);
  Eigen::Map<const detail::EigenRowMajor> ma(a.data.data(), a.rows, a.cols);
  Eigen::Map<const detail::EigenRowMajor> mb(b.data.data(), b.rows, b.cols);
  Eigen::Map<detail::EigenRowMajor> mo(out.data.data(), out.rows, out.cols);
  mo.noalias() = ma.transpose() * mb;
  return out;
}

// a * b^T
inline DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.cols)
    throw std::invalid_argument("matmul_a_bt: column counts differ");
  DenseMatrix out(a.rows, b.rows);
  Eigen::Map<const detail::EigenRowMajor> ma(a.data.data(), a.rows, a.cols);
  Eigen::Map<const detail::EigenRowMajor> mb(b.data.data(), b.rows, b.cols);
  Eigen::Map<detail::EigenRowMajor> mo(out.data.data(), out.rows, out.cols);
  mo.noalias() = ma * mb.transpose();
  return out;
}

// Sparse * dense, plain CSR row loop.
inline DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d) {
  if (s.cols != d.rows) throw std::invalid_argument("spmm: inner dimensions differ");
  DenseMatrix out(s.rows, d.cols);
  for (int i = 0; i < s.rows; ++i) {
    double* out_row = out.data.data() + static_cast<std::size_t>(i) * d.cols;
    for (int e = s.offsets[i]; e < s.offsets[i + 1]; ++e) {
      const double w = s.values[e];
      const double* in_row =
          d.data.data() + static_cast<std::size_t>(s.col_ids[e]) * d.cols;
      for (int c = 0; c < d.cols; ++c) out_row[c] += w * in_row[c];
    }
  }
  return out;
}

inline void spmv(const SparseMatrix& s, std::span<const double> x,
                 std::span<double> out) {
  if (static_cast<int>(x.size()) != s.cols || static_cast<int>(out.size()) != s.rows)
    throw std::invalid_argument("spmv: dimension mismatch");
  for (int i = 0; i < s.rows; ++i) {
    double acc = 0.0;
    for (int e = s.offsets[i]; e < s.offsets[i + 1]; ++e)
      acc += s.values[e] * x[s.col_ids[e]];
    out[i] = acc;
  }
}

inline DenseMatrix to_dense(const SparseMatrix& s) {
  DenseMatrix out(s.rows, s.cols);
  for (int i = 0; i < s.rows; ++i)
    for (int e = s.offsets[i]; e < s.offsets[i + 1]; ++e)
      out(i, s.col_ids[e]) = s.values[e];
  return out;
}

}  // namespace graphsel
