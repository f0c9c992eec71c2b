#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphsel/matrix.hpp"
#include "graphsel/rng.hpp"

namespace graphsel {

struct GcnHyper {
  int hidden_dim = 16;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;  // L2 penalty, input-to-hidden weights only
  double dropout_rate = 0.5;
  int epochs = 200;
  std::uint64_t seed = 0;
};

// Two-layer graph convolutional classifier:
//   Z = softmax(A_hat ReLU(A_hat X Theta0) Theta1)
struct GcnModel {
  DenseMatrix theta0;  // in_dim x hidden
  DenseMatrix theta1;  // hidden x classes
  GcnHyper hyper;

  int in_dim() const { return theta0.rows; }
  int hidden_dim() const { return theta0.cols; }
  int num_classes() const { return theta1.cols; }
};

struct TrainReport {
  std::vector<double> loss_history;  // post-update objective, dropout off
  double final_train_accuracy = std::numeric_limits<double>::quiet_NaN();
  double final_test_accuracy = std::numeric_limits<double>::quiet_NaN();
  int epochs_run = 0;
};

// Glorot-uniform initialization, deterministic per seed.
inline GcnModel init_model(int in_dim, int hidden, int classes,
                           std::uint64_t seed, GcnHyper hyper = {}) {
  if (in_dim < 1 || hidden < 1 || classes < 1)
    throw std::invalid_argument("init_model: dimensions must be >= 1");
  hyper.hidden_dim = hidden;
  hyper.seed = seed;
  GcnModel m{DenseMatrix(in_dim, hidden), DenseMatrix(hidden, classes), hyper};
  Rng rng(seed);
  const double lim0 = std::sqrt(6.0 / (in_dim + hidden));
  for (double& w : m.theta0.data) w = rng.uniform(-lim0, lim0);
  const double lim1 = std::sqrt(6.0 / (hidden + classes));
  for (double& w : m.theta1.data) w = rng.uniform(-lim1, lim1);
  return m;
}

struct GcnForward {
  DenseMatrix z;  // n x classes, rows sum to 1
  DenseMatrix h;  // n x hidden, ReLU(A_hat X Theta0)
};

namespace detail {

inline void row_softmax_inplace(DenseMatrix& m) {
  for (int i = 0; i < m.rows; ++i) {
    auto row = m.row(i);
    double mx = row[0];
    for (double v : row) mx = std::max(mx, v);
    double sum = 0.0;
    for (double& v : row) {
      v = std::exp(v - mx);
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
}

// Inverted dropout: entries survive with probability 1-rate and are scaled
// by 1/(1-rate). Writes the applied factor (0 or 1/keep) into factor.
inline DenseMatrix apply_dropout(const DenseMatrix& m, double rate, Rng& rng,
                                 DenseMatrix& factor) {
  const double keep = 1.0 - rate;
  factor = DenseMatrix(m.rows, m.cols);
  DenseMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    if (rng.uniform01() < keep) {
      factor.data[i] = 1.0 / keep;
      out.data[i] = m.data[i] / keep;
    }
  }
  return out;
}

struct ForwardCache {
  DenseMatrix x_used;    // input after dropout (or the input itself)
  DenseMatrix x_factor;  // empty when dropout off
  DenseMatrix u0;        // A_hat X Theta0, pre-ReLU
  DenseMatrix h;         // ReLU(u0)
  DenseMatrix h_used;    // hidden after dropout
  DenseMatrix h_factor;
  DenseMatrix z;
};

inline void check_forward_dims(const GcnModel& m, const SparseMatrix& a_hat,
                               const DenseMatrix& x) {
  if (a_hat.rows != a_hat.cols)
    throw std::invalid_argument("gcn: adjacency must be square");
  if (a_hat.rows != x.rows)
    throw std::invalid_argument("gcn: adjacency and feature row counts differ");
  if (x.cols != m.theta0.rows)
    throw std::invalid_argument("gcn: feature dim does not match theta0");
  if (m.theta0.cols != m.theta1.rows)
    throw std::invalid_argument("gcn: theta0/theta1 inner dims differ");
}

inline ForwardCache forward_pass(const GcnModel& m, const SparseMatrix& a_hat,
                                 const DenseMatrix& x, Rng* dropout_rng) {
  check_forward_dims(m, a_hat, x);
  ForwardCache c;
  const bool drop = dropout_rng != nullptr && m.hyper.dropout_rate > 0.0;
  c.x_used = drop ? apply_dropout(x, m.hyper.dropout_rate, *dropout_rng, c.x_factor)
                  : x;
  c.u0 = spmm(a_hat, matmul(c.x_used, m.theta0));
  c.h = c.u0;
  for (double& v : c.h.data) v = std::max(0.0, v);
  c.h_used = drop ? apply_dropout(c.h, m.hyper.dropout_rate, *dropout_rng, c.h_factor)
                  : c.h;
  c.z = spmm(a_hat, matmul(c.h_used, m.theta1));
  row_softmax_inplace(c.z);
  return c;
}

}  // namespace detail

// Inference-mode forward pass (no dropout).
inline GcnForward forward(const GcnModel& m, const SparseMatrix& a_hat,
                          const DenseMatrix& x) {
  auto c = detail::forward_pass(m, a_hat, x, nullptr);
  return {std::move(c.z), std::move(c.h)};
}

// Training-mode forward pass; dropout on x and h is drawn from rng when
// train_mode is set.
inline GcnForward forward(const GcnModel& m, const SparseMatrix& a_hat,
                          const DenseMatrix& x, bool train_mode, Rng& rng) {
  auto c = detail::forward_pass(m, a_hat, x, train_mode ? &rng : nullptr);
  return {std::move(c.z), std::move(c.h)};
}

// Mean negative log-likelihood over the masked nodes; log is clamped at a
// 1e-15 floor.
inline double nll_loss(const DenseMatrix& z, std::span<const int> labels,
                       std::span<const int> mask) {
  if (mask.empty()) throw std::invalid_argument("nll_loss: empty mask");
  double total = 0.0;
  for (int v : mask) {
    if (v < 0 || v >= z.rows) throw std::out_of_range("nll_loss: node id out of range");
    const int y = labels[v];
    if (y < 0 || y >= z.cols) throw std::out_of_range("nll_loss: label out of range");
    total += -std::log(std::max(z(v, y), 1e-15));
  }
  return total / static_cast<double>(mask.size());
}

// Penultimate-layer representation: the post-ReLU hidden activations,
// always dropout-free.
inline DenseMatrix embeddings(const GcnModel& m, const SparseMatrix& a_hat,
                              const DenseMatrix& x) {
  return forward(m, a_hat, x).h;
}

// Argmax-class accuracy over the given nodes; prediction ties break toward
// the smaller class id.
inline double accuracy(const DenseMatrix& z, std::span<const int> labels,
                       std::span<const int> nodes) {
  if (nodes.empty()) throw std::invalid_argument("accuracy: empty node set");
  int hits = 0;
  for (int v : nodes) {
    int best = 0;
    for (int c = 1; c < z.cols; ++c)
      if (z(v, c) > z(v, best)) best = c;
    hits += best == labels[v];
  }
  return static_cast<double>(hits) / static_cast<double>(nodes.size());
}

struct GcnGradients {
  DenseMatrix theta0;
  DenseMatrix theta1;
};

namespace detail {

// Backprop through Z = softmax(A_hat drop(ReLU(A_hat drop(X) T0)) T1) with
// the NLL objective plus the theta0 L2 penalty. A_hat is symmetric, so
// A_hat^T products reuse spmm.
inline GcnGradients backward(const GcnModel& m, const SparseMatrix& a_hat,
                             const ForwardCache& c, std::span<const int> labels,
                             std::span<const int> mask) {
  const int classes = m.num_classes();
  DenseMatrix d_u1(c.z.rows, classes);
  const double inv_m = 1.0 / static_cast<double>(mask.size());
  for (int v : mask) {
    for (int k = 0; k < classes; ++k) d_u1(v, k) = c.z(v, k) * inv_m;
    d_u1(v, labels[v]) -= inv_m;
  }

  const DenseMatrix t1 = spmm(a_hat, d_u1);
  GcnGradients g;
  g.theta1 = matmul_at_b(c.h_used, t1);

  DenseMatrix d_h = matmul_a_bt(t1, m.theta1);
  if (c.h_factor.rows > 0)
    for (std::size_t i = 0; i < d_h.data.size(); ++i)
      d_h.data[i] *= c.h_factor.data[i];
  for (std::size_t i = 0; i < d_h.data.size(); ++i)
    if (c.u0.data[i] <= 0.0) d_h.data[i] = 0.0;

  const DenseMatrix t0 = spmm(a_hat, d_h);
  g.theta0 = matmul_at_b(c.x_used, t0);
  if (m.hyper.weight_decay != 0.0)
    for (std::size_t i = 0; i < g.theta0.data.size(); ++i)
      g.theta0.data[i] += m.hyper.weight_decay * m.theta0.data[i];
  return g;
}

struct AdamState {
  DenseMatrix m0, v0, m1, v1;
  int t = 0;
  static constexpr double beta1 = 0.9;
  static constexpr double beta2 = 0.999;
  static constexpr double eps = 1e-8;

  explicit AdamState(const GcnModel& model)
      : m0(model.theta0.rows, model.theta0.cols),
        v0(model.theta0.rows, model.theta0.cols),
        m1(model.theta1.rows, model.theta1.cols),
        v1(model.theta1.rows, model.theta1.cols) {}

  void step_param(DenseMatrix& w, const DenseMatrix& g, DenseMatrix& m,
                  DenseMatrix& v, double lr) const {
    const double bc1 = 1.0 - std::pow(beta1, t);
    const double bc2 = 1.0 - std::pow(beta2, t);
    for (std::size_t i = 0; i < w.data.size(); ++i) {
      m.data[i] = beta1 * m.data[i] + (1.0 - beta1) * g.data[i];
      v.data[i] = beta2 * v.data[i] + (1.0 - beta2) * g.data[i] * g.data[i];
      const double mhat = m.data[i] / bc1;
      const double vhat = v.data[i] / bc2;
      w.data[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }

  void step(GcnModel& model, const GcnGradients& g) {
    ++t;
    step_param(model.theta0, g.theta0, m0, v0, model.hyper.learning_rate);
    step_param(model.theta1, g.theta1, m1, v1, model.hyper.learning_rate);
  }
};

inline double sum_squares(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data) s += v * v;
  return s;
}

}  // namespace detail

// Full-objective gradients (NLL + theta0 L2 penalty), dropout off. This is
// the same code path train() drives, exposed so it can be checked against
// finite differences.
inline GcnGradients compute_gradients(const GcnModel& m, const SparseMatrix& a_hat,
                                      const DenseMatrix& x,
                                      std::span<const int> labels,
                                      std::span<const int> mask) {
  if (mask.empty()) throw std::invalid_argument("compute_gradients: empty mask");
  const auto cache = detail::forward_pass(m, a_hat, x, nullptr);
  return detail::backward(m, a_hat, cache, labels, mask);
}

// The scalar objective matching compute_gradients.
inline double training_objective(const GcnModel& m, const SparseMatrix& a_hat,
                                 const DenseMatrix& x, std::span<const int> labels,
                                 std::span<const int> mask) {
  const auto f = forward(m, a_hat, x);
  return nll_loss(f.z, labels, mask) +
         0.5 * m.hyper.weight_decay * detail::sum_squares(m.theta0);
}

// Full-batch Adam training for a fixed number of epochs, deterministic per
// seed. Loss history records the dropout-free objective after each update.
inline std::pair<GcnModel, TrainReport> train(GcnModel model,
                                              const SparseMatrix& a_hat,
                                              const DenseMatrix& x,
                                              std::span<const int> labels,
                                              std::span<const int> train_mask,
                                              std::span<const int> test_mask = {}) {
  if (train_mask.empty()) throw std::invalid_argument("train: empty train mask");
  if (static_cast<int>(labels.size()) != x.rows)
    throw std::invalid_argument("train: labels size does not match node count");
  detail::check_forward_dims(model, a_hat, x);

  TrainReport report;
  Rng rng(model.hyper.seed);
  detail::AdamState adam(model);
  for (int epoch = 0; epoch < model.hyper.epochs; ++epoch) {
    const auto cache = detail::forward_pass(
        model, a_hat, x, model.hyper.dropout_rate > 0.0 ? &rng : nullptr);
    const auto grads = detail::backward(model, a_hat, cache, labels, train_mask);
    adam.step(model, grads);

    const double obj = training_objective(model, a_hat, x, labels, train_mask);
    if (!std::isfinite(obj) || !model.theta0.all_finite() || !model.theta1.all_finite())
      throw std::runtime_error("train: non-finite loss or weights at epoch " +
                               std::to_string(epoch + 1));
    report.loss_history.push_back(obj);
  }
  report.epochs_run = model.hyper.epochs;

  const auto final_fwd = forward(model, a_hat, x);
  report.final_train_accuracy = accuracy(final_fwd.z, labels, train_mask);
  if (!test_mask.empty())
    report.final_test_accuracy = accuracy(final_fwd.z, labels, test_mask);
  return {std::move(model), std::move(report)};
}

// --- model file format: 8-byte magic, u32 dims, then float64 weights, all
// little-endian ---

namespace detail {

inline void write_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t read_u32_le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline void write_f64_le(std::ostream& os, double d) {
  std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline double read_f64_le(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

constexpr char kModelMagic[8] = {'G', 'S', 'E', 'L', 'G', 'C', 'N', '1'};

}  // namespace detail

inline void save_model(const std::filesystem::path& path, const GcnModel& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_model: cannot open " + path.string());
  os.write(detail::kModelMagic, 8);
  detail::write_u32_le(os, static_cast<std::uint32_t>(m.in_dim()));
  detail::write_u32_le(os, static_cast<std::uint32_t>(m.hidden_dim()));
  detail::write_u32_le(os, static_cast<std::uint32_t>(m.num_classes()));
  for (double v : m.theta0.data) detail::write_f64_le(os, v);
  for (double v : m.theta1.data) detail::write_f64_le(os, v);
  if (!os) throw std::runtime_error("save_model: write failed for " + path.string());
}

inline GcnModel load_model(const std::filesystem::path& path, GcnHyper hyper = {}) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_model: cannot open " + path.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::kModelMagic, 8) != 0)
    throw std::runtime_error("load_model: bad magic in " + path.string());
  const int in_dim = static_cast<int>(detail::read_u32_le(is));
  const int hidden = static_cast<int>(detail::read_u32_le(is));
  const int classes = static_cast<int>(detail::read_u32_le(is));
  hyper.hidden_dim = hidden;
  GcnModel m{DenseMatrix(in_dim, hidden), DenseMatrix(hidden, classes), hyper};
  for (double& v : m.theta0.data) v = detail::read_f64_le(is);
  for (double& v : m.theta1.data) v = detail::read_f64_le(is);
  if (!is) throw std::runtime_error("load_model: truncated file " + path.string());
  return m;
}

}  // namespace graphsel
