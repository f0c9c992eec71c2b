#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphsel/centrality.hpp"
#include "graphsel/gcn.hpp"
#include "graphsel/graph.hpp"
#include "graphsel/graph_matrices.hpp"
#include "graphsel/knn.hpp"
#include "graphsel/selection.hpp"

namespace graphsel {

// Ground-truth label source. query() hands out a label and logs it;
// answers are consistent across repeated queries. peek() is a read-only
// accessor for harness-side evaluation and does not count as labeling.
class Oracle {
 public:
  explicit Oracle(std::vector<int> labels)
      : labels_(std::move(labels)), seen_(labels_.size(), 0) {}

  int query(int v) {
    const int y = peek(v);
    log_.push_back(v);
    if (!seen_[v]) {
      seen_[v] = 1;
      ++distinct_;
    }
    return y;
  }

  int peek(int v) const {
    if (v < 0 || v >= static_cast<int>(labels_.size()))
      throw std::out_of_range("oracle: node " + std::to_string(v) + " out of range");
    if (labels_[v] < 0)
      throw std::runtime_error("oracle: no label for node " + std::to_string(v));
    return labels_[v];
  }

  int distinct_queries() const { return distinct_; }
  const std::vector<int>& query_log() const { return log_; }
  int num_nodes() const { return static_cast<int>(labels_.size()); }

 private:
  std::vector<int> labels_;
  std::vector<int> log_;
  std::vector<std::uint8_t> seen_;
  int distinct_ = 0;
};

struct AlConfig {
  int seed_count = 10;
  int batch_size = 10;
  int budget = 140;
  int knn_k = 10;
  int num_classes = 2;  // output layer size; dataset metadata, not labels
  Measure measure = Measure::Degree;
  GcnHyper gcn;
  CentralityOptions centrality;
  std::uint64_t seed = 0;  // seeds the random starting set
};

// Snapshot handed to the observer hook once per acquisition iteration. The
// centrality graph here is the kNN graph built from this round's
// embeddings, never the original input graph.
struct AlIteration {
  int index;
  const Graph& knn;
  const CentralityScores& scores;
  std::span<const int> picked;
  double accuracy;  // NaN when no test nodes were supplied
};

using AlHook = std::function<void(const AlIteration&)>;

struct AlResult {
  SelectionPlan plan;
  GcnModel model;
  std::vector<double> accuracy_trace;  // one entry per training run
  std::vector<double> train_seconds;   // wall time per training run
  int iterations = 0;                  // acquisition iterations
};

namespace detail {

inline GcnModel train_fresh(const SparseMatrix& a_hat, const DenseMatrix& x,
                            std::span<const int> labels,
                            std::span<const int> labeled, int num_classes,
                            const GcnHyper& hyper) {
  GcnModel model =
      init_model(x.cols, hyper.hidden_dim, num_classes, hyper.seed, hyper);
  return train(std::move(model), a_hat, x, labels, labeled).first;
}

}  // namespace detail

// Centrality-driven active learning: random seed set, then rounds of
// train -> embed -> kNN graph -> centrality -> query the top unlabeled
// batch, until the labelling budget is spent, with a final retrain. Every
// training starts from a fresh seeded initialization (no warm start), so
// the whole loop is a pure function of (graph, features, oracle, cfg).
inline AlResult al_loop(const Graph& g, const DenseMatrix& x, Oracle& oracle,
                        const AlConfig& cfg, std::span<const int> test_nodes = {},
                        const AlHook& hook = nullptr) {
  if (cfg.budget > g.n)
    throw std::invalid_argument("al_loop: budget exceeds node count");
  if (cfg.seed_count < 1 || cfg.seed_count > cfg.budget)
    throw std::invalid_argument("al_loop: seed_count must be in [1, budget]");
  if (cfg.batch_size < 1)
    throw std::invalid_argument("al_loop: batch_size must be >= 1");
  if (cfg.knn_k < 1) throw std::invalid_argument("al_loop: knn_k must be >= 1");
  if (oracle.num_nodes() != g.n)
    throw std::invalid_argument("al_loop: oracle size does not match graph");

  const SparseMatrix a_hat = normalized_adjacency(g);

  std::vector<int> labels(g.n, 0);
  std::vector<std::uint8_t> is_labeled(g.n, 0);
  std::vector<int> labeled;
  labeled.reserve(cfg.budget);

  for (int v : random_select(g.n, cfg.seed_count, cfg.seed).selected) {
    labels[v] = oracle.query(v);
    is_labeled[v] = 1;
    labeled.push_back(v);
  }

  // Evaluation labels are peeked, not queried: measuring accuracy is
  // harness work and must not show up in the labeling budget.
  std::vector<int> eval_labels;
  if (!test_nodes.empty()) {
    eval_labels.assign(g.n, 0);
    for (int v : test_nodes) eval_labels[v] = oracle.peek(v);
  }

  AlResult result;
  result.plan.strategy = Strategy::ActiveLearning;
  result.plan.measure = cfg.measure;
  result.plan.budget = cfg.budget;
  result.plan.per_round = cfg.batch_size;

  GcnModel model;
  const auto run_training = [&]() {
    const auto start = std::chrono::steady_clock::now();
    model = detail::train_fresh(a_hat, x, labels, labeled, cfg.num_classes, cfg.gcn);
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - start;
    result.train_seconds.push_back(dt.count());
    double acc = std::numeric_limits<double>::quiet_NaN();
    if (!test_nodes.empty())
      acc = accuracy(forward(model, a_hat, x).z, eval_labels, test_nodes);
    result.accuracy_trace.push_back(acc);
    return acc;
  };

  while (static_cast<int>(labeled.size()) < cfg.budget) {
    const double acc = run_training();
    const DenseMatrix emb = embeddings(model, a_hat, x);
    const KnnGraphResult knn = knn_graph(emb, cfg.knn_k);
    const CentralityScores scores =
        compute_centrality(knn.graph, cfg.measure, {}, cfg.centrality);

    const int take =
        std::min(cfg.batch_size, cfg.budget - static_cast<int>(labeled.size()));
    std::vector<int> picked;
    picked.reserve(take);
    for (int v : detail::top_k_by_score(scores.scores, g.n)) {
      if (is_labeled[v]) continue;
      picked.push_back(v);
      if (static_cast<int>(picked.size()) == take) break;
    }
    for (int v : picked) {
      labels[v] = oracle.query(v);
      is_labeled[v] = 1;
      labeled.push_back(v);
    }
    if (hook)
      hook(AlIteration{result.iterations, knn.graph, scores, picked, acc});
    ++result.iterations;
  }

  run_training();  // final retrain on the full budget
  result.plan.selected = labeled;
  result.model = std::move(model);
  return result;
}

// Deterministic single training run from a saved plan, for apples-to-apples
// comparison across selection strategies. Reproduces an al_loop's final
// model exactly when given the loop's plan, hyperparameters and class count.
inline GcnModel replay(const SelectionPlan& plan, const Graph& g,
                       const DenseMatrix& x, Oracle& oracle, int num_classes,
                       const GcnHyper& hyper) {
  if (plan.selected.empty()) throw std::invalid_argument("replay: empty plan");
  std::vector<int> labels(g.n, 0);
  for (int v : plan.selected) {
    if (v < 0 || v >= g.n)
      throw std::out_of_range("replay: plan references node out of range");
    labels[v] = oracle.query(v);
  }
  const SparseMatrix a_hat = normalized_adjacency(g);
  return detail::train_fresh(a_hat, x, labels, plan.selected, num_classes, hyper);
}

}  // namespace graphsel
