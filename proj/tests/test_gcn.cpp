#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>

#include <graphsel/gcn.hpp>
#include <graphsel/graph_matrices.hpp>
#include <graphsel/sbm.hpp>

#include "oracles.hpp"

using namespace graphsel;

namespace {

// 6-node fixture: two triangles joined by one bridge, 3 features, 2 classes.
struct Fixture {
  Graph g = build_graph({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}}, 6);
  SparseMatrix a_hat = normalized_adjacency(g);
  DenseMatrix x{6, 3};
  std::vector<int> labels{0, 0, 0, 1, 1, 1};
  std::vector<int> mask{0, 2, 3, 5};

  Fixture() {
    Rng rng(99);
    for (double& v : x.data) v = rng.normal();
  }
};

double max_relative_error(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double denom = std::max({1e-6, std::abs(a.data[i]), std::abs(b.data[i])});
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]) / denom);
  }
  return worst;
}

}  // namespace

TEST_CASE("init_model is deterministic and respects shapes and bounds") {
  const GcnModel a = init_model(7, 4, 3, 42);
  const GcnModel b = init_model(7, 4, 3, 42);
  REQUIRE(a.theta0.data == b.theta0.data);
  REQUIRE(a.theta1.data == b.theta1.data);

  const GcnModel thin = init_model(5, 1, 2, 0);
  REQUIRE(thin.theta0.rows == 5);
  REQUIRE(thin.theta0.cols == 1);

  const double lim0 = std::sqrt(6.0 / (7 + 4));
  for (double w : a.theta0.data) REQUIRE(std::abs(w) <= lim0);
  const double lim1 = std::sqrt(6.0 / (4 + 3));
  for (double w : a.theta1.data) REQUIRE(std::abs(w) <= lim1);

  REQUIRE_THROWS_AS(init_model(0, 4, 3, 0), std::invalid_argument);
}

TEST_CASE("forward with zero theta1 outputs the uniform distribution") {
  Fixture f;
  GcnModel m = init_model(3, 4, 2, 1);
  std::fill(m.theta1.data.begin(), m.theta1.data.end(), 0.0);
  const GcnForward out = forward(m, f.a_hat, f.x);
  for (double v : out.z.data) REQUIRE(v == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("forward on a single node collapses to softmax(relu(x T0) T1)") {
  const Graph g = build_graph({}, 1);
  const SparseMatrix a_hat = normalized_adjacency(g);  // [[1]]
  DenseMatrix x(1, 2);
  x(0, 0) = 0.3;
  x(0, 1) = -1.2;
  const GcnModel m = init_model(2, 3, 2, 5);

  DenseMatrix h = matmul(x, m.theta0);
  for (double& v : h.data) v = std::max(0.0, v);
  DenseMatrix u = matmul(h, m.theta1);
  const double mx = std::max(u(0, 0), u(0, 1));
  const double e0 = std::exp(u(0, 0) - mx), e1 = std::exp(u(0, 1) - mx);

  const GcnForward out = forward(m, a_hat, x);
  REQUIRE(out.z(0, 0) == Catch::Approx(e0 / (e0 + e1)).epsilon(1e-12));
  REQUIRE(out.z(0, 1) == Catch::Approx(e1 / (e0 + e1)).epsilon(1e-12));
}

TEST_CASE("forward rejects mismatched dimensions") {
  Fixture f;
  const GcnModel m = init_model(5, 4, 2, 1);  // expects 5 features, x has 3
  REQUIRE_THROWS_AS(forward(m, f.a_hat, f.x), std::invalid_argument);
}

TEST_CASE("softmax rows sum to one") {
  Fixture f;
  const GcnModel m = init_model(3, 4, 3, 2);
  const GcnForward out = forward(m, f.a_hat, f.x);
  for (int i = 0; i < out.z.rows; ++i) {
    double s = 0.0;
    for (double v : out.z.row(i)) s += v;
    REQUIRE(s == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("nll_loss basics") {
  DenseMatrix z(2, 4);
  for (double& v : z.data) v = 0.25;
  const std::vector<int> labels{1, 3};
  const std::vector<int> mask{0, 1};
  REQUIRE(nll_loss(z, labels, mask) == Catch::Approx(std::log(4.0)).epsilon(1e-12));

  DenseMatrix onehot(2, 4);
  onehot(0, 1) = 1.0;
  onehot(1, 3) = 1.0;
  REQUIRE(nll_loss(onehot, labels, mask) <= 1e-12);

  // masking: perturbing an unmasked row leaves the loss unchanged
  DenseMatrix z2 = z;
  const std::vector<int> only0{0};
  const double before = nll_loss(z2, labels, only0);
  z2(1, 0) = 0.9;
  z2(1, 1) = 0.1;
  REQUIRE(nll_loss(z2, labels, only0) == before);

  REQUIRE_THROWS_AS(nll_loss(z, labels, {}), std::invalid_argument);
}

TEST_CASE("analytic gradients match central finite differences") {
  Fixture f;
  GcnModel m = init_model(3, 4, 2, 7);
  m.hyper.weight_decay = 5e-4;
  m.hyper.dropout_rate = 0.0;

  const GcnGradients analytic =
      compute_gradients(m, f.a_hat, f.x, f.labels, f.mask);
  const GcnGradients fd = oracles::finite_difference_gradients(
      m, f.a_hat, f.x, f.labels, f.mask, 1e-5);

  REQUIRE(max_relative_error(analytic.theta0, fd.theta0) < 1e-4);
  REQUIRE(max_relative_error(analytic.theta1, fd.theta1) < 1e-4);
}

TEST_CASE("training separates the 2-clique toy problem") {
  const SbmDataset ds = sbm_generate({3, 3}, 1.0, 0.0, 4, 11, 0.1);
  const SparseMatrix a_hat = normalized_adjacency(ds.graph);
  const std::vector<int> train_mask{0, 3};  // one labeled node per clique
  const std::vector<int> test_mask{1, 2, 4, 5};

  GcnModel m = init_model(4, 16, 2, 3);
  auto [trained, report] =
      train(std::move(m), a_hat, ds.features, ds.labels, train_mask, test_mask);
  REQUIRE(report.final_test_accuracy == Catch::Approx(1.0));
  REQUIRE(report.epochs_run == 200);
  REQUIRE(static_cast<int>(report.loss_history.size()) == report.epochs_run);
}

TEST_CASE("loss is non-increasing early on the separable toy") {
  const SbmDataset ds = sbm_generate({3, 3}, 1.0, 0.0, 4, 11, 0.1);
  const SparseMatrix a_hat = normalized_adjacency(ds.graph);
  const std::vector<int> train_mask{0, 3};
  GcnModel m = init_model(4, 16, 2, 3);  // default hyperparameters
  const auto [trained, report] =
      train(std::move(m), a_hat, ds.features, ds.labels, train_mask);
  for (int e = 1; e < 10; ++e)
    REQUIRE(report.loss_history[e] <= report.loss_history[e - 1] + 1e-12);
}

TEST_CASE("train with zero epochs returns the model unchanged") {
  Fixture f;
  GcnModel m = init_model(3, 4, 2, 7);
  m.hyper.epochs = 0;
  const DenseMatrix theta0_before = m.theta0;
  const auto [out, report] = train(std::move(m), f.a_hat, f.x, f.labels, f.mask);
  REQUIRE(out.theta0.data == theta0_before.data);
  REQUIRE(report.epochs_run == 0);
  REQUIRE(report.loss_history.empty());
}

TEST_CASE("train is deterministic per seed") {
  Fixture f;
  GcnModel a = init_model(3, 4, 2, 7);
  a.hyper.epochs = 30;
  GcnModel b = a;
  const auto [ta, ra] = train(std::move(a), f.a_hat, f.x, f.labels, f.mask);
  const auto [tb, rb] = train(std::move(b), f.a_hat, f.x, f.labels, f.mask);
  REQUIRE(ta.theta0.data == tb.theta0.data);
  REQUIRE(ta.theta1.data == tb.theta1.data);
  REQUIRE(ra.loss_history == rb.loss_history);
}

TEST_CASE("train aborts with a diagnostic on divergence") {
  Fixture f;
  GcnModel m = init_model(3, 4, 2, 7);
  m.hyper.learning_rate = 1e200;
  m.hyper.epochs = 10;
  REQUIRE_THROWS_WITH(train(std::move(m), f.a_hat, f.x, f.labels, f.mask),
                      Catch::Matchers::ContainsSubstring("non-finite"));
}

TEST_CASE("embeddings are the dropout-free hidden activations") {
  Fixture f;
  GcnModel m = init_model(3, 4, 2, 7);
  const DenseMatrix e1 = embeddings(m, f.a_hat, f.x);
  const DenseMatrix e2 = embeddings(m, f.a_hat, f.x);
  REQUIRE(e1.rows == 6);
  REQUIRE(e1.cols == 4);
  REQUIRE(e1.data == e2.data);  // no dropout at inference

  std::fill(m.theta0.data.begin(), m.theta0.data.end(), 0.0);
  const DenseMatrix zero = embeddings(m, f.a_hat, f.x);
  for (double v : zero.data) REQUIRE(v == 0.0);
}

TEST_CASE("forward is equivariant to node permutation") {
  Fixture f;
  const GcnModel m = init_model(3, 4, 2, 7);
  // reverse the node order
  const int n = f.g.n;
  std::vector<int> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = n - 1 - v;

  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v : f.g.neighbors(u))
      if (u < v) edges.emplace_back(perm[u], perm[v]);
  const Graph gp = build_graph(edges, n);
  const SparseMatrix ap = normalized_adjacency(gp);
  DenseMatrix xp(n, 3);
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < 3; ++c) xp(perm[v], c) = f.x(v, c);

  const GcnForward base = forward(m, f.a_hat, f.x);
  const GcnForward permuted = forward(m, ap, xp);
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < 2; ++c)
      REQUIRE(permuted.z(perm[v], c) == Catch::Approx(base.z(v, c)).margin(1e-12));
}

TEST_CASE("model files round-trip") {
  const GcnModel m = init_model(5, 3, 4, 21);
  const auto path = std::filesystem::temp_directory_path() / "graphsel_model.bin";
  save_model(path, m);
  const GcnModel loaded = load_model(path);
  REQUIRE(loaded.theta0.data == m.theta0.data);
  REQUIRE(loaded.theta1.data == m.theta1.data);
  REQUIRE(loaded.in_dim() == 5);
  REQUIRE(loaded.num_classes() == 4);
  std::filesystem::remove(path);
}
