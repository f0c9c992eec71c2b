#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <graphsel/bench.hpp>

using namespace graphsel;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

SuiteConfig tiny_suite() {
  SuiteConfig s;
  s.dataset.type = DatasetConfig::Type::Sbm;
  s.dataset.sbm.blocks = {15, 15};
  s.dataset.sbm.p_in = 0.4;
  s.dataset.sbm.p_out = 0.02;
  s.dataset.sbm.feature_dim = 6;
  s.dataset.sbm.noise_sigma = 0.8;
  s.dataset.sbm.seed = 77;
  s.n_runs = 2;
  s.base_seed = 5;
  s.budget = 8;
  s.per_round = 4;
  s.al_seed_count = 4;
  s.al_batch_size = 2;
  s.al_knn_k = 3;
  s.gcn.epochs = 8;
  return s;
}

}  // namespace

TEST_CASE("evaluate scores a perfect model at 1.0") {
  const SbmDataset ds = sbm_generate({3, 3}, 1.0, 0.0, 4, 11, 0.1);
  const SparseMatrix a_hat = normalized_adjacency(ds.graph);
  const std::vector<int> train_nodes{0, 3};
  const std::vector<int> test_nodes{1, 2, 4, 5};
  GcnModel m = init_model(4, 16, 2, 3);
  auto [trained, report] =
      train(std::move(m), a_hat, ds.features, ds.labels, train_nodes);
  REQUIRE(evaluate(trained, a_hat, ds.features, ds.labels, test_nodes,
                   train_nodes) == Catch::Approx(1.0));
}

TEST_CASE("evaluate tie rule: uniform model predicts class 0") {
  const SbmDataset ds = sbm_generate({4, 4}, 0.5, 0.1, 3, 2);
  const SparseMatrix a_hat = normalized_adjacency(ds.graph);
  GcnModel m = init_model(3, 4, 2, 0);
  std::fill(m.theta1.data.begin(), m.theta1.data.end(), 0.0);
  // test on all nodes but 7 (kept as "training"); 4 of them are class 0
  const std::vector<int> test_nodes{0, 1, 2, 3, 4, 5, 6};
  const std::vector<int> train_nodes{7};
  const double acc =
      evaluate(m, a_hat, ds.features, ds.labels, test_nodes, train_nodes);
  REQUIRE(acc == Catch::Approx(4.0 / 7.0));
}

TEST_CASE("evaluate rejects overlap and empty test sets") {
  const SbmDataset ds = sbm_generate({3, 3}, 1.0, 0.0, 4, 11, 0.1);
  const SparseMatrix a_hat = normalized_adjacency(ds.graph);
  const GcnModel m = init_model(4, 8, 2, 3);
  const std::vector<int> test{0, 1};
  const std::vector<int> overlapping_train{1, 5};
  REQUIRE_THROWS_WITH(
      evaluate(m, a_hat, ds.features, ds.labels, test, overlapping_train),
      Catch::Matchers::ContainsSubstring("overlaps"));
  const std::vector<int> empty_test;
  const std::vector<int> train{0};
  REQUIRE_THROWS_AS(evaluate(m, a_hat, ds.features, ds.labels, empty_test, train),
                    std::invalid_argument);
}

TEST_CASE("run_trials with identical forced seeds has zero std") {
  const SuiteConfig suite = tiny_suite();
  const ExperimentData data = prepare_dataset(suite.dataset);
  const MethodSpec method{"random-gcn", MethodSpec::Kind::Random, std::nullopt};
  const std::vector<std::uint64_t> seeds{9, 9};
  const TrialResult r = run_trials(data, method, suite, seeds);
  REQUIRE(r.std_accuracy == 0.0);
  REQUIRE(r.accuracies[0] == r.accuracies[1]);
}

TEST_CASE("run_trials is invariant to seed order") {
  const SuiteConfig suite = tiny_suite();
  const ExperimentData data = prepare_dataset(suite.dataset);
  const MethodSpec method{"smart-degree", MethodSpec::Kind::Smart, Measure::Degree};
  const std::vector<std::uint64_t> fwd{1, 2, 3};
  const std::vector<std::uint64_t> rev{3, 2, 1};
  const TrialResult a = run_trials(data, method, suite, fwd);
  const TrialResult b = run_trials(data, method, suite, rev);
  REQUIRE(a.mean_accuracy == Catch::Approx(b.mean_accuracy).margin(1e-15));
  REQUIRE(a.std_accuracy == Catch::Approx(b.std_accuracy).margin(1e-15));
}

TEST_CASE("run_trials enforces at least two runs") {
  const SuiteConfig suite = tiny_suite();
  const ExperimentData data = prepare_dataset(suite.dataset);
  const MethodSpec method{"random-gcn", MethodSpec::Kind::Random, std::nullopt};
  REQUIRE_THROWS_AS(run_trials(data, method, suite, 1, 0), std::invalid_argument);
}

TEST_CASE("ttest_rank basics") {
  TrialResult solo;
  solo.method = "only";
  solo.accuracies = {0.8, 0.81};
  solo.mean_accuracy = mean(solo.accuracies);
  solo.std_accuracy = sample_std(solo.accuracies);
  const RankTable one = ttest_rank({solo});
  REQUIRE(one.entries.size() == 1);
  REQUIRE(one.entries[0].rank == 1);

  TrialResult high, low;
  high.method = "high";
  high.accuracies = {0.9, 0.900001, 0.899999, 0.9};
  high.mean_accuracy = mean(high.accuracies);
  high.std_accuracy = sample_std(high.accuracies);
  low.method = "low";
  low.accuracies = {0.5, 0.500001, 0.499999, 0.5};
  low.mean_accuracy = mean(low.accuracies);
  low.std_accuracy = sample_std(low.accuracies);
  const RankTable two = ttest_rank({low, high});
  REQUIRE(two.entries[0].method == "high");
  REQUIRE(two.entries[0].rank == 1);
  REQUIRE(two.entries[1].method == "low");
  REQUIRE(two.entries[1].rank == 2);
}

TEST_CASE("ttest_rank groups statistically indistinguishable methods") {
  TrialResult a, b;
  a.method = "a";
  a.accuracies = {0.7, 0.7, 0.7};
  a.mean_accuracy = 0.7;
  a.std_accuracy = 0.0;
  b.method = "b";
  b.accuracies = {0.7, 0.7, 0.7};
  b.mean_accuracy = 0.7;
  b.std_accuracy = 0.0;
  const RankTable t = ttest_rank({a, b});
  REQUIRE(t.entries[0].rank == 1);
  REQUIRE(t.entries[1].rank == 1);  // zero variance + equal means: same rank
}

TEST_CASE("benchmark runs a single-method suite") {
  SuiteConfig suite = tiny_suite();
  suite.methods = {{"random-gcn", MethodSpec::Kind::Random, std::nullopt}};
  const auto out = std::filesystem::temp_directory_path() / "graphsel_bench_single";
  std::filesystem::remove_all(out);
  const RankTable table = benchmark(suite, out);
  REQUIRE(table.entries.size() == 1);
  REQUIRE(std::filesystem::exists(out / "results" / "random-gcn.json"));
  REQUIRE(std::filesystem::exists(out / "ranks.json"));
  REQUIRE(std::filesystem::exists(out / "summary.csv"));
}

TEST_CASE("benchmark full grid has 12 method rows and is byte-stable") {
  SuiteConfig suite = tiny_suite();
  suite.methods = full_method_grid();
  REQUIRE(suite.methods.size() == 12);

  const auto out1 = std::filesystem::temp_directory_path() / "graphsel_bench_a";
  const auto out2 = std::filesystem::temp_directory_path() / "graphsel_bench_b";
  std::filesystem::remove_all(out1);
  std::filesystem::remove_all(out2);
  const RankTable t1 = benchmark(suite, out1);
  const RankTable t2 = benchmark(suite, out2);
  REQUIRE(t1.entries.size() == 12);
  REQUIRE(t2.entries.size() == 12);

  REQUIRE(slurp(out1 / "ranks.json") == slurp(out2 / "ranks.json"));
  REQUIRE(slurp(out1 / "summary.csv") == slurp(out2 / "summary.csv"));
  for (const auto& m : suite.methods)
    REQUIRE(slurp(out1 / "results" / (m.id + ".json")) ==
            slurp(out2 / "results" / (m.id + ".json")));

  // ranks are 1-based, non-decreasing down the table, means non-increasing
  REQUIRE(t1.entries.front().rank == 1);
  for (std::size_t i = 1; i < t1.entries.size(); ++i) {
    REQUIRE(t1.entries[i].rank >= t1.entries[i - 1].rank);
    REQUIRE(t1.entries[i].rank <= t1.entries[i - 1].rank + 1);
    REQUIRE(t1.entries[i].mean_accuracy <= t1.entries[i - 1].mean_accuracy);
  }
}

TEST_CASE("suite config round-trips through json") {
  const json j = json::parse(R"({
    "dataset": {"type": "sbm", "blocks": [10, 10], "p_in": 0.3, "p_out": 0.02,
                "feature_dim": 4, "noise_sigma": 0.5, "seed": 3},
    "methods": [{"kind": "smart", "measure": "degree"},
                {"kind": "random"}],
    "n_runs": 3, "base_seed": 11, "budget": 6, "per_round": 3,
    "al": {"seed_count": 3, "batch_size": 2, "knn_k": 2},
    "gcn": {"epochs": 5, "hidden_dim": 8},
    "pagerank_alpha": 0.2,
    "significance": 0.01
  })");
  const SuiteConfig s = suite_from_json(j);
  REQUIRE(s.dataset.sbm.blocks == std::vector<int>{10, 10});
  REQUIRE(s.methods.size() == 2);
  REQUIRE(s.methods[0].id == "smart-degree");
  REQUIRE(s.methods[1].id == "random");
  REQUIRE(s.n_runs == 3);
  REQUIRE(s.budget == 6);
  REQUIRE(s.gcn.epochs == 5);
  REQUIRE(s.centrality.pagerank.alpha == Catch::Approx(0.2));
  REQUIRE(s.significance == Catch::Approx(0.01));
}
