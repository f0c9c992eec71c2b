#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphsel/active_learning.hpp"
#include "graphsel/dataset_io.hpp"
#include "graphsel/gcn.hpp"
#include "graphsel/graph_matrices.hpp"
#include "graphsel/sbm.hpp"
#include "graphsel/selection.hpp"
#include "graphsel/serialize.hpp"
#include "graphsel/stats.hpp"

namespace graphsel {

// Argmax-class accuracy of a trained model on test nodes, which must be
// disjoint from the nodes the model was trained on.
inline double evaluate(const GcnModel& m, const SparseMatrix& a_hat,
                       const DenseMatrix& x, std::span<const int> labels,
                       std::span<const int> test_nodes,
                       std::span<const int> train_nodes) {
  if (test_nodes.empty()) throw std::invalid_argument("evaluate: empty test set");
  if (static_cast<int>(labels.size()) != x.rows)
    throw std::invalid_argument("evaluate: labels size does not match node count");
  std::vector<std::uint8_t> in_train(x.rows, 0);
  for (int v : train_nodes) in_train[v] = 1;
  for (int v : test_nodes)
    if (in_train[v])
      throw std::invalid_argument("evaluate: test set overlaps training node " +
                                  std::to_string(v));
  return accuracy(forward(m, a_hat, x).z, labels, test_nodes);
}

// Per-method record of repeated end-to-end runs.
struct TrialResult {
  std::string method;
  std::vector<double> accuracies;  // fractions in [0, 1]
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  json metadata;  // dataset id, config hash, alpha, seeds
};

struct RankEntry {
  std::string method;
  int rank = 1;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
};

struct RankTable {
  double significance = 0.05;
  std::vector<RankEntry> entries;
};

// Sort by mean descending, then group: a method shares its predecessor's
// rank when the adjacent Welch test is non-significant, otherwise the rank
// increments by one.
inline RankTable ttest_rank(const std::vector<TrialResult>& results,
                            double significance = 0.05) {
  if (results.empty()) throw std::invalid_argument("ttest_rank: no results");
  for (const auto& r : results)
    if (r.accuracies.size() < 2)
      throw std::invalid_argument("ttest_rank: method '" + r.method +
                                  "' has fewer than 2 runs");

  std::vector<int> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (results[a].mean_accuracy != results[b].mean_accuracy)
      return results[a].mean_accuracy > results[b].mean_accuracy;
    return results[a].method < results[b].method;
  });

  RankTable table;
  table.significance = significance;
  int rank = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const TrialResult& cur = results[order[i]];
    if (i > 0) {
      const TrialResult& prev = results[order[i - 1]];
      const WelchResult w = welch_t_test(prev.accuracies, cur.accuracies);
      if (w.p_two_sided < significance) ++rank;
    }
    table.entries.push_back({cur.method, rank, cur.mean_accuracy, cur.std_accuracy});
  }
  return table;
}

struct MethodSpec {
  enum class Kind { Smart, AllAtOnce, Random, ActiveLearning };
  std::string id;
  Kind kind = Kind::Random;
  std::optional<Measure> measure;
};

struct SbmSpec {
  std::vector<int> blocks;
  double p_in = 0.1;
  double p_out = 0.005;
  int feature_dim = 16;
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;
};

struct DatasetConfig {
  enum class Type { Sbm, Files };
  Type type = Type::Sbm;
  SbmSpec sbm;
  std::filesystem::path path;
  bool row_normalize_features = false;
  std::string id() const {
    return type == Type::Sbm ? "sbm" : path.filename().string();
  }
};

struct SuiteConfig {
  DatasetConfig dataset;
  std::vector<MethodSpec> methods;
  int n_runs = 10;
  std::uint64_t base_seed = 0;
  int budget = 140;
  int per_round = 10;
  int al_seed_count = 10;
  int al_batch_size = 10;
  int al_knn_k = 10;
  GcnHyper gcn;
  CentralityOptions centrality;
  double significance = 0.05;
};

// Materialized dataset shared by every method of a suite.
struct ExperimentData {
  Graph graph;
  DenseMatrix features;
  std::vector<int> labels;
  int num_classes = 0;
  SparseMatrix a_hat;
  std::optional<std::vector<std::uint8_t>> eval_mask;
  std::string id;
};

namespace detail {

inline void row_normalize(DenseMatrix& m) {
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::abs(v);
    if (s > 0.0)
      for (double& v : m.row(i)) v /= s;
  }
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Atomic per-file write: stage into a sibling temp file, then rename.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline ExperimentData prepare_dataset(const DatasetConfig& cfg) {
  ExperimentData data;
  data.id = cfg.id();
  if (cfg.type == DatasetConfig::Type::Sbm) {
    SbmDataset ds = sbm_generate(cfg.sbm.blocks, cfg.sbm.p_in, cfg.sbm.p_out,
                                 cfg.sbm.feature_dim, cfg.sbm.seed,
                                 cfg.sbm.noise_sigma);
    data.graph = std::move(ds.graph);
    data.features = std::move(ds.features);
    data.labels = std::move(ds.labels);
    data.num_classes = static_cast<int>(cfg.sbm.blocks.size());
  } else {
    GraphDataset ds = load_graph_dataset(cfg.path);
    data.graph = std::move(ds.graph);
    data.features = std::move(ds.features);
    data.labels = std::move(ds.labels);
    data.num_classes = ds.num_classes;
    data.eval_mask = std::move(ds.test_mask);
  }
  if (cfg.row_normalize_features) detail::row_normalize(data.features);
  data.a_hat = normalized_adjacency(data.graph);
  return data;
}

namespace detail {

// Evaluation pool minus this run's training nodes; keeps the disjointness
// contract of evaluate() satisfied by construction.
inline std::vector<int> eval_nodes_for(const ExperimentData& data,
                                       std::span<const int> train_nodes) {
  std::vector<std::uint8_t> in_train(data.graph.n, 0);
  for (int v : train_nodes) in_train[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < data.graph.n; ++v) {
    if (in_train[v]) continue;
    if (data.eval_mask && !(*data.eval_mask)[v]) continue;
    out.push_back(v);
  }
  return out;
}

inline double run_once(const ExperimentData& data, const MethodSpec& method,
                       const SuiteConfig& suite, std::uint64_t seed,
                       const SelectionPlan* fixed_plan) {
  GcnHyper hyper = suite.gcn;
  hyper.seed = seed;

  SelectionPlan plan;
  GcnModel model;
  switch (method.kind) {
    case MethodSpec::Kind::Smart:
    case MethodSpec::Kind::AllAtOnce:
      plan = *fixed_plan;
      break;
    case MethodSpec::Kind::Random:
      plan = random_select(data.graph.n, suite.budget, seed);
      break;
    case MethodSpec::Kind::ActiveLearning: {
      AlConfig al;
      al.seed_count = suite.al_seed_count;
      al.batch_size = suite.al_batch_size;
      al.knn_k = suite.al_knn_k;
      al.budget = suite.budget;
      al.num_classes = data.num_classes;
      al.measure = method.measure.value_or(Measure::Degree);
      al.centrality = suite.centrality;
      al.gcn = hyper;
      al.seed = seed;
      Oracle oracle(data.labels);
      AlResult res = al_loop(data.graph, data.features, oracle, al);
      plan = std::move(res.plan);
      model = std::move(res.model);
      break;
    }
  }

  if (method.kind != MethodSpec::Kind::ActiveLearning) {
    model = init_model(data.features.cols, hyper.hidden_dim, data.num_classes,
                       seed, hyper);
    model = train(std::move(model), data.a_hat, data.features, data.labels,
                  plan.selected)
                .first;
  }
  const std::vector<int> test_nodes = eval_nodes_for(data, plan.selected);
  return evaluate(model, data.a_hat, data.features, data.labels, test_nodes,
                  plan.selected);
}

inline SelectionPlan plan_for_method(const ExperimentData& data,
                                     const MethodSpec& method,
                                     const SuiteConfig& suite) {
  const Measure m = method.measure.value_or(Measure::Degree);
  if (method.kind == MethodSpec::Kind::Smart)
    return smart_select(data.graph, m, suite.budget, suite.per_round,
                        suite.centrality);
  const CentralityScores scores =
      compute_centrality(data.graph, m, {}, suite.centrality);
  return select_all_at_once(scores, suite.budget);
}

}  // namespace detail

// Runs one method end to end (selection through evaluation) once per seed.
inline TrialResult run_trials(const ExperimentData& data, const MethodSpec& method,
                              const SuiteConfig& suite,
                              std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 2)
    throw std::invalid_argument("run_trials: need at least 2 runs");

  SelectionPlan fixed_plan;
  const SelectionPlan* fixed = nullptr;
  if (method.kind == MethodSpec::Kind::Smart ||
      method.kind == MethodSpec::Kind::AllAtOnce) {
    fixed_plan = detail::plan_for_method(data, method, suite);
    fixed = &fixed_plan;
  }

  TrialResult result;
  result.method = method.id;
  for (std::uint64_t s : seeds)
    result.accuracies.push_back(detail::run_once(data, method, suite, s, fixed));
  result.mean_accuracy = mean(result.accuracies);
  result.std_accuracy = sample_std(result.accuracies);

  json meta;
  meta["dataset"] = data.id;
  meta["budget"] = suite.budget;
  meta["per_round"] = suite.per_round;
  meta["pagerank_alpha"] = suite.centrality.pagerank.alpha;
  meta["seeds"] = std::vector<std::uint64_t>(seeds.begin(), seeds.end());
  json cfg_key;
  cfg_key["method"] = method.id;
  cfg_key["dataset"] = data.id;
  cfg_key["budget"] = suite.budget;
  cfg_key["per_round"] = suite.per_round;
  cfg_key["gcn"] = hyper_to_json(suite.gcn);
  meta["config_hash"] = detail::hex64(detail::fnv1a64(cfg_key.dump()));
  result.metadata = std::move(meta);
  return result;
}

inline TrialResult run_trials(const ExperimentData& data, const MethodSpec& method,
                              const SuiteConfig& suite, int n_runs,
                              std::uint64_t base_seed) {
  if (n_runs < 2) throw std::invalid_argument("run_trials: need at least 2 runs");
  std::vector<std::uint64_t> seeds(n_runs);
  for (int i = 0; i < n_runs; ++i) seeds[i] = base_seed + static_cast<std::uint64_t>(i);
  return run_trials(data, method, suite, seeds);
}

inline json trial_to_json(const TrialResult& r) {
  json j;
  j["method"] = r.method;
  j["accuracies"] = r.accuracies;
  j["mean"] = r.mean_accuracy;
  j["std"] = r.std_accuracy;
  j["metadata"] = r.metadata;
  return j;
}

inline json rank_table_to_json(const RankTable& t) {
  json j;
  j["significance"] = t.significance;
  json entries = json::array();
  for (const auto& e : t.entries)
    entries.push_back({{"method", e.method},
                       {"rank", e.rank},
                       {"mean", e.mean_accuracy},
                       {"std", e.std_accuracy}});
  j["entries"] = entries;
  return j;
}

// The full method grid of the results tables: smart selection with all five
// measures, active learning with all five, all-at-once degree, and the
// random-selection baseline.
inline std::vector<MethodSpec> full_method_grid() {
  std::vector<MethodSpec> methods;
  const Measure all[] = {Measure::Degree, Measure::Closeness, Measure::Betweenness,
                         Measure::PageRank, Measure::VoteRank};
  for (Measure m : all)
    methods.push_back({std::string("smart-") + measure_name(m),
                       MethodSpec::Kind::Smart, m});
  for (Measure m : all)
    methods.push_back({std::string("al-") + measure_name(m),
                       MethodSpec::Kind::ActiveLearning, m});
  methods.push_back({"all-degree", MethodSpec::Kind::AllAtOnce, Measure::Degree});
  methods.push_back({"random-gcn", MethodSpec::Kind::Random, std::nullopt});
  return methods;
}

inline MethodSpec method_from_json(const json& j) {
  MethodSpec m;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "smart") m.kind = MethodSpec::Kind::Smart;
  else if (kind == "all") m.kind = MethodSpec::Kind::AllAtOnce;
  else if (kind == "random") m.kind = MethodSpec::Kind::Random;
  else if (kind == "al") m.kind = MethodSpec::Kind::ActiveLearning;
  else throw std::invalid_argument("unknown method kind: " + kind);
  if (j.contains("measure") && !j.at("measure").is_null())
    m.measure = parse_measure(j.at("measure").get<std::string>());
  if (j.contains("id")) {
    m.id = j.at("id").get<std::string>();
  } else {
    m.id = kind;
    if (m.measure) m.id += std::string("-") + measure_name(*m.measure);
  }
  return m;
}

inline SuiteConfig suite_from_json(const json& j) {
  SuiteConfig s;
  const json& d = j.at("dataset");
  const std::string type = d.at("type").get<std::string>();
  if (type == "sbm") {
    s.dataset.type = DatasetConfig::Type::Sbm;
    s.dataset.sbm.blocks = d.at("blocks").get<std::vector<int>>();
    s.dataset.sbm.p_in = d.value("p_in", s.dataset.sbm.p_in);
    s.dataset.sbm.p_out = d.value("p_out", s.dataset.sbm.p_out);
    s.dataset.sbm.feature_dim = d.value("feature_dim", s.dataset.sbm.feature_dim);
    s.dataset.sbm.noise_sigma = d.value("noise_sigma", s.dataset.sbm.noise_sigma);
    s.dataset.sbm.seed = d.value("seed", s.dataset.sbm.seed);
  } else if (type == "files") {
    s.dataset.type = DatasetConfig::Type::Files;
    s.dataset.path = d.at("path").get<std::string>();
  } else {
    throw std::invalid_argument("unknown dataset type: " + type);
  }
  s.dataset.row_normalize_features =
      d.value("row_normalize_features", s.dataset.row_normalize_features);

  if (j.contains("methods") && j.at("methods").is_array()) {
    for (const json& mj : j.at("methods")) s.methods.push_back(method_from_json(mj));
  } else {
    s.methods = full_method_grid();  // "methods": "full-grid" or absent
  }

  s.n_runs = j.value("n_runs", s.n_runs);
  s.base_seed = j.value("base_seed", s.base_seed);
  s.budget = j.value("budget", s.budget);
  s.per_round = j.value("per_round", s.per_round);
  s.significance = j.value("significance", s.significance);
  if (j.contains("al")) {
    const json& a = j.at("al");
    s.al_seed_count = a.value("seed_count", s.al_seed_count);
    s.al_batch_size = a.value("batch_size", s.al_batch_size);
    s.al_knn_k = a.value("knn_k", s.al_knn_k);
  }
  if (j.contains("gcn")) s.gcn = hyper_from_json(j.at("gcn"));
  if (j.contains("pagerank_alpha"))
    s.centrality.pagerank.alpha = j.at("pagerank_alpha").get<double>();
  return s;
}

// Runs the whole suite and persists per-method results, the rank table and
// a CSV summary. Output contains no timestamps, so identical configs
// produce byte-identical files.
inline RankTable benchmark(const SuiteConfig& suite,
                           const std::filesystem::path& out_dir) {
  const ExperimentData data = prepare_dataset(suite.dataset);
  std::filesystem::create_directories(out_dir / "results");

  std::vector<TrialResult> results;
  for (const MethodSpec& method : suite.methods) {
    TrialResult r = run_trials(data, method, suite, suite.n_runs, suite.base_seed);
    detail::write_file_atomic(out_dir / "results" / (method.id + ".json"),
                              trial_to_json(r).dump(2) + "\n");
    results.push_back(std::move(r));
  }

  const RankTable table = ttest_rank(results, suite.significance);
  detail::write_file_atomic(out_dir / "ranks.json",
                            rank_table_to_json(table).dump(2) + "\n");

  std::string csv = "method,rank,mean_pct,std_pct,display\n";
  for (const auto& e : table.entries) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%d,%.2f,%.2f,#%d %.2f+-%.2f\n",
                  e.method.c_str(), e.rank, 100.0 * e.mean_accuracy,
                  100.0 * e.std_accuracy, e.rank, 100.0 * e.mean_accuracy,
                  100.0 * e.std_accuracy);
    csv += line;
  }
  detail::write_file_atomic(out_dir / "summary.csv", csv);
  return table;
}

}  // namespace graphsel
