// Command-line harness: centrality scoring, training-set selection, GCN
// training, the active-learning loop, and the benchmark suite runner.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <graphsel/graphsel.hpp>

namespace {

using graphsel::json;

graphsel::Graph load_edges_graph(const std::string& path, int nodes) {
  const auto edges = graphsel::read_edge_list(path);
  int n = nodes;
  if (n <= 0) {
    for (const auto& [u, v] : edges) n = std::max({n, u + 1, v + 1});
  }
  return graphsel::build_graph(edges, n);
}

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return json::parse(is);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    os << j.dump(2) << "\n";
  }
}

std::vector<int> mask_to_nodes(const std::vector<std::uint8_t>& mask) {
  std::vector<int> nodes;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) nodes.push_back(static_cast<int>(v));
  return nodes;
}

// Labels as the trainer needs them: contiguous class ids from 0.
int validate_classes(const std::vector<int>& labels) {
  int max_label = -1;
  for (int y : labels) {
    if (y < 0) throw std::runtime_error("negative class id in label file");
    max_label = std::max(max_label, y);
  }
  std::vector<std::uint8_t> seen(max_label + 1, 0);
  for (int y : labels) seen[y] = 1;
  for (int c = 0; c <= max_label; ++c)
    if (!seen[c])
      throw std::runtime_error("non-contiguous class ids: class " +
                               std::to_string(c) + " missing");
  return max_label + 1;
}

struct CentralityArgs {
  std::string measure = "degree";
  std::string graph;
  int nodes = 0;
  double alpha = 0.15;
  double tol = 1e-10;
  int max_iter = 500;
  int top = 0;
  int spreaders = 0;
  std::string out;
};

void run_centrality(const CentralityArgs& a) {
  const graphsel::Graph g = load_edges_graph(a.graph, a.nodes);
  graphsel::CentralityOptions opts;
  opts.pagerank = {a.alpha, a.tol, a.max_iter};
  opts.voterank_r = a.spreaders;
  const graphsel::CentralityScores scores =
      graphsel::compute_centrality(g, graphsel::parse_measure(a.measure), {}, opts);
  emit(graphsel::scores_to_json(scores, a.top), a.out);
}

struct SelectArgs {
  std::string strategy = "smart";
  std::string measure = "degree";
  int budget = 140;
  int per_round = 10;
  std::string graph;
  int nodes = 0;
  std::uint64_t seed = 0;
  double alpha = 0.15;
  double tol = 1e-10;
  std::string out;
};

void run_select(const SelectArgs& a) {
  const graphsel::Graph g = load_edges_graph(a.graph, a.nodes);
  graphsel::CentralityOptions opts;
  opts.pagerank.alpha = a.alpha;
  opts.pagerank.tol = a.tol;

  graphsel::SelectionPlan plan;
  switch (graphsel::parse_strategy(a.strategy)) {
    case graphsel::Strategy::SmartSelection:
      plan = graphsel::smart_select(g, graphsel::parse_measure(a.measure),
                                    a.budget, a.per_round, opts);
      break;
    case graphsel::Strategy::AllAtOnce: {
      const auto scores = graphsel::compute_centrality(
          g, graphsel::parse_measure(a.measure), {}, opts);
      plan = graphsel::select_all_at_once(scores, a.budget);
      break;
    }
    case graphsel::Strategy::Random:
      plan = graphsel::random_select(g.n, a.budget, a.seed);
      break;
    case graphsel::Strategy::ActiveLearning:
      throw std::runtime_error("use the al-run subcommand for active learning");
  }
  emit(graphsel::plan_to_json(plan), a.out);
}

struct TrainArgs {
  std::string graph, features, labels, train_mask, test_mask, hyper;
  std::string model_out = "model.bin";
  std::string report_out = "report.json";
};

void run_train(const TrainArgs& a) {
  const std::vector<int> labels = graphsel::read_labels(a.labels);
  const int n = static_cast<int>(labels.size());
  const int classes = validate_classes(labels);
  const graphsel::Graph g = load_edges_graph(a.graph, n);
  const graphsel::DenseMatrix x = graphsel::read_features_csv(a.features);
  if (x.rows != n)
    throw std::runtime_error("feature rows do not match label count");

  graphsel::GcnHyper hyper;
  if (!a.hyper.empty()) hyper = graphsel::hyper_from_json(load_json_file(a.hyper));

  const graphsel::SelectionPlan plan =
      graphsel::plan_from_json(load_json_file(a.train_mask));
  std::vector<int> test_nodes;
  if (!a.test_mask.empty())
    test_nodes = mask_to_nodes(graphsel::read_mask(a.test_mask));

  const graphsel::SparseMatrix a_hat = graphsel::normalized_adjacency(g);
  graphsel::GcnModel model =
      graphsel::init_model(x.cols, hyper.hidden_dim, classes, hyper.seed, hyper);
  auto [trained, report] =
      graphsel::train(std::move(model), a_hat, x, labels, plan.selected, test_nodes);

  graphsel::save_model(a.model_out, trained);
  emit(graphsel::report_to_json(report), a.report_out);
}

struct AlArgs {
  std::string measure = "degree";
  std::string graph, features, labels, config, test_mask;
  std::string plan_out = "plan.json";
  std::string trace_out = "trace.json";
};

void run_al(const AlArgs& a) {
  const std::vector<int> labels = graphsel::read_labels(a.labels);
  const int n = static_cast<int>(labels.size());
  const int classes = validate_classes(labels);
  const graphsel::Graph g = load_edges_graph(a.graph, n);
  const graphsel::DenseMatrix x = graphsel::read_features_csv(a.features);
  if (x.rows != n)
    throw std::runtime_error("feature rows do not match label count");

  graphsel::AlConfig cfg;
  if (!a.config.empty()) cfg = graphsel::al_config_from_json(load_json_file(a.config));
  cfg.measure = graphsel::parse_measure(a.measure);
  cfg.num_classes = classes;

  std::vector<int> test_nodes;
  if (!a.test_mask.empty())
    test_nodes = mask_to_nodes(graphsel::read_mask(a.test_mask));

  graphsel::Oracle oracle(labels);
  const graphsel::AlResult res = graphsel::al_loop(g, x, oracle, cfg, test_nodes);

  emit(graphsel::plan_to_json(res.plan), a.plan_out);
  json trace;
  trace["measure"] = a.measure;
  trace["iterations"] = res.iterations;
  trace["distinct_queries"] = oracle.distinct_queries();
  trace["pagerank_alpha"] = cfg.centrality.pagerank.alpha;
  trace["accuracy_trace"] = res.accuracy_trace;
  trace["train_seconds"] = res.train_seconds;
  emit(trace, a.trace_out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-centrality training-set selection toolkit"};
  app.require_subcommand(1);

  CentralityArgs cent;
  CLI::App* c = app.add_subcommand("centrality", "score nodes by a centrality measure");
  c->add_option("--measure", cent.measure,
                "degree|closeness|betweenness|pagerank|voterank");
  c->add_option("--graph", cent.graph, "edge list file (u<TAB>v per line)")
      ->required();
  c->add_option("--nodes", cent.nodes, "node count (default: max id + 1)");
  c->add_option("--alpha", cent.alpha, "pagerank teleport weight");
  c->add_option("--tol", cent.tol, "pagerank convergence threshold");
  c->add_option("--max-iter", cent.max_iter, "pagerank iteration cap");
  c->add_option("--top", cent.top, "emit only the top K nodes");
  c->add_option("--spreaders", cent.spreaders,
                "voterank spreader count (default: all nodes)");
  c->add_option("--out", cent.out, "output file (default: stdout)");
  c->callback([&] { run_centrality(cent); });

  SelectArgs sel;
  CLI::App* s = app.add_subcommand("select", "build a training-set selection plan");
  s->add_option("--strategy", sel.strategy, "smart|all|random");
  s->add_option("--measure", sel.measure, "centrality measure");
  s->add_option("--budget", sel.budget, "number of nodes to select");
  s->add_option("--per-round", sel.per_round, "nodes removed per smart round");
  s->add_option("--graph", sel.graph, "edge list file")->required();
  s->add_option("--nodes", sel.nodes, "node count (default: max id + 1)");
  s->add_option("--seed", sel.seed, "seed for random selection");
  s->add_option("--alpha", sel.alpha, "pagerank teleport weight");
  s->add_option("--tol", sel.tol, "pagerank convergence threshold");
  s->add_option("--out", sel.out, "output file (default: stdout)");
  s->callback([&] { run_select(sel); });

  TrainArgs tr;
  CLI::App* t = app.add_subcommand("train", "train the 2-layer GCN on a plan");
  t->add_option("--graph", tr.graph, "edge list file")->required();
  t->add_option("--features", tr.features, "feature CSV")->required();
  t->add_option("--labels", tr.labels, "label file")->required();
  t->add_option("--train-mask", tr.train_mask, "selection plan JSON")->required();
  t->add_option("--test-mask", tr.test_mask, "0/1 test mask file");
  t->add_option("--hyper", tr.hyper, "hyperparameter JSON");
  t->add_option("--model-out", tr.model_out, "model file (default model.bin)");
  t->add_option("--report-out", tr.report_out, "report JSON (default report.json)");
  t->callback([&] { run_train(tr); });

  AlArgs al;
  CLI::App* a = app.add_subcommand("al-run", "run the active-learning loop");
  a->add_option("--measure", al.measure, "centrality measure");
  a->add_option("--graph", al.graph, "edge list file")->required();
  a->add_option("--features", al.features, "feature CSV")->required();
  a->add_option("--labels", al.labels, "oracle label file")->required();
  a->add_option("--config", al.config, "AL config JSON");
  a->add_option("--test-mask", al.test_mask, "0/1 test mask for the trace");
  a->add_option("--plan-out", al.plan_out, "plan JSON (default plan.json)");
  a->add_option("--trace-out", al.trace_out, "trace JSON (default trace.json)");
  a->callback([&] { run_al(al); });

  std::string suite_path, bench_out = "bench-out";
  CLI::App* b = app.add_subcommand("benchmark", "run a benchmark suite");
  b->add_option("--suite", suite_path, "suite config JSON")->required();
  b->add_option("--out", bench_out, "output directory");
  b->callback([&] {
    const graphsel::SuiteConfig suite =
        graphsel::suite_from_json(load_json_file(suite_path));
    const graphsel::RankTable table = graphsel::benchmark(suite, bench_out);
    for (const auto& e : table.entries)
      std::printf("#%d %-20s %.2f+-%.2f\n", e.rank, e.method.c_str(),
                  100.0 * e.mean_accuracy, 100.0 * e.std_accuracy);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
