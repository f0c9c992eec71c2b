// End-to-end comparison on one synthetic dataset: train the GCN on smart,
// all-at-once, random and active-learning selections and print test accuracy.

#include <cstdio>

#include <graphsel/graphsel.hpp>

using namespace graphsel;

namespace {

double run(const ExperimentData& data, const SelectionPlan& plan,
           const GcnHyper& hyper) {
  GcnModel m = init_model(data.features.cols, hyper.hidden_dim,
                          data.num_classes, hyper.seed, hyper);
  m = train(std::move(m), data.a_hat, data.features, data.labels, plan.selected)
          .first;
  std::vector<std::uint8_t> in_train(data.graph.n, 0);
  for (int v : plan.selected) in_train[v] = 1;
  std::vector<int> test;
  for (int v = 0; v < data.graph.n; ++v)
    if (!in_train[v]) test.push_back(v);
  return evaluate(m, data.a_hat, data.features, data.labels, test, plan.selected);
}

}  // namespace

int main() {
  DatasetConfig cfg;
  cfg.type = DatasetConfig::Type::Sbm;
  cfg.sbm = {{100, 100, 100, 100}, 0.1, 0.005, 16, 1.0, 3};
  cfg.sbm.noise_sigma = 4.0;
  const ExperimentData data = prepare_dataset(cfg);
  std::printf("4-block SBM: n=%d, %d edges, budget 20\n", data.graph.n,
              data.graph.edge_count);

  GcnHyper hyper;
  hyper.seed = 1;

  const double smart =
      run(data, smart_select(data.graph, Measure::Degree, 20, 10), hyper);
  const double once = run(
      data, select_all_at_once(degree_centrality(data.graph), 20), hyper);
  const double rnd = run(data, random_select(data.graph.n, 20, 1), hyper);

  AlConfig al;
  al.budget = 20;
  al.seed_count = 10;
  al.batch_size = 10;
  al.num_classes = data.num_classes;
  al.gcn = hyper;
  al.seed = 1;
  Oracle oracle(data.labels);
  const AlResult al_res = al_loop(data.graph, data.features, oracle, al);
  std::vector<std::uint8_t> in_train(data.graph.n, 0);
  for (int v : al_res.plan.selected) in_train[v] = 1;
  std::vector<int> test;
  for (int v = 0; v < data.graph.n; ++v)
    if (!in_train[v]) test.push_back(v);
  const double al_acc = evaluate(al_res.model, data.a_hat, data.features,
                                 data.labels, test, al_res.plan.selected);

  std::printf("smart-degree      %.4f\n", smart);
  std::printf("all-at-once       %.4f\n", once);
  std::printf("random            %.4f\n", rnd);
  std::printf("al-degree         %.4f\n", al_acc);
  return 0;
}
