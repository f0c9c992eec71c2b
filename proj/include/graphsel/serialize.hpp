#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "graphsel/active_learning.hpp"
#include "graphsel/centrality.hpp"
#include "graphsel/gcn.hpp"
#include "graphsel/selection.hpp"

namespace graphsel {

// ordered_json keeps key order stable so reruns produce byte-identical files
using json = nlohmann::ordered_json;

inline json plan_to_json(const SelectionPlan& plan) {
  json j;
  j["strategy"] = strategy_name(plan.strategy);
  j["measure"] = plan.measure ? json(measure_name(*plan.measure)) : json(nullptr);
  j["budget"] = plan.budget;
  j["per_round"] = plan.per_round;
  j["selected"] = plan.selected;
  return j;
}

inline SelectionPlan plan_from_json(const json& j) {
  SelectionPlan plan;
  plan.strategy = parse_strategy(j.at("strategy").get<std::string>());
  if (j.contains("measure") && !j.at("measure").is_null())
    plan.measure = parse_measure(j.at("measure").get<std::string>());
  plan.budget = j.value("budget", 0);
  plan.per_round = j.value("per_round", 0);
  plan.selected = j.at("selected").get<std::vector<int>>();
  if (plan.budget == 0) plan.budget = static_cast<int>(plan.selected.size());
  return plan;
}

inline json scores_to_json(const CentralityScores& scores, int top_k = 0) {
  std::vector<int> order(scores.scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores.scores[a] != scores.scores[b])
      return scores.scores[a] > scores.scores[b];
    return a < b;
  });
  if (top_k > 0 && top_k < static_cast<int>(order.size())) order.resize(top_k);
  json arr = json::array();
  for (int v : order) arr.push_back({{"node", v}, {"score", scores.scores[v]}});
  return arr;
}

inline json report_to_json(const TrainReport& r) {
  json j;
  j["epochs_run"] = r.epochs_run;
  j["final_train_accuracy"] = r.final_train_accuracy;
  j["final_test_accuracy"] = std::isnan(r.final_test_accuracy)
                                 ? json(nullptr)
                                 : json(r.final_test_accuracy);
  j["loss_history"] = r.loss_history;
  return j;
}

inline json hyper_to_json(const GcnHyper& h) {
  return json{{"hidden_dim", h.hidden_dim},
              {"learning_rate", h.learning_rate},
              {"weight_decay", h.weight_decay},
              {"dropout_rate", h.dropout_rate},
              {"epochs", h.epochs},
              {"seed", h.seed}};
}

inline GcnHyper hyper_from_json(const json& j) {
  GcnHyper h;
  h.hidden_dim = j.value("hidden_dim", h.hidden_dim);
  h.learning_rate = j.value("learning_rate", h.learning_rate);
  h.weight_decay = j.value("weight_decay", h.weight_decay);
  h.dropout_rate = j.value("dropout_rate", h.dropout_rate);
  h.epochs = j.value("epochs", h.epochs);
  h.seed = j.value("seed", h.seed);
  return h;
}

inline json al_config_to_json(const AlConfig& c) {
  json j;
  j["seed_count"] = c.seed_count;
  j["batch_size"] = c.batch_size;
  j["budget"] = c.budget;
  j["knn_k"] = c.knn_k;
  j["num_classes"] = c.num_classes;
  j["measure"] = measure_name(c.measure);
  j["gcn"] = hyper_to_json(c.gcn);
  j["pagerank_alpha"] = c.centrality.pagerank.alpha;
  j["seed"] = c.seed;
  return j;
}

inline AlConfig al_config_from_json(const json& j) {
  AlConfig c;
  c.seed_count = j.value("seed_count", c.seed_count);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.budget = j.value("budget", c.budget);
  c.knn_k = j.value("knn_k", c.knn_k);
  c.num_classes = j.value("num_classes", c.num_classes);
  if (j.contains("measure"))
    c.measure = parse_measure(j.at("measure").get<std::string>());
  if (j.contains("gcn")) c.gcn = hyper_from_json(j.at("gcn"));
  if (j.contains("pagerank_alpha"))
    c.centrality.pagerank.alpha = j.at("pagerank_alpha").get<double>();
  c.seed = j.value("seed", c.seed);
  return c;
}

}  // namespace graphsel
