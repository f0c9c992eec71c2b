#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphsel/graph.hpp"
#include "graphsel/matrix.hpp"
#include "graphsel/rng.hpp"

namespace graphsel {

struct SbmDataset {
  Graph graph;
  std::vector<int> labels;  // block id per node
  DenseMatrix features;     // block-mean one-hot + Gaussian noise
};

// Stochastic block model generator, the desk-scale stand-in for citation
// datasets. Node labels are block ids; features are the block's one-hot
// mean (coordinate b mod feature_dim) plus N(0, noise_sigma^2) noise.
// Pure function of its arguments: same seed, same bits.
inline SbmDataset sbm_generate(std::span<const int> block_sizes, double p_in,
                               double p_out, int feature_dim, std::uint64_t seed,
                               double noise_sigma = 1.0) {
  if (block_sizes.empty())
    throw std::invalid_argument("sbm_generate: empty block list");
  for (int s : block_sizes)
    if (s < 0) throw std::invalid_argument("sbm_generate: negative block size");
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
    throw std::invalid_argument("sbm_generate: probabilities must lie in [0, 1]");
  if (feature_dim < 1)
    throw std::invalid_argument("sbm_generate: feature_dim must be >= 1");

  const int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  SbmDataset ds;
  ds.labels.reserve(n);
  for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b)
    ds.labels.insert(ds.labels.end(), block_sizes[b], b);

  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double p = ds.labels[i] == ds.labels[j] ? p_in : p_out;
      if (rng.uniform01() < p) edges.emplace_back(i, j);
    }
  ds.graph = build_graph(edges, n);

  ds.features = DenseMatrix(n, feature_dim);
  for (int i = 0; i < n; ++i) {
    ds.features(i, ds.labels[i] % feature_dim) = 1.0;
    for (int c = 0; c < feature_dim; ++c)
      ds.features(i, c) += noise_sigma * rng.normal();
  }
  return ds;
}

inline SbmDataset sbm_generate(const std::vector<int>& block_sizes, double p_in,
                               double p_out, int feature_dim, std::uint64_t seed,
                               double noise_sigma = 1.0) {
  return sbm_generate(std::span<const int>(block_sizes), p_in, p_out, feature_dim,
                      seed, noise_sigma);
}

}  // namespace graphsel
