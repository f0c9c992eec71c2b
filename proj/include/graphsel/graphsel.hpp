#pragma once

// Umbrella header for the whole library.

#include "graphsel/active_learning.hpp"
#include "graphsel/bench.hpp"
#include "graphsel/centrality.hpp"
#include "graphsel/chebyshev.hpp"
#include "graphsel/dataset_io.hpp"
#include "graphsel/gcn.hpp"
#include "graphsel/graph.hpp"
#include "graphsel/graph_matrices.hpp"
#include "graphsel/knn.hpp"
#include "graphsel/matrix.hpp"
#include "graphsel/rng.hpp"
#include "graphsel/sbm.hpp"
#include "graphsel/selection.hpp"
#include "graphsel/serialize.hpp"
#include "graphsel/stats.hpp"
#include "graphsel/voterank.hpp"
