#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphsel/graph.hpp"
#include "graphsel/matrix.hpp"

namespace graphsel {

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

inline std::ifstream open_or_throw(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw DatasetError("cannot open file: " + p.string());
  return f;
}

}  // namespace detail

// Edge list: one "u<TAB>v" pair per line, 0-based ids, '#' comments.
inline std::vector<std::pair<int, int>> read_edge_list(
    const std::filesystem::path& path) {
  auto f = detail::open_or_throw(path);
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string body = detail::strip_comment(line);
    if (detail::blank(body)) continue;
    std::istringstream ss(body);
    long long u, v;
    if (!(ss >> u >> v))
      throw DatasetError("malformed edge line " + std::to_string(lineno) +
                         " in " + path.string() + ": '" + line + "'");
    std::string rest;
    if (ss >> rest)
      throw DatasetError("malformed edge line " + std::to_string(lineno) +
                         " in " + path.string() + ": trailing tokens");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return edges;
}

// Labels: one integer per line, line i = node i.
inline std::vector<int> read_labels(const std::filesystem::path& path) {
  auto f = detail::open_or_throw(path);
  std::vector<int> labels;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string body = detail::strip_comment(line);
    if (detail::blank(body)) continue;
    std::istringstream ss(body);
    long long y;
    if (!(ss >> y))
      throw DatasetError("malformed label line " + std::to_string(lineno) +
                         " in " + path.string());
    labels.push_back(static_cast<int>(y));
  }
  return labels;
}

// Features: CSV, one row per node, float64 values.
inline DenseMatrix read_features_csv(const std::filesystem::path& path) {
  auto f = detail::open_or_throw(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw DatasetError("malformed feature value at line " +
                           std::to_string(lineno) + " in " + path.string() +
                           ": '" + cell + "'");
      }
    }
    if (row.empty())
      throw DatasetError("malformed feature line " + std::to_string(lineno) +
                         " in " + path.string());
    if (!rows.empty() && rows.front().size() != row.size())
      throw DatasetError("dimension mismatch: feature row " +
                         std::to_string(lineno) + " has " +
                         std::to_string(row.size()) + " columns, expected " +
                         std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DatasetError("empty feature file: " + path.string());
  DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  return m;
}

// Mask file: one 0/1 per line.
inline std::vector<std::uint8_t> read_mask(const std::filesystem::path& path) {
  auto f = detail::open_or_throw(path);
  std::vector<std::uint8_t> mask;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string body = detail::strip_comment(line);
    if (detail::blank(body)) continue;
    std::istringstream ss(body);
    int bit;
    if (!(ss >> bit) || (bit != 0 && bit != 1))
      throw DatasetError("malformed mask line " + std::to_string(lineno) +
                         " in " + path.string());
    mask.push_back(static_cast<std::uint8_t>(bit));
  }
  return mask;
}

struct GraphDataset {
  Graph graph;
  std::vector<int> labels;
  DenseMatrix features;
  std::optional<std::vector<std::uint8_t>> test_mask;
  int num_classes = 0;
};

// Loads a dataset directory: edges.tsv, labels.txt, features.csv and an
// optional test_mask.txt. The node count comes from the label file; class
// ids must be contiguous from 0.
inline GraphDataset load_graph_dataset(const std::filesystem::path& dir) {
  GraphDataset ds;
  ds.labels = read_labels(dir / "labels.txt");
  const int n = static_cast<int>(ds.labels.size());
  if (n == 0) throw DatasetError("empty label file in " + dir.string());

  int max_label = -1;
  for (int y : ds.labels) {
    if (y < 0) throw DatasetError("negative class id in " + dir.string());
    max_label = std::max(max_label, y);
  }
  std::vector<std::uint8_t> seen(max_label + 1, 0);
  for (int y : ds.labels) seen[y] = 1;
  for (int c = 0; c <= max_label; ++c)
    if (!seen[c])
      throw DatasetError("non-contiguous class ids: class " + std::to_string(c) +
                         " missing in " + dir.string());
  ds.num_classes = max_label + 1;

  ds.features = read_features_csv(dir / "features.csv");
  if (ds.features.rows != n)
    throw DatasetError("dimension mismatch: " + std::to_string(ds.features.rows) +
                       " feature rows vs " + std::to_string(n) + " labels");

  const auto edges = read_edge_list(dir / "edges.tsv");
  ds.graph = build_graph(edges, n);

  const auto mask_path = dir / "test_mask.txt";
  if (std::filesystem::exists(mask_path)) {
    auto mask = read_mask(mask_path);
    if (static_cast<int>(mask.size()) != n)
      throw DatasetError("dimension mismatch: test mask has " +
                         std::to_string(mask.size()) + " entries, expected " +
                         std::to_string(n));
    ds.test_mask = std::move(mask);
  }
  return ds;
}

}  // namespace graphsel
