#include "cafin/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "cafin/error.hpp"

namespace cafin {

bool Graph::has_edge(int u, int v) const {
  const auto nbrs = neighbors_of(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int Graph::class_count() const {
  if (has_label_matrix()) return static_cast<int>(label_matrix.cols());
  if (has_labels()) return labels.size() > 0 ? labels.maxCoeff() + 1 : 0;
  return 0;
}

void Graph::validate() const {
  const int n = node_count();
  if (n < 0) throw ConsistencyError("graph: missing offsets");
  if (offsets.front() != 0 || offsets.back() != static_cast<std::int64_t>(neighbors.size()))
    throw ConsistencyError("graph: offsets do not cover the neighbor array");
  for (int v = 0; v < n; ++v) {
    if (offsets[v + 1] < offsets[v]) throw ConsistencyError("graph: offsets decrease");
    const auto nbrs = neighbors_of(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const int w = nbrs[i];
      if (w < 0 || w >= n) throw ConsistencyError("graph: neighbor id out of range");
      if (w == v) throw ConsistencyError("graph: self-loop present");
      if (i > 0 && nbrs[i] <= nbrs[i - 1])
        throw ConsistencyError("graph: neighbor list unsorted or duplicated");
      if (!has_edge(w, v)) throw ConsistencyError("graph: asymmetric edge");
    }
  }
  if (features.rows() != n) throw ConsistencyError("graph: feature row count mismatch");
  if (labels.size() > 0 && labels.size() != n)
    throw ConsistencyError("graph: label count mismatch");
  if (label_matrix.rows() > 0 && label_matrix.rows() != n)
    throw ConsistencyError("graph: label matrix row count mismatch");
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<double> parse_row(const std::string& line, const std::string& path, std::size_t lineno) {
  std::string cleaned = line;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream iss(cleaned);
  std::vector<double> row;
  double x;
  while (iss >> x) row.push_back(x);
  if (!iss.eof()) {
    throw ParseError(path + ":" + std::to_string(lineno) + ": malformed numeric row");
  }
  return row;
}

}  // namespace

Graph make_graph(int node_count, const std::vector<std::pair<int, int>>& undirected_edges,
                 Eigen::MatrixXd features, Eigen::VectorXi labels, Eigen::MatrixXi label_matrix) {
  std::vector<std::pair<int, int>> dir;
  dir.reserve(undirected_edges.size() * 2);
  for (auto [u, v] : undirected_edges) {
    if (u == v) continue;
    if (u < 0 || u >= node_count || v < 0 || v >= node_count)
      throw ConsistencyError("make_graph: edge endpoint out of range");
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  std::sort(dir.begin(), dir.end());
  dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

  Graph g;
  g.offsets.assign(node_count + 1, 0);
  for (auto [u, v] : dir) g.offsets[u + 1]++;
  for (int v = 0; v < node_count; ++v) g.offsets[v + 1] += g.offsets[v];
  g.neighbors.reserve(dir.size());
  for (auto [u, v] : dir) g.neighbors.push_back(v);  // sorted order preserved
  g.features = std::move(features);
  g.labels = std::move(labels);
  g.label_matrix = std::move(label_matrix);
  return g;
}

LoadResult load_edge_list(const std::string& edge_path, const std::string& feature_path,
                          const std::string& label_path) {
  // Features first: their row count defines the node count.
  const auto feat_lines = read_lines(feature_path);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < feat_lines.size(); ++i) {
    if (blank(feat_lines[i])) continue;
    rows.push_back(parse_row(feat_lines[i], feature_path, i + 1));
    if (rows.size() > 1 && rows.back().size() != rows.front().size())
      throw ParseError(feature_path + ":" + std::to_string(i + 1) + ": inconsistent feature dimension");
  }
  if (rows.empty()) throw ParseError(feature_path + ": no feature rows");
  const int n = static_cast<int>(rows.size());
  const int d = static_cast<int>(rows.front().size());
  Eigen::MatrixXd features(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) features(i, j) = rows[i][j];

  const auto edge_lines = read_lines(edge_path);
  std::vector<std::pair<int, int>> edges;
  std::int64_t self_loops = 0;
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    if (blank(edge_lines[i])) continue;
    std::istringstream iss(edge_lines[i]);
    long long u, v;
    if (!(iss >> u >> v)) {
      throw ParseError(edge_path + ":" + std::to_string(i + 1) + ": expected two integers");
    }
    std::string rest;
    if (iss >> rest) {
      throw ParseError(edge_path + ":" + std::to_string(i + 1) + ": trailing tokens");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ConsistencyError(edge_path + ":" + std::to_string(i + 1) +
                             ": node id beyond feature rows (" + std::to_string(n) + ")");
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    edges.emplace_back(std::min<int>(u, v), std::max<int>(u, v));
  }
  const std::int64_t before = static_cast<std::int64_t>(edges.size());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const std::int64_t duplicates = before - static_cast<std::int64_t>(edges.size());

  Eigen::VectorXi labels;
  Eigen::MatrixXi label_matrix;
  if (!label_path.empty()) {
    const auto label_lines = read_lines(label_path);
    std::vector<std::vector<double>> lrows;
    for (std::size_t i = 0; i < label_lines.size(); ++i) {
      if (blank(label_lines[i])) continue;
      lrows.push_back(parse_row(label_lines[i], label_path, i + 1));
    }
    if (static_cast<int>(lrows.size()) != n)
      throw ConsistencyError(label_path + ": label row count != node count");
    const bool multilabel = lrows.front().size() > 1;
    if (multilabel) {
      const int c = static_cast<int>(lrows.front().size());
      label_matrix.resize(n, c);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(lrows[i].size()) != c)
          throw ParseError(label_path + ": inconsistent label row width");
        for (int j = 0; j < c; ++j) label_matrix(i, j) = lrows[i][j] != 0.0 ? 1 : 0;
      }
    } else {
      labels.resize(n);
      for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(lrows[i][0]);
    }
  }

  LoadResult result;
  result.graph = make_graph(n, edges, std::move(features), std::move(labels), std::move(label_matrix));
  result.dropped_self_loops = self_loops;
  result.dropped_duplicates = duplicates;
  return result;
}

Eigen::VectorXd degree_centrality(const Graph& g) {
  const int n = g.node_count();
  Eigen::VectorXd deg(n);
  for (int v = 0; v < n; ++v) deg[v] = static_cast<double>(g.degree(v));
  return deg;
}

GroupAssignment median_group_split(const Eigen::VectorXd& centrality) {
  const auto n = centrality.size();
  if (n == 0) throw ArgumentError("median_group_split: empty centrality vector");
  std::vector<double> sorted(centrality.data(), centrality.data() + n);
  std::sort(sorted.begin(), sorted.end());
  double median;
  if (n % 2 == 1) {
    median = sorted[n / 2];
  } else {
    median = 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  }
  GroupAssignment a;
  a.centrality = centrality;
  a.median = median;
  a.group.resize(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    a.group[v] = centrality[v] >= median ? Group::Popular : Group::Unpopular;
  }
  return a;
}

SubgraphResult induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  const int n = g.node_count();
  SubgraphResult r;
  r.from_parent.assign(n, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int v = nodes[i];
    if (v < 0 || v >= n) throw ArgumentError("induced_subgraph: node id out of range");
    if (r.from_parent[v] != -1) throw ArgumentError("induced_subgraph: duplicate node id");
    r.from_parent[v] = static_cast<int>(i);
  }
  r.to_parent = nodes;

  const int m = static_cast<int>(nodes.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i) {
    for (int w : g.neighbors_of(nodes[i])) {
      const int j = r.from_parent[w];
      if (j >= 0 && i < j) edges.emplace_back(i, j);
    }
  }
  Eigen::MatrixXd features(m, g.features.cols());
  for (int i = 0; i < m; ++i) features.row(i) = g.features.row(nodes[i]);
  Eigen::VectorXi labels;
  if (g.has_labels()) {
    labels.resize(m);
    for (int i = 0; i < m; ++i) labels[i] = g.labels[nodes[i]];
  }
  Eigen::MatrixXi label_matrix;
  if (g.has_label_matrix()) {
    label_matrix.resize(m, g.label_matrix.cols());
    for (int i = 0; i < m; ++i) label_matrix.row(i) = g.label_matrix.row(nodes[i]);
  }
  r.graph = make_graph(m, edges, std::move(features), std::move(labels), std::move(label_matrix));
  return r;
}

}  // namespace cafin
