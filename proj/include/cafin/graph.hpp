#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cafin {

/// Immutable undirected simple graph: CSR adjacency plus a dense node
/// feature matrix and optional labels (one class id per node, or a binary
/// label matrix for multi-label data).
struct Graph {
  std::vector<std::int64_t> offsets;      // length node_count()+1, non-decreasing
  std::vector<std::int32_t> neighbors;    // sorted within each node's range
  Eigen::MatrixXd features;               // node_count x feature_dim
  Eigen::VectorXi labels;                 // size 0 when absent
  Eigen::MatrixXi label_matrix;           // 0 rows when absent (multi-label)

  int node_count() const { return static_cast<int>(offsets.size()) - 1; }
  std::int64_t directed_edge_count() const { return static_cast<std::int64_t>(neighbors.size()); }
  std::int64_t undirected_edge_count() const { return directed_edge_count() / 2; }
  int feature_dim() const { return static_cast<int>(features.cols()); }

  int degree(int v) const { return static_cast<int>(offsets[v + 1] - offsets[v]); }

  std::span<const std::int32_t> neighbors_of(int v) const {
    return {neighbors.data() + offsets[v], static_cast<std::size_t>(degree(v))};
  }

  bool has_edge(int u, int v) const;

  bool has_labels() const { return labels.size() > 0; }
  bool has_label_matrix() const { return label_matrix.rows() > 0; }
  int class_count() const;

  /// Throws on broken CSR structure, asymmetry, self-loops or duplicates.
  void validate() const;
};

enum class Group : std::uint8_t { Popular, Unpopular };

/// Median split of a centrality vector. Nodes at or above the median are
/// Popular so that the partition is total.
struct GroupAssignment {
  std::vector<Group> group;
  Eigen::VectorXd centrality;
  double median = 0.0;

  bool popular(int v) const { return group[v] == Group::Popular; }
};

struct LoadResult {
  Graph graph;
  std::int64_t dropped_self_loops = 0;
  std::int64_t dropped_duplicates = 0;
};

/// Reads a whitespace-separated integer edge list plus dense feature rows
/// (comma or whitespace separated) and optional labels. Edges are
/// symmetrized; self-loops and duplicates are dropped and counted.
LoadResult load_edge_list(const std::string& edge_path, const std::string& feature_path,
                          const std::string& label_path = {});

/// Builds a Graph from undirected (u,v) pairs; symmetrizes and dedups.
Graph make_graph(int node_count, const std::vector<std::pair<int, int>>& undirected_edges,
                 Eigen::MatrixXd features, Eigen::VectorXi labels = {},
                 Eigen::MatrixXi label_matrix = {});

Eigen::VectorXd degree_centrality(const Graph& g);

GroupAssignment median_group_split(const Eigen::VectorXd& centrality);

struct SubgraphResult {
  Graph graph;
  std::vector<int> to_parent;    // new id -> parent id
  std::vector<int> from_parent;  // parent id -> new id, -1 if absent
};

/// Vertex-induced subgraph; keeps exactly the edges with both endpoints in
/// `nodes`, re-indexing features and labels.
SubgraphResult induced_subgraph(const Graph& g, const std::vector<int>& nodes);

}  // namespace cafin
