#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cafin/graph.hpp"

namespace cafin {

/// Inductive node split: g1 trains the encoder, g2 trains the downstream
/// classifier, g3 evaluates it. Node sets are disjoint, 60/30/10%.
struct NodeSplitBundle {
  SubgraphResult g1, g2, g3;
  std::vector<std::string> warnings;
};

struct EdgePair {
  int u = 0, v = 0;  // u < v
  friend bool operator==(const EdgePair&, const EdgePair&) = default;
};

/// Inductive edge split for link prediction: g1 keeps every node but only
/// 60% of the edges; the held-out edges split into g2/g3 positives, with
/// matched negative (non-edge) samples.
struct EdgeSplitBundle {
  Graph g1;
  std::vector<EdgePair> g1_edges;
  std::vector<EdgePair> g2_pos, g3_pos;
  std::vector<EdgePair> g2_neg, g3_neg;
};

/// Largest-remainder apportionment of n into parts proportional to ratios.
std::vector<int> apportion(int n, const std::vector<double>& ratios);

NodeSplitBundle node_split(const Graph& g, std::uint64_t seed);

EdgeSplitBundle edge_split(const Graph& g, std::uint64_t seed);

void save_node_manifest(const NodeSplitBundle& b, const std::string& path);
void save_edge_manifest(const EdgeSplitBundle& b, const std::string& path);

}  // namespace cafin
