#pragma once

#include <cstdint>
#include <string>

#include "cafin/graph.hpp"

namespace cafin {

/// Deterministic citation-network-style generator: preferential-attachment
/// degree skew, homophilous communities, sparse binary bag-of-words
/// features correlated with the community label. Defaults mirror the Cora
/// statistics (2708 nodes, 5278 undirected edges, 1433 features, 7
/// classes).
struct SynthConfig {
  int nodes = 2708;
  int undirected_edges = 5278;
  int feature_dim = 1433;
  int classes = 7;
  int words_per_node = 18;
  double intra_class_prob = 0.85;  // edge endpoint stays within the community
  double topic_word_prob = 0.80;   // feature word drawn from the class topic block
  std::uint64_t seed = 1;
};

Graph generate_synthetic(const SynthConfig& cfg);

/// Writes edges.txt / features.txt / labels.txt in the loader's text
/// format.
void write_synthetic_dataset(const SynthConfig& cfg, const std::string& dir);

}  // namespace cafin
