#include "cafin/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "cafin/error.hpp"
#include "cafin/rng.hpp"

namespace cafin {

Graph generate_synthetic(const SynthConfig& cfg) {
  if (cfg.nodes < cfg.classes || cfg.undirected_edges < cfg.nodes - 1)
    throw ArgumentError("generate_synthetic: graph too small for the requested structure");
  Rng rng(stream_seed(cfg.seed, 0x5b5b));
  const int n = cfg.nodes;

  // Uneven community sizes.
  std::vector<double> weights(cfg.classes);
  double wsum = 0.0;
  for (auto& w : weights) {
    w = 0.5 + rng.uniform();
    wsum += w;
  }
  Eigen::VectorXi labels(n);
  std::vector<std::vector<int>> members(cfg.classes);
  for (int i = 0; i < n; ++i) {
    double r = rng.uniform() * wsum;
    int c = 0;
    while (c + 1 < cfg.classes && r > weights[c]) {
      r -= weights[c];
      ++c;
    }
    labels[i] = c;
    members[c].push_back(i);
  }
  for (int c = 0; c < cfg.classes; ++c) {
    if (members[c].empty()) {  // extremely small configs
      members[c].push_back(c % n);
      labels[c % n] = c;
    }
  }

  // Edges: a random spanning tree for connectivity, then
  // preferential-attachment endpoints with a homophily bias.
  std::set<std::pair<int, int>> edge_set;
  std::vector<int> endpoint_bag;  // nodes repeated once per incident edge
  auto add_edge = [&](int u, int v) {
    if (u == v) return false;
    auto e = std::minmax(u, v);
    if (!edge_set.emplace(e.first, e.second).second) return false;
    endpoint_bag.push_back(u);
    endpoint_bag.push_back(v);
    return true;
  };

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  for (int i = 1; i < n; ++i) {
    // attach to an earlier node, degree-biased
    int partner;
    if (endpoint_bag.empty()) {
      partner = order[0];
    } else {
      partner = rng.uniform() < 0.5 ? endpoint_bag[rng.index(endpoint_bag.size())]
                                    : order[rng.index(i)];
    }
    if (!add_edge(order[i], partner)) {
      add_edge(order[i], order[rng.index(i)]);
    }
  }

  std::int64_t guard = 0;
  while (static_cast<int>(edge_set.size()) < cfg.undirected_edges) {
    if (++guard > 200LL * cfg.undirected_edges)
      throw CapacityError("generate_synthetic: edge sampling stalled");
    const int u = endpoint_bag[rng.index(endpoint_bag.size())];
    int v;
    if (rng.uniform() < cfg.intra_class_prob) {
      const auto& pool = members[labels[u]];
      v = pool[rng.index(pool.size())];
    } else {
      v = rng.index(n);
    }
    add_edge(u, v);
  }

  // Sparse binary bag-of-words features; each class owns a topic block.
  const int block = std::max(1, cfg.feature_dim / cfg.classes);
  Eigen::MatrixXd features = Eigen::MatrixXd::Zero(n, cfg.feature_dim);
  for (int i = 0; i < n; ++i) {
    const int base = labels[i] * block;
    for (int w = 0; w < cfg.words_per_node; ++w) {
      int col;
      if (rng.uniform() < cfg.topic_word_prob) {
        col = base + rng.index(block);
        if (col >= cfg.feature_dim) col = rng.index(cfg.feature_dim);
      } else {
        col = rng.index(cfg.feature_dim);
      }
      features(i, col) = 1.0;
    }
  }

  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  return make_graph(n, edges, std::move(features), std::move(labels));
}

void write_synthetic_dataset(const SynthConfig& cfg, const std::string& dir) {
  const Graph g = generate_synthetic(cfg);
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/edges.txt");
    if (!out) throw IoError("cannot write " + dir + "/edges.txt");
    const int n = g.node_count();
    for (int u = 0; u < n; ++u) {
      for (int v : g.neighbors_of(u)) {
        if (u < v) out << u << " " << v << "\n";
      }
    }
  }
  {
    std::ofstream out(dir + "/features.txt");
    if (!out) throw IoError("cannot write " + dir + "/features.txt");
    for (int i = 0; i < g.node_count(); ++i) {
      for (int j = 0; j < g.feature_dim(); ++j) {
        if (j) out << ' ';
        out << static_cast<int>(g.features(i, j));
      }
      out << "\n";
    }
  }
  {
    std::ofstream out(dir + "/labels.txt");
    if (!out) throw IoError("cannot write " + dir + "/labels.txt");
    for (int i = 0; i < g.node_count(); ++i) out << g.labels[i] << "\n";
  }
}

}  // namespace cafin
