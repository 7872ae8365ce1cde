#include "cafin/splits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "cafin/error.hpp"
#include "cafin/rng.hpp"

namespace cafin {

std::vector<int> apportion(int n, const std::vector<double>& ratios) {
  std::vector<int> counts(ratios.size());
  std::vector<std::pair<double, int>> remainders;  // (-fraction, index) for stable sort
  int assigned = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double exact = n * ratios[i];
    counts[i] = static_cast<int>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(-(exact - counts[i]), static_cast<int>(i));
  }
  std::sort(remainders.begin(), remainders.end());
  for (int i = 0; i < n - assigned; ++i) counts[remainders[i % remainders.size()].second]++;
  return counts;
}

NodeSplitBundle node_split(const Graph& g, std::uint64_t seed) {
  const int n = g.node_count();
  if (n < 10) throw ArgumentError("node_split: need at least 10 nodes");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  const auto sizes = apportion(n, {0.6, 0.3, 0.1});
  auto take = [&](int begin, int count) {
    std::vector<int> part(order.begin() + begin, order.begin() + begin + count);
    std::sort(part.begin(), part.end());
    return part;
  };
  NodeSplitBundle b;
  b.g1 = induced_subgraph(g, take(0, sizes[0]));
  b.g2 = induced_subgraph(g, take(sizes[0], sizes[1]));
  b.g3 = induced_subgraph(g, take(sizes[0] + sizes[1], sizes[2]));

  // Downstream training should see every class it will be asked about.
  if (g.has_labels()) {
    std::set<int> g2_classes(b.g2.graph.labels.begin(), b.g2.graph.labels.end());
    std::set<int> g3_classes(b.g3.graph.labels.begin(), b.g3.graph.labels.end());
    for (int c : g3_classes) {
      if (!g2_classes.count(c)) {
        b.warnings.push_back("class " + std::to_string(c) + " appears in g3 but not in g2");
      }
    }
  }
  return b;
}

EdgeSplitBundle edge_split(const Graph& g, std::uint64_t seed) {
  const int n = g.node_count();
  std::vector<EdgePair> edges;
  for (int u = 0; u < n; ++u) {
    for (int w : g.neighbors_of(u)) {
      if (u < w) edges.push_back({u, w});
    }
  }
  const int m = static_cast<int>(edges.size());
  if (m < 10) throw ArgumentError("edge_split: need at least 10 edges");

  Rng rng(seed);
  rng.shuffle(edges);
  const auto sizes = apportion(m, {0.6, 0.2, 0.2});

  EdgeSplitBundle b;
  b.g1_edges.assign(edges.begin(), edges.begin() + sizes[0]);
  b.g2_pos.assign(edges.begin() + sizes[0], edges.begin() + sizes[0] + sizes[1]);
  b.g3_pos.assign(edges.begin() + sizes[0] + sizes[1], edges.end());

  std::vector<std::pair<int, int>> g1_pairs;
  g1_pairs.reserve(b.g1_edges.size());
  for (const auto& e : b.g1_edges) g1_pairs.emplace_back(e.u, e.v);
  b.g1 = make_graph(n, g1_pairs, g.features, g.labels, g.label_matrix);

  // Negatives: uniform non-adjacent pairs, deduplicated across g2/g3.
  const int needed = static_cast<int>(b.g2_pos.size() + b.g3_pos.size());
  std::set<std::int64_t> chosen;
  std::vector<EdgePair> negatives;
  const std::int64_t max_trials = 100LL * std::max(needed, 1);
  std::int64_t trials = 0;
  while (static_cast<int>(negatives.size()) < needed) {
    if (++trials > max_trials) {
      throw CapacityError("edge_split: could not find enough non-edges after " +
                          std::to_string(max_trials) + " trials");
    }
    int u = rng.index(n);
    int v = rng.index(n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v)) continue;
    const std::int64_t key = static_cast<std::int64_t>(u) * n + v;
    if (!chosen.insert(key).second) continue;
    negatives.push_back({u, v});
  }
  b.g2_neg.assign(negatives.begin(), negatives.begin() + b.g2_pos.size());
  b.g3_neg.assign(negatives.begin() + b.g2_pos.size(), negatives.end());
  return b;
}

namespace {

void write_edges(std::ofstream& out, const std::string& name, const std::vector<EdgePair>& edges) {
  out << "[" << name << "]\n";
  for (const auto& e : edges) out << e.u << " " << e.v << "\n";
}

}  // namespace

void save_node_manifest(const NodeSplitBundle& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto* part : {&b.g1, &b.g2, &b.g3}) {
    out << (part == &b.g1 ? "[g1]" : part == &b.g2 ? "[g2]" : "[g3]") << "\n";
    for (int v : part->to_parent) out << v << "\n";
  }
  if (!out) throw IoError("write failed for " + path);
}

void save_edge_manifest(const EdgeSplitBundle& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_edges(out, "g1", b.g1_edges);
  write_edges(out, "g2_pos", b.g2_pos);
  write_edges(out, "g2_neg", b.g2_neg);
  write_edges(out, "g3_pos", b.g3_pos);
  write_edges(out, "g3_neg", b.g3_neg);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace cafin
