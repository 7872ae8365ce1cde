#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>

#include "cafin/error.hpp"
#include "cafin/graph.hpp"
#include "doctest.h"

using namespace cafin;
namespace fs = std::filesystem;

namespace {

Graph mk(int n, const std::vector<std::pair<int, int>>& edges) {
  return make_graph(n, edges, Eigen::MatrixXd::Zero(n, 2));
}

fs::path write_tmp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("load_edge_list: triangle") {
  const auto ep = write_tmp("tg_edges.txt", "0 1\n1 2\n2 0\n");
  const auto fp = write_tmp("tg_feats.txt", "1 0\n0 1\n1 1\n");
  const auto r = load_edge_list(ep.string(), fp.string());
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.directed_edge_count() == 6);
  CHECK(r.dropped_self_loops == 0);
  CHECK(r.dropped_duplicates == 0);
  r.graph.validate();
}

TEST_CASE("load_edge_list: self-loops and duplicates dropped with counts") {
  const auto ep = write_tmp("dd_edges.txt", "0 0\n0 1\n1 0\n0 1\n1 2\n");
  const auto fp = write_tmp("dd_feats.txt", "1\n1\n1\n");
  const auto r = load_edge_list(ep.string(), fp.string());
  CHECK(r.dropped_self_loops == 1);
  CHECK(r.dropped_duplicates == 2);  // "1 0" and the repeated "0 1"
  CHECK(r.graph.undirected_edge_count() == 2);
}

TEST_CASE("load_edge_list: error paths") {
  const auto fp = write_tmp("er_feats.txt", "1\n1\n");
  CHECK_THROWS_AS(
      load_edge_list(write_tmp("er_e1.txt", "0 x\n").string(), fp.string()), ParseError);
  CHECK_THROWS_AS(
      load_edge_list(write_tmp("er_e2.txt", "0 5\n").string(), fp.string()), ConsistencyError);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/edges", fp.string()), IoError);
}

TEST_CASE("load_edge_list: labels single and multilabel") {
  const auto ep = write_tmp("lb_edges.txt", "0 1\n");
  const auto fp = write_tmp("lb_feats.txt", "1\n2\n");
  const auto single = load_edge_list(ep.string(), fp.string(),
                                     write_tmp("lb_single.txt", "0\n3\n").string());
  CHECK(single.graph.has_labels());
  CHECK(single.graph.class_count() == 4);
  const auto multi = load_edge_list(ep.string(), fp.string(),
                                    write_tmp("lb_multi.txt", "1 0 1\n0 1 0\n").string());
  CHECK(multi.graph.has_label_matrix());
  CHECK(multi.graph.class_count() == 3);
  CHECK(multi.graph.label_matrix(0, 2) == 1);
}

TEST_CASE("degree_centrality") {
  CHECK(degree_centrality(mk(3, {{0, 1}, {1, 2}, {2, 0}})) == Eigen::Vector3d(2, 2, 2));
  CHECK(degree_centrality(mk(3, {{0, 1}, {1, 2}})) == Eigen::Vector3d(1, 2, 1));
  const auto star = degree_centrality(mk(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  CHECK(star[0] == 4);
  for (int v = 1; v < 5; ++v) CHECK(star[v] == 1);
}

TEST_CASE("degrees sum to the directed entry count") {
  const Graph g = mk(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 4}});
  double total = degree_centrality(g).sum();
  CHECK(total == static_cast<double>(g.directed_edge_count()));
}

TEST_CASE("median_group_split") {
  const auto a = median_group_split(Eigen::Vector4d(1, 2, 3, 4));
  CHECK(a.median == doctest::Approx(2.5));
  CHECK(a.group == std::vector<Group>{Group::Unpopular, Group::Unpopular, Group::Popular,
                                      Group::Popular});

  const auto b = median_group_split(Eigen::Vector4d(5, 5, 5, 5));
  for (auto g : b.group) CHECK(g == Group::Popular);  // tie rule: >= median

  const auto c = median_group_split(Eigen::Vector4d(1, 2, 2, 9));
  CHECK(c.median == doctest::Approx(2.0));
  CHECK(c.popular(1));
  CHECK(c.popular(2));
  CHECK_FALSE(c.popular(0));

  CHECK_THROWS_AS(median_group_split(Eigen::VectorXd()), ArgumentError);
}

TEST_CASE("median_group_split partitions the node set") {
  Eigen::VectorXd cent(7);
  cent << 3, 1, 4, 1, 5, 9, 2;
  const auto a = median_group_split(cent);
  int pop = 0, unpop = 0;
  for (auto g : a.group) (g == Group::Popular ? pop : unpop)++;
  CHECK(pop + unpop == 7);
  CHECK(pop > 0);
}

TEST_CASE("induced_subgraph") {
  const Graph tri = mk(3, {{0, 1}, {1, 2}, {2, 0}});

  const auto pair = induced_subgraph(tri, {0, 1});
  CHECK(pair.graph.node_count() == 2);
  CHECK(pair.graph.undirected_edge_count() == 1);
  CHECK(pair.to_parent == std::vector<int>{0, 1});
  CHECK(pair.from_parent == std::vector<int>{0, 1, -1});

  const auto full = induced_subgraph(tri, {0, 1, 2});
  CHECK(full.graph.undirected_edge_count() == 3);
  CHECK(full.graph.neighbors == tri.neighbors);

  const Graph star = mk(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto leaves = induced_subgraph(star, {1, 2, 3});
  CHECK(leaves.graph.undirected_edge_count() == 0);

  CHECK_THROWS_AS(induced_subgraph(tri, {0, 9}), ArgumentError);
  CHECK_THROWS_AS(induced_subgraph(tri, {0, 0}), ArgumentError);
}

TEST_CASE("induced_subgraph reindexes features and labels") {
  Eigen::MatrixXd feats(3, 2);
  feats << 1, 2, 3, 4, 5, 6;
  Eigen::VectorXi labels(3);
  labels << 7, 8, 9;
  const Graph g = make_graph(3, {{0, 1}, {1, 2}}, feats, labels);
  const auto sub = induced_subgraph(g, {2, 0});
  CHECK(sub.graph.features(0, 0) == 5);
  CHECK(sub.graph.features(1, 1) == 2);
  CHECK(sub.graph.labels[0] == 9);
  CHECK(sub.graph.labels[1] == 7);
}

TEST_CASE("validate rejects broken graphs") {
  Graph g = mk(3, {{0, 1}});
  g.neighbors[0] = 2;  // 0 -> 2 without the reverse entry
  CHECK_THROWS_AS(g.validate(), ConsistencyError);
}
