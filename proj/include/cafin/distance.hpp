#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cafin/graph.hpp"

namespace cafin {

/// Hop distances fit comfortably in 16 bits for small-world graphs; the
/// max value is the unreachable sentinel.
using HopDist = std::uint16_t;
inline constexpr HopDist kUnreachable = std::numeric_limits<HopDist>::max();

/// Pairwise hop distances, either as a full n x n table (one BFS per node)
/// or as landmark rows giving triangle-inequality upper bounds.
class DistanceOracle {
 public:
  enum class Mode : std::uint8_t { Exact = 0, Landmark = 1 };

  Mode mode() const { return mode_; }
  int node_count() const { return n_; }
  int landmark_count() const { return static_cast<int>(landmark_ids_.size()); }
  const std::vector<int>& landmark_ids() const { return landmark_ids_; }

  /// Exact mode: table lookup. Landmark mode: min over landmarks L of
  /// d(u,L)+d(L,v), an upper bound on d(u,v). query(u,u) == 0 in both modes.
  HopDist query(int u, int v) const;

  /// Max finite exact distance (exact mode) or max finite landmark-to-node
  /// distance (landmark mode).
  HopDist diameter() const { return diameter_; }

  void save(const std::string& path) const;
  static DistanceOracle load(const std::string& path);

  friend DistanceOracle build_exact(const Graph&, int, std::size_t);
  friend DistanceOracle build_landmark(const Graph&, int, std::uint64_t);
  friend bool operator==(const DistanceOracle&, const DistanceOracle&);

  const std::vector<HopDist>& exact_table() const { return table_; }
  const std::vector<HopDist>& landmark_table() const { return landmark_table_; }

 private:
  Mode mode_ = Mode::Exact;
  int n_ = 0;
  HopDist diameter_ = 0;
  std::vector<HopDist> table_;           // exact: n*n row-major
  std::vector<int> landmark_ids_;        // landmark mode
  std::vector<HopDist> landmark_table_;  // landmark mode: l*n row-major
};

bool operator==(const DistanceOracle& a, const DistanceOracle& b);

/// Single-source BFS over the CSR adjacency; unreachable nodes carry the
/// sentinel.
std::vector<HopDist> bfs_sssp(const Graph& g, int source);

/// One BFS per node, fanned out over `workers` threads. The table is
/// byte-identical regardless of worker count.
DistanceOracle build_exact(const Graph& g, int workers = 1,
                           std::size_t memory_budget_bytes = std::size_t{2} << 30);

/// l distinct landmarks sampled uniformly without replacement; one BFS per
/// landmark.
DistanceOracle build_landmark(const Graph& g, int l, std::uint64_t seed);

}  // namespace cafin
