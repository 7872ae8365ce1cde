#include "cafin/distance.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <thread>

#include "cafin/error.hpp"
#include "cafin/rng.hpp"

namespace cafin {

std::vector<HopDist> bfs_sssp(const Graph& g, int source) {
  const int n = g.node_count();
  if (source < 0 || source >= n) throw ArgumentError("bfs_sssp: source out of range");
  std::vector<HopDist> dist(n, kUnreachable);
  std::vector<int> queue;
  queue.reserve(n);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    const HopDist du = dist[u];
    for (int w : g.neighbors_of(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = static_cast<HopDist>(du + 1);
        queue.push_back(w);
      }
    }
  }
  return dist;
}

HopDist DistanceOracle::query(int u, int v) const {
  if (u == v) return 0;
  if (mode_ == Mode::Exact) {
    return table_[static_cast<std::size_t>(u) * n_ + v];
  }
  int best = kUnreachable;
  const int l = landmark_count();
  for (int i = 0; i < l; ++i) {
    const HopDist du = landmark_table_[static_cast<std::size_t>(i) * n_ + u];
    const HopDist dv = landmark_table_[static_cast<std::size_t>(i) * n_ + v];
    if (du == kUnreachable || dv == kUnreachable) continue;
    best = std::min(best, static_cast<int>(du) + static_cast<int>(dv));
  }
  return best >= kUnreachable ? kUnreachable : static_cast<HopDist>(best);
}

DistanceOracle build_exact(const Graph& g, int workers, std::size_t memory_budget_bytes) {
  const int n = g.node_count();
  const std::size_t bytes = static_cast<std::size_t>(n) * n * sizeof(HopDist);
  if (bytes > memory_budget_bytes) {
    throw CapacityError("build_exact: " + std::to_string(bytes) +
                        " bytes exceed the memory budget; consider landmark mode");
  }
  DistanceOracle o;
  o.mode_ = DistanceOracle::Mode::Exact;
  o.n_ = n;
  o.table_.resize(static_cast<std::size_t>(n) * n);

  workers = std::max(1, workers);
  auto run_rows = [&](int begin, int end) {
    for (int s = begin; s < end; ++s) {
      const auto dist = bfs_sssp(g, s);
      std::memcpy(o.table_.data() + static_cast<std::size_t>(s) * n, dist.data(),
                  n * sizeof(HopDist));
    }
  };
  if (workers == 1 || n < 2 * workers) {
    run_rows(0, n);
  } else {
    std::vector<std::thread> threads;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(n, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(run_rows, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  HopDist diam = 0;
  for (HopDist d : o.table_) {
    if (d != kUnreachable) diam = std::max(diam, d);
  }
  o.diameter_ = diam;
  return o;
}

DistanceOracle build_landmark(const Graph& g, int l, std::uint64_t seed) {
  const int n = g.node_count();
  if (l < 1 || l > n) throw ArgumentError("build_landmark: l out of range");
  DistanceOracle o;
  o.mode_ = DistanceOracle::Mode::Landmark;
  o.n_ = n;
  Rng rng(seed);
  o.landmark_ids_ = rng.sample_without_replacement(n, l);
  o.landmark_table_.resize(static_cast<std::size_t>(l) * n);
  HopDist diam = 0;
  for (int i = 0; i < l; ++i) {
    const auto dist = bfs_sssp(g, o.landmark_ids_[i]);
    for (int v = 0; v < n; ++v) {
      const HopDist d = dist[v];
      o.landmark_table_[static_cast<std::size_t>(i) * n + v] = d;
      if (d != kUnreachable) diam = std::max(diam, d);
    }
  }
  o.diameter_ = diam;
  return o;
}

bool operator==(const DistanceOracle& a, const DistanceOracle& b) {
  return a.mode_ == b.mode_ && a.n_ == b.n_ && a.diameter_ == b.diameter_ &&
         a.table_ == b.table_ && a.landmark_ids_ == b.landmark_ids_ &&
         a.landmark_table_ == b.landmark_table_;
}

namespace {

constexpr std::uint32_t kOracleMagic = 0x4346'4e4f;  // "CFNO"

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void DistanceOracle::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_pod(out, kOracleMagic);
  write_pod(out, static_cast<std::uint8_t>(mode_));
  write_pod(out, static_cast<std::uint32_t>(n_));
  write_pod(out, static_cast<std::uint32_t>(landmark_ids_.size()));
  write_pod(out, diameter_);
  write_pod(out, kUnreachable);
  if (mode_ == Mode::Exact) {
    out.write(reinterpret_cast<const char*>(table_.data()), table_.size() * sizeof(HopDist));
  } else {
    for (int id : landmark_ids_) write_pod(out, static_cast<std::uint32_t>(id));
    out.write(reinterpret_cast<const char*>(landmark_table_.data()),
              landmark_table_.size() * sizeof(HopDist));
  }
  if (!out) throw IoError("write failed for " + path);
}

DistanceOracle DistanceOracle::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  if (read_pod<std::uint32_t>(in) != kOracleMagic)
    throw ParseError(path + ": not a distance oracle file");
  DistanceOracle o;
  o.mode_ = static_cast<Mode>(read_pod<std::uint8_t>(in));
  o.n_ = static_cast<int>(read_pod<std::uint32_t>(in));
  const int l = static_cast<int>(read_pod<std::uint32_t>(in));
  o.diameter_ = read_pod<HopDist>(in);
  const HopDist sentinel = read_pod<HopDist>(in);
  if (sentinel != kUnreachable) throw ParseError(path + ": sentinel mismatch");
  if (o.mode_ == Mode::Exact) {
    o.table_.resize(static_cast<std::size_t>(o.n_) * o.n_);
    in.read(reinterpret_cast<char*>(o.table_.data()), o.table_.size() * sizeof(HopDist));
  } else {
    o.landmark_ids_.resize(l);
    for (int i = 0; i < l; ++i) o.landmark_ids_[i] = static_cast<int>(read_pod<std::uint32_t>(in));
    o.landmark_table_.resize(static_cast<std::size_t>(l) * o.n_);
    in.read(reinterpret_cast<char*>(o.landmark_table_.data()),
            o.landmark_table_.size() * sizeof(HopDist));
  }
  if (!in) throw ParseError(path + ": truncated oracle file");
  return o;
}

}  // namespace cafin
