#include "cafin/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "cafin/error.hpp"

namespace cafin {

void SageConfig::validate() const {
  if (num_layers <= 0 || hidden_dim <= 0) throw ConfigError("SageConfig: dims must be positive");
  if (static_cast<int>(fanouts.size()) != num_layers)
    throw ConfigError("SageConfig: num_layers != len(fanouts)");
  for (int f : fanouts) {
    if (f <= 0) throw ConfigError("SageConfig: fanouts must be positive");
  }
}

SageParams SageParams::init(const SageConfig& cfg, int feature_dim) {
  cfg.validate();
  SageParams p;
  p.init_scheme = "glorot-uniform";
  Rng rng(stream_seed(cfg.seed, 0x1717));
  int in_dim = feature_dim;
  for (int l = 0; l < cfg.num_layers; ++l) {
    const int out_dim = cfg.hidden_dim;
    Eigen::MatrixXd w(out_dim, 2 * in_dim);
    const double scale = std::sqrt(6.0 / (2.0 * in_dim + out_dim));
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      w.data()[j] = (2.0 * rng.uniform() - 1.0) * scale;
    }
    p.weights.push_back(std::move(w));
    p.biases.push_back(Eigen::VectorXd::Zero(out_dim));
    in_dim = out_dim;
  }
  return p;
}

bool SageParams::same_values(const SageParams& other) const {
  if (weights.size() != other.weights.size()) return false;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l] != other.weights[l] || biases[l] != other.biases[l]) return false;
  }
  return true;
}

ComputationGraph sample_computation_graph(const Graph& g, int node, const SageConfig& cfg,
                                          Rng& rng) {
  cfg.validate();
  if (node < 0 || node >= g.node_count()) throw ArgumentError("sample_computation_graph: bad node");

  ComputationGraph cg;
  cg.num_layers = cfg.num_layers;
  std::unordered_map<int, int> local;  // graph node -> local index
  auto intern = [&](int v, int d) {
    auto [it, inserted] = local.emplace(v, static_cast<int>(cg.nodes.size()));
    if (inserted) {
      cg.nodes.push_back(v);
      cg.depth.push_back(d);
      cg.children.emplace_back();
    }
    return it->second;
  };
  intern(node, 0);

  std::vector<char> sampled(1, 0);
  for (int hop = 0; hop < cfg.num_layers; ++hop) {
    const int frontier_end = static_cast<int>(cg.nodes.size());
    for (int i = 0; i < frontier_end; ++i) {
      if (cg.depth[i] != hop || sampled[i]) continue;
      sampled[i] = 1;
      const int v = cg.nodes[i];
      const auto nbrs = g.neighbors_of(v);
      const int deg = static_cast<int>(nbrs.size());
      const int cap = cfg.fanouts[hop];
      std::vector<int> picks;
      if (deg <= cap) {
        picks.assign(nbrs.begin(), nbrs.end());
      } else {
        for (int idx : rng.sample_without_replacement(deg, cap)) picks.push_back(nbrs[idx]);
      }
      for (int w : picks) {
        const int j = intern(w, hop + 1);
        if (static_cast<int>(sampled.size()) < static_cast<int>(cg.nodes.size()))
          sampled.resize(cg.nodes.size(), 0);
        cg.children[i].push_back(j);
      }
    }
  }
  return cg;
}

FeatureCache FeatureCache::build(const Eigen::MatrixXd& features, double density_threshold) {
  FeatureCache c;
  c.dense = &features;
  const auto total = features.size();
  if (total == 0) return c;
  std::int64_t nnz = 0;
  for (Eigen::Index i = 0; i < total; ++i) {
    if (features.data()[i] != 0.0) ++nnz;
  }
  if (static_cast<double>(nnz) / static_cast<double>(total) > density_threshold) return c;
  c.use_sparse = true;
  const int n = static_cast<int>(features.rows());
  const int d = static_cast<int>(features.cols());
  c.row_offsets.assign(n + 1, 0);
  c.col_index.reserve(nnz);
  c.value.reserve(nnz);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const double x = features(i, j);
      if (x != 0.0) {
        c.col_index.push_back(j);
        c.value.push_back(x);
      }
    }
    c.row_offsets[i + 1] = static_cast<std::int64_t>(c.col_index.size());
  }
  return c;
}

namespace {

// pre += W(:, base+col) * coeff for each stored entry of feature row `row`.
void add_sparse_product(const FeatureCache& f, int row, const Eigen::MatrixXd& w, int base,
                        double coeff, Eigen::VectorXd& acc) {
  for (std::int64_t k = f.row_offsets[row]; k < f.row_offsets[row + 1]; ++k) {
    acc.noalias() += (coeff * f.value[k]) * w.col(base + f.col_index[k]);
  }
}

}  // namespace

Eigen::VectorXd forward(const SageParams& params, const ComputationGraph& cg,
                        const FeatureCache& features, ForwardTrace* trace) {
  const int L = cg.num_layers;
  if (static_cast<int>(params.weights.size()) != L)
    throw ConfigError("forward: parameter depth != computation graph depth");
  const int feat_dim = features.dim();
  if (params.input_dim() != feat_dim) throw ConfigError("forward: feature dim mismatch");
  const int hidden = params.output_dim();
  const int nn = static_cast<int>(cg.nodes.size());
  const Eigen::MatrixXd& x = *features.dense;

  ForwardTrace local;
  ForwardTrace& t = trace ? *trace : local;
  t.acts.assign(L, Eigen::MatrixXd::Zero(hidden, nn));

  Eigen::VectorXd pre(hidden);
  for (int level = 1; level <= L; ++level) {
    const Eigen::MatrixXd& w = params.weights[level - 1];
    const Eigen::VectorXd& b = params.biases[level - 1];
    const int in_dim = static_cast<int>(w.cols()) / 2;
    for (int i = 0; i < nn; ++i) {
      if (cg.depth[i] > L - level) continue;
      pre = b;
      const auto& kids = cg.children[i];
      const double inv = kids.empty() ? 0.0 : 1.0 / static_cast<double>(kids.size());
      if (level == 1) {
        if (features.use_sparse) {
          add_sparse_product(features, cg.nodes[i], w, 0, 1.0, pre);
          for (int c : kids) add_sparse_product(features, cg.nodes[c], w, in_dim, inv, pre);
        } else {
          pre.noalias() += w.leftCols(in_dim) * x.row(cg.nodes[i]).transpose();
          if (!kids.empty()) {
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(in_dim);
            for (int c : kids) mean += x.row(cg.nodes[c]).transpose();
            pre.noalias() += w.rightCols(in_dim) * (inv * mean);
          }
        }
      } else {
        const Eigen::MatrixXd& prev = t.acts[level - 2];
        pre.noalias() += w.leftCols(in_dim) * prev.col(i);
        if (!kids.empty()) {
          Eigen::VectorXd mean = Eigen::VectorXd::Zero(in_dim);
          for (int c : kids) mean += prev.col(c);
          pre.noalias() += w.rightCols(in_dim) * (inv * mean);
        }
      }
      t.acts[level - 1].col(i) = pre.cwiseMax(0.0);
    }
  }

  t.pre_norm = t.acts[L - 1].col(0);
  t.norm = t.pre_norm.norm();
  if (t.norm == 0.0) return Eigen::VectorXd::Zero(hidden);
  return t.pre_norm / t.norm;
}

Eigen::VectorXd forward(const SageParams& params, const ComputationGraph& cg,
                        const Eigen::MatrixXd& features, ForwardTrace* trace) {
  FeatureCache cache;
  cache.dense = &features;  // dense path, no scan
  return forward(params, cg, cache, trace);
}

void SageGrads::init_like(const SageParams& params) {
  dW.clear();
  db.clear();
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    dW.push_back(Eigen::MatrixXd::Zero(params.weights[l].rows(), params.weights[l].cols()));
    db.push_back(Eigen::VectorXd::Zero(params.biases[l].size()));
  }
  touched_cols.clear();
  touched_mark.assign(dW.front().cols(), 0);
}

void SageGrads::touch(int col) {
  if (!touched_mark[col]) {
    touched_mark[col] = 1;
    touched_cols.push_back(col);
  }
}

void SageGrads::reset() {
  for (int c : touched_cols) {
    dW[0].col(c).setZero();
    touched_mark[c] = 0;
  }
  touched_cols.clear();
  db[0].setZero();
  for (std::size_t l = 1; l < dW.size(); ++l) {
    dW[l].setZero();
    db[l].setZero();
  }
}

void backward(const SageParams& params, const ComputationGraph& cg, const FeatureCache& features,
              const ForwardTrace& trace, const Eigen::VectorXd& upstream, SageGrads& out) {
  const int L = cg.num_layers;
  const int hidden = params.output_dim();
  const int nn = static_cast<int>(cg.nodes.size());
  const Eigen::MatrixXd& x = *features.dense;

  if (trace.norm == 0.0) return;  // zero output, zero gradient

  // Jacobian of y = h/||h||.
  const Eigen::VectorXd y = trace.pre_norm / trace.norm;
  Eigen::VectorXd g_root = (upstream - y * y.dot(upstream)) / trace.norm;

  std::vector<Eigen::MatrixXd> dacts(L, Eigen::MatrixXd::Zero(hidden, nn));
  dacts[L - 1].col(0) = g_root;

  Eigen::VectorXd dpre(hidden);
  for (int level = L; level >= 1; --level) {
    const Eigen::MatrixXd& w = params.weights[level - 1];
    const int in_dim = static_cast<int>(w.cols()) / 2;
    for (int i = 0; i < nn; ++i) {
      if (cg.depth[i] > L - level) continue;
      const auto post = trace.acts[level - 1].col(i);
      dpre = dacts[level - 1].col(i);
      bool live = false;
      for (int r = 0; r < hidden; ++r) {
        if (post[r] > 0.0) {
          live = live || dpre[r] != 0.0;
        } else {
          dpre[r] = 0.0;
        }
      }
      if (!live) continue;
      out.db[level - 1] += dpre;
      const auto& kids = cg.children[i];
      const double inv = kids.empty() ? 0.0 : 1.0 / static_cast<double>(kids.size());
      if (level == 1) {
        auto scatter = [&](int row, int base, double coeff) {
          if (features.use_sparse) {
            for (std::int64_t k = features.row_offsets[row]; k < features.row_offsets[row + 1];
                 ++k) {
              const int col = base + features.col_index[k];
              out.touch(col);
              out.dW[0].col(col).noalias() += (coeff * features.value[k]) * dpre;
            }
          } else {
            for (int j = 0; j < in_dim; ++j) {
              const double xv = x(row, j);
              if (xv == 0.0) continue;
              out.touch(base + j);
              out.dW[0].col(base + j).noalias() += (coeff * xv) * dpre;
            }
          }
        };
        scatter(cg.nodes[i], 0, 1.0);
        for (int c : kids) scatter(cg.nodes[c], in_dim, inv);
      } else {
        const Eigen::MatrixXd& prev = trace.acts[level - 2];
        out.dW[level - 1].leftCols(in_dim).noalias() += dpre * prev.col(i).transpose();
        if (!kids.empty()) {
          Eigen::VectorXd mean = Eigen::VectorXd::Zero(in_dim);
          for (int c : kids) mean += prev.col(c);
          out.dW[level - 1].rightCols(in_dim).noalias() += dpre * (inv * mean).transpose();
        }
        dacts[level - 2].col(i).noalias() += w.leftCols(in_dim).transpose() * dpre;
        if (!kids.empty()) {
          const Eigen::VectorXd back = inv * (w.rightCols(in_dim).transpose() * dpre);
          for (int c : kids) dacts[level - 2].col(c) += back;
        }
      }
    }
  }
}

SageGrads backward(const SageParams& params, const ComputationGraph& cg,
                   const Eigen::MatrixXd& features, const ForwardTrace& trace,
                   const Eigen::VectorXd& upstream) {
  FeatureCache cache;
  cache.dense = &features;
  SageGrads grads;
  grads.init_like(params);
  backward(params, cg, cache, trace, upstream, grads);
  return grads;
}

void apply_sgd(SageParams& params, const SageGrads& grads, double lr) {
  for (int c : grads.touched_cols) {
    params.weights[0].col(c).noalias() -= lr * grads.dW[0].col(c);
  }
  params.biases[0].noalias() -= lr * grads.db[0];
  for (std::size_t l = 1; l < params.weights.size(); ++l) {
    params.weights[l].noalias() -= lr * grads.dW[l];
    params.biases[l].noalias() -= lr * grads.db[l];
  }
}

std::uint64_t config_hash(const SageConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  mix(cfg.num_layers);
  mix(cfg.hidden_dim);
  for (int f : cfg.fanouts) mix(static_cast<std::uint64_t>(f));
  mix(cfg.seed);
  return h;
}

namespace {

constexpr std::uint32_t kParamsMagic = 0x4346'5350;  // "CFSP"

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

void SageParams::save(const std::string& path, std::uint64_t cfg_hash) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_pod(out, kParamsMagic);
  write_pod(out, cfg_hash);
  write_pod(out, static_cast<std::uint32_t>(weights.size()));
  for (std::size_t l = 0; l < weights.size(); ++l) {
    write_pod(out, static_cast<std::uint32_t>(weights[l].rows()));
    write_pod(out, static_cast<std::uint32_t>(weights[l].cols()));
    out.write(reinterpret_cast<const char*>(weights[l].data()),
              weights[l].size() * sizeof(double));
    out.write(reinterpret_cast<const char*>(biases[l].data()), biases[l].size() * sizeof(double));
  }
  if (!out) throw IoError("write failed for " + path);
}

SageParams SageParams::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  if (read_pod<std::uint32_t>(in) != kParamsMagic)
    throw ParseError(path + ": not a checkpoint file");
  read_pod<std::uint64_t>(in);  // config hash, informational
  SageParams p;
  p.init_scheme = "glorot-uniform";
  const auto layers = read_pod<std::uint32_t>(in);
  for (std::uint32_t l = 0; l < layers; ++l) {
    const auto rows = read_pod<std::uint32_t>(in);
    const auto cols = read_pod<std::uint32_t>(in);
    Eigen::MatrixXd w(rows, cols);
    in.read(reinterpret_cast<char*>(w.data()), w.size() * sizeof(double));
    Eigen::VectorXd b(rows);
    in.read(reinterpret_cast<char*>(b.data()), b.size() * sizeof(double));
    p.weights.push_back(std::move(w));
    p.biases.push_back(std::move(b));
  }
  if (!in) throw ParseError(path + ": truncated checkpoint");
  return p;
}

}  // namespace cafin
