#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cafin/graph.hpp"
#include "cafin/rng.hpp"

namespace cafin {

struct SageConfig {
  int num_layers = 3;
  int hidden_dim = 256;
  std::vector<int> fanouts = {10, 10, 10};  // per-hop neighbor sample caps
  std::uint64_t seed = 0;

  void validate() const;
};

/// Mean-aggregator weights: per layer W_k of shape [out x 2*in] acting on
/// the (self || neighbor-mean) concatenation, plus a bias.
struct SageParams {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  std::string init_scheme;

  int num_layers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return static_cast<int>(weights.front().cols()) / 2; }
  int output_dim() const { return static_cast<int>(weights.back().rows()); }

  static SageParams init(const SageConfig& cfg, int feature_dim);

  void save(const std::string& path, std::uint64_t config_hash = 0) const;
  static SageParams load(const std::string& path);

  bool same_values(const SageParams& other) const;
};

/// Sampled multi-hop neighborhood of a root node. Each distinct node keeps
/// one sampled neighbor list (capped by the fanout of the hop at which it
/// was first reached); a node with fewer neighbors than the cap keeps all
/// of them once.
struct ComputationGraph {
  std::vector<int> nodes;                  // nodes[0] is the root
  std::vector<int> depth;                  // first-reach hop per node
  std::vector<std::vector<int>> children;  // local indices into `nodes`
  int num_layers = 0;
};

ComputationGraph sample_computation_graph(const Graph& g, int node, const SageConfig& cfg,
                                          Rng& rng);

/// Read-optimized view of the feature matrix. Mostly-zero matrices (e.g.
/// bag-of-words features) get a per-row nonzero list so layer-1 products
/// cost O(nnz * hidden) instead of O(dim * hidden).
struct FeatureCache {
  const Eigen::MatrixXd* dense = nullptr;
  bool use_sparse = false;
  std::vector<std::int64_t> row_offsets;
  std::vector<int> col_index;
  std::vector<double> value;

  static FeatureCache build(const Eigen::MatrixXd& features, double density_threshold = 0.25);
  int dim() const { return static_cast<int>(dense->cols()); }
};

/// Per-level post-activations cached for the backward pass.
struct ForwardTrace {
  std::vector<Eigen::MatrixXd> acts;  // acts[j]: hidden x |nodes|, level j+1
  Eigen::VectorXd pre_norm;           // encoder output before L2 normalization
  double norm = 0.0;
};

/// Embedding of the root: h0 = features, hk = relu(W_k [self || mean]),
/// final output L2-normalized (zero maps to zero).
Eigen::VectorXd forward(const SageParams& params, const ComputationGraph& cg,
                        const FeatureCache& features, ForwardTrace* trace = nullptr);
Eigen::VectorXd forward(const SageParams& params, const ComputationGraph& cg,
                        const Eigen::MatrixXd& features, ForwardTrace* trace = nullptr);

/// Parameter gradients. Layer-1 columns touched by sparse feature rows are
/// tracked so reset() does not have to wipe the whole [hidden x 2*dim]
/// block between minibatches.
struct SageGrads {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;
  std::vector<int> touched_cols;  // columns of dW[0]
  std::vector<char> touched_mark;

  void init_like(const SageParams& params);
  void reset();
  void touch(int col);
};

/// Exact reverse-mode gradients of forward (including the normalization
/// Jacobian) for the upstream gradient wrt the final embedding.
/// Accumulates into `out`.
void backward(const SageParams& params, const ComputationGraph& cg, const FeatureCache& features,
              const ForwardTrace& trace, const Eigen::VectorXd& upstream, SageGrads& out);

/// Dense-allocating convenience overload for tests and gradient checks.
SageGrads backward(const SageParams& params, const ComputationGraph& cg,
                   const Eigen::MatrixXd& features, const ForwardTrace& trace,
                   const Eigen::VectorXd& upstream);

/// Apply one SGD step from accumulated gradients; touches only the layer-1
/// columns recorded in `grads`.
void apply_sgd(SageParams& params, const SageGrads& grads, double lr);

std::uint64_t config_hash(const SageConfig& cfg);

}  // namespace cafin
