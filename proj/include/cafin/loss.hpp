#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cafin/distance.hpp"
#include "cafin/encoder.hpp"
#include "cafin/graph.hpp"
#include "cafin/rng.hpp"

namespace cafin {

enum class LossVariant : std::uint8_t { Baseline, CafinFull, CafinP, CafinN };

const char* variant_name(LossVariant v);
std::optional<LossVariant> variant_from_name(const std::string& name);

struct LossConfig {
  double alpha = 0.05;        // fairness balance factor
  double k = 2.0;             // embedding-distance normalizer
  int q = 1;                  // negative samples per anchor
  LossVariant variant = LossVariant::CafinFull;
  int min_neg_threshold = 3;  // hops
  int walk_length = 5;

  void validate() const;
};

struct TrainTriple {
  int u = -1;
  int v = -1;
  int v_n = -1;
};

/// Oracle lookup through an optional local->parent id map, so subgraph
/// training can query distances precomputed on the parent graph.
struct OracleView {
  const DistanceOracle* oracle = nullptr;
  const std::vector<int>* to_parent = nullptr;

  HopDist query(int u, int v) const {
    if (to_parent) {
      u = (*to_parent)[u];
      v = (*to_parent)[v];
    }
    return oracle->query(u, v);
  }
};

/// Uniform choice among the nodes visited by one fixed-length random walk
/// from u, excluding u itself. nullopt when u is isolated.
std::optional<int> sample_positive(const Graph& g, int u, int walk_length, Rng& rng);

/// Rejection-sample uniform nodes until the oracle distance reaches the
/// threshold (unreachable counts as far); bounded retries, then the
/// farthest candidate seen.
int sample_negative(const Graph& g, int u, const OracleView& oracle, const LossConfig& cfg,
                    Rng& rng);

struct BaseLossResult {
  double value = 0.0;
  Eigen::VectorXd d_u, d_v;
  std::vector<Eigen::VectorXd> d_negs;
};

/// -log sigma(zu.zv) - Q * mean_n log sigma(-zu.zn), with analytic
/// gradients; evaluated in log-sum-exp form so saturated logits are safe.
BaseLossResult base_loss(const Eigen::VectorXd& z_u, const Eigen::VectorXd& z_v,
                         const std::vector<Eigen::VectorXd>& z_negs, int q);

struct FairnessTermResult {
  double value = 0.0;
  Eigen::VectorXd d_u, d_v;
  bool skipped = false;
};

/// (max_degree / deg(u)) * ln^2((D/k) * (diameter / d(u,v))) with D the
/// Euclidean embedding distance. Pairs with d==0, unreachable pairs and
/// zero-degree anchors are skipped (contribute 0).
FairnessTermResult fairness_term(int u, int v, const Eigen::VectorXd& z_u,
                                 const Eigen::VectorXd& z_v, const Eigen::VectorXd& degrees,
                                 const OracleView& oracle, double diameter, double max_degree,
                                 double k);

struct LossContext {
  const Eigen::VectorXd* degrees = nullptr;
  OracleView oracle;
  double diameter = 0.0;
  double max_degree = 0.0;
};

struct TotalLossResult {
  double value = 0.0;
  double base = 0.0;
  double fairness = 0.0;  // unweighted L_f contribution
  int skips = 0;
  Eigen::VectorXd d_u, d_v;
  std::vector<Eigen::VectorXd> d_negs;
};

/// Joint objective: Baseline L_o; CafinFull L_o + a(f(u,v)+f(u,v_n));
/// CafinP/CafinN keep only the positive/negative fairness term. The
/// fairness term for negatives uses the triple's v_n (the first negative).
TotalLossResult total_loss(const TrainTriple& triple, const Eigen::VectorXd& z_u,
                           const Eigen::VectorXd& z_v, const std::vector<Eigen::VectorXd>& z_negs,
                           const LossConfig& cfg, const LossContext& ctx);

struct EpochStats {
  int epoch = 0;
  double mean_base = 0.0;
  double mean_fairness = 0.0;
  long skips = 0;
  int triples = 0;
};

struct TrainOptions {
  int epochs = 100;
  double lr = 0.0025;
  int lr_step = 40;       // halve every lr_step epochs
  double lr_gamma = 0.5;
  std::uint64_t seed = 0;
};

struct TrainResult {
  SageParams params;
  std::vector<EpochStats> trace;
  std::uint64_t triple_hash = 0;  // pairing check across variants
};

/// One triple per non-isolated node per epoch, in shuffled order, with
/// per-triple SGD updates and step lr decay. Deterministic under the seed;
/// the consumed random sequence does not depend on the loss variant, so
/// paired variant runs see identical triples.
TrainResult train(const Graph& g1, const OracleView& oracle, const SageConfig& sage_cfg,
                  const LossConfig& loss_cfg, const TrainOptions& opts);

void save_loss_trace(const std::vector<EpochStats>& trace, const std::string& path);

}  // namespace cafin
