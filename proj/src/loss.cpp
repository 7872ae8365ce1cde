#include "cafin/loss.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "cafin/error.hpp"

namespace cafin {

const char* variant_name(LossVariant v) {
  switch (v) {
    case LossVariant::Baseline: return "baseline";
    case LossVariant::CafinFull: return "cafin";
    case LossVariant::CafinP: return "cafin_p";
    case LossVariant::CafinN: return "cafin_n";
  }
  return "?";
}

std::optional<LossVariant> variant_from_name(const std::string& name) {
  if (name == "baseline") return LossVariant::Baseline;
  if (name == "cafin" || name == "cafin_full") return LossVariant::CafinFull;
  if (name == "cafin_p") return LossVariant::CafinP;
  if (name == "cafin_n") return LossVariant::CafinN;
  return std::nullopt;
}

void LossConfig::validate() const {
  if (alpha < 0.0) throw ConfigError("LossConfig: alpha must be >= 0");
  if (k <= 0.0) throw ConfigError("LossConfig: k must be > 0");
  if (q < 1) throw ConfigError("LossConfig: q must be >= 1");
  if (walk_length < 1) throw ConfigError("LossConfig: walk_length must be >= 1");
}

std::optional<int> sample_positive(const Graph& g, int u, int walk_length, Rng& rng) {
  if (g.degree(u) == 0) return std::nullopt;
  std::vector<int> visited;
  visited.reserve(walk_length);
  int cur = u;
  for (int step = 0; step < walk_length; ++step) {
    const auto nbrs = g.neighbors_of(cur);
    if (nbrs.empty()) break;
    cur = nbrs[rng.index(nbrs.size())];
    if (cur != u) visited.push_back(cur);
  }
  if (visited.empty()) return std::nullopt;  // walk bounced back onto u only
  return visited[rng.index(visited.size())];
}

int sample_negative(const Graph& g, int u, const OracleView& oracle, const LossConfig& cfg,
                    Rng& rng) {
  const int n = g.node_count();
  constexpr int kMaxTrials = 50;
  int farthest = -1;
  int farthest_dist = -1;
  for (int trial = 0; trial < kMaxTrials; ++trial) {
    const int v = rng.index(n);
    if (v == u) continue;
    const HopDist d = oracle.query(u, v);
    if (d == kUnreachable || d >= cfg.min_neg_threshold) return v;
    if (static_cast<int>(d) > farthest_dist) {
      farthest_dist = d;
      farthest = v;
    }
  }
  if (farthest >= 0) return farthest;
  return (u + 1) % n;  // pathological graph (n==1 excluded by callers)
}

namespace {

// log(sigmoid(x)) without overflow.
double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

BaseLossResult base_loss(const Eigen::VectorXd& z_u, const Eigen::VectorXd& z_v,
                         const std::vector<Eigen::VectorXd>& z_negs, int q) {
  BaseLossResult r;
  const double s_pos = z_u.dot(z_v);
  r.value = -log_sigmoid(s_pos);
  const double g_pos = -sigmoid(-s_pos);  // d(-log sigma(s))/ds
  r.d_u = g_pos * z_v;
  r.d_v = g_pos * z_u;

  const double scale = static_cast<double>(q) / static_cast<double>(z_negs.size());
  double neg_sum = 0.0;
  r.d_negs.reserve(z_negs.size());
  for (const auto& z_n : z_negs) {
    const double s = z_u.dot(z_n);
    neg_sum += -log_sigmoid(-s);
    const double gs = sigmoid(s);  // d(-log sigma(-s))/ds
    r.d_u += scale * gs * z_n;
    r.d_negs.push_back(scale * gs * z_u);
  }
  r.value += scale * neg_sum;
  return r;
}

FairnessTermResult fairness_term(int u, int v, const Eigen::VectorXd& z_u,
                                 const Eigen::VectorXd& z_v, const Eigen::VectorXd& degrees,
                                 const OracleView& oracle, double diameter, double max_degree,
                                 double k) {
  FairnessTermResult r;
  r.d_u = Eigen::VectorXd::Zero(z_u.size());
  r.d_v = Eigen::VectorXd::Zero(z_v.size());
  const HopDist d_graph = oracle.query(u, v);
  if (d_graph == kUnreachable || d_graph == 0 || degrees[u] <= 0.0 || diameter <= 0.0) {
    r.skipped = true;
    return r;
  }
  const double weight = max_degree / degrees[u];
  constexpr double kEps = 1e-9;
  const double dist = (z_u - z_v).norm();
  const double d_clamped = std::max(dist, kEps);
  const double ratio = (d_clamped / k) * (diameter / static_cast<double>(d_graph));
  const double lr = std::log(ratio);
  r.value = weight * lr * lr;
  if (dist > kEps) {
    const double coeff = 2.0 * weight * lr / (dist * dist);
    r.d_u = coeff * (z_u - z_v);
    r.d_v = -r.d_u;
  }
  return r;
}

TotalLossResult total_loss(const TrainTriple& triple, const Eigen::VectorXd& z_u,
                           const Eigen::VectorXd& z_v, const std::vector<Eigen::VectorXd>& z_negs,
                           const LossConfig& cfg, const LossContext& ctx) {
  cfg.validate();
  TotalLossResult r;
  auto base = base_loss(z_u, z_v, z_negs, cfg.q);
  r.base = base.value;
  r.value = base.value;
  r.d_u = std::move(base.d_u);
  r.d_v = std::move(base.d_v);
  r.d_negs = std::move(base.d_negs);

  // alpha == 0 degenerates to the baseline exactly, fairness terms and all.
  if (cfg.variant == LossVariant::Baseline || cfg.alpha == 0.0) return r;

  const bool want_pos = cfg.variant != LossVariant::CafinN;
  const bool want_neg = cfg.variant != LossVariant::CafinP;
  if (want_pos) {
    auto f = fairness_term(triple.u, triple.v, z_u, z_v, *ctx.degrees, ctx.oracle, ctx.diameter,
                           ctx.max_degree, cfg.k);
    if (f.skipped) {
      ++r.skips;
    } else {
      r.fairness += f.value;
      r.d_u += cfg.alpha * f.d_u;
      r.d_v += cfg.alpha * f.d_v;
    }
  }
  if (want_neg) {
    auto f = fairness_term(triple.u, triple.v_n, z_u, z_negs.front(), *ctx.degrees, ctx.oracle,
                           ctx.diameter, ctx.max_degree, cfg.k);
    if (f.skipped) {
      ++r.skips;
    } else {
      r.fairness += f.value;
      r.d_u += cfg.alpha * f.d_u;
      r.d_negs.front() += cfg.alpha * f.d_v;
    }
  }
  r.value += cfg.alpha * r.fairness;
  return r;
}

TrainResult train(const Graph& g1, const OracleView& oracle, const SageConfig& sage_cfg,
                  const LossConfig& loss_cfg, const TrainOptions& opts) {
  sage_cfg.validate();
  loss_cfg.validate();
  const int n = g1.node_count();

  TrainResult result;
  result.params = SageParams::init(sage_cfg, g1.feature_dim());

  const Eigen::VectorXd degrees = degree_centrality(g1);
  LossContext ctx;
  ctx.degrees = &degrees;
  ctx.oracle = oracle;
  ctx.diameter = static_cast<double>(oracle.oracle->diameter());
  ctx.max_degree = degrees.size() > 0 ? degrees.maxCoeff() : 0.0;

  const FeatureCache features = FeatureCache::build(g1.features);

  Rng rng(stream_seed(opts.seed, 0x7e57));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  SageGrads grads;
  grads.init_like(result.params);

  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::uint64_t v) {
    hash ^= v;
    hash *= 0x100000001b3ULL;
  };

  std::vector<ComputationGraph> neg_cgs(loss_cfg.q);
  std::vector<ForwardTrace> neg_traces(loss_cfg.q);
  std::vector<Eigen::VectorXd> z_negs(loss_cfg.q);
  std::vector<int> negs(loss_cfg.q);

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    const double lr = opts.lr * std::pow(opts.lr_gamma, epoch / opts.lr_step);
    rng.shuffle(order);
    EpochStats stats;
    stats.epoch = epoch;
    for (int u : order) {
      const auto pos = sample_positive(g1, u, loss_cfg.walk_length, rng);
      if (!pos) continue;
      for (int j = 0; j < loss_cfg.q; ++j) {
        negs[j] = sample_negative(g1, u, oracle, loss_cfg, rng);
      }
      TrainTriple triple{u, *pos, negs[0]};
      mix(static_cast<std::uint64_t>(triple.u));
      mix(static_cast<std::uint64_t>(triple.v));
      mix(static_cast<std::uint64_t>(triple.v_n));

      auto cg_u = sample_computation_graph(g1, triple.u, sage_cfg, rng);
      auto cg_v = sample_computation_graph(g1, triple.v, sage_cfg, rng);
      for (int j = 0; j < loss_cfg.q; ++j) {
        neg_cgs[j] = sample_computation_graph(g1, negs[j], sage_cfg, rng);
      }

      ForwardTrace trace_u, trace_v;
      const Eigen::VectorXd z_u = forward(result.params, cg_u, features, &trace_u);
      const Eigen::VectorXd z_v = forward(result.params, cg_v, features, &trace_v);
      for (int j = 0; j < loss_cfg.q; ++j) {
        z_negs[j] = forward(result.params, neg_cgs[j], features, &neg_traces[j]);
      }

      const auto loss = total_loss(triple, z_u, z_v, z_negs, loss_cfg, ctx);
      if (!std::isfinite(loss.value)) {
        throw TrainingError("training diverged (non-finite loss) at epoch " +
                            std::to_string(epoch));
      }
      stats.mean_base += loss.base;
      stats.mean_fairness += loss.fairness;
      stats.skips += loss.skips;
      stats.triples += 1;

      grads.reset();
      backward(result.params, cg_u, features, trace_u, loss.d_u, grads);
      backward(result.params, cg_v, features, trace_v, loss.d_v, grads);
      for (int j = 0; j < loss_cfg.q; ++j) {
        backward(result.params, neg_cgs[j], features, neg_traces[j], loss.d_negs[j], grads);
      }
      apply_sgd(result.params, grads, lr);
    }
    if (stats.triples > 0) {
      stats.mean_base /= stats.triples;
      stats.mean_fairness /= stats.triples;
    }
    result.trace.push_back(stats);
  }
  result.triple_hash = hash;
  return result;
}

void save_loss_trace(const std::vector<EpochStats>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "epoch,mean_base_loss,mean_fairness_loss,skips,triples\n";
  out.precision(17);
  for (const auto& s : trace) {
    out << s.epoch << "," << s.mean_base << "," << s.mean_fairness << "," << s.skips << ","
        << s.triples << "\n";
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace cafin
