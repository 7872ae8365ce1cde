// End-to-end acceptance checks. Each check prints one [PASS]/[FAIL] line;
// the exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "cafin/distance.hpp"
#include "cafin/experiment.hpp"
#include "cafin/loss.hpp"
#include "cafin/metrics.hpp"
#include "cafin/rng.hpp"
#include "cafin/synth.hpp"

using namespace cafin;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Graph random_connected(int n, int extra, int dim, Rng& rng, double density = 1.0) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, rng.index(v));
  for (int e = 0; e < extra; ++e) {
    const int u = rng.index(n);
    const int v = rng.index(n);
    if (u != v) edges.emplace_back(u, v);
  }
  Eigen::MatrixXd feats(n, dim);
  for (Eigen::Index i = 0; i < feats.size(); ++i) {
    feats.data()[i] = rng.uniform() < density ? 2.0 * rng.uniform() - 1.0 : 0.0;
  }
  return make_graph(n, edges, std::move(feats));
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------------------
// 1. Full-parameter gradient check of the joint loss, all four variants.

bool check_gradients(std::string& detail) {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; checked < 20 && trial < 200; ++trial) {
    const int n = 8 + static_cast<int>(rng.below(23));  // <= 30
    const Graph g = random_connected(n, n / 2, 3, rng);
    const auto oracle = build_exact(g);
    const Eigen::VectorXd degrees = degree_centrality(g);
    LossContext ctx;
    ctx.degrees = &degrees;
    ctx.oracle = OracleView{&oracle, nullptr};
    ctx.diameter = oracle.diameter();
    ctx.max_degree = degrees.maxCoeff();

    SageConfig sage;
    sage.num_layers = 1 + static_cast<int>(rng.below(3));
    sage.hidden_dim = 2 + static_cast<int>(rng.below(7));  // <= 8
    sage.fanouts.assign(sage.num_layers, 2 + static_cast<int>(rng.below(3)));
    sage.seed = trial;

    const int u = rng.index(n);
    const auto pos = sample_positive(g, u, 5, rng);
    if (!pos) continue;
    LossConfig base_cfg;
    const int neg = sample_negative(g, u, ctx.oracle, base_cfg, rng);
    const TrainTriple triple{u, *pos, neg};
    const auto cg_u = sample_computation_graph(g, triple.u, sage, rng);
    const auto cg_v = sample_computation_graph(g, triple.v, sage, rng);
    const auto cg_n = sample_computation_graph(g, triple.v_n, sage, rng);

    // The loss is non-smooth at zero embeddings (normalization kink) and
    // near-singular when paired embeddings almost coincide (log term);
    // finite differences are only meaningful away from those sets.
    {
      const auto probe = SageParams::init(sage, 3);
      ForwardTrace pu_t, pv_t, pn_t;
      const Eigen::VectorXd pu = forward(probe, cg_u, g.features, &pu_t);
      const Eigen::VectorXd pv = forward(probe, cg_v, g.features, &pv_t);
      const Eigen::VectorXd pn = forward(probe, cg_n, g.features, &pn_t);
      if (pu_t.norm < 1e-2 || pv_t.norm < 1e-2 || pn_t.norm < 1e-2 ||
          (pu - pv).norm() < 1e-2 || (pu - pn).norm() < 1e-2) {
        continue;
      }
    }
    ++checked;

    for (const auto variant : {LossVariant::Baseline, LossVariant::CafinFull, LossVariant::CafinP,
                               LossVariant::CafinN}) {
      LossConfig cfg;
      cfg.variant = variant;
      auto params = SageParams::init(sage, 3);

      auto value_at = [&](const SageParams& p) {
        const Eigen::VectorXd z_u = forward(p, cg_u, g.features);
        const Eigen::VectorXd z_v = forward(p, cg_v, g.features);
        const std::vector<Eigen::VectorXd> negs{forward(p, cg_n, g.features)};
        return total_loss(triple, z_u, z_v, negs, cfg, ctx).value;
      };

      ForwardTrace tr_u, tr_v, tr_n;
      const Eigen::VectorXd z_u = forward(params, cg_u, g.features, &tr_u);
      const Eigen::VectorXd z_v = forward(params, cg_v, g.features, &tr_v);
      const std::vector<Eigen::VectorXd> negs{forward(params, cg_n, g.features, &tr_n)};
      const auto loss = total_loss(triple, z_u, z_v, negs, cfg, ctx);
      SageGrads grads;
      grads.init_like(params);
      {
        FeatureCache cache;
        cache.dense = &g.features;
        backward(params, cg_u, cache, tr_u, loss.d_u, grads);
        backward(params, cg_v, cache, tr_v, loss.d_v, grads);
        backward(params, cg_n, cache, tr_n, loss.d_negs[0], grads);
      }

      const double h = 1e-5;
      for (int l = 0; l < sage.num_layers; ++l) {
        for (Eigen::Index idx = 0; idx < params.weights[l].size() + params.biases[l].size();
             ++idx) {
          const bool is_w = idx < params.weights[l].size();
          double& ref = is_w ? params.weights[l].data()[idx]
                             : params.biases[l][idx - params.weights[l].size()];
          const double analytic = is_w ? grads.dW[l].data()[idx]
                                       : grads.db[l][idx - params.weights[l].size()];
          const double orig = ref;
          ref = orig + h;
          const double up = value_at(params);
          ref = orig - h;
          const double dn = value_at(params);
          ref = orig;
          const double fd = (up - dn) / (2.0 * h);
          const double rel = std::abs(fd - analytic) / std::max(1.0, std::abs(analytic));
          worst = std::max(worst, rel);
          if (rel > 1e-4) {
            detail = "relative error " + std::to_string(rel);
            return false;
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << checked << " instances, worst relative error " << worst << ", " << elapsed << "s";
  detail = d.str();
  return checked >= 20 && elapsed < 60.0;
}

// ---------------------------------------------------------------------------
// 2. Metric implementations vs independent brute-force recomputation.

bool check_metrics(std::string& detail) {
  // Worked values first.
  {
    Eigen::VectorXi pred(40), truth(40);
    std::vector<Group> groups(40);
    Eigen::VectorXi freq(2);
    freq << 60, 40;
    int i = 0;
    auto block = [&](int cls, Group grp, int total, int correct) {
      for (int j = 0; j < total; ++j, ++i) {
        truth[i] = cls;
        groups[i] = grp;
        pred[i] = j < correct ? cls : 1 - cls;
      }
    };
    block(0, Group::Popular, 10, 9);
    block(0, Group::Unpopular, 10, 8);
    block(1, Group::Popular, 10, 7);
    block(1, Group::Unpopular, 10, 8);
    if (!close(imparity_nc(pred, truth, groups, freq, 100), 0.10, 1e-12)) {
      detail = "node-classification worked value";
      return false;
    }
    if (!close(imparity_lp(0.9, 0.8, 0.7), 0.081649658092772603, 1e-12)) {
      detail = "link-prediction worked value";
      return false;
    }
  }

  Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(45));  // <= 50
    const int classes = 2 + static_cast<int>(rng.below(4));

    // Single-label imparity.
    Eigen::VectorXi pred(n), truth(n);
    std::vector<Group> groups(n);
    Eigen::VectorXi freq = Eigen::VectorXi::Zero(classes);
    for (int i = 0; i < n; ++i) {
      pred[i] = rng.index(classes);
      truth[i] = rng.index(classes);
      groups[i] = rng.uniform() < 0.5 ? Group::Popular : Group::Unpopular;
      freq[truth[i]]++;
    }
    double expect = 0.0;
    bool any = false;
    for (int c = 0; c < classes; ++c) {
      double hits[2] = {0, 0}, cnt[2] = {0, 0};
      for (int i = 0; i < n; ++i) {
        if (truth[i] != c) continue;
        const int s = groups[i] == Group::Popular ? 0 : 1;
        cnt[s]++;
        hits[s] += pred[i] == c;
      }
      if (cnt[0] == 0 || cnt[1] == 0) continue;
      any = true;
      expect += (static_cast<double>(freq[c]) / n) * std::abs(hits[0] / cnt[0] - hits[1] / cnt[1]);
    }
    if (any && !close(imparity_nc(pred, truth, groups, freq, n), expect, 1e-12)) {
      detail = "imparity_nc mismatch";
      return false;
    }

    // Multi-label imparity via explicit confusion counts.
    Eigen::MatrixXi mp(n, classes), mt(n, classes);
    bool both_groups = false, saw_p = false, saw_u = false;
    for (int i = 0; i < n; ++i) {
      saw_p = saw_p || groups[i] == Group::Popular;
      saw_u = saw_u || groups[i] == Group::Unpopular;
      for (int c = 0; c < classes; ++c) {
        mp(i, c) = rng.uniform() < 0.5;
        mt(i, c) = rng.uniform() < 0.5;
      }
    }
    both_groups = saw_p && saw_u;
    if (both_groups) {
      auto macro = [&](Group want) {
        double sum = 0.0;
        for (int c = 0; c < classes; ++c) {
          double tp = 0, fp = 0, fn = 0;
          for (int i = 0; i < n; ++i) {
            if (groups[i] != want) continue;
            if (mp(i, c) && mt(i, c)) tp++;
            else if (mp(i, c)) fp++;
            else if (mt(i, c)) fn++;
          }
          const double den = 2 * tp + fp + fn;
          sum += den == 0 ? 0.0 : 2 * tp / den;
        }
        return sum / classes;
      };
      const double expect_ml = std::abs(macro(Group::Popular) - macro(Group::Unpopular));
      if (!close(imparity_nc_multilabel(mp, mt, groups), expect_ml, 1e-12)) {
        detail = "multilabel imparity mismatch";
        return false;
      }
    }

    // LP imparity, II, CA, CV, T.
    const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
    const double mu = (a + b + c) / 3.0;
    const double sd =
        std::sqrt(((a - mu) * (a - mu) + (b - mu) * (b - mu) + (c - mu) * (c - mu)) / 3.0);
    if (!close(imparity_lp(a, b, c), sd, 1e-12)) {
      detail = "imparity_lp mismatch";
      return false;
    }
    const double io = 0.01 + rng.uniform(), ic = rng.uniform();
    if (!close(improvement_in_imparity(io, ic), (io - ic) / io * 100.0, 1e-12)) {
      detail = "II mismatch";
      return false;
    }
    if (!close(change_in_accuracy(a, b), (a - b) * 100.0, 1e-12)) {
      detail = "CA mismatch";
      return false;
    }
    std::vector<double> samples{1 + a, 1 + b, 1 + c};
    double m = (samples[0] + samples[1] + samples[2]) / 3.0;
    double var = 0;
    for (double s : samples) var += (s - m) * (s - m);
    var /= 3.0;
    if (!close(coefficient_of_variance(samples), std::sqrt(var) / m * 100.0, 1e-12)) {
      detail = "CV mismatch";
      return false;
    }
    const double ii = 2.0 * rng.uniform() - 1.0;
    const auto t = t_overhead(a, b, ii);
    if (ii <= 0.0 ? t.has_value() : !close(*t, (a + b) / ii, 1e-12)) {
      detail = "T mismatch";
      return false;
    }
  }
  detail = "200 randomized instances + worked values";
  return true;
}

// ---------------------------------------------------------------------------
// 3. Distance oracle vs Floyd-Warshall; landmark bound properties.

bool check_distance(std::string& detail) {
  const auto t0 = Clock::now();
  Rng rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10 + static_cast<int>(rng.below(191));  // <= 200
    const Graph g = random_connected(n, n / 2, 1, rng);

    constexpr int inf = 1 << 28;
    std::vector<std::vector<int>> fw(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) {
      fw[v][v] = 0;
      for (int w : g.neighbors_of(v)) fw[v][w] = 1;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (fw[i][k] + fw[k][j] < fw[i][j]) fw[i][j] = fw[i][k] + fw[k][j];

    const auto exact = build_exact(g);
    const int l = 1 + static_cast<int>(rng.below(10));
    const auto lm = build_landmark(g, l, trial);
    const auto all = build_landmark(g, n, trial);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (exact.query(u, v) != fw[u][v]) {
          detail = "exact table != Floyd-Warshall";
          return false;
        }
        if (lm.query(u, v) < exact.query(u, v)) {
          detail = "landmark bound below the exact distance";
          return false;
        }
        if (all.query(u, v) != exact.query(u, v)) {
          detail = "l = n not exact";
          return false;
        }
      }
    }
    for (int L : lm.landmark_ids()) {
      for (int v = 0; v < n; ++v) {
        if (lm.query(L, v) != exact.query(L, v)) {
          detail = "landmark endpoint not exact";
          return false;
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "50 graphs, " << elapsed << "s";
  detail = d.str();
  return elapsed < 120.0;
}

// ---------------------------------------------------------------------------
// 4. Fairness term zero-point and degree monotonicity.

bool check_fairness_term(std::string& detail) {
  const Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, Eigen::MatrixXd::Zero(5, 1));
  const auto oracle = build_exact(g);
  const OracleView view{&oracle, nullptr};
  Eigen::VectorXd degrees(5);
  degrees.setConstant(2.0);

  Eigen::VectorXd z_u(2), z_v(2);
  z_u << 1.0, 0.0;
  z_v << 0.0, 0.0;  // D = 1, D/k = 0.5

  // d(0,2) = 2, diameter 4: ratio (0.5)(4/2) = 1 -> exact zero point.
  const auto zero = fairness_term(0, 2, z_u, z_v, degrees, view, 4.0, 10.0, 2.0);
  if (zero.skipped || !close(zero.value, 0.0, 1e-18)) {
    detail = "zero point violated";
    return false;
  }

  // Grid of degrees and embedding distances: strictly decreasing in deg(u).
  // d(0,1) = 1 makes the log argument 2D; D = 0.5 would sit exactly on the
  // zero point, so the grid avoids it.
  for (double dist : {0.3, 0.8, 1.2, 1.7, 1.95}) {
    z_u[0] = dist;
    double prev = std::numeric_limits<double>::infinity();
    for (int deg = 1; deg <= 16; ++deg) {
      degrees.setConstant(deg);
      const auto r = fairness_term(0, 1, z_u, z_v, degrees, view, 4.0, 20.0, 2.0);
      if (r.skipped || r.value >= prev) {
        detail = "not strictly decreasing in deg(u)";
        return false;
      }
      prev = r.value;
    }
  }
  detail = "zero point exact, decreasing on the full grid";
  return true;
}

// ---------------------------------------------------------------------------
// 5. alpha = 0 run is bit-identical to the baseline.

bool check_alpha_zero(std::string& detail) {
  SynthConfig syn;
  syn.nodes = 300;
  syn.undirected_edges = 600;
  syn.feature_dim = 64;
  syn.classes = 4;
  syn.words_per_node = 6;
  const Graph g = generate_synthetic(syn);
  const auto oracle = build_exact(g);
  const OracleView view{&oracle, nullptr};

  SageConfig sage;
  sage.num_layers = 2;
  sage.hidden_dim = 16;
  sage.fanouts = {5, 5};
  sage.seed = 7;
  TrainOptions opts;
  opts.epochs = 12;
  opts.seed = 7;

  LossConfig base_cfg;
  base_cfg.variant = LossVariant::Baseline;
  LossConfig zero_cfg;
  zero_cfg.variant = LossVariant::CafinFull;
  zero_cfg.alpha = 0.0;

  const auto a = train(g, view, sage, base_cfg, opts);
  const auto b = train(g, view, sage, zero_cfg, opts);
  if (!a.params.same_values(b.params)) {
    detail = "final parameters differ";
    return false;
  }
  if (a.trace.size() != b.trace.size()) {
    detail = "trace lengths differ";
    return false;
  }
  for (std::size_t e = 0; e < a.trace.size(); ++e) {
    if (a.trace[e].mean_base != b.trace[e].mean_base ||
        a.trace[e].mean_fairness != b.trace[e].mean_fairness ||
        a.trace[e].skips != b.trace[e].skips || a.trace[e].triples != b.trace[e].triples) {
      detail = "loss traces differ at epoch " + std::to_string(e);
      return false;
    }
  }
  detail = "parameters and loss trace bit-identical over " + std::to_string(opts.epochs) +
           " epochs";
  return a.triple_hash == b.triple_hash;
}

// ---------------------------------------------------------------------------
// 6/7. Directional fairness result at benchmark scale, exact and landmark.

ExperimentConfig benchmark_config(const fs::path& data, const fs::path& out) {
  ExperimentConfig cfg;
  cfg.edges_path = (data / "edges.txt").string();
  cfg.features_path = (data / "features.txt").string();
  cfg.labels_path = (data / "labels.txt").string();
  cfg.task = Task::LinkPrediction;
  cfg.oracle_mode = DistanceOracle::Mode::Exact;
  cfg.variants = {LossVariant::Baseline, LossVariant::CafinFull};
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.sage.num_layers = 3;
  cfg.sage.hidden_dim = 64;
  cfg.sage.fanouts = {10, 10, 10};
  cfg.out_dir = out.string();
  return cfg;
}

bool directional_result(const ExperimentConfig& cfg, int min_positive_seeds, std::string& detail,
                        double* elapsed_out = nullptr) {
  const auto t0 = Clock::now();
  const auto run = run_experiment(cfg);
  const double elapsed = seconds_since(t0);
  if (elapsed_out) *elapsed_out = elapsed;
  if (!run.failures.empty()) {
    detail = "seed failures: " + run.failures.front().second;
    return false;
  }
  int positive = 0;
  for (const auto& [seed, by_variant] : run.reports) {
    const auto& r = by_variant.at("cafin");
    if (r.ii_percent && *r.ii_percent > 0.0) ++positive;
  }
  double mean_ii = 0.0, mean_ca = 0.0;
  for (const auto& agg : run.aggregates) {
    if (agg.variant == "cafin") {
      mean_ii = agg.mean_ii.value_or(0.0);
      mean_ca = agg.mean_ca.value_or(0.0);
    }
  }
  std::ostringstream d;
  d << "II > 0 in " << positive << "/5 seeds, mean II " << mean_ii << "%, mean CA " << mean_ca
    << " points, " << elapsed << "s";
  detail = d.str();
  return positive >= min_positive_seeds && std::abs(mean_ca) <= 10.0;
}

// ---------------------------------------------------------------------------
// 8. Preprocessing performance at benchmark scale.

bool check_preprocessing(const Graph& g, std::string& detail) {
  auto t0 = Clock::now();
  const auto serial = build_exact(g, 1);
  const double serial_sec = seconds_since(t0);

  t0 = Clock::now();
  const auto lm = build_landmark(g, 100, 1);
  const double lm_sec = seconds_since(t0);

  std::ostringstream d;
  d << "serial exact " << serial_sec << "s, landmark(100) " << lm_sec << "s";

  bool ok = serial_sec < 60.0 && lm_sec < 5.0;
  const unsigned cores = std::thread::hardware_concurrency();
  if (cores >= 4) {
    t0 = Clock::now();
    const auto parallel = build_exact(g, 4);
    const double par_sec = seconds_since(t0);
    d << ", 4-worker " << par_sec << "s";
    ok = ok && parallel == serial && serial_sec >= 2.0 * par_sec;
  } else {
    const auto parallel = build_exact(g, 4);
    ok = ok && parallel == serial;
    d << "; only " << cores
      << " hardware thread(s) available, worker-scaling speedup not measurable here "
         "(byte-identical parallel result verified)";
  }
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// 9. Two runs with identical config produce byte-identical report files.

bool check_reproducibility(const fs::path& data, std::string& detail) {
  const fs::path a = fs::temp_directory_path() / "cafin_acc_repro_a";
  const fs::path b = fs::temp_directory_path() / "cafin_acc_repro_b";
  fs::remove_all(a);
  fs::remove_all(b);
  ExperimentConfig cfg = benchmark_config(data, a);
  cfg.seeds = {1, 2};
  cfg.sage.hidden_dim = 16;
  cfg.sage.fanouts = {5, 5, 5};
  cfg.train_opts.epochs = 5;
  run_experiment(cfg);
  cfg.out_dir = b.string();
  run_experiment(cfg);

  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    if (rel.filename() == "timing.json") continue;  // wall-clock by design
    const fs::path other = b / rel;
    if (!fs::exists(other) || read(entry.path()) != read(other)) {
      detail = "mismatch at " + rel.string();
      return false;
    }
    ++compared;
  }
  detail = std::to_string(compared) + " files byte-identical (timing.json excluded by design)";
  return compared > 0;
}

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

}  // namespace

int main() {
  std::string detail;

  report(1, "joint-loss gradients vs finite differences", check_gradients(detail), detail);
  report(2, "metrics vs brute-force recomputation", check_metrics(detail), detail);
  report(3, "distance oracle properties", check_distance(detail), detail);
  report(4, "fairness term zero-point and degree weighting", check_fairness_term(detail), detail);
  report(5, "alpha=0 equals baseline bitwise", check_alpha_zero(detail), detail);

  // Benchmark-scale dataset shared by the remaining checks.
  const fs::path data = fs::temp_directory_path() / "cafin_acc_data";
  write_synthetic_dataset(SynthConfig{}, data.string());
  const Graph g = load_edge_list((data / "edges.txt").string(), (data / "features.txt").string(),
                                 (data / "labels.txt").string())
                      .graph;

  {
    const fs::path out = fs::temp_directory_path() / "cafin_acc_exact";
    fs::remove_all(out);
    double elapsed = 0.0;
    const bool dir_ok = directional_result(benchmark_config(data, out), 4, detail, &elapsed);
    report(6, "directional fairness result, exact distances",
           dir_ok && elapsed < 1800.0, detail);
  }
  {
    const fs::path out = fs::temp_directory_path() / "cafin_acc_landmark";
    fs::remove_all(out);
    ExperimentConfig cfg = benchmark_config(data, out);
    cfg.oracle_mode = DistanceOracle::Mode::Landmark;
    cfg.landmarks = 100;
    const bool dir_ok = directional_result(cfg, 3, detail);

    auto t0 = Clock::now();
    build_exact(g, 1);
    const double exact_sec = seconds_since(t0);
    t0 = Clock::now();
    build_landmark(g, 100, 1);
    const double lm_sec = seconds_since(t0);
    std::ostringstream extra;
    extra << detail << "; oracle build " << exact_sec << "s exact vs " << lm_sec
          << "s landmark (" << exact_sec / lm_sec << "x)";
    report(7, "approximate-distance parity", dir_ok && exact_sec >= 10.0 * lm_sec, extra.str());
  }
  report(8, "preprocessing performance", check_preprocessing(g, detail), detail);
  report(9, "reproducibility of report files", check_reproducibility(data, detail), detail);

  return g_failures;
}
