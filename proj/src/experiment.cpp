#include "cafin/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cafin/downstream.hpp"
#include "cafin/error.hpp"
#include "cafin/splits.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace cafin {

namespace {

constexpr std::uint64_t kSplitStream = 0x51;
constexpr std::uint64_t kEmbedStream = 0x52;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream iss(s);
  while (std::getline(iss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  ExperimentConfig cfg;
  cfg.variants.clear();
  cfg.seeds.clear();
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "dataset.edges") cfg.edges_path = value;
      else if (key == "dataset.features") cfg.features_path = value;
      else if (key == "dataset.labels") cfg.labels_path = value;
      else if (key == "experiment.task") {
        if (value == "lp") cfg.task = Task::LinkPrediction;
        else if (value == "nc") cfg.task = Task::NodeClassification;
        else throw ConfigError("task must be lp or nc");
      } else if (key == "experiment.oracle") {
        if (value == "exact") cfg.oracle_mode = DistanceOracle::Mode::Exact;
        else if (value == "landmark") cfg.oracle_mode = DistanceOracle::Mode::Landmark;
        else throw ConfigError("oracle must be exact or landmark");
      } else if (key == "experiment.landmarks") cfg.landmarks = std::stoi(value);
      else if (key == "experiment.variants") {
        for (const auto& name : split_list(value)) {
          const auto v = variant_from_name(name);
          if (!v) throw ConfigError("unknown variant " + name);
          cfg.variants.push_back(*v);
        }
      } else if (key == "experiment.seeds") {
        for (const auto& s : split_list(value)) cfg.seeds.push_back(std::stoull(s));
      } else if (key == "experiment.out_dir") cfg.out_dir = value;
      else if (key == "experiment.workers") cfg.workers = std::stoi(value);
      else if (key == "experiment.memory_budget_mb")
        cfg.memory_budget_bytes = std::stoull(value) << 20;
      else if (key == "encoder.num_layers") cfg.sage.num_layers = std::stoi(value);
      else if (key == "encoder.hidden_dim") cfg.sage.hidden_dim = std::stoi(value);
      else if (key == "encoder.fanouts") {
        cfg.sage.fanouts.clear();
        for (const auto& s : split_list(value)) cfg.sage.fanouts.push_back(std::stoi(s));
      } else if (key == "loss.alpha") cfg.loss.alpha = std::stod(value);
      else if (key == "loss.k") cfg.loss.k = std::stod(value);
      else if (key == "loss.q") cfg.loss.q = std::stoi(value);
      else if (key == "loss.min_neg_threshold") cfg.loss.min_neg_threshold = std::stoi(value);
      else if (key == "loss.walk_length") cfg.loss.walk_length = std::stoi(value);
      else if (key == "train.epochs") cfg.train_opts.epochs = std::stoi(value);
      else if (key == "train.lr") cfg.train_opts.lr = std::stod(value);
      else if (key == "train.lr_step") cfg.train_opts.lr_step = std::stoi(value);
      else if (key == "train.lr_gamma") cfg.train_opts.lr_gamma = std::stod(value);
      else if (key == "downstream.reg") cfg.downstream_reg = std::stod(value);
      else throw ConfigError("unknown key " + key);
    } catch (const std::invalid_argument&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  if (cfg.variants.empty()) cfg.variants = {LossVariant::Baseline, LossVariant::CafinFull};
  if (cfg.seeds.empty()) cfg.seeds = {1, 2, 3, 4, 5};
  return cfg;
}

void ExperimentConfig::apply_env_overrides() {
  if (const char* dir = std::getenv("CAFIN_OUT_DIR")) out_dir = dir;
  if (const char* w = std::getenv("CAFIN_WORKERS")) workers = std::max(1, std::atoi(w));
}

void ExperimentConfig::validate() const {
  if (edges_path.empty() || features_path.empty())
    throw ConfigError("config: dataset.edges and dataset.features are required");
  if (seeds.empty()) throw ConfigError("config: need at least one seed");
  sage.validate();
  loss.validate();
  const bool has_baseline =
      std::find(variants.begin(), variants.end(), LossVariant::Baseline) != variants.end();
  const bool has_other = std::any_of(variants.begin(), variants.end(),
                                     [](LossVariant v) { return v != LossVariant::Baseline; });
  if (has_other && !has_baseline)
    throw ConfigError("config: relative metrics (II/CA/T) require the baseline variant");
}

std::string ExperimentConfig::hash() const {
  std::ostringstream s;
  s << edges_path << '|' << features_path << '|' << labels_path << '|' << static_cast<int>(task)
    << '|' << static_cast<int>(oracle_mode) << '|' << landmarks << '|' << sage.num_layers << '|'
    << sage.hidden_dim << '|';
  for (int f : sage.fanouts) s << f << ',';
  s << '|' << loss.alpha << '|' << loss.k << '|' << loss.q << '|' << loss.min_neg_threshold << '|'
    << loss.walk_length << '|' << train_opts.epochs << '|' << train_opts.lr << '|'
    << train_opts.lr_step << '|' << train_opts.lr_gamma << '|' << downstream_reg;
  for (auto v : variants) s << '|' << variant_name(v);
  for (auto sd : seeds) s << '|' << sd;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

Eigen::MatrixXd embed_nodes(const SageParams& params, const Graph& g, const SageConfig& cfg,
                            Rng& rng) {
  const int n = g.node_count();
  Eigen::MatrixXd z(params.output_dim(), n);
  const FeatureCache features = FeatureCache::build(g.features);
  for (int v = 0; v < n; ++v) {
    const auto cg = sample_computation_graph(g, v, cfg, rng);
    z.col(v) = forward(params, cg, features);
  }
  return z;
}

namespace {

struct LoadedInputs {
  Graph graph;
  GroupAssignment groups;
  Eigen::VectorXd degrees;
  Eigen::VectorXi class_freq;
};

LoadedInputs load_inputs(const ExperimentConfig& cfg) {
  LoadedInputs in;
  in.graph = load_edge_list(cfg.edges_path, cfg.features_path, cfg.labels_path).graph;
  in.degrees = degree_centrality(in.graph);
  in.groups = median_group_split(in.degrees);
  if (in.graph.has_labels()) {
    const int classes = in.graph.class_count();
    in.class_freq = Eigen::VectorXi::Zero(classes);
    for (Eigen::Index i = 0; i < in.graph.labels.size(); ++i) in.class_freq[in.graph.labels[i]]++;
  }
  return in;
}

DistanceOracle build_oracle(const ExperimentConfig& cfg, const Graph& g, double* build_sec) {
  const auto t0 = std::chrono::steady_clock::now();
  DistanceOracle oracle =
      cfg.oracle_mode == DistanceOracle::Mode::Exact
          ? build_exact(g, cfg.workers, cfg.memory_budget_bytes)
          : build_landmark(g, std::min(cfg.landmarks, g.node_count()), 0x1a5dULL);
  *build_sec = seconds_since(t0);
  return oracle;
}

struct VariantRun {
  FairnessReport report;
  double train_sec = 0.0;
  std::vector<EpochStats> trace;
  SageParams params;
  // NC only: per-node (degree, correct) rows for the slope export
  std::vector<std::pair<double, int>> degree_correct;
};

double lp_overall_and_categories(const Eigen::MatrixXi& pred, const std::vector<EdgePair>& pos,
                                 const std::vector<EdgePair>& neg, const GroupAssignment& groups,
                                 double cat_acc[3]) {
  std::int64_t cat_hits[3] = {0, 0, 0};
  std::int64_t cat_count[3] = {0, 0, 0};
  std::int64_t hits = 0;
  const auto total = static_cast<std::int64_t>(pos.size() + neg.size());
  for (std::int64_t i = 0; i < total; ++i) {
    const bool is_pos = i < static_cast<std::int64_t>(pos.size());
    const EdgePair& e = is_pos ? pos[i] : neg[i - pos.size()];
    const int want = is_pos ? 1 : 0;
    const int cat = static_cast<int>(edge_group(e.u, e.v, groups));
    const int ok = pred(i, 0) == want ? 1 : 0;
    hits += ok;
    cat_hits[cat] += ok;
    cat_count[cat] += 1;
  }
  for (int c = 0; c < 3; ++c) {
    if (cat_count[c] == 0) {
      static const char* names[] = {"p-p", "p-up", "up-up"};
      throw UndefinedMetricError(std::string("link prediction: empty edge category ") + names[c]);
    }
    cat_acc[c] = static_cast<double>(cat_hits[c]) / cat_count[c];
  }
  return static_cast<double>(hits) / total;
}

VariantRun run_variant_lp(const ExperimentConfig& cfg, const LoadedInputs& in,
                          const DistanceOracle& oracle, const EdgeSplitBundle& bundle,
                          std::uint64_t seed, LossVariant variant) {
  VariantRun run;
  SageConfig sage = cfg.sage;
  sage.seed = seed;
  LossConfig lc = cfg.loss;
  lc.variant = variant;
  TrainOptions to = cfg.train_opts;
  to.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  auto trained = train(bundle.g1, OracleView{&oracle, nullptr}, sage, lc, to);
  run.train_sec = seconds_since(t0);
  run.trace = std::move(trained.trace);
  run.params = std::move(trained.params);

  Rng embed_rng(stream_seed(seed, kEmbedStream));
  const Eigen::MatrixXd z = embed_nodes(run.params, bundle.g1, cfg.sage, embed_rng);

  auto edge_matrix = [&](const std::vector<EdgePair>& pos, const std::vector<EdgePair>& neg) {
    Eigen::MatrixXd x(pos.size() + neg.size(), z.rows());
    Eigen::MatrixXi y(x.rows(), 1);
    Eigen::Index r = 0;
    for (const auto& e : pos) {
      x.row(r) = edge_feature(z.col(e.u), z.col(e.v)).transpose();
      y(r++, 0) = 1;
    }
    for (const auto& e : neg) {
      x.row(r) = edge_feature(z.col(e.u), z.col(e.v)).transpose();
      y(r++, 0) = 0;
    }
    return std::make_pair(x, y);
  };

  const auto [x2, y2] = edge_matrix(bundle.g2_pos, bundle.g2_neg);
  const auto clf = fit(x2, y2, ClassifierMode::Binary, cfg.downstream_reg);
  const auto [x3, y3] = edge_matrix(bundle.g3_pos, bundle.g3_neg);
  const auto pred = predict(clf, x3);

  double cat_acc[3];
  run.report.task = Task::LinkPrediction;
  run.report.overall_accuracy =
      lp_overall_and_categories(pred, bundle.g3_pos, bundle.g3_neg, in.groups, cat_acc);
  run.report.imparity = imparity_lp(cat_acc[0], cat_acc[1], cat_acc[2]);
  run.report.seed = seed;
  run.report.variant = variant_name(variant);
  run.report.triple_hash = trained.triple_hash;
  return run;
}

VariantRun run_variant_nc(const ExperimentConfig& cfg, const LoadedInputs& in,
                          const DistanceOracle& oracle, const NodeSplitBundle& bundle,
                          std::uint64_t seed, LossVariant variant) {
  VariantRun run;
  SageConfig sage = cfg.sage;
  sage.seed = seed;
  LossConfig lc = cfg.loss;
  lc.variant = variant;
  TrainOptions to = cfg.train_opts;
  to.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  auto trained = train(bundle.g1.graph, OracleView{&oracle, &bundle.g1.to_parent}, sage, lc, to);
  run.train_sec = seconds_since(t0);
  run.trace = std::move(trained.trace);
  run.params = std::move(trained.params);

  Rng embed_rng(stream_seed(seed, kEmbedStream));
  const Eigen::MatrixXd z2 = embed_nodes(run.params, bundle.g2.graph, cfg.sage, embed_rng);
  const Eigen::MatrixXd z3 = embed_nodes(run.params, bundle.g3.graph, cfg.sage, embed_rng);

  const int n3 = bundle.g3.graph.node_count();
  std::vector<Group> groups3(n3);
  for (int i = 0; i < n3; ++i) groups3[i] = in.groups.group[bundle.g3.to_parent[i]];

  run.report.task = Task::NodeClassification;
  run.report.seed = seed;
  run.report.variant = variant_name(variant);
  run.report.triple_hash = trained.triple_hash;

  Eigen::VectorXi correct(n3);
  if (in.graph.has_label_matrix()) {
    const auto clf = fit(z2.transpose(), bundle.g2.graph.label_matrix, ClassifierMode::OneVsRest,
                         cfg.downstream_reg);
    const auto pred = predict(clf, z3.transpose());
    const auto& truth = bundle.g3.graph.label_matrix;
    run.report.overall_accuracy =
        static_cast<double>((pred.array() == truth.array()).count()) / truth.size();
    run.report.imparity = imparity_nc_multilabel(pred, truth, groups3);
    for (int i = 0; i < n3; ++i) correct[i] = pred.row(i) == truth.row(i) ? 1 : 0;
  } else {
    const auto clf =
        fit(z2.transpose(), bundle.g2.graph.labels, ClassifierMode::Multinomial, cfg.downstream_reg);
    const auto pred = predict(clf, z3.transpose());
    const auto& truth = bundle.g3.graph.labels;
    for (int i = 0; i < n3; ++i) correct[i] = pred(i, 0) == truth[i] ? 1 : 0;
    run.report.overall_accuracy = correct.cast<double>().mean();
    run.report.imparity =
        imparity_nc(pred.col(0), truth, groups3, in.class_freq, in.graph.node_count());
  }

  Eigen::VectorXd deg3(n3);
  for (int i = 0; i < n3; ++i) deg3[i] = in.degrees[bundle.g3.to_parent[i]];
  try {
    run.report.slope = degree_accuracy_slope(correct, deg3);
  } catch (const UndefinedMetricError&) {
    // single distinct degree in g3; slope stays unset
  }
  run.degree_correct.reserve(n3);
  for (int i = 0; i < n3; ++i) run.degree_correct.emplace_back(deg3[i], correct[i]);
  return run;
}

void write_variant_artifacts(const fs::path& dir, const VariantRun& run) {
  fs::create_directories(dir);
  {
    FairnessReport sanitized = run.report;
    sanitized.t_seconds_per_point.reset();  // timings live in timing.json
    sanitized.t_inf = false;
    std::ofstream out(dir / "report.json");
    out << sanitized.to_json();
    if (!out) throw IoError("cannot write " + (dir / "report.json").string());
  }
  save_loss_trace(run.trace, (dir / "loss_trace.csv").string());
  run.params.save((dir / "checkpoint.bin").string());
  if (!run.degree_correct.empty()) {
    std::ofstream out(dir / "degree_accuracy.csv");
    out << "degree,correct\n";
    for (const auto& [deg, ok] : run.degree_correct) out << deg << "," << ok << "\n";
    if (!out) throw IoError("cannot write " + (dir / "degree_accuracy.csv").string());
  }
}

}  // namespace

void cmd_preprocess(const ExperimentConfig& cfg) {
  cfg.validate();
  const LoadedInputs in = load_inputs(cfg);
  fs::create_directories(cfg.out_dir);
  double build_sec = 0.0;
  const DistanceOracle oracle = build_oracle(cfg, in.graph, &build_sec);
  oracle.save(cfg.out_dir + "/oracle.bin");
  {
    std::ofstream out(cfg.out_dir + "/centrality.txt");
    for (Eigen::Index v = 0; v < in.degrees.size(); ++v) out << in.degrees[v] << "\n";
    if (!out) throw IoError("cannot write centrality.txt");
  }
  {
    std::ofstream out(cfg.out_dir + "/groups.txt");
    out << "# median " << in.groups.median << "\n";
    for (auto g : in.groups.group) out << (g == Group::Popular ? "P" : "U") << "\n";
    if (!out) throw IoError("cannot write groups.txt");
  }
  ordered_json j;
  j["oracle_mode"] = cfg.oracle_mode == DistanceOracle::Mode::Exact ? "exact" : "landmark";
  j["nodes"] = in.graph.node_count();
  j["landmarks"] = oracle.landmark_count();
  j["diameter"] = oracle.diameter();
  j["build_seconds"] = build_sec;
  std::ofstream out(cfg.out_dir + "/preprocess.json");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("cannot write preprocess.json");
}

RunOutput run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string cfg_hash = cfg.hash();
  const LoadedInputs in = load_inputs(cfg);
  fs::create_directories(cfg.out_dir);

  RunOutput out;
  DistanceOracle oracle;
  const fs::path oracle_path = fs::path(cfg.out_dir) / "oracle.bin";
  if (fs::exists(oracle_path)) {
    oracle = DistanceOracle::load(oracle_path.string());
    const fs::path pre = fs::path(cfg.out_dir) / "preprocess.json";
    if (fs::exists(pre)) {
      std::ifstream pin(pre);
      const auto j = nlohmann::json::parse(pin);
      out.t_preprocess_sec = j.value("build_seconds", 0.0);
    }
  } else {
    oracle = build_oracle(cfg, in.graph, &out.t_preprocess_sec);
  }

  // Baseline first so relative metrics can be computed in one pass.
  std::vector<LossVariant> ordered = cfg.variants;
  std::stable_partition(ordered.begin(), ordered.end(),
                        [](LossVariant v) { return v == LossVariant::Baseline; });

  std::map<std::string, std::vector<double>> train_deltas;
  for (const std::uint64_t seed : cfg.seeds) {
    const fs::path seed_dir = fs::path(cfg.out_dir) / ("seed_" + std::to_string(seed));
    try {
      std::map<std::string, VariantRun> runs;
      std::optional<EdgeSplitBundle> edge_bundle;
      std::optional<NodeSplitBundle> node_bundle;
      if (cfg.task == Task::LinkPrediction) {
        edge_bundle = edge_split(in.graph, stream_seed(seed, kSplitStream));
        fs::create_directories(seed_dir);
        save_edge_manifest(*edge_bundle, (seed_dir / "edge_manifest.txt").string());
      } else {
        node_bundle = node_split(in.graph, stream_seed(seed, kSplitStream));
        fs::create_directories(seed_dir);
        save_node_manifest(*node_bundle, (seed_dir / "node_manifest.txt").string());
      }

      const VariantRun* baseline = nullptr;
      for (const LossVariant variant : ordered) {
        VariantRun run = cfg.task == Task::LinkPrediction
                             ? run_variant_lp(cfg, in, oracle, *edge_bundle, seed, variant)
                             : run_variant_nc(cfg, in, oracle, *node_bundle, seed, variant);
        run.report.config_hash = cfg_hash;
        if (variant == LossVariant::Baseline) {
          runs[run.report.variant] = std::move(run);
          baseline = &runs[variant_name(variant)];
          continue;
        }
        if (baseline) {
          if (run.report.triple_hash != baseline->report.triple_hash) {
            throw TrainingError("paired-run invariant broken: triple sequences diverged");
          }
          if (baseline->report.imparity > 0.0) {
            run.report.ii_percent =
                improvement_in_imparity(baseline->report.imparity, run.report.imparity);
          }
          run.report.ca_points =
              change_in_accuracy(run.report.overall_accuracy, baseline->report.overall_accuracy);
          train_deltas[run.report.variant].push_back(
              std::max(0.0, run.train_sec - baseline->train_sec));
        }
        runs[run.report.variant] = std::move(run);
      }
      for (const auto& [name, run] : runs) {
        write_variant_artifacts(seed_dir / name, run);
        out.reports[seed][name] = run.report;
      }
    } catch (const Error& e) {
      out.failures.emplace_back(seed, e.what());
    }
  }

  // Aggregates across the seeds that succeeded.
  for (const LossVariant variant : ordered) {
    const std::string name = variant_name(variant);
    VariantAggregate agg;
    agg.variant = name;
    std::vector<double> iis;
    double ca_sum = 0.0;
    int ca_count = 0;
    for (const auto& [seed, by_variant] : out.reports) {
      const auto it = by_variant.find(name);
      if (it == by_variant.end()) continue;
      agg.seeds_evaluated++;
      agg.mean_imparity += it->second.imparity;
      agg.mean_accuracy += it->second.overall_accuracy;
      if (it->second.ii_percent) {
        iis.push_back(*it->second.ii_percent);
        if (*it->second.ii_percent > 0.0) agg.seeds_positive_ii++;
      }
      if (it->second.ca_points) {
        ca_sum += *it->second.ca_points;
        ca_count++;
      }
    }
    if (agg.seeds_evaluated == 0) continue;
    agg.mean_imparity /= agg.seeds_evaluated;
    agg.mean_accuracy /= agg.seeds_evaluated;
    if (!iis.empty()) {
      double m = 0.0;
      for (double v : iis) m += v;
      agg.mean_ii = m / static_cast<double>(iis.size());
      if (iis.size() >= 2 && *agg.mean_ii != 0.0) {
        agg.cv_of_ii = coefficient_of_variance(iis);
      }
    }
    if (ca_count > 0) agg.mean_ca = ca_sum / ca_count;
    out.aggregates.push_back(agg);

    if (variant != LossVariant::Baseline && agg.mean_ii) {
      const auto& deltas = train_deltas[name];
      double mean_delta = 0.0;
      for (double d : deltas) mean_delta += d;
      if (!deltas.empty()) mean_delta /= static_cast<double>(deltas.size());
      out.mean_train_delta_sec[name] = mean_delta;
      out.t_per_variant[name] = t_overhead(out.t_preprocess_sec, mean_delta, *agg.mean_ii);
    }
  }

  // Deterministic aggregate files; wall-clock times go to timing.json.
  {
    ordered_json j;
    j["task"] = cfg.task == Task::NodeClassification ? "nc" : "lp";
    j["config_hash"] = cfg_hash;
    ordered_json rows = ordered_json::array();
    for (const auto& agg : out.aggregates) {
      ordered_json r;
      r["variant"] = agg.variant;
      r["mean_imparity"] = agg.mean_imparity;
      r["mean_accuracy"] = agg.mean_accuracy;
      r["mean_ii_percent"] = agg.mean_ii ? ordered_json(*agg.mean_ii) : ordered_json(nullptr);
      r["cv_of_ii_percent"] = agg.cv_of_ii ? ordered_json(*agg.cv_of_ii) : ordered_json(nullptr);
      r["mean_ca_points"] = agg.mean_ca ? ordered_json(*agg.mean_ca) : ordered_json(nullptr);
      r["seeds_positive_ii"] = agg.seeds_positive_ii;
      r["seeds_evaluated"] = agg.seeds_evaluated;
      rows.push_back(r);
    }
    j["variants"] = rows;
    std::ofstream f(cfg.out_dir + "/aggregate.json");
    f << j.dump(2) << "\n";
    if (!f) throw IoError("cannot write aggregate.json");
  }
  {
    std::ofstream f(cfg.out_dir + "/aggregate.csv");
    f.precision(17);
    f << "variant,mean_imparity,mean_accuracy,mean_ii_percent,cv_of_ii_percent,mean_ca_points,"
         "seeds_positive_ii,seeds_evaluated\n";
    for (const auto& agg : out.aggregates) {
      f << agg.variant << "," << agg.mean_imparity << "," << agg.mean_accuracy << ",";
      if (agg.mean_ii) f << *agg.mean_ii;
      f << ",";
      if (agg.cv_of_ii) f << *agg.cv_of_ii;
      f << ",";
      if (agg.mean_ca) f << *agg.mean_ca;
      f << "," << agg.seeds_positive_ii << "," << agg.seeds_evaluated << "\n";
    }
    if (!f) throw IoError("cannot write aggregate.csv");
  }
  {
    ordered_json j;
    j["t_preprocess_seconds"] = out.t_preprocess_sec;
    for (const auto& [name, delta] : out.mean_train_delta_sec) {
      j["variants"][name]["mean_train_delta_seconds"] = delta;
      const auto& t = out.t_per_variant[name];
      j["variants"][name]["t_seconds_per_point"] = t ? ordered_json(*t) : ordered_json("INF");
    }
    std::ofstream f(cfg.out_dir + "/timing.json");
    f << j.dump(2) << "\n";
    if (!f) throw IoError("cannot write timing.json");
  }
  if (!out.failures.empty()) {
    std::ofstream f(cfg.out_dir + "/failures.csv");
    f << "seed,error\n";
    for (const auto& [seed, msg] : out.failures) {
      std::string clean = msg;
      std::replace(clean.begin(), clean.end(), ',', ';');
      f << seed << "," << clean << "\n";
    }
  }
  return out;
}

void cmd_report(const std::string& run_dir, std::ostream& os) {
  const fs::path dir(run_dir);
  const fs::path agg_path = dir / "aggregate.json";
  if (!fs::exists(agg_path)) {
    throw IoError("report: missing artifacts in " + run_dir +
                  " (expected aggregate.json, aggregate.csv, timing.json, seed_*/ directories)");
  }
  std::ifstream in(agg_path);
  const auto agg = nlohmann::json::parse(in);
  nlohmann::json timing;
  if (fs::exists(dir / "timing.json")) {
    std::ifstream tin(dir / "timing.json");
    timing = nlohmann::json::parse(tin);
  }

  os << "task: " << agg.value("task", "?") << "  config: " << agg.value("config_hash", "?")
     << "\n";
  os << std::left << std::setw(12) << "variant" << std::right << std::setw(12) << "imparity"
     << std::setw(12) << "accuracy" << std::setw(12) << "II%" << std::setw(12) << "CV%"
     << std::setw(12) << "CA" << std::setw(12) << "T" << "\n";
  auto cell = [](const nlohmann::json& v) -> std::string {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << v.get<double>();
    return s.str();
  };
  for (const auto& row : agg["variants"]) {
    const std::string name = row["variant"];
    std::string t = "-";
    if (timing.contains("variants") && timing["variants"].contains(name)) {
      t = cell(timing["variants"][name]["t_seconds_per_point"]);
    }
    os << std::left << std::setw(12) << name << std::right << std::setw(12)
       << cell(row["mean_imparity"]) << std::setw(12) << cell(row["mean_accuracy"])
       << std::setw(12) << cell(row["mean_ii_percent"]) << std::setw(12)
       << cell(row["cv_of_ii_percent"]) << std::setw(12) << cell(row["mean_ca_points"])
       << std::setw(12) << t << "\n";
  }

  // Per-degree accuracy export: mean accuracy per (variant, degree) over
  // all seeds, for external slope plots.
  std::map<std::string, std::map<double, std::pair<std::int64_t, std::int64_t>>> buckets;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().filename() == "degree_accuracy.csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const std::string variant = f.parent_path().filename().string();
    std::ifstream fin(f);
    std::string line;
    std::getline(fin, line);  // header
    while (std::getline(fin, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      const double deg = std::stod(line.substr(0, comma));
      const int ok = std::stoi(line.substr(comma + 1));
      auto& b = buckets[variant][deg];
      b.first += ok;
      b.second += 1;
    }
  }
  if (!buckets.empty()) {
    std::ofstream f(dir / "per_degree_accuracy.csv");
    f.precision(17);
    f << "variant,degree,accuracy,count\n";
    for (const auto& [variant, per_degree] : buckets) {
      for (const auto& [deg, b] : per_degree) {
        f << variant << "," << deg << "," << (static_cast<double>(b.first) / b.second) << ","
          << b.second << "\n";
      }
    }
    if (!f) throw IoError("cannot write per_degree_accuracy.csv");
    os << "per-degree accuracy written to " << (dir / "per_degree_accuracy.csv").string() << "\n";
  }
}

}  // namespace cafin
