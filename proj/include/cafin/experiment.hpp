#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cafin/distance.hpp"
#include "cafin/encoder.hpp"
#include "cafin/graph.hpp"
#include "cafin/loss.hpp"
#include "cafin/metrics.hpp"

namespace cafin {

/// Full experiment description: dataset paths, task, oracle mode, variant
/// set, seeds and every hyperparameter. Parsed from a sectioned key=value
/// config file; CAFIN_OUT_DIR and CAFIN_WORKERS env vars override the
/// output directory and worker count.
struct ExperimentConfig {
  std::string edges_path, features_path, labels_path;
  Task task = Task::LinkPrediction;
  DistanceOracle::Mode oracle_mode = DistanceOracle::Mode::Exact;
  int landmarks = 100;
  std::vector<LossVariant> variants{LossVariant::Baseline, LossVariant::CafinFull};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  SageConfig sage;
  LossConfig loss;
  TrainOptions train_opts;
  double downstream_reg = 1e-4;
  std::string out_dir = "runs/out";
  int workers = 1;
  std::size_t memory_budget_bytes = std::size_t{2} << 30;

  static ExperimentConfig from_file(const std::string& path);
  void apply_env_overrides();
  void validate() const;
  std::string hash() const;
};

struct VariantAggregate {
  std::string variant;
  double mean_imparity = 0.0;
  double mean_accuracy = 0.0;
  std::optional<double> mean_ii;
  std::optional<double> cv_of_ii;
  std::optional<double> mean_ca;
  int seeds_positive_ii = 0;
  int seeds_evaluated = 0;
};

struct RunOutput {
  // reports[seed][variant]
  std::map<std::uint64_t, std::map<std::string, FairnessReport>> reports;
  std::vector<VariantAggregate> aggregates;
  std::vector<std::pair<std::uint64_t, std::string>> failures;  // (seed, message)
  double t_preprocess_sec = 0.0;
  std::map<std::string, double> mean_train_delta_sec;          // variant -> t_t
  std::map<std::string, std::optional<double>> t_per_variant;  // nullopt = INF
};

/// Builds (and times) the distance oracle plus the centrality/group
/// manifest under out_dir.
void cmd_preprocess(const ExperimentConfig& cfg);

/// The full pipeline: per seed, split -> paired training of every variant
/// -> downstream evaluation -> metrics; aggregates across seeds and
/// writes deterministic reports (timings go to a separate timing.json).
/// Returns the structured results; failed seeds are recorded and skipped.
RunOutput run_experiment(const ExperimentConfig& cfg);

/// Renders the aggregate table for a completed run directory and exports
/// the per-degree accuracy CSV for slope plots.
void cmd_report(const std::string& run_dir, std::ostream& out);

/// Embed every node of `g` with the trained encoder; column v is node v.
Eigen::MatrixXd embed_nodes(const SageParams& params, const Graph& g, const SageConfig& cfg,
                            Rng& rng);

}  // namespace cafin
