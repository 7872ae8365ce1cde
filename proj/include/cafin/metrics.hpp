#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "cafin/graph.hpp"

namespace cafin {

enum class Task : std::uint8_t { NodeClassification, LinkPrediction };

/// Per-run experiment output: the imparity and its companion cost metrics.
struct FairnessReport {
  Task task = Task::LinkPrediction;
  double imparity = 0.0;
  double overall_accuracy = 0.0;
  std::optional<double> ii_percent;
  std::optional<double> ca_points;
  std::optional<double> cv_percent;
  std::optional<double> t_seconds_per_point;  // unset + t_inf -> INF
  bool t_inf = false;
  std::optional<double> slope;
  std::uint64_t seed = 0;
  std::string variant;
  std::string config_hash;
  std::uint64_t triple_hash = 0;

  std::string to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Weighted per-class accuracy gap between popularity groups:
/// sum_c (f_c/|V|) |a1_c - a2_c|. Classes absent from one group contribute
/// 0 (counted in *skipped_classes when given).
double imparity_nc(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth,
                   const std::vector<Group>& groups, const Eigen::VectorXi& class_freq,
                   std::int64_t total_nodes, int* skipped_classes = nullptr);

/// |macroF1(popular) - macroF1(unpopular)| over binary label matrices,
/// with 0/0 per-class F1 read as 0.
double imparity_nc_multilabel(const Eigen::MatrixXi& pred, const Eigen::MatrixXi& truth,
                              const std::vector<Group>& groups);

/// Population standard deviation of the three edge-category accuracies.
double imparity_lp(double acc_pp, double acc_pup, double acc_upup);

enum class EdgeCategory : std::uint8_t { PP, PUP, UPUP };

EdgeCategory edge_group(int u, int v, const GroupAssignment& groups);

/// Percentage decrease in imparity relative to the original.
double improvement_in_imparity(double i_original, double i_current);

/// Accuracy change in percentage points.
double change_in_accuracy(double acc_current, double acc_original);

/// Population coefficient of variance, percent.
double coefficient_of_variance(std::span<const double> samples);

/// (t_preprocess + t_train_delta) / II; nullopt encodes INF (II <= 0).
std::optional<double> t_overhead(double t_preprocess_sec, double t_train_delta_sec,
                                 double ii_percent);

/// OLS slope of mean accuracy per distinct-degree bucket against degree.
double degree_accuracy_slope(const Eigen::VectorXi& correct, const Eigen::VectorXd& degrees);

}  // namespace cafin
