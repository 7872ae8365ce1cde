#include "cafin/metrics.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "cafin/error.hpp"
#include "json.hpp"

namespace cafin {

double imparity_nc(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth,
                   const std::vector<Group>& groups, const Eigen::VectorXi& class_freq,
                   std::int64_t total_nodes, int* skipped_classes) {
  const auto n = truth.size();
  if (pred.size() != n || static_cast<Eigen::Index>(groups.size()) != n)
    throw ArgumentError("imparity_nc: misaligned inputs");
  const int classes = static_cast<int>(class_freq.size());
  int skipped = 0;
  int usable = 0;
  double total = 0.0;
  for (int c = 0; c < classes; ++c) {
    std::int64_t count[2] = {0, 0};
    std::int64_t hits[2] = {0, 0};
    for (Eigen::Index i = 0; i < n; ++i) {
      if (truth[i] != c) continue;
      const int g = groups[i] == Group::Popular ? 0 : 1;
      count[g]++;
      if (pred[i] == c) hits[g]++;
    }
    if (count[0] == 0 || count[1] == 0) {
      ++skipped;
      continue;
    }
    ++usable;
    const double a1 = static_cast<double>(hits[0]) / count[0];
    const double a2 = static_cast<double>(hits[1]) / count[1];
    total += (static_cast<double>(class_freq[c]) / total_nodes) * std::abs(a1 - a2);
  }
  if (usable == 0) throw UndefinedMetricError("imparity_nc: no class present in both groups");
  if (skipped_classes) *skipped_classes = skipped;
  return total;
}

namespace {

double macro_f1(const Eigen::MatrixXi& pred, const Eigen::MatrixXi& truth,
                const std::vector<char>& mask) {
  const int classes = static_cast<int>(truth.cols());
  double sum = 0.0;
  for (int c = 0; c < classes; ++c) {
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (Eigen::Index i = 0; i < truth.rows(); ++i) {
      if (!mask[i]) continue;
      const bool t = truth(i, c) != 0;
      const bool p = pred(i, c) != 0;
      if (p && t) ++tp;
      else if (p) ++fp;
      else if (t) ++fn;
    }
    const double denom = 2.0 * tp + fp + fn;
    sum += denom == 0.0 ? 0.0 : 2.0 * tp / denom;  // 0/0 := 0
  }
  return sum / classes;
}

}  // namespace

double imparity_nc_multilabel(const Eigen::MatrixXi& pred, const Eigen::MatrixXi& truth,
                              const std::vector<Group>& groups) {
  if (pred.rows() != truth.rows() || pred.cols() != truth.cols() ||
      static_cast<Eigen::Index>(groups.size()) != truth.rows())
    throw ArgumentError("imparity_nc_multilabel: misaligned inputs");
  std::vector<char> popular(groups.size()), unpopular(groups.size());
  std::int64_t pop_count = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    popular[i] = groups[i] == Group::Popular;
    unpopular[i] = !popular[i];
    pop_count += popular[i];
  }
  if (pop_count == 0 || pop_count == static_cast<std::int64_t>(groups.size()))
    throw UndefinedMetricError("imparity_nc_multilabel: a group is empty");
  return std::abs(macro_f1(pred, truth, popular) - macro_f1(pred, truth, unpopular));
}

double imparity_lp(double acc_pp, double acc_pup, double acc_upup) {
  const double mu = (acc_pp + acc_pup + acc_upup) / 3.0;
  const double var = ((acc_pp - mu) * (acc_pp - mu) + (acc_pup - mu) * (acc_pup - mu) +
                      (acc_upup - mu) * (acc_upup - mu)) /
                     3.0;
  return std::sqrt(var);
}

EdgeCategory edge_group(int u, int v, const GroupAssignment& groups) {
  const int popular = (groups.popular(u) ? 1 : 0) + (groups.popular(v) ? 1 : 0);
  switch (popular) {
    case 2: return EdgeCategory::PP;
    case 1: return EdgeCategory::PUP;
    default: return EdgeCategory::UPUP;
  }
}

double improvement_in_imparity(double i_original, double i_current) {
  if (i_original <= 0.0)
    throw UndefinedMetricError("improvement_in_imparity: original imparity must be positive");
  return (i_original - i_current) / i_original * 100.0;
}

double change_in_accuracy(double acc_current, double acc_original) {
  return (acc_current - acc_original) * 100.0;
}

double coefficient_of_variance(std::span<const double> samples) {
  if (samples.size() < 2)
    throw ArgumentError("coefficient_of_variance: need at least two samples");
  double mu = 0.0;
  for (double s : samples) mu += s;
  mu /= static_cast<double>(samples.size());
  if (mu == 0.0) throw UndefinedMetricError("coefficient_of_variance: zero mean");
  double var = 0.0;
  for (double s : samples) var += (s - mu) * (s - mu);
  var /= static_cast<double>(samples.size());
  return std::sqrt(var) / std::abs(mu) * 100.0;
}

std::optional<double> t_overhead(double t_preprocess_sec, double t_train_delta_sec,
                                 double ii_percent) {
  if (t_preprocess_sec < 0.0 || t_train_delta_sec < 0.0)
    throw ArgumentError("t_overhead: times must be non-negative");
  if (ii_percent <= 0.0) return std::nullopt;  // INF
  return (t_preprocess_sec + t_train_delta_sec) / ii_percent;
}

double degree_accuracy_slope(const Eigen::VectorXi& correct, const Eigen::VectorXd& degrees) {
  if (correct.size() != degrees.size() || correct.size() == 0)
    throw ArgumentError("degree_accuracy_slope: misaligned inputs");
  std::map<double, std::pair<std::int64_t, std::int64_t>> buckets;  // degree -> (hits, count)
  for (Eigen::Index i = 0; i < correct.size(); ++i) {
    auto& b = buckets[degrees[i]];
    b.first += correct[i] != 0 ? 1 : 0;
    b.second += 1;
  }
  if (buckets.size() < 2)
    throw UndefinedMetricError("degree_accuracy_slope: need at least two distinct degrees");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(buckets.size());
  for (const auto& [deg, b] : buckets) {
    const double acc = static_cast<double>(b.first) / b.second;
    sx += deg;
    sy += acc;
    sxx += deg * deg;
    sxy += deg * acc;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string FairnessReport::to_json() const {
  nlohmann::ordered_json j;
  j["task"] = task == Task::NodeClassification ? "nc" : "lp";
  j["variant"] = variant;
  j["seed"] = seed;
  j["imparity"] = imparity;
  j["overall_accuracy"] = overall_accuracy;
  auto put_opt = [&j](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  put_opt("ii_percent", ii_percent);
  put_opt("ca_points", ca_points);
  put_opt("cv_percent", cv_percent);
  if (t_inf) j["t_seconds_per_point"] = "INF";
  else put_opt("t_seconds_per_point", t_seconds_per_point);
  put_opt("slope", slope);
  j["config_hash"] = config_hash;
  j["triple_hash"] = triple_hash;
  return j.dump(2) + "\n";
}

std::string FairnessReport::csv_header() {
  return "task,variant,seed,imparity,overall_accuracy,ii_percent,ca_points,slope,config_hash,"
         "triple_hash";
}

std::string FairnessReport::csv_row() const {
  std::ostringstream out;
  out.precision(17);
  out << (task == Task::NodeClassification ? "nc" : "lp") << "," << variant << "," << seed << ","
      << imparity << "," << overall_accuracy << ",";
  if (ii_percent) out << *ii_percent;
  out << ",";
  if (ca_points) out << *ca_points;
  out << ",";
  if (slope) out << *slope;
  out << "," << config_hash << "," << triple_hash;
  return out.str();
}

}  // namespace cafin
