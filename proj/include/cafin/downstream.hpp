#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace cafin {

enum class ClassifierMode : std::uint8_t { Multinomial, OneVsRest, Binary };

/// L2-regularized logistic regression in three flavors: softmax
/// (single-label multiclass), independent per-class sigmoids (multi-label)
/// and plain binary.
struct LinearClassifier {
  Eigen::MatrixXd weights;  // classes x dim (1 x dim for Binary)
  Eigen::VectorXd bias;
  ClassifierMode mode = ClassifierMode::Binary;
  double reg = 1e-4;

  Eigen::MatrixXd scores(const Eigen::MatrixXd& x) const;  // n x classes logits
};

/// Symmetric Hadamard edge operator.
Eigen::VectorXd edge_feature(const Eigen::VectorXd& z_u, const Eigen::VectorXd& z_v);

/// Deterministic full-batch gradient descent (step 1/L from a Lipschitz
/// bound) to gradient norm 1e-6 or 5000 iterations. y is n x 1 class ids
/// for Multinomial/Binary, or an n x c binary matrix for OneVsRest.
LinearClassifier fit(const Eigen::MatrixXd& x, const Eigen::MatrixXi& y, ClassifierMode mode,
                     double reg = 1e-4);

/// Multinomial: argmax with ties toward the lower class id. Binary:
/// sigmoid >= 0.5 -> 1 (inclusive). OneVsRest: per-class 0.5 threshold,
/// one column per class.
Eigen::MatrixXi predict(const LinearClassifier& c, const Eigen::MatrixXd& x);

/// Norm of the regularized log-likelihood gradient at the fitted point.
double gradient_norm(const LinearClassifier& c, const Eigen::MatrixXd& x, const Eigen::MatrixXi& y);

}  // namespace cafin
