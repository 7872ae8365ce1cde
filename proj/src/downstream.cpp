#include "cafin/downstream.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cafin/error.hpp"

namespace cafin {

Eigen::VectorXd edge_feature(const Eigen::VectorXd& z_u, const Eigen::VectorXd& z_v) {
  if (z_u.size() != z_v.size()) throw ArgumentError("edge_feature: dimension mismatch");
  return z_u.cwiseProduct(z_v);
}

Eigen::MatrixXd LinearClassifier::scores(const Eigen::MatrixXd& x) const {
  if (x.cols() != weights.cols()) throw ArgumentError("classifier: feature dimension mismatch");
  return (x * weights.transpose()).rowwise() + bias.transpose();
}

namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& s) {
  return s.unaryExpr([](double v) {
    return v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  });
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& s) {
  Eigen::MatrixXd p = s;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double m = p.row(i).maxCoeff();
    p.row(i) = (p.row(i).array() - m).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

// Binary target matrix for the given mode.
Eigen::MatrixXd targets(const Eigen::MatrixXi& y, ClassifierMode mode, int classes) {
  const int n = static_cast<int>(y.rows());
  if (mode == ClassifierMode::OneVsRest) return y.cast<double>();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, classes);
  if (mode == ClassifierMode::Binary) {
    for (int i = 0; i < n; ++i) t(i, 0) = y(i, 0) != 0 ? 1.0 : 0.0;
  } else {
    for (int i = 0; i < n; ++i) t(i, y(i, 0)) = 1.0;
  }
  return t;
}

struct GradResult {
  Eigen::MatrixXd dW;
  Eigen::VectorXd db;
  double norm() const { return std::sqrt(dW.squaredNorm() + db.squaredNorm()); }
};

GradResult gradient(const LinearClassifier& c, const Eigen::MatrixXd& x, const Eigen::MatrixXd& t) {
  const double n = static_cast<double>(x.rows());
  const Eigen::MatrixXd s = c.scores(x);
  const Eigen::MatrixXd p =
      c.mode == ClassifierMode::Multinomial ? softmax_rows(s) : sigmoid(s);
  const Eigen::MatrixXd r = (p - t) / n;  // n x classes
  GradResult g;
  g.dW = r.transpose() * x + c.reg * c.weights;
  g.db = r.colwise().sum().transpose();
  return g;
}

}  // namespace

LinearClassifier fit(const Eigen::MatrixXd& x, const Eigen::MatrixXi& y, ClassifierMode mode,
                     double reg) {
  const int n = static_cast<int>(x.rows());
  if (n == 0 || y.rows() != n) throw ArgumentError("fit: rows(X) != len(y)");

  int classes = 0;
  if (mode == ClassifierMode::Binary) {
    classes = 1;
    std::set<int> distinct(y.data(), y.data() + y.size());
    if (distinct.size() < 2) throw DegenerateDataError("fit: single-class input");
  } else if (mode == ClassifierMode::Multinomial) {
    std::set<int> distinct(y.data(), y.data() + y.size());
    if (distinct.size() < 2) throw DegenerateDataError("fit: single-class input");
    classes = y.maxCoeff() + 1;
  } else {
    classes = static_cast<int>(y.cols());
    if (classes < 2) throw DegenerateDataError("fit: need at least two classes");
  }

  LinearClassifier c;
  c.mode = mode;
  c.reg = reg;
  c.weights = Eigen::MatrixXd::Zero(classes, x.cols());
  c.bias = Eigen::VectorXd::Zero(classes);

  // Step from a Lipschitz bound on the augmented design matrix [X | 1].
  Eigen::MatrixXd gram(x.cols() + 1, x.cols() + 1);
  gram.topLeftCorner(x.cols(), x.cols()) = x.transpose() * x;
  gram.topRightCorner(x.cols(), 1) = x.colwise().sum().transpose();
  gram.bottomLeftCorner(1, x.cols()) = x.colwise().sum();
  gram(x.cols(), x.cols()) = static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double smax2 = std::max(eig.eigenvalues().maxCoeff(), 1e-12);
  const double curvature = mode == ClassifierMode::Multinomial ? 0.5 : 0.25;
  const double lipschitz = curvature * smax2 / n + reg;
  const double step = 1.0 / lipschitz;

  // Nesterov momentum for the reg-strongly-convex objective.
  const double mu = std::max(reg, 1e-12);
  const double beta =
      (std::sqrt(lipschitz) - std::sqrt(mu)) / (std::sqrt(lipschitz) + std::sqrt(mu));

  const Eigen::MatrixXd t = targets(y, mode, classes);
  constexpr int kMaxIter = 5000;
  constexpr double kTol = 1e-6;
  LinearClassifier look = c;
  for (int it = 0; it < kMaxIter; ++it) {
    const auto g = gradient(look, x, t);
    const Eigen::MatrixXd w_next = look.weights - step * g.dW;
    const Eigen::VectorXd b_next = look.bias - step * g.db;
    look.weights = w_next + beta * (w_next - c.weights);
    look.bias = b_next + beta * (b_next - c.bias);
    c.weights = w_next;
    c.bias = b_next;
    if (gradient(c, x, t).norm() < kTol) break;
  }
  return c;
}

Eigen::MatrixXi predict(const LinearClassifier& c, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd s = c.scores(x);
  const int n = static_cast<int>(s.rows());
  if (c.mode == ClassifierMode::Multinomial) {
    Eigen::MatrixXi out(n, 1);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      for (int j = 1; j < s.cols(); ++j) {
        if (s(i, j) > s(i, best)) best = j;  // ties stay at the lower id
      }
      out(i, 0) = best;
    }
    return out;
  }
  if (c.mode == ClassifierMode::Binary) {
    Eigen::MatrixXi out(n, 1);
    for (int i = 0; i < n; ++i) out(i, 0) = s(i, 0) >= 0.0 ? 1 : 0;  // sigmoid >= 0.5
    return out;
  }
  Eigen::MatrixXi out(n, static_cast<int>(s.cols()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < s.cols(); ++j) out(i, j) = s(i, j) >= 0.0 ? 1 : 0;
  }
  return out;
}

double gradient_norm(const LinearClassifier& c, const Eigen::MatrixXd& x,
                     const Eigen::MatrixXi& y) {
  const int classes = static_cast<int>(c.weights.rows());
  return gradient(c, x, targets(y, c.mode, classes)).norm();
}

}  // namespace cafin
