#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "cafin/downstream.hpp"
#include "cafin/error.hpp"
#include "cafin/rng.hpp"
#include "doctest.h"

using namespace cafin;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("edge_feature") {
  CHECK(edge_feature(vec2(1, 1), vec2(1, 1)) == vec2(1, 1));
  CHECK(edge_feature(vec2(1, 2), vec2(3, -1)) == vec2(3, -2));
  CHECK(edge_feature(vec2(0.5, -2), vec2(4, 3)) == edge_feature(vec2(4, 3), vec2(0.5, -2)));
  Eigen::VectorXd wrong(3);
  CHECK_THROWS_AS(edge_feature(vec2(1, 1), wrong), ArgumentError);
}

TEST_CASE("binary fit: separable toy reaches accuracy 1 with a certified optimum") {
  Rng rng(1);
  const int n = 40;
  Eigen::MatrixXd x(n, 2);
  Eigen::MatrixXi y(n, 1);
  for (int i = 0; i < n; ++i) {
    const int cls = i % 2;
    x(i, 0) = (cls ? 2.0 : -2.0) + 0.3 * (2.0 * rng.uniform() - 1.0);
    x(i, 1) = 2.0 * rng.uniform() - 1.0;
    y(i, 0) = cls;
  }
  const auto c = fit(x, y, ClassifierMode::Binary, 1e-4);
  const auto pred = predict(c, x);
  CHECK((pred.array() == y.array()).all());
  CHECK(gradient_norm(c, x, y) < 1e-6);
}

TEST_CASE("multinomial fit: 3-class separable toy") {
  Rng rng(2);
  const int n = 60;
  Eigen::MatrixXd x(n, 2);
  Eigen::MatrixXi y(n, 1);
  const double cx[3] = {0.0, 4.0, -4.0};
  const double cy[3] = {4.0, -3.0, -3.0};
  for (int i = 0; i < n; ++i) {
    const int cls = i % 3;
    x(i, 0) = cx[cls] + 0.4 * (2.0 * rng.uniform() - 1.0);
    x(i, 1) = cy[cls] + 0.4 * (2.0 * rng.uniform() - 1.0);
    y(i, 0) = cls;
  }
  const auto c = fit(x, y, ClassifierMode::Multinomial, 1e-4);
  const auto pred = predict(c, x);
  CHECK((pred.array() == y.array()).all());
  CHECK(gradient_norm(c, x, y) < 1e-6);
}

TEST_CASE("fit is invariant to row duplication") {
  Rng rng(3);
  const int n = 20;
  Eigen::MatrixXd x(n, 2);
  Eigen::MatrixXi y(n, 1);
  for (int i = 0; i < n; ++i) {
    const int cls = i % 2;
    x(i, 0) = (cls ? 1.5 : -1.5) + 0.5 * (2.0 * rng.uniform() - 1.0);
    x(i, 1) = 2.0 * rng.uniform() - 1.0;
    y(i, 0) = cls;
  }
  Eigen::MatrixXd x2(2 * n, 2);
  Eigen::MatrixXi y2(2 * n, 1);
  x2 << x, x;
  y2 << y, y;
  const auto a = fit(x, y, ClassifierMode::Binary, 1e-4);
  const auto b = fit(x2, y2, ClassifierMode::Binary, 1e-4);
  CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() < 1e-4);
  CHECK((a.bias - b.bias).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("fit rejects degenerate labels") {
  Eigen::MatrixXd x(4, 2);
  x.setRandom();
  Eigen::MatrixXi y = Eigen::MatrixXi::Zero(4, 1);
  CHECK_THROWS_AS(fit(x, y, ClassifierMode::Binary, 1e-4), DegenerateDataError);
  CHECK_THROWS_AS(fit(x, y, ClassifierMode::Multinomial, 1e-4), DegenerateDataError);
  Eigen::MatrixXi single_col = Eigen::MatrixXi::Ones(4, 1);
  CHECK_THROWS_AS(fit(x, single_col, ClassifierMode::OneVsRest, 1e-4), DegenerateDataError);
}

TEST_CASE("predict tie and threshold rules") {
  LinearClassifier c;
  c.mode = ClassifierMode::Multinomial;
  c.weights = Eigen::MatrixXd::Zero(3, 2);
  c.bias = Eigen::VectorXd::Zero(3);
  Eigen::MatrixXd x(1, 2);
  x << 1.0, -1.0;
  CHECK(predict(c, x)(0, 0) == 0);  // all-tied scores -> lowest class id

  c.mode = ClassifierMode::Binary;
  c.weights = Eigen::MatrixXd::Zero(1, 2);
  c.bias = Eigen::VectorXd::Zero(1);
  CHECK(predict(c, x)(0, 0) == 1);  // sigmoid(0) = 0.5, threshold inclusive
}

TEST_CASE("one-vs-rest multi-label fit and predict") {
  Rng rng(4);
  const int n = 50;
  Eigen::MatrixXd x(n, 2);
  Eigen::MatrixXi y(n, 2);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = 2.0 * rng.uniform() - 1.0;
    x(i, 1) = 2.0 * rng.uniform() - 1.0;
    y(i, 0) = x(i, 0) > 0 ? 1 : 0;
    y(i, 1) = x(i, 1) > 0 ? 1 : 0;
  }
  const auto c = fit(x, y, ClassifierMode::OneVsRest, 1e-4);
  const auto pred = predict(c, x);
  CHECK(pred.rows() == n);
  CHECK(pred.cols() == 2);
  const double agree =
      static_cast<double>((pred.array() == y.array()).count()) / static_cast<double>(y.size());
  CHECK(agree > 0.9);
}

TEST_CASE("predict is invariant to positive rescaling of all scores") {
  Rng rng(5);
  LinearClassifier c;
  c.mode = ClassifierMode::Multinomial;
  c.weights = Eigen::MatrixXd::Random(3, 4);
  c.bias = Eigen::VectorXd::Random(3);
  LinearClassifier scaled = c;
  scaled.weights *= 7.0;
  scaled.bias *= 7.0;
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(20, 4);
  CHECK(predict(c, x) == predict(scaled, x));
}
