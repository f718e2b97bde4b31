#include "uq/linreg.hpp"

#include <cmath>

namespace uq {
namespace {

Matrix augment_with_intercept(const Matrix& x) {
  Matrix design(x.rows(), x.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(x.cols()) = x;
  return design;
}

}  // namespace

OlsFit fit_ols(const Matrix& x, const Vector& y) {
  require_finite(x, "fit_ols regressors");
  require_finite(y, "fit_ols targets");
  if (x.rows() != y.size()) {
    throw DimensionMismatch("fit_ols: row count of x must match length of y");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols() + 1;
  if (n < x.cols() + 2) {
    throw TooFewObservations("fit_ols: need n >= k + 2");
  }

  const Matrix design = augment_with_intercept(x);
  const Matrix gram = design.transpose() * design;
  Matrix inverse;
  Vector coefficients;
  try {
    coefficients = solve_spd(gram, design.transpose() * y);
    inverse = solve_spd(gram, Matrix::Identity(p, p));
  } catch (const NotPositiveDefinite&) {
    throw CollinearDesign("fit_ols: collinear design columns");
  }

  const Vector e = y - design * coefficients;
  const double s2 = e.squaredNorm() / static_cast<double>(n - p);
  return OlsFit{coefficients, gram, inverse, s2, n, p, n - p};
}

PredictionInterval predict_interval(const OlsFit& fit, const Vector& x_h,
                                    double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidAlpha("predict_interval: alpha must be in (0, 1)");
  }
  if (x_h.size() != fit.p - 1) {
    throw DimensionMismatch("predict_interval: x_h has wrong length");
  }
  require_finite(x_h, "predict_interval");

  Vector x_a(fit.p);
  x_a[0] = 1.0;
  x_a.tail(fit.p - 1) = x_h;

  const double point = x_a.dot(fit.coefficients);
  const Vector solved = solve_spd(fit.xtx, x_a);
  const double leverage = x_a.dot(solved);
  const double t = t_quantile(1.0 - alpha / 2.0, static_cast<double>(fit.df));
  const double half_width =
      t * std::sqrt(fit.residual_variance) * std::sqrt(1.0 + leverage);
  return PredictionInterval{point, point - half_width, point + half_width,
                            1.0 - alpha};
}

Vector residuals(const OlsFit& fit, const Matrix& x, const Vector& y) {
  if (x.cols() != fit.p - 1 || x.rows() != y.size()) {
    throw DimensionMismatch("residuals: shapes do not match fit");
  }
  return y - augment_with_intercept(x) * fit.coefficients;
}

}  // namespace uq
