#pragma once

#include "uq/numerics.hpp"

namespace uq {

// OLS fit over the intercept-augmented design [1 | X]. Degrees of freedom
// are n - p with p = k + 1 (the intercept counts as a column).
struct OlsFit {
  Vector coefficients;       // intercept first, then one slope per regressor
  Matrix xtx;                // X'X of the augmented design, p x p
  Matrix xtx_inverse;        // (X'X)^-1, p x p
  double residual_variance;  // s^2 = e'e / (n - p)
  Eigen::Index n;
  Eigen::Index p;
  Eigen::Index df;           // n - p
};

struct PredictionInterval {
  double point;
  double lower;
  double upper;
  double level;  // 1 - alpha
};

// Least-squares fit of y on [1 | x]. Throws TooFewObservations when
// n < k + 2 and CollinearDesign when the normal equations are singular.
OlsFit fit_ols(const Matrix& x, const Vector& y);

// Prediction interval for a new observation x_h (raw regressors, no
// intercept entry): point +- t(1-alpha/2, df) * s * sqrt(1 + x_a' (XtX)^-1 x_a).
// The quadratic form is computed by solve-then-dot rather than through the
// stored inverse, which behaves better on ill-conditioned designs.
PredictionInterval predict_interval(const OlsFit& fit, const Vector& x_h,
                                    double alpha);

// e = y - [1 | x] b.
Vector residuals(const OlsFit& fit, const Matrix& x, const Vector& y);

}  // namespace uq
