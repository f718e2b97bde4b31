#pragma once

#include <Eigen/Dense>

#include "uq/errors.hpp"

namespace uq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws DimensionMismatch if m contains NaN or Inf. Used at module
// boundaries so Eigen expressions stay unconstrained internally.
void require_finite(const Eigen::Ref<const Matrix>& m, const char* what);

// Non-negative vector summing to 1 (within 1e-9). Validated on construction.
class ProbVector {
 public:
  explicit ProbVector(Vector probabilities);

  const Vector& values() const { return probabilities_; }
  Eigen::Index size() const { return probabilities_.size(); }
  double operator[](Eigen::Index i) const { return probabilities_[i]; }

 private:
  Vector probabilities_;
};

// Solve a·x = b for symmetric positive-definite a via Cholesky.
// Throws NotPositiveDefinite when the factorization hits a non-positive
// pivot (the usual symptom of collinear regressors upstream).
Matrix solve_spd(const Matrix& a, const Matrix& b);

// p-quantile of Student's t with df degrees of freedom, computed by
// bisection on the regularized incomplete beta CDF. df >= 1e6 falls back
// to the normal quantile.
double t_quantile(double p, double df);

// p-quantile of the standard normal, by bisection on erfc.
double normal_quantile(double p);

// Shift-invariant exp-normalization (max subtracted before exponentiation).
ProbVector softmax(const Vector& logits);

}  // namespace uq
