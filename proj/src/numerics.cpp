#include "uq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace uq {
namespace {

constexpr double kNormalDfCutoff = 1e6;

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= eps) break;
  }
  return h;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double t_cdf(double t, double df) {
  if (df >= kNormalDfCutoff) return normal_cdf(t);
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

// Bisection for the upper-half quantile (p > 0.5) of a symmetric CDF.
template <typename Cdf>
double upper_quantile_by_bisection(double p, Cdf cdf) {
  double lo = 0.0;
  double hi = 1.0;
  while (cdf(hi) < p && hi < 1e12) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void require_finite(const Eigen::Ref<const Matrix>& m, const char* what) {
  if (!m.allFinite()) {
    throw DimensionMismatch(std::string(what) + ": non-finite entries");
  }
}

ProbVector::ProbVector(Vector probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.size() == 0) {
    throw InvalidProbVector("ProbVector: empty");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probabilities_.size(); ++i) {
    const double p = probabilities_[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0 + 1e-9) {
      throw InvalidProbVector("ProbVector: entry outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidProbVector("ProbVector: entries do not sum to 1");
  }
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("solve_spd: matrix not square");
  }
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve_spd: incompatible right-hand side");
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + a.cwiseAbs().maxCoeff())) {
    throw DimensionMismatch("solve_spd: matrix not symmetric");
  }
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("solve_spd: non-positive pivot in Cholesky");
  }
  return llt.solve(b);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidProbability("normal_quantile: p must be in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -upper_quantile_by_bisection(1.0 - p, normal_cdf);
  return upper_quantile_by_bisection(p, normal_cdf);
}

double t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidProbability("t_quantile: p must be in (0, 1)");
  }
  if (!(df >= 1.0)) {
    throw InvalidDf("t_quantile: df must be >= 1");
  }
  if (p == 0.5) return 0.0;
  // Symmetric reduction makes t_quantile(1-p) == -t_quantile(p) exact.
  if (p < 0.5) return -t_quantile(1.0 - p, df);
  return upper_quantile_by_bisection(p, [df](double t) { return t_cdf(t, df); });
}

ProbVector softmax(const Vector& logits) {
  require_finite(logits, "softmax");
  Vector shifted = (logits.array() - logits.maxCoeff()).exp();
  return ProbVector(shifted / shifted.sum());
}

}  // namespace uq
