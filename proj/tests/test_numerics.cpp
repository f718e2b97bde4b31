#include <doctest.h>

#include <cmath>

#include "uq/numerics.hpp"
#include "uq/random.hpp"

using uq::Matrix;
using uq::Vector;

namespace {

// Quadrature oracle: Student-t CDF by Simpson integration of the density,
// independent of the incomplete-beta path used in the implementation.
double t_density(double x, double df) {
  const double log_norm = std::lgamma((df + 1.0) / 2.0) -
                          std::lgamma(df / 2.0) -
                          0.5 * std::log(df * std::acos(-1.0));
  return std::exp(log_norm - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

double t_cdf_quadrature(double x, double df) {
  // Integrate from a far-left cutoff; density is negligible below -60.
  const double lo = -60.0;
  const int steps = 40000;  // even
  const double h = (x - lo) / steps;
  double sum = t_density(lo, df) + t_density(x, df);
  for (int i = 1; i < steps; ++i) {
    sum += t_density(lo + i * h, df) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

double t_quantile_quadrature(double p, double df) {
  double lo = -60.0, hi = 60.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t_cdf_quadrature(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("solve_spd: identity and diagonal systems") {
  Vector v(3);
  v << 1.5, -2.0, 7.0;
  CHECK((uq::solve_spd(Matrix::Identity(3, 3), v) - v).norm() == doctest::Approx(0.0));

  Matrix a(2, 2);
  a << 4, 0, 0, 9;
  Matrix b(2, 1);
  b << 8, 27;
  const Matrix x = uq::solve_spd(a, b);
  CHECK(x(0, 0) == doctest::Approx(2.0));
  CHECK(x(1, 0) == doctest::Approx(3.0));
}

TEST_CASE("solve_spd: residual bound on random SPD systems up to 50x50") {
  uq::RandomStream rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_index(46));
    Matrix m(n, n);
    Vector b(n);
    for (int i = 0; i < n; ++i) {
      b[i] = rng.normal();
      for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    }
    const Matrix a = m.transpose() * m + Matrix::Identity(n, n);
    const Vector x = uq::solve_spd(a, b);
    const double residual = (a * x - b).cwiseAbs().maxCoeff();
    CHECK(residual <= 1e-8 * (1.0 + b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("solve_spd: rejects indefinite and mismatched inputs") {
  Matrix a(2, 2);
  a << 1, 0, 0, -1;
  Matrix b = Matrix::Ones(2, 1);
  CHECK_THROWS_AS(uq::solve_spd(a, b), uq::NotPositiveDefinite);
  CHECK_THROWS_AS(uq::solve_spd(Matrix::Identity(3, 3), b), uq::DimensionMismatch);

  Matrix asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(uq::solve_spd(asym, b), uq::DimensionMismatch);
}

TEST_CASE("t_quantile: large-df value matches the normal limit ~1.645") {
  CHECK(uq::t_quantile(0.95, 994) == doctest::Approx(1.645).epsilon(0.005 / 1.645));
  CHECK(uq::t_quantile(0.95, 2e6) == doctest::Approx(1.6448536).epsilon(1e-5));
}

TEST_CASE("t_quantile: median is zero and symmetry holds") {
  CHECK(uq::t_quantile(0.5, 3) == 0.0);
  CHECK(uq::t_quantile(0.5, 1000) == 0.0);
  uq::RandomStream rng(3);
  for (int i = 0; i < 50; ++i) {
    const double p = 0.01 + 0.98 * rng.uniform();
    const double df = 1.0 + 100.0 * rng.uniform();
    CHECK(uq::t_quantile(1.0 - p, df) ==
          doctest::Approx(-uq::t_quantile(p, df)).epsilon(1e-9));
  }
}

TEST_CASE("t_quantile: matches the quadrature oracle") {
  // Frozen from t_quantile_quadrature(0.975, 10) = 2.2281388...
  CHECK(uq::t_quantile(0.975, 10) == doctest::Approx(2.2281389).epsilon(1e-5));
  CHECK(uq::t_quantile(0.975, 10) ==
        doctest::Approx(t_quantile_quadrature(0.975, 10)).epsilon(1e-6));
  CHECK(uq::t_quantile(0.9, 4) ==
        doctest::Approx(t_quantile_quadrature(0.9, 4)).epsilon(1e-6));
}

TEST_CASE("t_quantile: rejects invalid arguments") {
  CHECK_THROWS_AS(uq::t_quantile(0.0, 10), uq::InvalidProbability);
  CHECK_THROWS_AS(uq::t_quantile(1.0, 10), uq::InvalidProbability);
  CHECK_THROWS_AS(uq::t_quantile(0.9, 0.5), uq::InvalidDf);
}

TEST_CASE("normal_quantile spot values") {
  CHECK(uq::normal_quantile(0.975) == doctest::Approx(1.9599640).epsilon(1e-6));
  CHECK(uq::normal_quantile(0.5) == 0.0);
  CHECK(uq::normal_quantile(0.025) == doctest::Approx(-1.9599640).epsilon(1e-6));
}

TEST_CASE("softmax: uniform, overflow-safe, and hand-evaluated cases") {
  Vector zeros = Vector::Zero(3);
  const auto uniform = uq::softmax(zeros);
  for (int i = 0; i < 3; ++i) CHECK(uniform[i] == doctest::Approx(1.0 / 3.0));

  Vector big(2);
  big << 1000.0, 0.0;
  const auto saturated = uq::softmax(big);
  CHECK(saturated[0] == doctest::Approx(1.0));
  CHECK(saturated[1] == doctest::Approx(0.0));

  Vector logs(2);
  logs << std::log(2.0), std::log(1.0);
  const auto hand = uq::softmax(logs);
  CHECK(hand[0] == doctest::Approx(2.0 / 3.0));
  CHECK(hand[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("softmax is shift-invariant") {
  uq::RandomStream rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Vector v(4);
    for (int i = 0; i < 4; ++i) v[i] = rng.normal(0, 5);
    const auto base = uq::softmax(v);
    const auto shifted = uq::softmax(Vector(v.array() + rng.normal(0, 100)));
    for (int i = 0; i < 4; ++i) {
      CHECK(base[i] == doctest::Approx(shifted[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("ProbVector validates its invariants") {
  Vector bad(2);
  bad << 0.6, 0.6;
  CHECK_THROWS_AS(uq::ProbVector{bad}, uq::InvalidProbVector);
  bad << -0.1, 1.1;
  CHECK_THROWS_AS(uq::ProbVector{bad}, uq::InvalidProbVector);
  Vector good(2);
  good << 0.25, 0.75;
  CHECK_NOTHROW(uq::ProbVector{good});
}
