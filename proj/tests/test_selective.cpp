#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "uq/random.hpp"
#include "uq/selective.hpp"

using uq::MetricKind;

namespace {

// Independent oracle: for a given rejection count, sort a copy of the items
// by uncertainty and recompute the metric over the retained prefix from
// scratch.
double oracle_metric(const std::vector<double>& uncertainties,
                     const std::vector<double>& predictions,
                     const std::vector<double>& truths, int rejected,
                     MetricKind kind) {
  const std::size_t n = uncertainties.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return uncertainties[a] < uncertainties[b];
  });
  const std::size_t kept = n - static_cast<std::size_t>(rejected);
  if (kind == MetricKind::accuracy) {
    int hits = 0;
    for (std::size_t i = 0; i < kept; ++i) {
      hits += predictions[order[i]] == truths[order[i]];
    }
    return static_cast<double>(hits) / static_cast<double>(kept);
  }
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < kept; ++i) {
    const double e = predictions[order[i]] - truths[order[i]];
    sum_sq += e * e;
  }
  return std::sqrt(sum_sq / static_cast<double>(kept));
}

}  // namespace

TEST_CASE("hand case: one wrong, most-uncertain prediction") {
  const std::vector<double> unc = {4, 3, 2, 1};
  const std::vector<double> pred = {0, 1, 1, 1};
  const std::vector<double> truth = {1, 1, 1, 1};
  const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::accuracy);

  REQUIRE(curve.points.size() == 4);
  CHECK(curve.points[0].rejected_fraction == doctest::Approx(0.0));
  CHECK(curve.points[0].metric_value == doctest::Approx(0.75));
  CHECK(std::isinf(curve.points[0].uncertainty_threshold));
  CHECK(curve.points[1].rejected_fraction == doctest::Approx(0.25));
  CHECK(curve.points[1].metric_value == doctest::Approx(1.0));
  CHECK(curve.points[1].uncertainty_threshold == doctest::Approx(4.0));
  CHECK(curve.points[3].metric_value == doctest::Approx(1.0));
}

TEST_CASE("curve values match the from-scratch oracle at every rejection count") {
  uq::RandomStream rng(42);
  for (MetricKind kind : {MetricKind::accuracy, MetricKind::rmse}) {
    std::vector<double> unc(60), pred(60), truth(60);
    for (int i = 0; i < 60; ++i) {
      unc[i] = rng.uniform(0, 5);
      if (kind == MetricKind::accuracy) {
        truth[i] = static_cast<double>(rng.uniform_index(3));
        pred[i] = rng.uniform() < 0.7 ? truth[i]
                                      : static_cast<double>(rng.uniform_index(3));
      } else {
        truth[i] = rng.normal();
        pred[i] = truth[i] + rng.normal(0, 0.5) * unc[i];
      }
    }
    const auto curve = uq::rejection_curve(unc, pred, truth, kind);
    REQUIRE(curve.points.size() == 60);
    for (int r = 0; r < 60; ++r) {
      CHECK(curve.points[r].rejected_fraction == doctest::Approx(r / 60.0));
      CHECK(curve.points[r].metric_value ==
            doctest::Approx(oracle_metric(unc, pred, truth, r, kind)).epsilon(1e-12));
    }
  }
}

TEST_CASE("informative uncertainty yields a monotone-improving accuracy curve") {
  // Uncertainty perfectly ranks correctness: every rejection removes a
  // wrong prediction first, so accuracy never decreases.
  std::vector<double> unc, pred, truth;
  for (int i = 0; i < 30; ++i) {
    const bool correct = i < 18;
    unc.push_back(correct ? i * 0.1 : 10.0 + i);
    truth.push_back(1.0);
    pred.push_back(correct ? 1.0 : 0.0);
  }
  const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::accuracy);
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].metric_value >= curve.points[i - 1].metric_value - 1e-12);
  }
  CHECK(curve.points.back().metric_value == doctest::Approx(1.0));
}

TEST_CASE("uninformative uncertainty keeps the expected curve roughly flat") {
  // Average many random uncertainty orderings of a fixed 70%-accurate
  // prediction vector; the mean curve should hover near 0.7 everywhere.
  uq::RandomStream rng(77);
  const int n = 50;
  std::vector<double> pred(n), truth(n);
  for (int i = 0; i < n; ++i) {
    truth[i] = 1.0;
    pred[i] = i < 35 ? 1.0 : 0.0;
  }
  std::vector<double> mean_curve(n, 0.0);
  const int shuffles = 100;
  for (int s = 0; s < shuffles; ++s) {
    std::vector<double> unc(n);
    for (int i = 0; i < n; ++i) unc[i] = rng.uniform();
    const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::accuracy);
    for (int r = 0; r < n; ++r) mean_curve[r] += curve.points[r].metric_value;
  }
  for (int r = 0; r < n - 10; ++r) {  // tail points average few items
    CHECK(mean_curve[r] / shuffles == doctest::Approx(0.7).epsilon(0.1 / 0.7));
  }
}

TEST_CASE("anti-informative uncertainty degrades accuracy as items are rejected") {
  // Correct predictions carry the highest uncertainty, so they go first.
  std::vector<double> unc, pred, truth;
  for (int i = 0; i < 20; ++i) {
    const bool correct = i < 10;
    unc.push_back(correct ? 100.0 + i : i * 0.1);
    truth.push_back(1.0);
    pred.push_back(correct ? 1.0 : 0.0);
  }
  const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::accuracy);
  CHECK(curve.points[0].metric_value == doctest::Approx(0.5));
  CHECK(curve.points[10].metric_value == doctest::Approx(0.0));
}

TEST_CASE("ties in uncertainty break by original index") {
  const std::vector<double> unc = {1.0, 1.0, 1.0};
  const std::vector<double> pred = {0.0, 1.0, 1.0};
  const std::vector<double> truth = {1.0, 1.0, 1.0};
  const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::accuracy);
  // Rejection removes the later indices first; the wrong item (index 0)
  // stays until the end.
  CHECK(curve.points[1].metric_value == doctest::Approx(0.5));
  CHECK(curve.points[2].metric_value == doctest::Approx(0.0));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(uq::rejection_curve({}, {}, {}, MetricKind::accuracy),
                  uq::EmptyInput);
  CHECK_THROWS_AS(uq::rejection_curve({1.0}, {1.0, 2.0}, {1.0},
                                      MetricKind::accuracy),
                  uq::LengthMismatch);
}

TEST_CASE("threshold_for_target: hand case and unattainable targets") {
  const std::vector<double> unc = {4, 3, 2, 1};
  const std::vector<double> pred = {0, 1, 1, 1};
  const std::vector<double> truth = {1, 1, 1, 1};
  const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::accuracy);

  const auto choice = uq::threshold_for_target(curve, 1.0);
  REQUIRE(choice.has_value());
  CHECK(choice->rejected_fraction == doctest::Approx(0.25));
  CHECK(choice->uncertainty_threshold == doctest::Approx(4.0));

  const auto loose = uq::threshold_for_target(curve, 0.7);
  REQUIRE(loose.has_value());
  CHECK(loose->rejected_fraction == doctest::Approx(0.0));
  CHECK(std::isinf(loose->uncertainty_threshold));

  CHECK(!uq::threshold_for_target(curve, 1.5).has_value());
}

TEST_CASE("threshold_for_target: rmse uses <= and round-trips on the curve") {
  uq::RandomStream rng(5);
  std::vector<double> unc(40), pred(40), truth(40);
  for (int i = 0; i < 40; ++i) {
    unc[i] = rng.uniform(0, 2);
    truth[i] = rng.normal();
    pred[i] = truth[i] + rng.normal(0, 0.3) * (1.0 + unc[i]);
  }
  const auto curve = uq::rejection_curve(unc, pred, truth, MetricKind::rmse);
  const double target = curve.points[12].metric_value;
  const auto choice = uq::threshold_for_target(curve, target);
  REQUIRE(choice.has_value());
  // The chosen fraction's point must meet the target, and it is minimal.
  bool seen = false;
  for (const auto& p : curve.points) {
    if (p.rejected_fraction == choice->rejected_fraction) {
      seen = true;
      CHECK(p.metric_value <= target);
    } else if (p.rejected_fraction < choice->rejected_fraction) {
      CHECK(p.metric_value > target);
    }
  }
  CHECK(seen);
}
