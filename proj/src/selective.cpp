#include "uq/selective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uq {
namespace {

double metric_over_prefix(const std::vector<std::size_t>& order,
                          std::size_t retained,
                          const std::vector<double>& predictions,
                          const std::vector<double>& truths,
                          MetricKind kind) {
  if (kind == MetricKind::accuracy) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < retained; ++i) {
      correct += predictions[order[i]] == truths[order[i]];
    }
    return static_cast<double>(correct) / static_cast<double>(retained);
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < retained; ++i) {
    const double d = predictions[order[i]] - truths[order[i]];
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(retained));
}

}  // namespace

RejectionCurve rejection_curve(const std::vector<double>& uncertainties,
                               const std::vector<double>& predictions,
                               const std::vector<double>& truths,
                               MetricKind metric_kind) {
  const std::size_t n = uncertainties.size();
  if (n == 0) throw EmptyInput("rejection_curve: empty input");
  if (predictions.size() != n || truths.size() != n) {
    throw LengthMismatch("rejection_curve: input lengths differ");
  }
  if (n < 2) throw EmptyInput("rejection_curve: need n >= 2");
  for (double u : uncertainties) {
    if (!std::isfinite(u)) {
      throw EmptyInput("rejection_curve: non-finite uncertainty");
    }
  }

  // Ascending uncertainty, ties by original index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return uncertainties[a] < uncertainties[b];
                   });

  RejectionCurve curve;
  curve.metric_kind = metric_kind;
  curve.points.reserve(n);
  for (std::size_t rejected = 0; rejected < n; ++rejected) {
    const std::size_t retained = n - rejected;
    RejectionPoint point;
    point.rejected_fraction =
        static_cast<double>(rejected) / static_cast<double>(n);
    point.metric_value =
        metric_over_prefix(order, retained, predictions, truths, metric_kind);
    point.uncertainty_threshold =
        rejected == 0 ? std::numeric_limits<double>::infinity()
                      : uncertainties[order[retained]];
    curve.points.push_back(point);
  }
  return curve;
}

std::optional<ThresholdChoice> threshold_for_target(const RejectionCurve& curve,
                                                    double target_metric) {
  for (const RejectionPoint& point : curve.points) {
    const bool met = curve.metric_kind == MetricKind::accuracy
                         ? point.metric_value >= target_metric
                         : point.metric_value <= target_metric;
    if (met) {
      return ThresholdChoice{point.uncertainty_threshold,
                             point.rejected_fraction};
    }
  }
  return std::nullopt;
}

}  // namespace uq
