#pragma once

#include <optional>
#include <vector>

#include "uq/errors.hpp"

namespace uq {

enum class MetricKind { accuracy, rmse };  // accuracy: higher better; rmse: lower

struct RejectionPoint {
  double rejected_fraction;
  double metric_value;
  double uncertainty_threshold;  // smallest rejected uncertainty; +inf at 0
};

struct RejectionCurve {
  std::vector<RejectionPoint> points;  // one per rejection count 0..n-1
  MetricKind metric_kind;
};

// Metric over the retained lowest-uncertainty items as the most uncertain
// are removed one at a time. Accuracy compares predictions and truths for
// exact equality (class indices stored as doubles are exact). Ties in
// uncertainty break by original index.
RejectionCurve rejection_curve(const std::vector<double>& uncertainties,
                               const std::vector<double>& predictions,
                               const std::vector<double>& truths,
                               MetricKind metric_kind);

struct ThresholdChoice {
  double uncertainty_threshold;
  double rejected_fraction;
};

// Smallest rejected fraction whose metric meets the target (>= for
// accuracy, <= for rmse); nullopt when unattainable at any rejection level.
std::optional<ThresholdChoice> threshold_for_target(const RejectionCurve& curve,
                                                    double target_metric);

}  // namespace uq
