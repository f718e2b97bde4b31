#pragma once

#include <string>
#include <vector>

#include "uq/numerics.hpp"

namespace uq {

enum class ScoreKind { classification, regression_absolute, regression_squared };

// Split-conformal calibration artifact: q_hat is the k-th smallest
// calibration score with k = ceil((n+1)(1-alpha)).
struct CalibrationResult {
  double q_hat;
  double alpha;
  std::size_t n;
  std::size_t k;
  ScoreKind score_kind;
};

struct PredictionSet {
  std::vector<int> class_indices;  // sorted ascending; may be empty

  bool contains(int label) const;
};

struct Interval {
  double lower;
  double upper;

  bool contains(double y) const { return lower <= y && y <= upper; }
};

// s_i = 1 - softmax probability of the true class.
Vector classification_scores(const std::vector<ProbVector>& softmaxes,
                             const std::vector<int>& truths);

// Same, over raw per-row probabilities (one row per observation). Accepts
// rows that only sum to 1 approximately, e.g. values re-entered from
// rounded published tables.
Vector classification_scores(const Matrix& softmax_rows,
                             const std::vector<int>& truths);

// |y - pred| or (y - pred)^2.
Vector regression_scores(const Vector& predictions, const Vector& truths,
                         ScoreKind kind);

// Sorts the scores and selects rank k (1-indexed). Throws
// InsufficientCalibration when ceil((n+1)(1-alpha)) > n.
CalibrationResult calibrate(const Vector& scores, double alpha,
                            ScoreKind score_kind);

// Classes whose softmax probability is >= 1 - q_hat. The set may be empty;
// force_top1 falls back to the argmax class in that case.
PredictionSet predict_set(const ProbVector& softmax_probs,
                          const CalibrationResult& cal,
                          bool force_top1 = false);
PredictionSet predict_set(const Vector& softmax_row,
                          const CalibrationResult& cal,
                          bool force_top1 = false);

// [pred - q, pred + q] for absolute scores, [pred - sqrt(q), pred + sqrt(q)]
// for squared scores.
Interval predict_interval_conformal(double prediction,
                                    const CalibrationResult& cal);

double empirical_coverage(const std::vector<PredictionSet>& sets,
                          const std::vector<int>& truths);
double empirical_coverage(const std::vector<Interval>& intervals,
                          const Vector& truths);

// Persist / restore {alpha, n, k, q_hat, score_kind} as JSON.
void save_calibration(const CalibrationResult& cal, const std::string& path);
CalibrationResult load_calibration(const std::string& path);

}  // namespace uq
