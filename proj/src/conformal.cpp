#include "uq/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace uq {
namespace {

const char* score_kind_name(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::classification: return "classification";
    case ScoreKind::regression_absolute: return "regression-absolute";
    case ScoreKind::regression_squared: return "regression-squared";
  }
  return "unknown";
}

ScoreKind score_kind_from_name(const std::string& name) {
  if (name == "classification") return ScoreKind::classification;
  if (name == "regression-absolute") return ScoreKind::regression_absolute;
  if (name == "regression-squared") return ScoreKind::regression_squared;
  throw ParseError("unknown score_kind: " + name);
}

}  // namespace

bool PredictionSet::contains(int label) const {
  return std::binary_search(class_indices.begin(), class_indices.end(), label);
}

Vector classification_scores(const std::vector<ProbVector>& softmaxes,
                             const std::vector<int>& truths) {
  if (softmaxes.size() != truths.size()) {
    throw LengthMismatch("classification_scores: input lengths differ");
  }
  Vector scores(softmaxes.size());
  for (std::size_t i = 0; i < softmaxes.size(); ++i) {
    if (truths[i] < 0 || truths[i] >= softmaxes[i].size()) {
      throw IndexOutOfRange("classification_scores: truth index out of range");
    }
    scores[static_cast<Eigen::Index>(i)] = 1.0 - softmaxes[i][truths[i]];
  }
  return scores;
}

Vector classification_scores(const Matrix& softmax_rows,
                             const std::vector<int>& truths) {
  if (static_cast<std::size_t>(softmax_rows.rows()) != truths.size()) {
    throw LengthMismatch("classification_scores: input lengths differ");
  }
  Vector scores(softmax_rows.rows());
  for (Eigen::Index i = 0; i < softmax_rows.rows(); ++i) {
    const int truth = truths[static_cast<std::size_t>(i)];
    if (truth < 0 || truth >= softmax_rows.cols()) {
      throw IndexOutOfRange("classification_scores: truth index out of range");
    }
    scores[i] = 1.0 - softmax_rows(i, truth);
  }
  return scores;
}

Vector regression_scores(const Vector& predictions, const Vector& truths,
                         ScoreKind kind) {
  if (predictions.size() != truths.size()) {
    throw LengthMismatch("regression_scores: input lengths differ");
  }
  if (kind == ScoreKind::regression_squared) {
    return (truths - predictions).array().square();
  }
  return (truths - predictions).cwiseAbs();
}

CalibrationResult calibrate(const Vector& scores, double alpha,
                            ScoreKind score_kind) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidAlpha("calibrate: alpha must be in (0, 1)");
  }
  const std::size_t n = static_cast<std::size_t>(scores.size());
  if (n < 1) throw InsufficientCalibration("calibrate: no calibration scores");

  const std::size_t k = static_cast<std::size_t>(
      std::ceil((static_cast<double>(n) + 1.0) * (1.0 - alpha)));
  if (k > n) {
    throw InsufficientCalibration(
        "calibrate: ceil((n+1)(1-alpha)) exceeds n; alpha too small for n");
  }
  std::vector<double> sorted(scores.data(), scores.data() + scores.size());
  std::sort(sorted.begin(), sorted.end());
  return CalibrationResult{sorted[k - 1], alpha, n, k, score_kind};
}

PredictionSet predict_set(const Vector& softmax_row,
                          const CalibrationResult& cal, bool force_top1) {
  if (cal.score_kind != ScoreKind::classification) {
    throw InvalidConfig("predict_set: calibration is not classification");
  }
  const double threshold = 1.0 - cal.q_hat;
  PredictionSet set;
  for (Eigen::Index c = 0; c < softmax_row.size(); ++c) {
    if (softmax_row[c] >= threshold) {
      set.class_indices.push_back(static_cast<int>(c));
    }
  }
  if (set.class_indices.empty() && force_top1) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < softmax_row.size(); ++c) {
      if (softmax_row[c] > softmax_row[best]) best = c;
    }
    set.class_indices.push_back(static_cast<int>(best));
  }
  return set;
}

PredictionSet predict_set(const ProbVector& softmax_probs,
                          const CalibrationResult& cal, bool force_top1) {
  return predict_set(softmax_probs.values(), cal, force_top1);
}

Interval predict_interval_conformal(double prediction,
                                    const CalibrationResult& cal) {
  double half_width = 0.0;
  switch (cal.score_kind) {
    case ScoreKind::regression_absolute:
      half_width = cal.q_hat;
      break;
    case ScoreKind::regression_squared:
      half_width = std::sqrt(cal.q_hat);
      break;
    case ScoreKind::classification:
      throw InvalidConfig(
          "predict_interval_conformal: calibration is not regression");
  }
  return Interval{prediction - half_width, prediction + half_width};
}

double empirical_coverage(const std::vector<PredictionSet>& sets,
                          const std::vector<int>& truths) {
  if (sets.size() != truths.size() || sets.empty()) {
    throw LengthMismatch("empirical_coverage: input lengths differ or empty");
  }
  std::size_t covered = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    covered += sets[i].contains(truths[i]);
  }
  return static_cast<double>(covered) / static_cast<double>(sets.size());
}

double empirical_coverage(const std::vector<Interval>& intervals,
                          const Vector& truths) {
  if (static_cast<Eigen::Index>(intervals.size()) != truths.size() ||
      intervals.empty()) {
    throw LengthMismatch("empirical_coverage: input lengths differ or empty");
  }
  std::size_t covered = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    covered += intervals[i].contains(truths[static_cast<Eigen::Index>(i)]);
  }
  return static_cast<double>(covered) / static_cast<double>(intervals.size());
}

void save_calibration(const CalibrationResult& cal, const std::string& path) {
  nlohmann::json doc = {{"alpha", cal.alpha},
                        {"n", cal.n},
                        {"k", cal.k},
                        {"q_hat", cal.q_hat},
                        {"score_kind", score_kind_name(cal.score_kind)}};
  std::ofstream out(path);
  if (!out) throw IoError("save_calibration: cannot open " + path);
  out << doc.dump(2) << '\n';
}

CalibrationResult load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_calibration: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  return CalibrationResult{doc.at("q_hat").get<double>(),
                           doc.at("alpha").get<double>(),
                           doc.at("n").get<std::size_t>(),
                           doc.at("k").get<std::size_t>(),
                           score_kind_from_name(doc.at("score_kind"))};
}

}  // namespace uq
