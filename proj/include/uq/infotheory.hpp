#pragma once

#include <vector>

#include "uq/numerics.hpp"

namespace uq {

// Base-2 is the default throughout; natural log is selectable because some
// published ensemble tables quote nats.
enum class LogBase { two, e };

struct UncertaintyDecomposition {
  double total;      // H: entropy of the ensemble-mean distribution
  double aleatoric;  // C: mean entropy of the member distributions
  double epistemic;  // I = H - C, clamped at 0
  LogBase log_base;
};

// -sum p_i log p_i with 0 log 0 = 0. Entries below 1e-12 are treated as
// exact zeros to keep floating dust out of the log.
double shannon_entropy(const ProbVector& p, LogBase base = LogBase::two);

// Entropy decomposition of an ensemble of per-member class distributions.
UncertaintyDecomposition decompose(const std::vector<ProbVector>& member_probs,
                                   LogBase base = LogBase::two);

}  // namespace uq
