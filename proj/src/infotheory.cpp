#include "uq/infotheory.hpp"

#include <cmath>

namespace uq {
namespace {

double log_in_base(double v, LogBase base) {
  return base == LogBase::two ? std::log2(v) : std::log(v);
}

}  // namespace

double shannon_entropy(const ProbVector& p, LogBase base) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi > 1e-12) h -= pi * log_in_base(pi, base);
  }
  return h < 0.0 ? 0.0 : h;
}

UncertaintyDecomposition decompose(const std::vector<ProbVector>& member_probs,
                                   LogBase base) {
  if (member_probs.empty()) {
    throw EmptyEnsemble("decompose: no ensemble members");
  }
  const Eigen::Index n_classes = member_probs.front().size();
  Vector mean = Vector::Zero(n_classes);
  double aleatoric = 0.0;
  for (const ProbVector& p : member_probs) {
    if (p.size() != n_classes) {
      throw LengthMismatch("decompose: member vectors differ in length");
    }
    mean += p.values();
    aleatoric += shannon_entropy(p, base);
  }
  mean /= static_cast<double>(member_probs.size());
  aleatoric /= static_cast<double>(member_probs.size());

  const double total = shannon_entropy(ProbVector(mean), base);
  double epistemic = total - aleatoric;
  if (epistemic < 0.0) epistemic = 0.0;  // Jensen guarantees >= -eps only
  return UncertaintyDecomposition{total, aleatoric, epistemic, base};
}

}  // namespace uq
