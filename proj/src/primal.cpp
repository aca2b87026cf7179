#include "wemm/primal.hpp"

#include <cmath>
#include <string>

namespace wemm {

WemmLearner::WemmLearner(Eigen::Index d, double b_reg)
    : w_(Vec::Zero(d > 0 ? d : 1)), b_acc_(Vec::Zero(d > 0 ? d : 1)), b_reg_(b_reg) {
  if (d < 1) throw DimensionMismatch("WemmLearner: dimension must be >= 1");
  if (!(b_reg > 1.0) || !std::isfinite(b_reg)) {
    throw InvalidRegularizer("WemmLearner: b must be > 1, got " + std::to_string(b_reg));
  }
  sigma_ = SymMat::identity(d, 1.0 / b_reg);
  a_acc_ = SymMat::identity(d, b_reg);
}

void WemmLearner::check_input(const Vec& x) const {
  require_dim(x, dim(), "WemmLearner");
  require_finite(x, "WemmLearner");
  const double norm = x.norm();
  if (norm > 1.0 + kNormSlack) {
    throw InputNormViolation("WemmLearner: ||x|| = " + std::to_string(norm) + " exceeds 1");
  }
}

double WemmLearner::predict(const Vec& x) const {
  check_input(x);
  return x.dot(w_);
}

double WemmLearner::weight(const Vec& x) const {
  check_input(x);
  const double q = sigma_.quad(x);
  const double denom = 1.0 - q;
  if (denom <= kDegenerateMargin) {
    throw DegenerateWeight("WemmLearner: x^T Sigma x = " + std::to_string(q) +
                           " leaves no room for a finite weight");
  }
  return 1.0 / denom;
}

double WemmLearner::update(const Vec& x, double y) {
  if (!std::isfinite(y)) throw NonFiniteInput("WemmLearner::update: non-finite label");
  const double a = weight(x);
  const Vec sx = sigma_ * x;
  const double residual = y - x.dot(w_);

  w_ += residual * sx;
  sigma_ = rank_one_update(sigma_, -1.0, sx);

  a_acc_ = rank_one_update(a_acc_, a, x);
  b_acc_ += (a * y) * x;

  ++t_;
  a_history_.push_back(a);
  return a;
}

}  // namespace wemm
