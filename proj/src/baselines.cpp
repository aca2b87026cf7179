#include "wemm/baselines.hpp"

#include <cmath>
#include <string>

namespace wemm {

std::string_view baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kArowr:
      return "arowr";
    case BaselineKind::kAar:
      return "aar";
    case BaselineKind::kRidge:
      return "ridge";
    case BaselineKind::kRls:
      return "rls";
  }
  return "unknown";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) {
  if (name == "arowr") return BaselineKind::kArowr;
  if (name == "aar") return BaselineKind::kAar;
  if (name == "ridge") return BaselineKind::kRidge;
  if (name == "rls") return BaselineKind::kRls;
  return std::nullopt;
}

BaselineLearner::BaselineLearner(BaselineKind kind, Eigen::Index d, double b_reg, double r)
    : kind_(kind), b_reg_(b_reg), r_(r) {
  const std::string who(baseline_name(kind));
  if (d < 1) throw DimensionMismatch(who + ": dimension must be >= 1");
  if (!(b_reg > 0.0) || !std::isfinite(b_reg)) throw InvalidParameter(who + ": b must be > 0");
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidParameter(who + ": r must be > 0");
  if (kind == BaselineKind::kRls && r > 1.0) {
    throw InvalidParameter("rls: forgetting factor must be in (0, 1]");
  }
  w_ = Vec::Zero(d);
  sigma_ = SymMat::identity(d, 1.0 / b_reg);
}

double BaselineLearner::predict(const Vec& x) const {
  require_dim(x, dim(), "BaselineLearner::predict");
  require_finite(x, "BaselineLearner::predict");
  const double raw = x.dot(w_);
  if (kind_ == BaselineKind::kAar) return raw / (1.0 + sigma_.quad(x));
  return raw;
}

void BaselineLearner::update(const Vec& x, double y) {
  require_dim(x, dim(), "BaselineLearner::update");
  require_finite(x, "BaselineLearner::update");
  if (!std::isfinite(y)) throw NonFiniteInput("BaselineLearner::update: non-finite label");

  const Vec sx = sigma_ * x;
  const double q = x.dot(sx);
  const double residual = y - x.dot(w_);

  switch (kind_) {
    case BaselineKind::kArowr: {
      const double denom = r_ + q;
      w_ += (residual / denom) * sx;
      sigma_ = rank_one_update(sigma_, -1.0 / denom, sx);
      break;
    }
    case BaselineKind::kAar:
    case BaselineKind::kRidge: {
      const double denom = 1.0 + q;
      w_ += (residual / denom) * sx;
      sigma_ = rank_one_update(sigma_, -1.0 / denom, sx);
      break;
    }
    case BaselineKind::kRls: {
      // P_t = (P_{t-1} - k x^T P_{t-1}) / r with gain k = P x / (r + x^T P x)
      const double denom = r_ + q;
      w_ += (residual / denom) * sx;
      const SymMat shrunk = rank_one_update(sigma_, -1.0 / denom, sx);
      sigma_ = SymMat(shrunk.matrix() / r_);
      break;
    }
  }
  ++t_;
}

void BaselineLearner::set_state(Vec w, SymMat sigma) {
  require_dim(w, dim(), "BaselineLearner::set_state");
  if (sigma.dim() != dim()) throw DimensionMismatch("BaselineLearner::set_state: Sigma size");
  w_ = std::move(w);
  sigma_ = std::move(sigma);
}

}  // namespace wemm
