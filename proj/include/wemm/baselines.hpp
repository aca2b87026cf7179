#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wemm/linalg.hpp"

namespace wemm {

enum class BaselineKind { kArowr, kAar, kRidge, kRls };

std::string_view baseline_name(BaselineKind kind);
std::optional<BaselineKind> parse_baseline(std::string_view name);

// Second-order comparison learners sharing one state shape: w, Sigma = A^{-1}.
// All start from w = 0, Sigma = b^{-1} I.
//
//   arowr  predict x^T w;            Sigma^{-1} += x x^T / r,
//          w += (y - x^T w) Sigma x / (r + x^T Sigma x)
//   aar    predict x^T w / (1 + x^T Sigma x);  ridge update below
//   ridge  predict x^T w;            Sigma^{-1} += x x^T,
//          w += (y - x^T w) Sigma x / (1 + x^T Sigma x)
//   rls    predict x^T w; exponentially weighted least squares with
//          forgetting factor r in (0, 1], no regularizer beyond Sigma_0.
//
// Sigma is always the previous round's matrix inside the w update.
class BaselineLearner {
 public:
  // b_reg > 0 and r > 0 for every kind, r <= 1 for rls; r is ignored by aar
  // and ridge. Throws InvalidParameter otherwise.
  BaselineLearner(BaselineKind kind, Eigen::Index d, double b_reg, double r = 1.0);

  double predict(const Vec& x) const;
  void update(const Vec& x, double y);

  BaselineKind kind() const { return kind_; }
  Eigen::Index dim() const { return w_.size(); }
  double b_reg() const { return b_reg_; }
  double r() const { return r_; }
  long rounds() const { return t_; }
  const Vec& w() const { return w_; }
  const SymMat& sigma() const { return sigma_; }

  // Overwrites w and Sigma. Used to pin synthetic states in tests.
  void set_state(Vec w, SymMat sigma);

 private:
  BaselineKind kind_;
  Vec w_;
  SymMat sigma_;
  double b_reg_;
  double r_;
  long t_ = 0;
};

}  // namespace wemm
