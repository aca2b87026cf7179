#pragma once

#include <vector>

#include "wemm/linalg.hpp"

namespace wemm {

// Inputs are accepted up to this far past the unit sphere.
inline constexpr double kNormSlack = 1e-12;
// a_t is undefined once x^T Sigma x gets this close to 1.
inline constexpr double kDegenerateMargin = 1e-12;

// Weighted last-step min-max regression learner in recursive form.
//
// Prediction is x^T w_{t-1}. On update the example weight
//   a_t = 1 / (1 - x^T Sigma_{t-1} x)
// makes the last-step game linear in the label, and the state follows
//   w_t     = w_{t-1} + (y - x^T w_{t-1}) Sigma_{t-1} x
//   Sigma_t = Sigma_{t-1} - Sigma_{t-1} x x^T Sigma_{t-1}.
//
// The accumulators A_t = bI + sum a_s x_s x_s^T and b_t = sum a_s y_s x_s are
// kept alongside the recursion. They are not used for prediction; tests and
// certifiers use them to cross-check Sigma = A^{-1} and w = A^{-1} b.
class WemmLearner {
 public:
  // Throws InvalidRegularizer unless b_reg > 1.
  WemmLearner(Eigen::Index d, double b_reg);

  // x^T w. Throws InputNormViolation if ||x|| > 1 + kNormSlack.
  double predict(const Vec& x) const;

  // a = 1/(1 - x^T Sigma x). Throws DegenerateWeight when the denominator is
  // within kDegenerateMargin of zero (or negative).
  double weight(const Vec& x) const;

  // Applies one round and returns the a_t that was used.
  double update(const Vec& x, double y);

  Eigen::Index dim() const { return w_.size(); }
  double b_reg() const { return b_reg_; }
  long rounds() const { return t_; }
  const Vec& w() const { return w_; }
  const SymMat& sigma() const { return sigma_; }
  const SymMat& accumulated_a() const { return a_acc_; }
  const Vec& accumulated_b() const { return b_acc_; }
  const std::vector<double>& a_history() const { return a_history_; }

 private:
  void check_input(const Vec& x) const;

  Vec w_;
  SymMat sigma_;
  SymMat a_acc_;
  Vec b_acc_;
  double b_reg_;
  long t_ = 0;
  std::vector<double> a_history_;
};

}  // namespace wemm
