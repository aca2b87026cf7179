#pragma once

#include <string>
#include <vector>

#include "wemm/linalg.hpp"

namespace wemm {

struct KernelSpec {
  enum class Kind { kLinear, kPolynomial, kRbf };

  Kind kind = Kind::kLinear;
  int degree = 1;       // polynomial only, >= 1
  double offset = 0.0;  // polynomial only, >= 0
  double gamma = 1.0;   // rbf only, > 0

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double offset);
  static KernelSpec rbf(double gamma);

  // Throws InvalidParameter when a field is out of range.
  void validate() const;
  std::string name() const;
};

double kernel_eval(const KernelSpec& spec, const Vec& x, const Vec& z);

// Kernel WEMM: the primal learner rewritten in dual coefficients,
//   w_t     = sum_i alpha_i x_i
//   Sigma_t = sum_{j,k} beta_{jk} x_j x_k^T + b^{-1} I,
// so only kernel evaluations against the stored inputs are needed.
//
// The per-round beta update factors through g = beta k, where k holds the
// kernel values of the new input against the support set:
//   r = y - alpha^T k
//   alpha_i += r g_i,   alpha_t = r / b
//   beta_jk -= g_j g_k, beta_tk = beta_kt = -g_k / b, beta_tt = -1 / b^2
// which keeps each update at O(t^2).
class KernelWemm {
 public:
  // Throws InvalidRegularizer unless b_reg > 1, InvalidParameter for a bad
  // kernel spec.
  KernelWemm(KernelSpec spec, double b_reg);

  double predict(const Vec& x) const;
  void update(const Vec& x, double y);

  const KernelSpec& spec() const { return spec_; }
  double b_reg() const { return b_reg_; }
  long rounds() const { return static_cast<long>(support_.size()); }
  const Vec& alpha() const { return alpha_; }
  const Mat& beta() const { return beta_; }
  const std::vector<Vec>& support() const { return support_; }

 private:
  Vec kernel_row(const Vec& x) const;

  KernelSpec spec_;
  double b_reg_;
  Vec alpha_;
  Mat beta_;
  std::vector<Vec> support_;
};

}  // namespace wemm
