#pragma once

// Small dense linear algebra for the learners and oracles. Dimensions are
// expected to stay in the tens; everything is dense and double precision.

#include <Eigen/Core>

#include "wemm/errors.hpp"

namespace wemm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Pivots (and eigenvalues) at or below this are treated as singular.
inline constexpr double kSpdTolerance = 1e-12;

// Symmetric d x d matrix. Every mutation goes through resymmetrize() so the
// long Sigma recursions cannot drift away from symmetry.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(Eigen::Index d) : m_(Mat::Zero(d, d)) {}
  // Throws DimensionMismatch for non-square input, NonFiniteInput for NaN/Inf.
  // Off-diagonal asymmetry is averaged away.
  explicit SymMat(Mat m);

  static SymMat identity(Eigen::Index d, double scale = 1.0);
  static SymMat diagonal(const Vec& diag);

  Eigen::Index dim() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Mat& matrix() const { return m_; }

  Vec operator*(const Vec& v) const;
  // x^T M x
  double quad(const Vec& x) const;

 private:
  void resymmetrize();

  Mat m_;
};

struct EigenDecomposition {
  Vec values;   // sorted descending
  Mat vectors;  // orthonormal columns, column i pairs with values(i)
};

void require_dim(const Vec& v, Eigen::Index d, const char* what);
void require_finite(const Vec& v, const char* what);

// Solves M z = v for symmetric positive definite M (Cholesky).
Vec solve_spd(const SymMat& m, const Vec& v);

// M^{-1} for SPD M.
SymMat inverse_spd(const SymMat& m);

// M + scale * v v^T
SymMat rank_one_update(const SymMat& m, double scale, const Vec& v);

// ln det M for SPD M.
double log_det(const SymMat& m);

EigenDecomposition sym_eigen(const SymMat& m);

}  // namespace wemm
