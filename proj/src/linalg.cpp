#include "wemm/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace wemm {

SymMat::SymMat(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionMismatch("SymMat: matrix is " + std::to_string(m_.rows()) + "x" +
                            std::to_string(m_.cols()));
  }
  if (!m_.allFinite()) throw NonFiniteInput("SymMat: non-finite entry");
  resymmetrize();
}

SymMat SymMat::identity(Eigen::Index d, double scale) {
  SymMat s(d);
  s.m_.diagonal().setConstant(scale);
  return s;
}

SymMat SymMat::diagonal(const Vec& diag) {
  SymMat s(diag.size());
  s.m_.diagonal() = diag;
  return s;
}

Vec SymMat::operator*(const Vec& v) const {
  require_dim(v, dim(), "SymMat::operator*");
  return m_ * v;
}

double SymMat::quad(const Vec& x) const {
  require_dim(x, dim(), "SymMat::quad");
  return x.dot(m_ * x);
}

void SymMat::resymmetrize() { m_ = 0.5 * (m_ + m_.transpose()).eval(); }

void require_dim(const Vec& v, Eigen::Index d, const char* what) {
  if (v.size() != d) {
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(d) +
                            ", got " + std::to_string(v.size()));
  }
}

void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw NonFiniteInput(std::string(what) + ": non-finite entry");
}

namespace {

Eigen::LLT<Mat> checked_cholesky(const SymMat& m, const char* what) {
  Eigen::LLT<Mat> llt(m.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(std::string(what) + ": Cholesky factorization failed");
  }
  // Pivots of the LDL^T form are the squared diagonal of L.
  const Vec pivots = llt.matrixL().toDenseMatrix().diagonal().array().square();
  if (pivots.minCoeff() <= kSpdTolerance) {
    throw NotPositiveDefinite(std::string(what) + ": pivot below tolerance");
  }
  return llt;
}

}  // namespace

Vec solve_spd(const SymMat& m, const Vec& v) {
  require_dim(v, m.dim(), "solve_spd");
  require_finite(v, "solve_spd");
  return checked_cholesky(m, "solve_spd").solve(v);
}

SymMat inverse_spd(const SymMat& m) {
  const auto llt = checked_cholesky(m, "inverse_spd");
  return SymMat(llt.solve(Mat::Identity(m.dim(), m.dim())));
}

SymMat rank_one_update(const SymMat& m, double scale, const Vec& v) {
  require_dim(v, m.dim(), "rank_one_update");
  require_finite(v, "rank_one_update");
  if (!std::isfinite(scale)) throw NonFiniteInput("rank_one_update: non-finite scale");
  Mat out = m.matrix();
  out.noalias() += scale * v * v.transpose();
  return SymMat(std::move(out));
}

double log_det(const SymMat& m) {
  const auto llt = checked_cholesky(m, "log_det");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

EigenDecomposition sym_eigen(const SymMat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("sym_eigen: eigen solver did not converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index d = m.dim();
  EigenDecomposition out{Vec(d), Mat(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    out.values(i) = solver.eigenvalues()(d - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

}  // namespace wemm
