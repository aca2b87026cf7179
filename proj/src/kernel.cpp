#include "wemm/kernel.hpp"

#include <cmath>

namespace wemm {

KernelSpec KernelSpec::polynomial(int degree, double offset) {
  KernelSpec s;
  s.kind = Kind::kPolynomial;
  s.degree = degree;
  s.offset = offset;
  return s;
}

KernelSpec KernelSpec::rbf(double gamma) {
  KernelSpec s;
  s.kind = Kind::kRbf;
  s.gamma = gamma;
  return s;
}

void KernelSpec::validate() const {
  switch (kind) {
    case Kind::kLinear:
      return;
    case Kind::kPolynomial:
      if (degree < 1) throw InvalidParameter("polynomial kernel: degree must be >= 1");
      if (!(offset >= 0.0) || !std::isfinite(offset)) {
        throw InvalidParameter("polynomial kernel: offset must be >= 0");
      }
      return;
    case Kind::kRbf:
      if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameter("rbf kernel: gamma must be > 0");
      }
      return;
  }
}

std::string KernelSpec::name() const {
  switch (kind) {
    case Kind::kLinear:
      return "linear";
    case Kind::kPolynomial:
      return "polynomial";
    case Kind::kRbf:
      return "rbf";
  }
  return "unknown";
}

double kernel_eval(const KernelSpec& spec, const Vec& x, const Vec& z) {
  require_dim(z, x.size(), "kernel_eval");
  switch (spec.kind) {
    case KernelSpec::Kind::kLinear:
      return x.dot(z);
    case KernelSpec::Kind::kPolynomial:
      return std::pow(x.dot(z) + spec.offset, spec.degree);
    case KernelSpec::Kind::kRbf:
      return std::exp(-spec.gamma * (x - z).squaredNorm());
  }
  return 0.0;
}

KernelWemm::KernelWemm(KernelSpec spec, double b_reg) : spec_(spec), b_reg_(b_reg) {
  spec_.validate();
  if (!(b_reg > 1.0) || !std::isfinite(b_reg)) {
    throw InvalidRegularizer("KernelWemm: b must be > 1");
  }
}

Vec KernelWemm::kernel_row(const Vec& x) const {
  Vec k(static_cast<Eigen::Index>(support_.size()));
  for (std::size_t l = 0; l < support_.size(); ++l) {
    k(static_cast<Eigen::Index>(l)) = kernel_eval(spec_, x, support_[l]);
  }
  return k;
}

double KernelWemm::predict(const Vec& x) const {
  require_finite(x, "KernelWemm::predict");
  if (support_.empty()) return 0.0;
  return alpha_.dot(kernel_row(x));
}

void KernelWemm::update(const Vec& x, double y) {
  require_finite(x, "KernelWemm::update");
  if (!std::isfinite(y)) throw NonFiniteInput("KernelWemm::update: non-finite label");
  if (!support_.empty()) require_dim(x, support_.front().size(), "KernelWemm::update");

  const Eigen::Index prev = static_cast<Eigen::Index>(support_.size());
  const Vec k = kernel_row(x);
  const double residual = y - (prev > 0 ? alpha_.dot(k) : 0.0);
  const Vec g = beta_ * k;
  const double inv_b = 1.0 / b_reg_;

  alpha_.conservativeResize(prev + 1);
  alpha_.head(prev) += residual * g;
  alpha_(prev) = inv_b * residual;

  beta_.conservativeResize(prev + 1, prev + 1);
  beta_.topLeftCorner(prev, prev).noalias() -= g * g.transpose();
  beta_.row(prev).head(prev) = -inv_b * g.transpose();
  beta_.col(prev).head(prev) = -inv_b * g;
  beta_(prev, prev) = -inv_b * inv_b;

  support_.push_back(x);
}

}  // namespace wemm
