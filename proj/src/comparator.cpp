#include "wemm/comparator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wemm {

namespace {

void require_weights(const Stream& stream, std::span<const double> a, const char* what) {
  if (a.size() != stream.size()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.size()) +
                            " weights for " + std::to_string(stream.size()) + " rounds");
  }
  for (double w : a) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidParameter(std::string(what) + ": weights must be positive and finite");
    }
  }
}

void require_positive_b(double b_reg, const char* what) {
  if (!(b_reg > 0.0) || !std::isfinite(b_reg)) {
    throw InvalidParameter(std::string(what) + ": b must be > 0");
  }
}

struct Accumulators {
  SymMat a_mat;
  Vec b_vec;
  double weighted_y2 = 0.0;
};

Accumulators accumulate(const Stream& stream, std::span<const double> a, double b_reg) {
  Accumulators acc{SymMat::identity(stream.dim, b_reg), Vec::Zero(stream.dim), 0.0};
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const auto& ex = stream.examples[t];
    acc.a_mat = rank_one_update(acc.a_mat, a[t], ex.x);
    acc.b_vec += (a[t] * ex.y) * ex.x;
    acc.weighted_y2 += a[t] * ex.y * ex.y;
  }
  return acc;
}

double sq(double v) { return v * v; }

}  // namespace

BatchOptimum batch_optimum(const Stream& stream, std::span<const double> a, double b_reg) {
  require_weights(stream, a, "batch_optimum");
  require_positive_b(b_reg, "batch_optimum");
  const auto acc = accumulate(stream, a, b_reg);
  Vec u = solve_spd(acc.a_mat, acc.b_vec);
  const double f_min = acc.weighted_y2 - acc.b_vec.dot(u);
  return {std::move(u), f_min};
}

std::vector<double> per_round_loss(const Stream& stream, const Vec& u) {
  require_dim(u, stream.dim, "per_round_loss");
  std::vector<double> out;
  out.reserve(stream.size());
  for (const auto& ex : stream.examples) out.push_back(sq(ex.y - u.dot(ex.x)));
  return out;
}

double plain_loss(const Stream& stream, const Vec& u) {
  double total = 0.0;
  for (double l : per_round_loss(stream, u)) total += l;
  return total;
}

double weighted_loss(const Stream& stream, std::span<const double> a, const Vec& u) {
  if (a.size() != stream.size()) throw DimensionMismatch("weighted_loss: length mismatch");
  const auto losses = per_round_loss(stream, u);
  double total = 0.0;
  for (std::size_t t = 0; t < losses.size(); ++t) total += a[t] * losses[t];
  return total;
}

double worst_example_loss(const Stream& stream, const Vec& u) {
  if (stream.empty()) throw EmptyStream("worst_example_loss: empty stream");
  const auto losses = per_round_loss(stream, u);
  return *std::max_element(losses.begin(), losses.end());
}

std::vector<double> prefix_optimum_values(const Stream& stream, std::span<const double> a,
                                          double b_reg) {
  require_weights(stream, a, "prefix_optimum_values");
  require_positive_b(b_reg, "prefix_optimum_values");
  std::vector<double> phi{0.0};
  phi.reserve(stream.size() + 1);
  SymMat a_mat = SymMat::identity(stream.dim, b_reg);
  Vec b_vec = Vec::Zero(stream.dim);
  double weighted_y2 = 0.0;
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const auto& ex = stream.examples[t];
    a_mat = rank_one_update(a_mat, a[t], ex.x);
    b_vec += (a[t] * ex.y) * ex.x;
    weighted_y2 += a[t] * ex.y * ex.y;
    phi.push_back(weighted_y2 - b_vec.dot(solve_spd(a_mat, b_vec)));
  }
  return phi;
}

double log_det_scaled(const Stream& stream, std::span<const double> a, double b_reg) {
  require_weights(stream, a, "log_det_scaled");
  require_positive_b(b_reg, "log_det_scaled");
  const auto acc = accumulate(stream, a, b_reg);
  return log_det(SymMat(acc.a_mat.matrix() / b_reg));
}

NonstationaryOptimum nonstationary_optimum(const Stream& stream, std::span<const double> a_tilde,
                                           double b_reg, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidParameter("nonstationary_optimum: c must be > 0");
  }
  if (a_tilde.size() != stream.size()) {
    throw DimensionMismatch("nonstationary_optimum: weight length mismatch");
  }
  for (double w : a_tilde) {
    if (!(w >= 1.0) || !std::isfinite(w)) {
      throw InvalidParameter("nonstationary_optimum: weights must be >= 1");
    }
  }

  NonstationaryOptimum out;
  out.effective_weights.reserve(stream.size());
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const double norm2 = stream.examples[t].x.squaredNorm();
    out.effective_weights.push_back(1.0 / (1.0 / a_tilde[t] + norm2 / c));
  }

  out.u_bar = batch_optimum(stream, out.effective_weights, b_reg).u;
  out.J_min = b_reg * out.u_bar.squaredNorm();
  out.u_t.reserve(stream.size());
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const auto& ex = stream.examples[t];
    const double eff = out.effective_weights[t];
    const double residual = ex.y - out.u_bar.dot(ex.x);
    // c^{-1} / (a~^{-1} + c^{-1}||x||^2) = eff / c
    Vec u = out.u_bar + (eff / c * residual) * ex.x;
    out.V_m += (u - out.u_bar).squaredNorm();
    out.J_min += eff * residual * residual;
    out.u_t.push_back(std::move(u));
  }
  return out;
}

ComparatorReport make_comparator_report(const Stream& stream, std::span<const double> a,
                                        double b_reg, const std::optional<Vec>& u) {
  require_weights(stream, a, "make_comparator_report");
  ComparatorReport r;
  r.b_reg = b_reg;
  r.weights.assign(a.begin(), a.end());
  r.dim = stream.dim;
  r.rounds = stream.size();
  r.max_input_norm = stream.max_norm();
  if (u) {
    require_dim(*u, stream.dim, "make_comparator_report");
    r.u = *u;
    r.u_is_optimum = false;
  } else {
    r.u = batch_optimum(stream, a, b_reg).u;
  }
  r.per_round_loss = per_round_loss(stream, r.u);
  for (std::size_t t = 0; t < r.per_round_loss.size(); ++t) {
    r.L_T += r.per_round_loss[t];
    r.L_T_weighted += a[t] * r.per_round_loss[t];
    r.S = std::max(r.S, r.per_round_loss[t]);
  }
  r.regularized_objective = b_reg * r.u.squaredNorm() + r.L_T_weighted;
  r.log_det_A_over_b = log_det_scaled(stream, a, b_reg);
  return r;
}

DriftComparator make_drift_comparator(const Stream& stream, Vec u_bar, std::vector<Vec> u_t) {
  require_dim(u_bar, stream.dim, "make_drift_comparator");
  if (u_t.size() != stream.size()) {
    throw DimensionMismatch("make_drift_comparator: need one comparator per round");
  }
  DriftComparator d;
  d.per_round_loss.reserve(stream.size());
  for (std::size_t t = 0; t < stream.size(); ++t) {
    require_dim(u_t[t], stream.dim, "make_drift_comparator");
    const auto& ex = stream.examples[t];
    const double loss = sq(ex.y - u_t[t].dot(ex.x));
    d.per_round_loss.push_back(loss);
    d.L_T += loss;
    d.S = std::max(d.S, loss);
    d.V_m += (u_t[t] - u_bar).squaredNorm();
  }
  d.u_bar = std::move(u_bar);
  d.u_t = std::move(u_t);
  return d;
}

}  // namespace wemm
