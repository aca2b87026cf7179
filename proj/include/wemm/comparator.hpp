#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wemm/linalg.hpp"
#include "wemm/stream.hpp"

namespace wemm {

// Closed-form batch comparators. Nothing here looks at a learner's state;
// every quantity is rebuilt from the stream and the weights.

struct BatchOptimum {
  Vec u;         // argmin b||u||^2 + sum a_s (y_s - u^T x_s)^2
  double f_min;  // the minimum value
};

// u = A^{-1} b_vec with A = bI + sum a x x^T, b_vec = sum a y x;
// f_min = sum a y^2 - b_vec^T A^{-1} b_vec. Weights must be positive and
// match the stream length.
BatchOptimum batch_optimum(const Stream& stream, std::span<const double> a, double b_reg);

std::vector<double> per_round_loss(const Stream& stream, const Vec& u);
double plain_loss(const Stream& stream, const Vec& u);
double weighted_loss(const Stream& stream, std::span<const double> a, const Vec& u);
// max_t (y_t - u^T x_t)^2. Throws EmptyStream on an empty stream.
double worst_example_loss(const Stream& stream, const Vec& u);

// Phi_t = min_u (b||u||^2 + L_t^a(u)) for t = 0..T (T + 1 values, Phi_0 = 0).
std::vector<double> prefix_optimum_values(const Stream& stream, std::span<const double> a,
                                          double b_reg);

// ln det(A_T / b) for A_T = bI + sum a_t x_t x_t^T.
double log_det_scaled(const Stream& stream, std::span<const double> a, double b_reg);

// Joint minimizer of
//   J = b||u_bar||^2 + c sum ||u_t - u_bar||^2 + sum a~_t (y_t - u_t^T x_t)^2.
// The inner minimization over u_t is closed form; the outer one reduces to
// batch_optimum with effective weights 1 / (1/a~_t + ||x_t||^2 / c).
struct NonstationaryOptimum {
  Vec u_bar;
  std::vector<Vec> u_t;
  std::vector<double> effective_weights;
  double V_m = 0.0;    // sum ||u_t - u_bar||^2
  double J_min = 0.0;  // b||u_bar||^2 + sum eff_t (y_t - u_bar^T x_t)^2
};

// Throws InvalidParameter if c <= 0 or some a~_t < 1.
NonstationaryOptimum nonstationary_optimum(const Stream& stream, std::span<const double> a_tilde,
                                           double b_reg, double c);

// Comparator quantities at one fixed vector u (by default the weighted
// batch optimum).
struct ComparatorReport {
  Vec u;
  bool u_is_optimum = true;
  double b_reg = 0.0;
  std::vector<double> weights;
  std::vector<double> per_round_loss;
  double L_T = 0.0;
  double L_T_weighted = 0.0;
  double S = 0.0;  // worst single-round loss of u, 0 for an empty stream
  double regularized_objective = 0.0;  // b||u||^2 + L_T^a(u)
  double log_det_A_over_b = 0.0;
  Eigen::Index dim = 0;
  std::size_t rounds = 0;
  double max_input_norm = 0.0;
  std::optional<NonstationaryOptimum> nonstationary;
};

ComparatorReport make_comparator_report(const Stream& stream, std::span<const double> a,
                                        double b_reg, const std::optional<Vec>& u = std::nullopt);

// A T-tuple comparator (u_1..u_T) anchored at u_bar.
struct DriftComparator {
  Vec u_bar;
  std::vector<Vec> u_t;
  std::vector<double> per_round_loss;  // (y_t - u_t^T x_t)^2
  double L_T = 0.0;
  double S = 0.0;
  double V_m = 0.0;
};

DriftComparator make_drift_comparator(const Stream& stream, Vec u_bar, std::vector<Vec> u_t);

}  // namespace wemm
