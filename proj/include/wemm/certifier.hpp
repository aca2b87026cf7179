#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wemm/comparator.hpp"
#include "wemm/stream.hpp"
#include "wemm/trace.hpp"

namespace wemm {

inline constexpr double kRelativeTolerance = 1e-6;

// One numeric certificate. rhs is the sum of terms, in order.
// pass <=> slack >= -tol.
struct BoundReport {
  std::string theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> terms;

  double term(const std::string& name) const;
};

// One-sided: slack = rhs - lhs, tol = rel_tol * (1 + |rhs|), or the
// absolute tolerance when abs_tol >= 0.
BoundReport make_bound_report(std::string theorem, double lhs,
                              std::vector<std::pair<std::string, double>> terms,
                              double rel_tol = kRelativeTolerance, double abs_tol = -1.0);

// L_T(WEMM) = b||u*||^2 + L^a(u*). Two-sided: slack = -|rhs - lhs|.
// The comparator report must be built from the trace's own a_t.
BoundReport certify_theorem2(const RunTrace& trace, const ComparatorReport& comp,
                             double rel_tol = kRelativeTolerance);

// The inequality form for caller-chosen weights. Runs the last-step
// predictor b_{t-1}^T A_{t-1}^{-1} x_t from scratch and requires
// 1 + a q - a <= 0 every round (PreconditionViolation otherwise).
BoundReport certify_theorem2_external(const Stream& stream, std::span<const double> a,
                                      double b_reg, double rel_tol = kRelativeTolerance);

// Reports "theorem3_gap", "theorem3_regret" and "theorem3_closed_form"
// (log-det regret bound vs the d ln(1 + T/(d(b-1))) form, absolute 1e-9).
std::vector<BoundReport> certify_theorem3(const RunTrace& trace, const ComparatorReport& comp,
                                          double rel_tol = kRelativeTolerance);

// Reports "theorem4_gap" and "theorem4_regret". The S d [1 + ln(...)]
// term is 0 when S = 0.
std::vector<BoundReport> certify_theorem4(const RunTrace& trace, const ComparatorReport& comp,
                                          double rel_tol = kRelativeTolerance);

// k S d [1 + ln(1 + L / (S d))] with k = b/(b-1); 0 when S = 0.
double theorem4_term(double b_reg, double S, Eigen::Index d, double L);

// "a_range_upper": max a_t <= b/(b-1); "a_range_lower": 1 <= min a_t;
// "log_det_sum": sum a_t x_t^T A_t^{-1} x_t <= ln det(A_T/b), with A_t
// rebuilt from the stream.
std::vector<BoundReport> certify_weight_range(const RunTrace& trace, const Stream& stream);

// sum l_t (a_t - 1) <= S sum_{t in I} (a_t - 1) within 1e-9, I the
// ceil(sum l / S) largest a_t (ties to the earlier round).
bool check_lemma5(std::span<const double> losses, std::span<const double> a, double S);
std::vector<std::size_t> lemma5_index_set(std::span<const double> losses,
                                          std::span<const double> a, double S);

// The same inequality at the comparator's losses and weights, as a report.
// Holds trivially (0 <= 0) when S = 0.
BoundReport certify_lemma5(const ComparatorReport& comp);

// Sum of a_t produced by the equality weights from A_0 on the inputs.
double lemma6_realized_sum(const SymMat& a0, const std::vector<Vec>& inputs);
// tau + sum_s sum_{r=1}^{n_s} 1/(lambda_s + r - 2).
double lemma6_rhs(std::span<const double> eigenvalues, std::span<const int> counts);
// Max of lemma6_rhs over all allocations with sum n_s = tau.
double lemma6_bound(std::span<const double> eigenvalues, int tau);

struct Lemma6Result {
  bool holds = false;
  double worst_realized = 0.0;
  double bound = 0.0;
  std::size_t sequences = 0;
};

// Exhaustive search over every length-tau sequence drawn from a fixed
// direction grid plus the eigenvectors of A_0 = bI. d <= 3, tau <= 6.
Lemma6Result lemma6_search(double b_reg, Eigen::Index d, int tau);
bool check_lemma6(double b_reg, Eigen::Index d, int tau);
std::vector<Vec> lemma6_directions(Eigen::Index d);

// a~_t = 1 / (1/a_t - ||x_t||^2 / c). InfeasibleParameters when
// 1/b + 1/c > 1 or a denominator is <= 1e-12.
std::vector<double> nonstationary_weights(const RunTrace& trace, const Stream& stream, double c);

// c_V = k (1 + sqrt(S T / V_m)), V_m > 0.
double optimal_drift_penalty(double b_reg, double S, std::size_t T, double V_m);

// Reports "corollary9", "corollary10", "corollary11", "corollary11_theorem4"
// at the caller's c and "corollary11_cV" at c_V. When V_m = 0 the result
// is certify_theorem3 at u = u_bar.
std::vector<BoundReport> certify_corollaries(const RunTrace& trace, const Stream& stream,
                                             const DriftComparator& drift, double c,
                                             double rel_tol = kRelativeTolerance);

// The c_V report alone; also routes V_m = 0 to the theorem3 reports.
std::vector<BoundReport> certify_corollary11_optimal(const RunTrace& trace, const Stream& stream,
                                                     const DriftComparator& drift,
                                                     double rel_tol = kRelativeTolerance);

}  // namespace wemm
