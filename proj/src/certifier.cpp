#include "wemm/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wemm/errors.hpp"

namespace wemm {

namespace {

constexpr double kNormSlack = 1e-12;
constexpr double kFeasibilityMargin = 1e-12;

double k_factor(double b_reg) { return b_reg / (b_reg - 1.0); }

void require_equality_trace(const RunTrace& trace, const char* what) {
  if (trace.weight_mode != WeightMode::kEquality) {
    throw WeightModeMismatch(std::string(what) + ": trace '" + trace.learner +
                             "' was not produced under equality weights");
  }
}

// The comparator must have been built from the run's own weights.
std::vector<double> matched_weights(const RunTrace& trace, const ComparatorReport& comp,
                                    const char* what) {
  require_equality_trace(trace, what);
  auto a = trace.weights();
  if (a.size() != comp.weights.size()) {
    throw DimensionMismatch(std::string(what) + ": trace has " + std::to_string(a.size()) +
                            " rounds, comparator " + std::to_string(comp.weights.size()));
  }
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (std::abs(a[t] - comp.weights[t]) > 1e-12 * std::max(1.0, std::abs(a[t]))) {
      throw WeightModeMismatch(std::string(what) + ": comparator weights differ from the run at round " +
                               std::to_string(t + 1));
    }
  }
  return a;
}

void require_bounded_stationary(const ComparatorReport& comp, const char* what) {
  if (!(comp.b_reg > 1.0)) {
    throw PreconditionViolation(std::string(what) + ": requires b > 1");
  }
  if (comp.max_input_norm > 1.0 + kNormSlack) {
    throw PreconditionViolation(std::string(what) + ": max input norm " +
                                std::to_string(comp.max_input_norm) + " exceeds 1");
  }
}

void require_bounded_stream(const Stream& stream, double b_reg, const char* what) {
  if (!(b_reg > 1.0)) throw PreconditionViolation(std::string(what) + ": requires b > 1");
  const double m = stream.max_norm();
  if (m > 1.0 + kNormSlack) {
    throw PreconditionViolation(std::string(what) + ": max input norm " + std::to_string(m) +
                                " exceeds 1");
  }
}

void require_feasible_c(double b_reg, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InfeasibleParameters("c must be > 0");
  if (1.0 / b_reg + 1.0 / c > 1.0 + kFeasibilityMargin) {
    throw InfeasibleParameters("1/b + 1/c > 1 for b = " + std::to_string(b_reg) +
                               ", c = " + std::to_string(c));
  }
}

// c (1 - 1/b)^2 - (1 - 1/b); must be positive.
double drift_denominator(double b_reg, double c) {
  const double m = 1.0 - 1.0 / b_reg;
  const double den = c * m * m - m;
  if (!(den > 0.0)) {
    throw InfeasibleParameters("drift penalty denominator c(1-1/b)^2 - (1-1/b) is not positive");
  }
  return den;
}

}  // namespace

double BoundReport::term(const std::string& name) const {
  for (const auto& [key, value] : terms) {
    if (key == name) return value;
  }
  throw InvalidParameter("report " + theorem + " has no term '" + name + "'");
}

BoundReport make_bound_report(std::string theorem, double lhs,
                              std::vector<std::pair<std::string, double>> terms, double rel_tol,
                              double abs_tol) {
  BoundReport r;
  r.theorem = std::move(theorem);
  r.lhs = lhs;
  r.terms = std::move(terms);
  for (const auto& kv : r.terms) r.rhs += kv.second;
  r.slack = r.rhs - r.lhs;
  r.tol = abs_tol >= 0.0 ? abs_tol : rel_tol * (1.0 + std::abs(r.rhs));
  r.pass = r.slack >= -r.tol;
  return r;
}

BoundReport certify_theorem2(const RunTrace& trace, const ComparatorReport& comp, double rel_tol) {
  matched_weights(trace, comp, "certify_theorem2");
  auto r = make_bound_report("theorem2", trace.total_loss(),
                             {{"b*|u|^2", comp.b_reg * comp.u.squaredNorm()},
                              {"L^a(u)", comp.L_T_weighted}},
                             rel_tol);
  r.slack = -std::abs(r.rhs - r.lhs);
  r.pass = r.slack >= -r.tol;
  return r;
}

BoundReport certify_theorem2_external(const Stream& stream, std::span<const double> a,
                                      double b_reg, double rel_tol) {
  if (a.size() != stream.size()) {
    throw DimensionMismatch("certify_theorem2_external: weight length mismatch");
  }
  if (!(b_reg > 0.0)) throw InvalidRegularizer("certify_theorem2_external: b must be > 0");
  SymMat a_mat = SymMat::identity(stream.dim, b_reg);
  Vec b_vec = Vec::Zero(stream.dim);
  double loss = 0.0;
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const auto& ex = stream.examples[t];
    const Vec ax = solve_spd(a_mat, ex.x);
    const double q = ex.x.dot(ax);
    if (1.0 + a[t] * q - a[t] > kFeasibilityMargin) {
      throw PreconditionViolation("certify_theorem2_external: 1 + a q - a > 0 at round " +
                                  std::to_string(t + 1));
    }
    const double yhat = b_vec.dot(ax);
    loss += (ex.y - yhat) * (ex.y - yhat);
    a_mat = rank_one_update(a_mat, a[t], ex.x);
    b_vec += (a[t] * ex.y) * ex.x;
  }
  const auto opt = batch_optimum(stream, a, b_reg);
  return make_bound_report("theorem2_inequality", loss,
                           {{"b*|u|^2", b_reg * opt.u.squaredNorm()},
                            {"L^a(u)", weighted_loss(stream, a, opt.u)}},
                           rel_tol);
}

std::vector<BoundReport> certify_theorem3(const RunTrace& trace, const ComparatorReport& comp,
                                          double rel_tol) {
  matched_weights(trace, comp, "certify_theorem3");
  require_bounded_stationary(comp, "certify_theorem3");
  const double k = k_factor(comp.b_reg);
  const double log_term = k * comp.S * comp.log_det_A_over_b;
  const double reg = comp.b_reg * comp.u.squaredNorm();

  std::vector<BoundReport> out;
  out.push_back(make_bound_report("theorem3_gap", comp.L_T_weighted - comp.L_T,
                                  {{"k*S*ln|A_T/b|", log_term}}, rel_tol));
  out.push_back(make_bound_report("theorem3_regret", trace.total_loss() - comp.L_T,
                                  {{"b*|u|^2", reg}, {"k*S*ln|A_T/b|", log_term}}, rel_tol));
  const double d = static_cast<double>(comp.dim);
  const double T = static_cast<double>(comp.rounds);
  const double closed = comp.S * d * k * std::log1p(T / (d * (comp.b_reg - 1.0)));
  out.push_back(make_bound_report("theorem3_closed_form", reg + log_term,
                                  {{"b*|u|^2", reg}, {"S*d*k*ln(1+T/(d(b-1)))", closed}}, rel_tol,
                                  1e-9));
  return out;
}

double theorem4_term(double b_reg, double S, Eigen::Index d, double L) {
  if (S <= 0.0) return 0.0;
  const double sd = S * static_cast<double>(d);
  return k_factor(b_reg) * sd * (1.0 + std::log1p(L / sd));
}

std::vector<BoundReport> certify_theorem4(const RunTrace& trace, const ComparatorReport& comp,
                                          double rel_tol) {
  matched_weights(trace, comp, "certify_theorem4");
  require_bounded_stationary(comp, "certify_theorem4");
  const double term = theorem4_term(comp.b_reg, comp.S, comp.dim, comp.L_T);
  const double reg = comp.b_reg * comp.u.squaredNorm();
  std::vector<BoundReport> out;
  out.push_back(make_bound_report("theorem4_gap", comp.L_T_weighted - comp.L_T,
                                  {{"k*S*d*(1+ln(1+L/(S*d)))", term}}, rel_tol));
  out.push_back(make_bound_report("theorem4_regret", trace.total_loss() - comp.L_T,
                                  {{"b*|u|^2", reg}, {"k*S*d*(1+ln(1+L/(S*d)))", term}},
                                  rel_tol));
  return out;
}

std::vector<BoundReport> certify_weight_range(const RunTrace& trace, const Stream& stream) {
  require_equality_trace(trace, "certify_weight_range");
  const auto a = trace.weights();
  if (a.size() != stream.size()) {
    throw DimensionMismatch("certify_weight_range: trace and stream lengths differ");
  }
  if (!(trace.b_reg > 1.0)) throw PreconditionViolation("certify_weight_range: requires b > 1");
  double a_max = 1.0;
  double a_min = 1.0;
  if (!a.empty()) {
    a_max = *std::max_element(a.begin(), a.end());
    a_min = *std::min_element(a.begin(), a.end());
  }

  SymMat a_mat = SymMat::identity(stream.dim, trace.b_reg);
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const auto& x = stream.examples[t].x;
    a_mat = rank_one_update(a_mat, a[t], x);
    sum += a[t] * x.dot(solve_spd(a_mat, x));
  }
  const double log_det_term = log_det(SymMat(a_mat.matrix() / trace.b_reg));

  std::vector<BoundReport> out;
  out.push_back(make_bound_report("a_range_upper", a_max, {{"b/(b-1)", k_factor(trace.b_reg)}},
                                  1e-9));
  out.push_back(make_bound_report("a_range_lower", 1.0, {{"min a_t", a_min}}, 1e-9));
  out.push_back(make_bound_report("log_det_sum", sum, {{"ln|A_T/b|", log_det_term}}, 1e-9));
  return out;
}

std::vector<std::size_t> lemma5_index_set(std::span<const double> losses,
                                          std::span<const double> a, double S) {
  if (!(S > 0.0)) throw InvalidParameter("lemma 5: S must be > 0");
  if (losses.size() != a.size()) throw DimensionMismatch("lemma 5: length mismatch");
  const double total = std::accumulate(losses.begin(), losses.end(), 0.0);
  const double ratio = std::ceil(total / S);
  const std::size_t count =
      ratio <= 0.0 ? 0 : std::min(a.size(), static_cast<std::size_t>(ratio));
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });
  idx.resize(count);
  return idx;
}

bool check_lemma5(std::span<const double> losses, std::span<const double> a, double S) {
  const auto idx = lemma5_index_set(losses, a, S);
  double lhs = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) lhs += losses[t] * (a[t] - 1.0);
  double rhs = 0.0;
  for (std::size_t i : idx) rhs += a[i] - 1.0;
  return lhs <= S * rhs + 1e-9;
}

BoundReport certify_lemma5(const ComparatorReport& comp) {
  double lhs = 0.0;
  double selected = 0.0;
  if (comp.S > 0.0) {
    const auto& a = comp.weights;
    for (std::size_t t = 0; t < a.size(); ++t) lhs += comp.per_round_loss[t] * (a[t] - 1.0);
    for (std::size_t i : lemma5_index_set(comp.per_round_loss, a, comp.S)) selected += a[i] - 1.0;
  }
  return make_bound_report("lemma5", lhs, {{"S*sum_I(a-1)", comp.S * selected}}, 1e-9);
}

double lemma6_realized_sum(const SymMat& a0, const std::vector<Vec>& inputs) {
  Mat sigma = inverse_spd(a0).matrix();
  double sum = 0.0;
  for (const auto& x : inputs) {
    require_dim(x, a0.dim(), "lemma6_realized_sum");
    const Vec sx = sigma * x;
    const double q = x.dot(sx);
    if (1.0 - q <= kFeasibilityMargin) throw DegenerateWeight("lemma 6: 1 - q <= 0");
    sum += 1.0 / (1.0 - q);
    // With a = 1/(1-q), Sherman-Morrison reduces to Sigma - Sigma x x^T Sigma.
    sigma -= sx * sx.transpose();
  }
  return sum;
}

double lemma6_rhs(std::span<const double> eigenvalues, std::span<const int> counts) {
  if (eigenvalues.size() != counts.size()) throw DimensionMismatch("lemma6_rhs: size mismatch");
  double total = 0.0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] < 0) throw InvalidParameter("lemma6_rhs: negative count");
    total += counts[s];
    for (int r = 1; r <= counts[s]; ++r) total += 1.0 / (eigenvalues[s] + r - 2.0);
  }
  return total;
}

double lemma6_bound(std::span<const double> eigenvalues, int tau) {
  const std::size_t d = eigenvalues.size();
  if (d == 0) throw InvalidParameter("lemma6_bound: empty spectrum");
  std::vector<int> counts(d, 0);
  double best = -std::numeric_limits<double>::infinity();
  auto recurse = [&](auto&& self, std::size_t s, int left) -> void {
    if (s + 1 == d) {
      counts[s] = left;
      best = std::max(best, lemma6_rhs(eigenvalues, counts));
      return;
    }
    for (int n = 0; n <= left; ++n) {
      counts[s] = n;
      self(self, s + 1, left - n);
    }
  };
  recurse(recurse, 0, tau);
  return best;
}

std::vector<Vec> lemma6_directions(Eigen::Index d) {
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs.push_back(Vec::Ones(1));
  } else if (d == 2) {
    for (int k = 0; k < 8; ++k) {
      const double angle = k * std::numbers::pi / 8.0;
      Vec v(2);
      v << std::cos(angle), std::sin(angle);
      dirs.push_back(v);
    }
  } else if (d == 3) {
    for (int j = 0; j < 3; ++j) dirs.push_back(Vec::Unit(3, j));
    for (double s1 : {1.0, -1.0}) {
      for (double s2 : {1.0, -1.0}) {
        Vec v(3);
        v << s1, s2, 1.0;
        dirs.push_back(v / std::sqrt(3.0));
      }
    }
    Vec v(3);
    v << 1.0, 1.0, 0.0;
    dirs.push_back(v / std::sqrt(2.0));
  } else {
    throw InstanceTooLarge("lemma 6 grid is defined for d <= 3");
  }
  return dirs;
}

Lemma6Result lemma6_search(double b_reg, Eigen::Index d, int tau) {
  if (!(b_reg > 1.0)) throw InvalidParameter("lemma 6 requires b > 1");
  if (d < 1 || d > 3 || tau > 6) {
    throw InstanceTooLarge("lemma 6 search is capped at d <= 3, tau <= 6");
  }
  if (tau < 0) throw InvalidParameter("lemma 6: tau must be >= 0");

  const SymMat a0 = SymMat::identity(d, b_reg);
  const auto eig = sym_eigen(a0);
  auto dirs = lemma6_directions(d);
  for (Eigen::Index s = 0; s < d; ++s) dirs.push_back(eig.vectors.col(s));

  Lemma6Result res;
  std::vector<double> lambdas(eig.values.data(), eig.values.data() + eig.values.size());
  res.bound = lemma6_bound(lambdas, tau);

  std::vector<Mat> sigma(static_cast<std::size_t>(tau) + 1);
  sigma[0] = inverse_spd(a0).matrix();
  auto dfs = [&](auto&& self, int depth, double sum) -> void {
    if (depth == tau) {
      ++res.sequences;
      res.worst_realized = std::max(res.worst_realized, sum);
      return;
    }
    const Mat& cur = sigma[static_cast<std::size_t>(depth)];
    for (const auto& x : dirs) {
      const Vec sx = cur * x;
      const double q = x.dot(sx);
      sigma[static_cast<std::size_t>(depth) + 1] = cur - sx * sx.transpose();
      self(self, depth + 1, sum + 1.0 / (1.0 - q));
    }
  };
  dfs(dfs, 0, 0.0);
  res.holds = res.worst_realized <= res.bound + 1e-9;
  return res;
}

bool check_lemma6(double b_reg, Eigen::Index d, int tau) {
  return lemma6_search(b_reg, d, tau).holds;
}

std::vector<double> nonstationary_weights(const RunTrace& trace, const Stream& stream, double c) {
  require_feasible_c(trace.b_reg, c);
  const auto a = trace.weights();
  if (a.size() != stream.size()) {
    throw DimensionMismatch("nonstationary_weights: trace and stream lengths differ");
  }
  std::vector<double> out;
  out.reserve(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double den = 1.0 / a[t] - stream.examples[t].x.squaredNorm() / c;
    if (den <= kFeasibilityMargin) {
      throw InfeasibleParameters("nonstationary weight denominator <= 0 at round " +
                                 std::to_string(t + 1));
    }
    out.push_back(1.0 / den);
  }
  return out;
}

double optimal_drift_penalty(double b_reg, double S, std::size_t T, double V_m) {
  if (!(b_reg > 1.0)) throw InvalidParameter("c_V requires b > 1");
  if (!(V_m > 0.0)) throw InvalidParameter("c_V requires V_m > 0");
  return k_factor(b_reg) * (1.0 + std::sqrt(S * static_cast<double>(T) / V_m));
}

namespace {

struct DriftContext {
  std::vector<double> a;
  double b_reg;
  double k;
  double log_det_term;
  double reg;
  double regret;
};

DriftContext drift_context(const RunTrace& trace, const Stream& stream,
                           const DriftComparator& drift) {
  require_equality_trace(trace, "certify_corollaries");
  require_bounded_stream(stream, trace.b_reg, "certify_corollaries");
  if (drift.u_t.size() != stream.size()) {
    throw DimensionMismatch("certify_corollaries: comparator length differs from the stream");
  }
  DriftContext ctx;
  ctx.a = trace.weights();
  if (ctx.a.size() != stream.size()) {
    throw DimensionMismatch("certify_corollaries: trace and stream lengths differ");
  }
  ctx.b_reg = trace.b_reg;
  ctx.k = k_factor(trace.b_reg);
  ctx.log_det_term = ctx.k * drift.S * log_det_scaled(stream, ctx.a, trace.b_reg);
  ctx.reg = trace.b_reg * drift.u_bar.squaredNorm();
  ctx.regret = trace.total_loss() - drift.L_T;
  return ctx;
}

std::vector<BoundReport> stationary_reduction(const RunTrace& trace, const Stream& stream,
                                              const DriftComparator& drift, double rel_tol) {
  const auto a = trace.weights();
  const auto comp = make_comparator_report(stream, a, trace.b_reg, drift.u_bar);
  return certify_theorem3(trace, comp, rel_tol);
}

}  // namespace

std::vector<BoundReport> certify_corollaries(const RunTrace& trace, const Stream& stream,
                                             const DriftComparator& drift, double c,
                                             double rel_tol) {
  if (drift.V_m <= 0.0) return stationary_reduction(trace, stream, drift, rel_tol);
  const auto ctx = drift_context(trace, stream, drift);
  require_feasible_c(ctx.b_reg, c);
  const double den = drift_denominator(ctx.b_reg, c);
  const auto a_tilde = nonstationary_weights(trace, stream, c);

  double weighted = 0.0;
  for (std::size_t t = 0; t < a_tilde.size(); ++t) weighted += a_tilde[t] * drift.per_round_loss[t];
  const double T = static_cast<double>(stream.size());
  const double drift_term = T * drift.S / den;
  const double penalty = c * drift.V_m;
  const double t4 = theorem4_term(ctx.b_reg, drift.S, stream.dim, drift.L_T);

  std::vector<BoundReport> out;
  out.push_back(make_bound_report("corollary9", trace.total_loss(),
                                  {{"b*|u_bar|^2", ctx.reg},
                                   {"c*V_m", penalty},
                                   {"L^a~(u_1..u_T)", weighted}},
                                  rel_tol));
  out.push_back(make_bound_report("corollary10", weighted - drift.L_T,
                                  {{"k*S*ln|A_T/b|", ctx.log_det_term},
                                   {"T*S/(c(1-1/b)^2-(1-1/b))", drift_term}},
                                  rel_tol));
  out.push_back(make_bound_report("corollary11", ctx.regret,
                                  {{"b*|u_bar|^2", ctx.reg},
                                   {"c*V_m", penalty},
                                   {"k*S*ln|A_T/b|", ctx.log_det_term},
                                   {"T*S/(c(1-1/b)^2-(1-1/b))", drift_term}},
                                  rel_tol));
  out.push_back(make_bound_report("corollary11_theorem4", ctx.regret,
                                  {{"b*|u_bar|^2", ctx.reg},
                                   {"c*V_m", penalty},
                                   {"k*S*d*(1+ln(1+L/(S*d)))", t4},
                                   {"T*S/(c(1-1/b)^2-(1-1/b))", drift_term}},
                                  rel_tol));
  const auto optimal = certify_corollary11_optimal(trace, stream, drift, rel_tol);
  out.insert(out.end(), optimal.begin(), optimal.end());
  return out;
}

std::vector<BoundReport> certify_corollary11_optimal(const RunTrace& trace, const Stream& stream,
                                                     const DriftComparator& drift,
                                                     double rel_tol) {
  if (drift.V_m <= 0.0) return stationary_reduction(trace, stream, drift, rel_tol);
  const auto ctx = drift_context(trace, stream, drift);
  const double T = static_cast<double>(stream.size());
  const double c_v = optimal_drift_penalty(ctx.b_reg, drift.S, stream.size(), drift.V_m);
  require_feasible_c(ctx.b_reg, c_v);
  const double drift_term = ctx.k * (drift.V_m + 2.0 * std::sqrt(drift.S * T * drift.V_m));
  auto r = make_bound_report("corollary11_cV", ctx.regret,
                             {{"b*|u_bar|^2", ctx.reg},
                              {"k*S*ln|A_T/b|", ctx.log_det_term},
                              {"k*(V_m+2*sqrt(S*T*V_m))", drift_term}},
                             rel_tol);
  return {r};
}

}  // namespace wemm
