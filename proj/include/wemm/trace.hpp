#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wemm {

// How the per-round a_t of a run were chosen.
enum class WeightMode {
  kNone,      // learner has no example weights (baselines, kernel)
  kEquality,  // a_t = 1 / (1 - x^T A_{t-1}^{-1} x)
  kExternal,  // caller-supplied sequence
};

struct TraceRow {
  long t = 0;
  double y = 0.0;
  double yhat = 0.0;
  double loss = 0.0;
  std::optional<double> a_t;
  double cum_loss = 0.0;
};

// Per-round record of one learner over one stream.
struct RunTrace {
  std::string learner;
  double b_reg = 0.0;
  WeightMode weight_mode = WeightMode::kNone;
  std::vector<TraceRow> rows;
  // ln det(A_T / b) from the learner's own accumulator (WEMM only).
  std::optional<double> log_det_A_over_b;
  double wall_time_ms = 0.0;

  double total_loss() const { return rows.empty() ? 0.0 : rows.back().cum_loss; }
  // The recorded a_t sequence. Throws WeightModeMismatch when a row lacks one.
  std::vector<double> weights() const;
  void append(double y, double yhat, std::optional<double> a_t);
};

// Header "t,y,yhat,loss,a_t,cum_loss"; a_t is left empty when absent.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

// Rows with a_t on every line come back in kEquality mode, otherwise kNone.
// Throws ParseError with the 1-based line number.
RunTrace read_trace_csv(std::istream& in);

}  // namespace wemm
