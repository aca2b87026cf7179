#include "wemm/trace.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "wemm/errors.hpp"
#include "wemm/stream.hpp"

namespace wemm {

std::vector<double> RunTrace::weights() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.a_t) {
      throw WeightModeMismatch("trace '" + learner + "' has no a_t at round " +
                               std::to_string(row.t));
    }
    out.push_back(*row.a_t);
  }
  return out;
}

void RunTrace::append(double y, double yhat, std::optional<double> a_t) {
  TraceRow row;
  row.t = static_cast<long>(rows.size()) + 1;
  row.y = y;
  row.yhat = yhat;
  row.loss = (y - yhat) * (y - yhat);
  row.a_t = a_t;
  row.cum_loss = total_loss() + row.loss;
  rows.push_back(row);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "t,y,yhat,loss,a_t,cum_loss\n";
  for (const auto& row : trace.rows) {
    out << row.t << ',' << format_double(row.y) << ',' << format_double(row.yhat) << ','
        << format_double(row.loss) << ',';
    if (row.a_t) out << format_double(*row.a_t);
    out << ',' << format_double(row.cum_loss) << '\n';
  }
}

namespace {

double parse_number(const std::string& cell, std::size_t line_no, const char* column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("bad ") + column + " value '" + cell + "'");
  }
}

}  // namespace

RunTrace read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,y,yhat,loss,a_t,cum_loss") {
    throw ParseError(1, "header must be t,y,yhat,loss,a_t,cum_loss");
  }
  RunTrace trace;
  bool all_weighted = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 6) {
      throw ParseError(line_no, "expected 6 columns, got " + std::to_string(cells.size()));
    }
    TraceRow row;
    row.t = static_cast<long>(parse_number(cells[0], line_no, "t"));
    row.y = parse_number(cells[1], line_no, "y");
    row.yhat = parse_number(cells[2], line_no, "yhat");
    row.loss = parse_number(cells[3], line_no, "loss");
    if (!cells[4].empty()) {
      row.a_t = parse_number(cells[4], line_no, "a_t");
    } else {
      all_weighted = false;
    }
    row.cum_loss = parse_number(cells[5], line_no, "cum_loss");
    if (row.t != static_cast<long>(trace.rows.size()) + 1) {
      throw ParseError(line_no, "rounds must be numbered 1, 2, ...");
    }
    trace.rows.push_back(row);
  }
  trace.weight_mode =
      (all_weighted && !trace.rows.empty()) ? WeightMode::kEquality : WeightMode::kNone;
  return trace;
}

}  // namespace wemm
