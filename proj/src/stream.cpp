#include "wemm/stream.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace wemm {

double Stream::max_norm() const {
  double m = 0.0;
  for (const auto& ex : examples) m = std::max(m, ex.x.norm());
  return m;
}

void Stream::validate() const {
  for (std::size_t t = 0; t < examples.size(); ++t) {
    const auto& ex = examples[t];
    if (ex.x.size() != dim) {
      throw DimensionMismatch("stream round " + std::to_string(t + 1) + ": dimension " +
                              std::to_string(ex.x.size()) + " != " + std::to_string(dim));
    }
    if (!ex.x.allFinite() || !std::isfinite(ex.y)) {
      throw NonFiniteInput("stream round " + std::to_string(t + 1) + ": non-finite value");
    }
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_stream_csv(std::ostream& out, const Stream& stream) {
  out << "t,y";
  for (Eigen::Index j = 0; j < stream.dim; ++j) out << ",x_" << j;
  out << '\n';
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const auto& ex = stream.examples[t];
    out << (t + 1) << ',' << format_double(ex.y);
    for (Eigen::Index j = 0; j < ex.x.size(); ++j) out << ',' << format_double(ex.x(j));
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, std::size_t line_no, const char* column) {
  std::string trimmed = cell;
  while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) trimmed.pop_back();
  std::size_t start = trimmed.find_first_not_of(' ');
  if (start == std::string::npos) throw ParseError(line_no, std::string("empty ") + column);
  trimmed = trimmed.substr(start);
  try {
    std::size_t used = 0;
    const double v = std::stod(trimmed, &used);
    if (used != trimmed.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("bad ") + column + " value '" + cell + "'");
  }
}

}  // namespace

Stream read_stream_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_commas(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "y") {
    throw ParseError(line_no, "header must be t,y,x_0,...");
  }
  Stream stream;
  stream.dim = static_cast<Eigen::Index>(header.size() - 2);
  for (Eigen::Index j = 0; j < stream.dim; ++j) {
    if (header[static_cast<std::size_t>(j) + 2] != "x_" + std::to_string(j)) {
      throw ParseError(line_no, "header column " + std::to_string(j + 2) + " must be x_" +
                                    std::to_string(j));
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " columns, got " +
                                    std::to_string(cells.size()));
    }
    Example ex;
    ex.y = parse_cell(cells[1], line_no, "y");
    ex.x.resize(stream.dim);
    for (Eigen::Index j = 0; j < stream.dim; ++j) {
      ex.x(j) = parse_cell(cells[static_cast<std::size_t>(j) + 2], line_no, "x");
    }
    stream.examples.push_back(std::move(ex));
  }
  return stream;
}

}  // namespace wemm
