#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wemm/linalg.hpp"

namespace wemm {

struct Example {
  Vec x;
  double y = 0.0;
};

// An ordered sequence of (x_t, y_t), t = 1..T, all x of one dimension.
struct Stream {
  std::vector<Example> examples;
  Eigen::Index dim = 0;
  std::string generator = "file";
  std::uint64_t seed = 0;
  // Multiplier already applied to every x (1 when untouched).
  double prescale_factor = 1.0;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
  double max_norm() const;

  // Throws DimensionMismatch or NonFiniteInput on a malformed example.
  void validate() const;
};

// Round-trip-exact decimal for a double (17 significant digits).
std::string format_double(double v);

// CSV with header "t,y,x_0,...,x_{d-1}", one row per round, t starting at 1.
void write_stream_csv(std::ostream& out, const Stream& stream);

// Parses the CSV above. Throws ParseError carrying the 1-based file line.
Stream read_stream_csv(std::istream& in);

}  // namespace wemm
