#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "wemm/datagen.hpp"
#include "wemm/linalg.hpp"
#include "wemm/stream.hpp"

namespace wemm::testing {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Well-conditioned SPD matrix: Q^T Q + d I from seeded normals.
inline SymMat random_spd(Eigen::Index d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Mat q(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) q(i, j) = rng.normal();
  }
  return SymMat(Mat(q.transpose() * q + static_cast<double>(d) * Mat::Identity(d, d)));
}

inline Stream noisy_stream(Eigen::Index d, std::size_t T, double sigma, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = sigma > 0.0 ? GeneratorKind::kGaussianNoise : GeneratorKind::kRealizable;
  spec.d = d;
  spec.T = T;
  spec.seed = seed;
  spec.sigma = sigma;
  return generate(spec).stream;
}

inline Stream single(const Vec& x, double y) {
  Stream s;
  s.dim = x.size();
  s.examples.push_back({x, y});
  return s;
}

inline std::string golden_dir() {
  if (const char* env = std::getenv("WEMM_GOLDEN_DIR")) return env;
  return WEMM_DEFAULT_GOLDEN_DIR;
}

}  // namespace wemm::testing
