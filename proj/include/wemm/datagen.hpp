#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wemm/linalg.hpp"
#include "wemm/stream.hpp"

namespace wemm {

// SplitMix64. Reference outputs for seed 0 start
// 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Top 53 bits scaled to [0, 1).
  double uniform();
  // Box-Muller on two uniforms; every call consumes exactly two draws.
  double normal();
  Vec normal_vector(Eigen::Index d);
  // Uniform on the unit sphere (normalized Gaussian, redrawn if zero).
  Vec unit_vector(Eigen::Index d);

 private:
  std::uint64_t state_;
};

enum class GeneratorKind { kRealizable, kGaussianNoise, kDrift, kUnitSphereEdge };

std::string generator_name(GeneratorKind kind);
GeneratorKind parse_generator(const std::string& name);  // InvalidSpec on unknown

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRealizable;
  Eigen::Index d = 1;
  std::size_t T = 0;
  std::uint64_t seed = 0;
  double input_scale = 1.0;
  double sigma = 0.0;        // gaussian_noise, unit_sphere_edge
  double step = 0.0;         // drift
  double anchor_pull = 0.0;  // drift

  // Throws InvalidSpec.
  void validate() const;
};

struct GroundTruth {
  Vec u_true;                // the fixed target; u_bar for drift
  std::vector<Vec> u_t;      // drift only, one per round
  double V_m = 0.0;          // sum ||u_t - u_bar||^2
};

struct Generated {
  Stream stream;
  GroundTruth truth;
};

// Draw order: u_true (d normals), then per round x_t, then the noise or
// drift draws for that round. Ball inputs are direction * scale * U^{1/d};
// sphere inputs sit at radius input_scale.
Generated generate(const GeneratorSpec& spec);

}  // namespace wemm
