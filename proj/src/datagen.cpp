#include "wemm/datagen.hpp"

#include <cmath>
#include <numbers>

#include "wemm/errors.hpp"

namespace wemm {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec SplitMix64::normal_vector(Eigen::Index d) {
  Vec v(d);
  for (Eigen::Index j = 0; j < d; ++j) v(j) = normal();
  return v;
}

Vec SplitMix64::unit_vector(Eigen::Index d) {
  for (;;) {
    Vec v = normal_vector(d);
    const double n = v.norm();
    if (n > 0.0) return v / n;
  }
}

std::string generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kRealizable: return "realizable";
    case GeneratorKind::kGaussianNoise: return "gaussian_noise";
    case GeneratorKind::kDrift: return "drift";
    case GeneratorKind::kUnitSphereEdge: return "unit_sphere_edge";
  }
  return "unknown";
}

GeneratorKind parse_generator(const std::string& name) {
  if (name == "realizable") return GeneratorKind::kRealizable;
  if (name == "gaussian_noise") return GeneratorKind::kGaussianNoise;
  if (name == "drift") return GeneratorKind::kDrift;
  if (name == "unit_sphere_edge") return GeneratorKind::kUnitSphereEdge;
  throw InvalidSpec("unknown generator kind '" + name + "'");
}

void GeneratorSpec::validate() const {
  if (d < 1) throw InvalidSpec("d must be >= 1");
  if (!(input_scale > 0.0 && input_scale <= 1.0)) {
    throw InvalidSpec("input_scale must be in (0, 1]");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidSpec("sigma must be >= 0");
  if (!(step >= 0.0) || !std::isfinite(step)) throw InvalidSpec("step must be >= 0");
  if (!(anchor_pull >= 0.0 && anchor_pull <= 1.0)) {
    throw InvalidSpec("anchor_pull must be in [0, 1]");
  }
  if (kind == GeneratorKind::kRealizable && sigma != 0.0) {
    throw InvalidSpec("realizable streams take no sigma");
  }
  if (kind == GeneratorKind::kDrift && sigma != 0.0) {
    throw InvalidSpec("drift streams are noise-free");
  }
}

namespace {

// Scale down by ulps until the norm contract holds exactly.
Vec clamp_norm(Vec x, double limit) {
  while (x.norm() > limit) x *= std::nextafter(1.0, 0.0);
  return x;
}

}  // namespace

Generated generate(const GeneratorSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  Generated g;
  g.stream.dim = spec.d;
  g.stream.generator = generator_name(spec.kind);
  g.stream.seed = spec.seed;
  g.stream.examples.reserve(spec.T);
  g.truth.u_true = rng.normal_vector(spec.d);

  const bool sphere = spec.kind == GeneratorKind::kUnitSphereEdge;
  const double inv_d = 1.0 / static_cast<double>(spec.d);
  Vec u = g.truth.u_true;
  for (std::size_t t = 0; t < spec.T; ++t) {
    Vec x = rng.unit_vector(spec.d);
    const double radius =
        sphere ? spec.input_scale : spec.input_scale * std::pow(rng.uniform(), inv_d);
    x = clamp_norm(x * radius, spec.input_scale);

    double y = 0.0;
    if (spec.kind == GeneratorKind::kDrift) {
      u = (1.0 - spec.anchor_pull) * u + spec.anchor_pull * g.truth.u_true +
          spec.step * rng.unit_vector(spec.d);
      y = u.dot(x);
      g.truth.V_m += (u - g.truth.u_true).squaredNorm();
      g.truth.u_t.push_back(u);
    } else {
      y = g.truth.u_true.dot(x);
      if (spec.sigma > 0.0) y += spec.sigma * rng.normal();
    }
    g.stream.examples.push_back({std::move(x), y});
  }
  return g;
}

}  // namespace wemm
