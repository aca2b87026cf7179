#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <vector>

#include "support.hpp"
#include "wemm/errors.hpp"
#include "wemm/kernel.hpp"
#include "wemm/primal.hpp"

namespace wemm {
namespace {

using testing::noisy_stream;
using testing::vec;

TEST(KernelEval, Forms) {
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::linear(), vec({1, 0}), vec({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::rbf(1.0), vec({0.3, 0.4}), vec({0.3, 0.4})), 1.0);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::polynomial(2, 1.0), vec({1, 0}), vec({0, 1})), 1.0);
  EXPECT_NEAR(kernel_eval(KernelSpec::rbf(0.5), vec({1, 0}), vec({0, 1})), std::exp(-1.0), 1e-15);
}

TEST(KernelSpec, Validation) {
  EXPECT_THROW(KernelSpec::polynomial(0, 1.0).validate(), InvalidParameter);
  EXPECT_THROW(KernelSpec::polynomial(2, -1.0).validate(), InvalidParameter);
  EXPECT_THROW(KernelSpec::rbf(0.0).validate(), InvalidParameter);
  EXPECT_THROW(KernelWemm(KernelSpec::rbf(-1.0), 2.0), InvalidParameter);
  EXPECT_THROW(KernelWemm(KernelSpec::linear(), 1.0), InvalidRegularizer);
}

TEST(KernelWemm, EmptyStatePredictsZero) {
  KernelWemm k(KernelSpec::rbf(1.0), 2.0);
  EXPECT_EQ(k.predict(vec({0.2, 0.1})), 0.0);
}

TEST(KernelWemm, FirstRoundByHand) {
  KernelWemm k(KernelSpec::linear(), 2.0);
  k.update(vec({1, 0}), 3.0);
  ASSERT_EQ(k.alpha().size(), 1);
  EXPECT_DOUBLE_EQ(k.alpha()(0), 1.5);
  EXPECT_DOUBLE_EQ(k.beta()(0, 0), -0.25);
}

TEST(KernelWemm, RbfSingleExample) {
  KernelWemm k(KernelSpec::rbf(3.0), 2.0);
  const Vec x = vec({0.4, -0.7});
  k.update(x, 1.0);
  EXPECT_DOUBLE_EQ(k.predict(x), 0.5);
}

TEST(KernelWemm, ZeroResidualLeavesAlpha) {
  KernelWemm k(KernelSpec::polynomial(2, 1.0), 2.0);
  k.update(vec({0.5, 0.1}), 1.0);
  k.update(vec({-0.2, 0.6}), -0.4);
  const Vec before = k.alpha();
  const Mat beta_before = k.beta();
  const Vec x = vec({0.3, 0.3});
  k.update(x, k.predict(x));
  ASSERT_EQ(k.alpha().size(), 3);
  EXPECT_NEAR((k.alpha().head(2) - before).norm(), 0.0, 1e-15);
  EXPECT_NEAR(k.alpha()(2), 0.0, 1e-15);
  EXPECT_GT((k.beta().topLeftCorner(2, 2) - beta_before).norm(), 0.0);
}

TEST(KernelWemm, LinearKernelMatchesPrimal) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto s = noisy_stream(3, 200, 0.2, seed);
    WemmLearner primal(3, 2.0);
    KernelWemm dual(KernelSpec::linear(), 2.0);
    for (const auto& ex : s.examples) {
      EXPECT_NEAR(dual.predict(ex.x), primal.predict(ex.x), 1e-8);
      primal.update(ex.x, ex.y);
      dual.update(ex.x, ex.y);
      EXPECT_LE((dual.beta() - dual.beta().transpose()).lpNorm<Eigen::Infinity>(), 1e-10);
    }
    // Implied primal state.
    Vec w = Vec::Zero(3);
    Mat sigma = Mat::Identity(3, 3) / 2.0;
    const auto& sup = dual.support();
    for (std::size_t i = 0; i < sup.size(); ++i) {
      w += dual.alpha()(static_cast<Eigen::Index>(i)) * sup[i];
      for (std::size_t j = 0; j < sup.size(); ++j) {
        sigma += dual.beta()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                 sup[i] * sup[j].transpose();
      }
    }
    EXPECT_LE((w - primal.w()).norm(), 1e-8);
    EXPECT_LE((sigma - primal.sigma().matrix()).lpNorm<Eigen::Infinity>(), 1e-7);
  }
}

// Median wall time of a few single updates on a learner that already holds
// `t` examples.
double update_seconds_at(std::size_t t) {
  const auto s = noisy_stream(3, t + 5, 0.1, 77);
  KernelWemm k(KernelSpec::rbf(1.0), 2.0);
  for (std::size_t i = 0; i < t; ++i) k.update(s.examples[i].x, s.examples[i].y);
  std::vector<double> samples;
  for (std::size_t i = t; i < t + 5; ++i) {
    KernelWemm copy = k;
    const auto start = std::chrono::steady_clock::now();
    copy.update(s.examples[i].x, s.examples[i].y);
    samples.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

TEST(KernelWemm, UpdateCostIsQuadratic) {
  const double small = update_seconds_at(200);
  const double large = update_seconds_at(1000);
  EXPECT_LT(large, 50.0 * small) << "t=200: " << small << "s, t=1000: " << large << "s";
}

}  // namespace
}  // namespace wemm
