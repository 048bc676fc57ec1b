#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spacedcl/error.hpp"
#include "spacedcl/kernels.hpp"
#include "spacedcl/rng.hpp"
#include "support/oracles.hpp"

using namespace spacedcl;

namespace {

std::vector<double> tau_grid() {
  std::vector<double> g;
  for (int e = -3; e <= 3; ++e) {
    g.push_back(std::pow(10.0, e));
    g.push_back(3.0 * std::pow(10.0, e));
  }
  return g;
}

}  // namespace

TEST(Kernels, Names) {
  for (auto k : all_kernel_kinds) EXPECT_EQ(parse_kernel_kind(to_string(k)), k);
  EXPECT_FALSE(parse_kernel_kind("gauss"));
}

TEST(Kernels, DirectValues) {
  for (auto k : all_kernel_kinds) EXPECT_EQ(kernel_eval(k, 0.0, 2.5), 1.0);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelKind::lin, 0.25, 2.0), 0.5);
  EXPECT_NEAR(kernel_eval(KernelKind::sec, 1.0, 1.0), 2.0 / (std::exp(-1.0) + std::exp(1.0)), 1e-15);
  EXPECT_NEAR(kernel_eval(KernelKind::lap, 0.5, 2.0), std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelKind::qua, 0.5, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(kernel_eval(KernelKind::cos, 0.5, 1.0), 0.5);
  EXPECT_EQ(kernel_eval(KernelKind::cos, 1.0, 1.0), 0.0);
  EXPECT_EQ(kernel_eval(KernelKind::lin, 1.0, 1.0), 0.0);
  EXPECT_EQ(kernel_eval(KernelKind::sec, 100.0, 1.0), 0.0);
}

TEST(Kernels, RejectsBadArguments) {
  EXPECT_THROW(kernel_eval(KernelKind::lap, -1.0, 1.0), DomainError);
  EXPECT_THROW(kernel_eval(KernelKind::lap, 1.0, 0.0), DomainError);
  EXPECT_THROW(solve_delay_x(KernelKind::lap, 1.0, 1.0), DomainError);
}

TEST(Kernels, MonotoneAndBounded) {
  Rng rng(3);
  for (auto k : all_kernel_kinds) {
    for (int trial = 0; trial < 200; ++trial) {
      const double tau = std::exp(rng.uniform() * 10.0 - 5.0);
      double prev = 1.0;
      for (int i = 0; i <= 400; ++i) {
        const double x = i * 0.01 / std::sqrt(tau);
        const double f = kernel_eval(k, x, tau);
        ASSERT_GE(f, 0.0);
        ASSERT_LE(f, 1.0);
        ASSERT_LE(f, prev + 1e-15) << to_string(k);
        prev = f;
      }
    }
  }
}

TEST(Kernels, ClosedFormMatchesBisection) {
  for (auto k : all_kernel_kinds) {
    for (double eta : {0.6, 0.7, 0.8, 0.9, 0.95}) {
      for (double tau : tau_grid()) {
        auto f = [&](double x) { return kernel_eval(k, x, tau) - eta; };
        double hi = 1.0;
        while (f(hi) >= 0.0) hi *= 2.0;
        const double expect = oracle::bisect(f, 0.0, hi);
        const double got = solve_delay_x(k, eta, tau);
        EXPECT_NEAR(got, expect, 1e-9 * std::max(1.0, expect)) << to_string(k) << " eta " << eta << " tau " << tau;
      }
    }
  }
}

TEST(Kernels, DelayExamples) {
  EXPECT_DOUBLE_EQ(solve_delay_x(KernelKind::lin, 0.5, 2.0), 0.25);
  EXPECT_NEAR(solve_delay_x(KernelKind::lap, 0.8, 1.0), 0.22314355, 1e-8);
  EXPECT_NEAR(solve_delay_x(KernelKind::cos, 0.5, 1.0), 0.5, 1e-15);
}

TEST(Kernels, LiteralCosineVariant) {
  KernelOptions lit{true};
  EXPECT_DOUBLE_EQ(kernel_eval(KernelKind::cos, 0.0, 1.0, lit), 1.5);
  EXPECT_EQ(kernel_eval(KernelKind::cos, 2.0, 1.0, lit), 0.0);
  const double x = solve_delay_x(KernelKind::cos, 0.8, 1.0, lit);
  EXPECT_NEAR(kernel_eval(KernelKind::cos, x, 1.0, lit), 0.8, 1e-12);
}

TEST(FitTau, PlantedRecoveryEveryKernel) {
  const double eta = 0.5;
  for (auto k : all_kernel_kinds) {
    for (double planted : {0.3, 3.0, 40.0}) {
      const double reach = solve_delay_x(k, eta, planted);
      std::vector<TauSample> samples;
      for (int i = 0; i < 25; ++i) {
        const double x = reach * i / 25.0;
        samples.push_back({x, kernel_eval(k, x, planted)});
      }
      const double fit = fit_tau(k, samples, eta, 1.0);
      EXPECT_NEAR(fit, planted, 1e-3) << to_string(k);
    }
  }
}

TEST(FitTau, FlatObjectivePicksLowerBound) {
  std::vector<TauSample> one{{0.0, 1.0}};
  TauBounds b{0.01, 100.0};
  for (auto k : all_kernel_kinds) EXPECT_EQ(fit_tau(k, one, 0.8, 7.0, b), 0.01);
}

TEST(FitTau, FilterKeepsTauWhenNothingQualifies) {
  std::vector<TauSample> low{{0.3, 0.2}, {0.1, 0.7}};
  EXPECT_EQ(fit_tau(KernelKind::lap, low, 0.8, 4.25), 4.25);
  EXPECT_THROW(fit_tau(KernelKind::lap, std::vector<TauSample>{}, 0.8, 1.0), DomainError);
}

TEST(FitTau, IgnoresSamplesBelowEta) {
  // The low-recall sample would pull tau far up if it were counted.
  std::vector<TauSample> s{{0.1, std::exp(-0.2)}, {0.2, std::exp(-0.4)}, {0.05, 0.01}};
  EXPECT_NEAR(fit_tau(KernelKind::lap, s, 0.6, 1.0), 2.0, 1e-4);
}

TEST(ComputeDelay, ClosedFormComposition) {
  std::vector<double> d{0.2};
  EXPECT_NEAR(compute_delay(KernelKind::lap, 0.8, 1.0, d, 1.0, 50.0), -std::log(0.8) / 0.2, 1e-12);
  EXPECT_NEAR(compute_delay(KernelKind::lap, 0.8, 1.0, d, 1.0, 50.0), 1.1157, 1e-4);
}

TEST(ComputeDelay, EasySamplesHitTheCap) {
  std::vector<double> d{0.0, 1e-12, 0.0};
  EXPECT_EQ(compute_delay(KernelKind::lin, 0.8, 1.0, d, 0.9, 17.0), 17.0);
}

TEST(ComputeDelay, LinearInGammaBeforeClipping) {
  std::vector<double> d{0.05, 0.09, 0.2};
  const double a = compute_delay(KernelKind::sec, 0.7, 0.5, d, 0.5, 1e9);
  const double b = compute_delay(KernelKind::sec, 0.7, 0.5, d, 1.0, 1e9);
  EXPECT_NEAR(b, 2.0 * a, 1e-12 * b);
}

TEST(ComputeDelay, LowerClipIsOne) {
  std::vector<double> d{100.0};
  EXPECT_EQ(compute_delay(KernelKind::lap, 0.8, 1.0, d, 0.5, 10.0), 1.0);
  EXPECT_EQ(compute_delay(KernelKind::lap, 0.8, 1.0, d, 0.0, 10.0), 1.0);
}
