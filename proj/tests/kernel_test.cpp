#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pv/kernel.hpp"

namespace {

namespace k = pv::kernel;
constexpr double pi = std::numbers::pi;

// Abel-weighted partial sums of sum_m omega(m/P) sin(2 pi m u)/m at two radii,
// Richardson-extrapolated to r = 1.
double abel_s_u_p(double u, double P) {
  auto weighted = [&](double r) {
    const auto terms = static_cast<std::uint64_t>(36.0 / (1.0 - r));
    double s = 0.0, rm = 1.0;
    for (std::uint64_t m = 1; m <= terms; ++m) {
      rm *= r;
      s += rm * k::omega(m / P) * std::sin(2 * pi * m * u) / m;
    }
    return s;
  };
  const double h = 1e-5;
  return 2 * weighted(1 - h) - weighted(1 - 2 * h);
}

TEST(Kernel, ThetaOmegaExamples) {
  EXPECT_EQ(k::theta(1.5), 0.5);
  EXPECT_EQ(k::theta(0.75), 0.5);
  EXPECT_EQ(k::theta(3), 0.0);
  EXPECT_EQ(k::theta(0), 0.0);
  EXPECT_EQ(k::theta(0.5), 0.0);
  EXPECT_EQ(k::theta(1), 1.0);
  EXPECT_THROW(k::theta(-0.1), std::domain_error);
  EXPECT_EQ(k::omega(0.75), 0.5);
  EXPECT_EQ(k::omega_star(0.75), 0.5);
  EXPECT_EQ(k::omega(0.25), 0.0);
  EXPECT_EQ(k::omega(7), 1.0);
  EXPECT_THROW(k::omega(0), std::domain_error);
  for (double t = 0.01; t < 5; t += 0.037) EXPECT_EQ(k::omega(t) + k::omega_star(t), 1.0);
}

TEST(Kernel, PartitionOfUnity) {
  EXPECT_NEAR(k::partition_of_unity_sum(0.37, 40), 1.0, 1e-12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> expo(-38, 38);
  for (int i = 0; i < 200; ++i) {
    const double t = std::exp2(expo(rng));
    EXPECT_NEAR(k::partition_of_unity_sum(t, 40), 1.0, 1e-12) << t;
  }
}

TEST(Kernel, Sawtooth) {
  EXPECT_DOUBLE_EQ(k::sawtooth(0.25), pi / 4);
  EXPECT_EQ(k::sawtooth(0), 0.0);
  EXPECT_EQ(k::sawtooth(-3), 0.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const double v = x(rng);
    EXPECT_NEAR(k::sawtooth(v), -k::sawtooth(-v), 1e-12);
    EXPECT_NEAR(k::sawtooth(v), oracle::abel_sawtooth(v), 1e-8) << v;
  }
}

TEST(Kernel, SinTwoPiExact) {
  EXPECT_EQ(k::sin_2pi(0.5), 0.0);
  EXPECT_EQ(k::sin_2pi(0.25), 1.0);
  EXPECT_EQ(k::sin_2pi(-0.25), -1.0);
  EXPECT_EQ(k::sin_2pi(17.0), 0.0);
}

TEST(Kernel, SmoothedSineSum) {
  for (const double P : {1.5, 2.0, 10.0, 1000.0}) {
    EXPECT_EQ(k::s_u_p(0, P), 0.0);
    EXPECT_EQ(k::s_u_p(0.5, P), 0.0);
  }
  EXPECT_THROW(k::s_u_p(0.3, 1.0), std::invalid_argument);
  EXPECT_NEAR(k::s_u_p(0.3, 10), abel_s_u_p(0.3, 10), 1e-6);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.02, 0.98), P(1.1, 30);
  for (int i = 0; i < 20; ++i) {
    const double uu = u(rng), PP = P(rng);
    EXPECT_NEAR(k::s_u_p(uu, PP), abel_s_u_p(uu, PP), 1e-6) << uu << " " << PP;
  }
}

TEST(Kernel, LatticeSumRepresentationsAgree) {
  // G(0.3, 2), closed form evaluated independently.
  EXPECT_NEAR(k::g_p_closed(0.3, 2.0), 1.5243057456734528, 1e-14);
  EXPECT_NEAR(oracle::lattice_sum(0.3, 2.0, 20000), 1.5243057456734528, 3e-5);
  const auto grid = k::GridSpec::default_grid();
  double worst = 0.0;
  for (const double P : grid.P_values) {
    const auto params = k::KernelParams::for_tolerance(P);
    EXPECT_LT(k::tail_error_bound(P, params.truncation_N), params.tolerance);
    for (const double uu : grid.u_points)
      worst = std::max(worst, std::abs(k::g_p_direct(uu, params) - k::g_p_closed(uu, P)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Kernel, LatticeSumSymmetryAndFloor) {
  for (const double P : {1.5, 7.0, 100.0}) {
    const double r = std::exp(-2 * pi / P);
    EXPECT_NEAR(k::g_p_closed(0, P), pi / P * (1 + r) / (1 - r), 1e-12);
    EXPECT_GE(k::g_p_closed(0, P), 1.0);
    for (double u = 0.01; u < 1; u += 0.07) {
      EXPECT_NEAR(k::g_p_closed(u, P), k::g_p_closed(1 - u, P), 1e-12);
      EXPECT_GT(k::g_p_closed(u, P), 0.0);
    }
  }
}

TEST(Kernel, DefaultGridShape) {
  const auto g = k::GridSpec::default_grid();
  EXPECT_EQ(g.P_values, (std::vector<double>{1.5, 2, 5, 10, 100, 1000}));
  EXPECT_GE(g.u_points.size(), 4000u);
  EXPECT_EQ(g.u_points.front(), 0.0);
  EXPECT_EQ(g.u_points.back(), 1.0);
  EXPECT_TRUE(std::binary_search(g.u_points.begin(), g.u_points.end(), 0.5));
  EXPECT_TRUE(std::binary_search(g.u_points.begin(), g.u_points.end(), std::ldexp(1.0, -40)));
  EXPECT_TRUE(std::is_sorted(g.u_points.begin(), g.u_points.end()));
  EXPECT_GT(k::GridSpec::fine_grid().u_points.size(), g.u_points.size());
}

TEST(Kernel, Lemma3) {
  const auto grid = k::GridSpec::default_grid();
  const auto r = k::lemma3_check(grid);
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.bound, pv::c0() / (2 * pi * pi), 1e-15);
  EXPECT_LE(r.worst_ratio, r.bound);
  // The maximum sits near u -> 0 at the largest P and tends to pi/2.
  EXPECT_NEAR(r.worst_ratio, 1.570791, 1e-5);
  EXPECT_EQ(r.worst_P, 1000.0);
  EXPECT_EQ(r.evaluated, grid.u_points.size() * grid.P_values.size());
  for (const auto& s : k::kernel_samples({{0.0}, {2.0}})) EXPECT_EQ(s.ratio, 0.0);
  // A bound below the true maximum is reported as violated.
  const double tight = 1.5 * 2 * pi * pi;
  EXPECT_FALSE(k::lemma3_check(grid, tight).passed());
}

TEST(Kernel, Lemma3StableUnderRefinement) {
  const auto coarse = k::lemma3_check(k::GridSpec::default_grid());
  const auto fine = k::lemma3_check(k::GridSpec::fine_grid());
  EXPECT_TRUE(fine.passed());
  EXPECT_LT(std::abs(coarse.worst_ratio - fine.worst_ratio), 1e-3);
}

TEST(Kernel, Lemma4) {
  for (std::uint64_t q = 1; q <= 100; ++q)
    for (const double P : {1.5, 2.0, 7.3, 50.0}) {
      const auto s = k::lemma4_sides(q, P);
      EXPECT_LT(s.discrepancy, 1e-9) << q << " " << P;
      // The printed remainder dominates the true one; for large q/P both vanish and
      // the two sides coincide up to rounding.
      EXPECT_GE(s.printed_rhs, s.lhs * (1 - 1e-15)) << q << " " << P;
    }
  // q = 10, P = 2: the sum is 5 pi (1 + 2/(e^{10 pi} - 1)); the printed right side
  // 5 pi (1 + 2/(e^5 - 1)) exceeds it by about 0.2131.
  const auto s = k::lemma4_sides(10, 2);
  EXPECT_NEAR(s.lhs, 5 * pi * (1 + 2 / std::expm1(10 * pi)), 1e-12);
  EXPECT_NEAR(s.printed_rhs - s.lhs, 0.213115, 1e-6);
  // Independent left side from the plain lattice sum.
  double direct = 0;
  for (int a = 1; a <= 10; ++a) direct += oracle::lattice_sum(a / 10.0, 2.0, 200000);
  EXPECT_NEAR(direct, s.lhs, 1e-4);
  EXPECT_LT(k::lemma4_check(1, 2.0), 1e-12);
  EXPECT_THROW(k::lemma4_check(0, 2.0), std::invalid_argument);
  EXPECT_THROW(k::lemma4_check(3, 1.0), std::invalid_argument);
}

TEST(Kernel, ConstantDerivation) {
  const auto d = k::constant_derivation();
  EXPECT_TRUE(d.passed());
  EXPECT_NEAR(d.A, 0.26731, 1e-5);
  EXPECT_NEAR(d.A_ceiling, 0.28209, 1e-5);
  EXPECT_LT(d.A, d.A_ceiling);
  EXPECT_NEAR(d.A, std::sqrt(5.0) / (2 * std::pow(pi, 1.25)), 1e-12);
  EXPECT_NEAR(d.B_opt, 1 / (2 * std::sqrt(pi)), 1e-7);
  EXPECT_NEAR(d.B_min_value, 2 * std::sqrt(pi), 1e-12);
  EXPECT_NEAR(d.f1_at_A, 3.7982106609168764832, 1e-12);
  EXPECT_LT(d.residual, 1e-12);
  EXPECT_FALSE(k::constant_derivation(pv::c0() - 5).passed());
}

TEST(Kernel, LambdaIdentity) {
  EXPECT_EQ(k::lambda_indicator(0.5, 0.2, 0.7), 1.0);
  EXPECT_EQ(k::lambda_indicator(0.2, 0.2, 0.7), 0.5);
  EXPECT_EQ(k::lambda_indicator(0.9, 0.2, 0.7), 0.0);
  EXPECT_LT(k::lambda_identity_check(0.2, 0.7, 0.5), 1e-12);
  EXPECT_LT(k::lambda_identity_check(0.2, 0.7, 0.2), 1e-12);
  EXPECT_LT(k::lambda_identity_check(0.2, 0.7, 0.9), 1e-12);
  EXPECT_LT(k::lambda_identity_check(0.0, 1.0, 0.0), 1e-12);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 1000; ++i) {
    double a = unit(rng), b = unit(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    EXPECT_LT(k::lambda_identity_check(a, b, unit(rng)), 1e-12);
  }
  EXPECT_THROW(k::lambda_identity_check(0.7, 0.2, 0.5), std::invalid_argument);
}

}  // namespace
