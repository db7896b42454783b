#include <gtest/gtest.h>

#include <cmath>

#include "pv/bounds.hpp"
#include "pv/lemmas.hpp"

namespace {

namespace l = pv::lemmas;
constexpr double pi = std::numbers::pi;
constexpr double gamma_ = pv::constants::euler_gamma;

TEST(Lemmas, BoundFormulas) {
  EXPECT_NEAR(l::lemma1_bound(1), 2 / pi * (gamma_ + std::log(2.0) + 3), 1e-15);
  EXPECT_NEAR(l::lemma1_bound(1), 2.7185974226046632, 1e-14);
  EXPECT_NEAR(l::lemma2_bound(1), 4.2703628454614782, 1e-14);
  EXPECT_NEAR(l::lemma2_bound(100), std::log(100.0) + gamma_ + std::log(2.0) + 0.03, 1e-14);
  EXPECT_NEAR(gamma_, 0.57721566490153286, 1e-17);
}

TEST(Lemmas, StandardConfigShape) {
  const auto cfg = l::LemmaSweepConfig::standard();
  EXPECT_EQ(cfg.n_values.size(), 500u);
  EXPECT_EQ(cfg.n_values.front(), 1u);
  EXPECT_EQ(cfg.n_values.back(), 500u);
  EXPECT_EQ(cfg.x_grid.size(), 4000u);
  EXPECT_EQ(cfg.x_grid[1], pi / 2000);
  EXPECT_GE(cfg.alpha_beta_pairs.size(), 10000u);
  EXPECT_EQ(cfg.seed, 20130101u);
  // Same seed, same pairs.
  EXPECT_EQ(l::LemmaSweepConfig::standard(10, 5).alpha_beta_pairs,
            l::LemmaSweepConfig::standard(10, 5).alpha_beta_pairs);
  EXPECT_NE(l::LemmaSweepConfig::standard(10, 5).alpha_beta_pairs,
            l::LemmaSweepConfig::standard(10, 6).alpha_beta_pairs);
}

TEST(Lemmas, TrivialPoints) {
  l::LemmaSweepConfig cfg;
  cfg.n_values = {1, 7, 50};
  cfg.x_grid = {0.0};
  cfg.alpha_beta_pairs = {{1.3, 1.3}};
  const auto r1 = l::lemma1_check(cfg);
  const auto r2 = l::lemma2_check(cfg);
  ASSERT_EQ(r1.per_n.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r1.per_n[i].sum, 0.0);
    EXPECT_EQ(r1.per_n[i].slack, l::lemma1_bound(cfg.n_values[i]));
    EXPECT_EQ(r2.per_n[i].sum, 0.0);
    EXPECT_EQ(r2.per_n[i].slack, l::lemma2_bound(cfg.n_values[i]));
  }
  EXPECT_EQ(r1.evaluated, 3u);
}

TEST(Lemmas, RejectsEmptyConfig) {
  l::LemmaSweepConfig cfg;
  cfg.n_values = {1};
  EXPECT_THROW(l::lemma1_check(cfg), std::invalid_argument);
  EXPECT_THROW(l::lemma2_check(cfg), std::invalid_argument);
  cfg.x_grid = {0.1};
  cfg.alpha_beta_pairs = {{0.1, 0.2}};
  cfg.n_values = {0};
  EXPECT_THROW(l::lemma1_check(cfg), std::invalid_argument);
}

TEST(Lemmas, FullSweepsHoldAndRefinementIsStable) {
  const auto cfg = l::LemmaSweepConfig::standard();
  const auto r1 = l::lemma1_check(cfg);
  const auto r2 = l::lemma2_check(cfg);
  EXPECT_TRUE(r1.passed());
  EXPECT_TRUE(r2.passed());
  EXPECT_GT(r1.worst_slack, 0.0);
  EXPECT_GT(r2.worst_slack, 0.0);
  EXPECT_EQ(r1.evaluated, 500u * 4000u);
  // The hardest pair found is the resonant (0, pi).
  EXPECT_NEAR(r2.worst_slack, 0.004009, 1e-6);
  EXPECT_NEAR(std::abs(r2.worst.param1 - r2.worst.param2), pi, 1e-12);

  const auto fine = l::LemmaSweepConfig::standard(500, 20130101, 2);
  const auto f1 = l::lemma1_check(fine);
  const auto f2 = l::lemma2_check(fine);
  EXPECT_TRUE(f1.passed());
  EXPECT_TRUE(f2.passed());
  EXPECT_LT(std::abs(f1.worst_slack - r1.worst_slack), 0.1 * r1.worst_slack);
  EXPECT_LT(std::abs(f2.worst_slack - r2.worst_slack), 0.1 * r2.worst_slack);
}

TEST(Lemmas, SlackStaysPositiveAlongN) {
  l::LemmaSweepConfig cfg;
  for (std::uint32_t n = 1; n <= 500; ++n) cfg.n_values.push_back(n);
  cfg.x_grid = {pi / 2, pi / 3, 2 * pi / 3, 1.0};
  cfg.alpha_beta_pairs = {{0.0, pi}, {pi / 3, 4 * pi / 3}};
  for (const auto& w : l::lemma1_check(cfg).per_n) EXPECT_GT(w.slack, 0.0) << w.n;
  for (const auto& w : l::lemma2_check(cfg).per_n) EXPECT_GT(w.slack, 0.0) << w.n;
}

TEST(Lemmas, DirectSumMatchesSweepRecord) {
  l::LemmaSweepConfig cfg;
  cfg.n_values = {37};
  cfg.x_grid = {0.9};
  cfg.alpha_beta_pairs = {{0.4, 2.5}};
  double s1 = 0, s2 = 0;
  for (int j = 1; j <= 37; ++j) {
    s1 += std::abs(std::sin(j * 0.9)) / j;
    s2 += std::abs(std::cos(j * 0.4) - std::cos(j * 2.5)) / j;
  }
  EXPECT_NEAR(l::lemma1_check(cfg).per_n[0].sum, s1, 1e-13);
  EXPECT_NEAR(l::lemma2_check(cfg).per_n[0].sum, s2, 1e-13);
}

}  // namespace
