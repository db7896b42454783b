#include "pv/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pv/bounds.hpp"

namespace pv::lemmas {

using constants::euler_gamma;
using constants::pi;

LemmaSweepConfig LemmaSweepConfig::standard(std::uint32_t n_max, std::uint64_t seed,
                                            unsigned refine) {
  if (n_max == 0) throw std::invalid_argument("lemma sweep: n_max must be positive");
  refine = std::max(refine, 1u);
  LemmaSweepConfig cfg;
  cfg.seed = seed;
  for (std::uint32_t n = 1; n <= n_max; ++n) cfg.n_values.push_back(n);

  const unsigned denom = 2000 * refine;
  for (unsigned k = 0; k < 2 * denom; ++k) cfg.x_grid.push_back(k * pi / denom);

  // Small-denominator resonances; (0, pi) is where the cosine sum peaks.
  for (unsigned d = 1; d <= 6; ++d)
    for (unsigned k = 0; k < 2 * d; ++k)
      for (unsigned l = k + 1; l < 2 * d; ++l) cfg.alpha_beta_pairs.emplace_back(k * pi / d, l * pi / d);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  for (unsigned i = 0; i < 10000 * refine; ++i) {
    const double alpha = angle(rng);
    const double beta = angle(rng);
    cfg.alpha_beta_pairs.emplace_back(alpha, beta);
  }
  return cfg;
}

double lemma1_bound(std::uint32_t n) {
  const double nd = static_cast<double>(n);
  return 2.0 / pi * std::log(nd) + 2.0 / pi * (euler_gamma + std::log(2.0) + 3.0 / nd);
}

double lemma2_bound(std::uint32_t n) {
  const double nd = static_cast<double>(n);
  return std::log(nd) + euler_gamma + std::log(2.0) + 3.0 / nd;
}

namespace {

// Runs `term(j)` for j = 1..n_max over one parameter set, folding the running sum
// into the per-n worst record at every requested n.
template <typename Term, typename Bound>
void sweep_one(std::uint32_t n_max, const std::vector<int>& slot_of_n, double p1, double p2, Term term, Bound bound,
               LemmaSweepResult& result) {
  double sum = 0.0;
  for (std::uint32_t j = 1; j <= n_max; ++j) {
    sum += term(j);
    const int slot = slot_of_n[j];
    if (slot < 0) continue;
    const double b = bound(j);
    const double slack = b - sum;
    ++result.evaluated;
    WorstAtN& w = result.per_n[static_cast<std::size_t>(slot)];
    if (slack < w.slack) w = {j, p1, p2, sum, b, slack};
    if (!(slack > 0.0)) result.violations.push_back({j, p1, p2, sum, b, slack});
  }
}

template <typename Run>
LemmaSweepResult run_sweep(const std::vector<std::uint32_t>& n_values, Run run) {
  if (n_values.empty()) throw std::invalid_argument("lemma sweep: n_values is empty");
  const std::uint32_t n_max = *std::max_element(n_values.begin(), n_values.end());
  if (*std::min_element(n_values.begin(), n_values.end()) == 0)
    throw std::invalid_argument("lemma sweep: n must be positive");
  std::vector<int> slot_of_n(n_max + 1, -1);
  LemmaSweepResult result;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    slot_of_n[n_values[i]] = static_cast<int>(i);
    WorstAtN w;
    w.n = n_values[i];
    w.slack = std::numeric_limits<double>::infinity();
    result.per_n.push_back(w);
  }
  run(n_max, slot_of_n, result);
  result.worst = *std::min_element(result.per_n.begin(), result.per_n.end(),
                                   [](const WorstAtN& a, const WorstAtN& b) { return a.slack < b.slack; });
  result.worst_slack = result.worst.slack;
  return result;
}

}  // namespace

LemmaSweepResult lemma1_check(const LemmaSweepConfig& cfg) {
  if (cfg.x_grid.empty()) throw std::invalid_argument("lemma1: x grid is empty");
  return run_sweep(cfg.n_values, [&](std::uint32_t n_max, const std::vector<int>& slots,
                                     LemmaSweepResult& result) {
    for (const double x : cfg.x_grid) {
      sweep_one(n_max, slots, x, 0.0,
                [x](std::uint32_t j) { return std::abs(std::sin(j * x)) / j; }, lemma1_bound,
                result);
    }
  });
}

LemmaSweepResult lemma2_check(const LemmaSweepConfig& cfg) {
  if (cfg.alpha_beta_pairs.empty()) throw std::invalid_argument("lemma2: no (alpha, beta) pairs");
  return run_sweep(cfg.n_values, [&](std::uint32_t n_max, const std::vector<int>& slots,
                                     LemmaSweepResult& result) {
    for (const auto& [alpha, beta] : cfg.alpha_beta_pairs) {
      sweep_one(n_max, slots, alpha, beta,
                [alpha, beta](std::uint32_t m) {
                  return std::abs(std::cos(m * alpha) - std::cos(m * beta)) / m;
                },
                lemma2_bound, result);
    }
  });
}

}  // namespace pv::lemmas
