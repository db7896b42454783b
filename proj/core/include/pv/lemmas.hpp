#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pv::lemmas {

struct LemmaSweepConfig {
  std::vector<std::uint32_t> n_values;
  std::vector<double> x_grid;
  std::vector<std::pair<double, double>> alpha_beta_pairs;
  std::uint64_t seed = 0;

  /// n = 1..n_max, x = k pi / 2000 for 0 <= k < 4000 (times `refine`), and
  /// 10^4 (times `refine`) pairs drawn uniformly from [0, 2 pi)^2 with `seed`.
  static LemmaSweepConfig standard(std::uint32_t n_max = 500, std::uint64_t seed = 20130101,
                                   unsigned refine = 1);
};

/// Smallest slack seen at one n, with the argument(s) that produced it.
struct WorstAtN {
  std::uint32_t n = 0;
  double param1 = 0.0;
  double param2 = 0.0;  // unused by lemma 1
  double sum = 0.0;
  double bound = 0.0;
  double slack = 0.0;
};

struct LemmaSweepResult {
  double worst_slack = 0.0;
  WorstAtN worst;
  std::size_t evaluated = 0;
  std::vector<WorstAtN> violations;
  /// One entry per n in cfg.n_values, same order.
  std::vector<WorstAtN> per_n;

  bool passed() const { return violations.empty(); }
};

/// (2/pi) log n + (2/pi)(gamma + log 2 + 3/n).
double lemma1_bound(std::uint32_t n);
/// log n + gamma + log 2 + 3/n.
double lemma2_bound(std::uint32_t n);

/// slack = lemma1_bound(n) - sum_{j<=n} |sin jx| / j over every (x, n).
/// Throws std::invalid_argument for an empty grid or n = 0.
LemmaSweepResult lemma1_check(const LemmaSweepConfig& cfg);
/// slack = lemma2_bound(n) - sum_{m<=n} |cos m alpha - cos m beta| / m over every (alpha, beta, n).
LemmaSweepResult lemma2_check(const LemmaSweepConfig& cfg);

}  // namespace pv::lemmas
