#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pv/characters.hpp"

namespace pv {

/// points[k] = sum_{n=0}^{k} chi(n), k = 0..q, with points[0] = chi(0) = 0 for q > 1.
struct PrefixWalk {
  std::vector<std::complex<double>> points;
};

/// Interval [first, last] of summation indices; the sum is points[last] - points[first - 1].
struct IntervalWitness {
  std::uint32_t first = 0;
  std::uint32_t last = 0;

  friend bool operator==(const IntervalWitness&, const IntervalWitness&) = default;
};

struct IntervalMax {
  double value = 0.0;
  IntervalWitness witness;
};

struct InitialMax {
  double value = 0.0;
  std::uint32_t last = 0;
};

struct CharSumResult {
  double s_chi = 0.0;
  double t_chi = 0.0;
  IntervalWitness s_witness;
  std::uint32_t t_witness = 0;
  /// |S - 2T| < tolerance; only evaluated for even characters.
  std::optional<bool> parity_consistent;
};

inline constexpr double kParityTolerance = 1e-9;
/// Default modulus cap for the quadratic oracle.
inline constexpr std::uint32_t kBruteForceCap = 2000;

/// Compensated (Kahan) running sums of chi over 0..q.
PrefixWalk prefix_walk(const DirichletCharacter& chi);
/// Walk over a materialized value table, values[a] = chi(a).
PrefixWalk prefix_walk(std::span<const std::complex<double>> values);

/// S_chi as the diameter of the prefix point set: convex hull by monotone chain,
/// then rotating calipers. Collinear walks fall back to a 1D extent. Ties in the
/// witness resolve to the lexicographically smallest (M, N).
IntervalMax max_interval_sum(const PrefixWalk& walk);

/// T_chi = max_k |points[k]|, smallest maximizing k.
InitialMax max_initial_sum(const PrefixWalk& walk);

/// Quadratic reference: sums chi directly over every interval [M, N], 1 <= M <= N <= q.
/// Throws std::domain_error when q exceeds `cap`.
double brute_force_s(const DirichletCharacter& chi, std::uint32_t cap = kBruteForceCap);

/// Direct sum of chi(n) for first <= n <= last.
std::complex<double> interval_sum(const DirichletCharacter& chi, IntervalWitness interval);

CharSumResult char_sums(const DirichletCharacter& chi);
/// `values` must be chi's value table; lets callers share one root table per modulus.
CharSumResult char_sums(const DirichletCharacter& chi, std::span<const std::complex<double>> values);

}  // namespace pv
