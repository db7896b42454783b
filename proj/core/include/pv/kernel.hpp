#pragma once

#include <cstdint>
#include <vector>

#include "pv/bounds.hpp"

namespace pv::kernel {

/// Dyadic bump: 0 on [0, 1/2], 2t - 1 on [1/2, 1], 2 - t on [1, 2], 0 beyond.
/// Throws std::domain_error for t < 0.
double theta(double t);
/// 0 on (0, 1/2], 2t - 1 on [1/2, 1], 1 on [1, inf). Throws for t <= 0.
double omega(double t);
/// 1 - omega(t).
double omega_star(double t);

/// sum_{j=-J}^{J} theta(t / 2^j); equals 1 for 2^{-J+1} < t < 2^{J-1}.
double partition_of_unity_sum(double t, int J);

/// sum_{m>=1} sin(2 pi m x) / m = pi (1/2 - {x}) off the integers, 0 on them.
double sawtooth(double x);

/// sin(2 pi x) with x reduced mod 1 first; exact at multiples of 1/4.
double sin_2pi(double x);

/// S(u;P) = sum_m omega(m/P) sin(2 pi m u) / m, computed as
/// sawtooth(u) - sum_{m <= P} omega*(m/P) sin(2 pi m u) / m. Throws for P <= 1.
double s_u_p(double u, double P);

/// Policy for the direct lattice sum of G_P.
struct KernelParams {
  double P = 2.0;
  std::uint64_t truncation_N = 1000;
  double tolerance = 1e-10;

  /// Smallest N (at least 64) whose corrected-tail error bound is below tolerance / 10.
  static KernelParams for_tolerance(double P, double tolerance = 1e-10);
};

/// Error bound of the integral tail correction used by g_p_direct:
/// 1 / (6 P^2 (N-1)^3), both sides together.
double tail_error_bound(double P, std::uint64_t N);

/// G_P(u) = sum_n 1 / (1 + P^2 (n+u)^2): terms |n| <= N summed directly, the two
/// tails replaced by their midpoint-rule integrals.
double g_p_direct(double u, const KernelParams& params);

/// Poisson-dual form (pi/P) sum_n exp(-2 pi |n| / P) e(nu) summed as two geometric
/// series: (pi/P)(1 - r^2) / ((1 - r)^2 + 4 r sin^2(pi u)), r = exp(-2 pi / P).
double g_p_closed(double u, double P);

struct GridSpec {
  std::vector<double> u_points;
  std::vector<double> P_values;

  /// 4001 uniform points on [0,1] plus 2^{-k} and 1 - 2^{-k}, k = 1..40.
  static GridSpec default_grid();
  /// Twice as fine: 8001 uniform points, geometric steps of 2^{-1/2}.
  static GridSpec fine_grid();
};

struct KernelSample {
  double u = 0.0;
  double P = 0.0;
  double s_u_p = 0.0;
  double g_p = 0.0;
  double ratio = 0.0;
};

std::vector<KernelSample> kernel_samples(const GridSpec& grid);

struct Lemma3Result {
  double worst_ratio = 0.0;
  double worst_u = 0.0;
  double worst_P = 0.0;
  double bound = 0.0;  // C0 / (2 pi^2)
  std::size_t evaluated = 0;
  std::vector<KernelSample> violations;

  bool passed() const { return violations.empty(); }
  double margin() const { return bound - worst_ratio; }
};

/// max |S(u;P)| / G_P(u) over the grid against C0 / (2 pi^2).
Lemma3Result lemma3_check(const GridSpec& grid, double c0_value = c0());

struct Lemma4Sides {
  double lhs = 0.0;          // sum_{a=1}^{q} G_P(a/q)
  double rhs = 0.0;          // pi (q/P) (1 + 2 / (exp(2 pi q / P) - 1))
  double printed_rhs = 0.0;  // pi (q/P) (1 + 2 / (exp(q / P) - 1))
  double discrepancy = 0.0;  // |lhs - rhs|
};

Lemma4Sides lemma4_sides(std::uint64_t q, double P);
/// |lhs - rhs|; throws std::invalid_argument for q = 0 or P <= 1.
double lemma4_check(std::uint64_t q, double P);

struct ConstantDerivation {
  double A = 0.0;  // bisection root of 2 sqrt(pi)(1+A^2) = 5/(2 pi^2) (1 + 1/A^2)
  double A_closed = 0.0;  // sqrt(5) / (2 pi^{5/4})
  double A_ceiling = 0.0;  // 1 / (2 sqrt(pi))
  double B_opt = 0.0;  // argmin over B of 2 pi B + 1/(2B), by golden section
  double B_min_value = 0.0;  // 2 sqrt(pi)
  double f1_at_A = 0.0;
  double c0_over_2pi2 = 0.0;
  double residual = 0.0;  // defining equation at A_closed
  double a_error = 0.0;
  double f1_error = 0.0;

  bool passed(double tol = 1e-12) const {
    return A <= A_ceiling && a_error < tol && f1_error < tol && residual < tol;
  }
};

ConstantDerivation constant_derivation(double c0_value = c0());

/// lambda(x;a,b): 1/2 at the endpoints, 1 strictly inside, 0 outside. Endpoints that
/// coincide mod 1 contribute both halves.
double lambda_indicator(double x, double a, double b);

/// |lambda(x;a,b) - (b - a + sawtooth(x-a)/pi - sawtooth(x-b)/pi)|.
/// Requires 0 <= a < b <= 1 and 0 <= x < 1.
double lambda_identity_check(double a, double b, double x);

}  // namespace pv::kernel
