#include "pv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pv::kernel {

using constants::pi;

namespace {

void require_P(double P, const char* who) {
  if (!(P > 1.0)) throw std::invalid_argument(std::string(who) + ": P must exceed 1");
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

double theta(double t) {
  if (t < 0.0) throw std::domain_error("theta: t must be nonnegative");
  if (t <= 0.5) return 0.0;
  if (t <= 1.0) return 2.0 * t - 1.0;
  if (t <= 2.0) return 2.0 - t;
  return 0.0;
}

double omega(double t) {
  if (!(t > 0.0)) throw std::domain_error("omega: t must be positive");
  if (t <= 0.5) return 0.0;
  if (t <= 1.0) return 2.0 * t - 1.0;
  return 1.0;
}

double omega_star(double t) { return 1.0 - omega(t); }

double partition_of_unity_sum(double t, int J) {
  double sum = 0.0;
  for (int j = -J; j <= J; ++j) sum += theta(std::ldexp(t, -j));
  return sum;
}

double sawtooth(double x) {
  const double f = frac(x);
  if (f == 0.0) return 0.0;
  return pi * (0.5 - f);
}

double sin_2pi(double x) {
  const double f = frac(x);
  if (f == 0.0 || f == 0.5) return 0.0;
  if (f == 0.25) return 1.0;
  if (f == 0.75) return -1.0;
  return std::sin(2.0 * pi * f);
}

double s_u_p(double u, double P) {
  require_P(P, "s_u_p");
  const auto m_max = static_cast<std::uint64_t>(std::floor(P));
  double head = 0.0;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double w = omega_star(md / P);
    if (w == 0.0) continue;
    head += w * sin_2pi(md * frac(u)) / md;
  }
  return sawtooth(u) - head;
}

double tail_error_bound(double P, std::uint64_t N) {
  const double n1 = static_cast<double>(N) - 1.0;
  return 1.0 / (6.0 * P * P * n1 * n1 * n1);
}

KernelParams KernelParams::for_tolerance(double P, double tolerance) {
  require_P(P, "KernelParams");
  KernelParams params{P, 64, tolerance};
  while (tail_error_bound(P, params.truncation_N) >= tolerance / 10.0) params.truncation_N *= 2;
  return params;
}

double g_p_direct(double u, const KernelParams& params) {
  const double P = params.P;
  require_P(P, "g_p_direct");
  const auto N = static_cast<std::int64_t>(params.truncation_N);
  // Smallest terms first.
  double sum = 0.0;
  for (std::int64_t k = N; k >= 1; --k) {
    const double xp = static_cast<double>(k) + u;
    const double xm = static_cast<double>(-k) + u;
    sum += 1.0 / (1.0 + P * P * xp * xp) + 1.0 / (1.0 + P * P * xm * xm);
  }
  sum += 1.0 / (1.0 + P * P * u * u);
  // Tails n > N and n < -N: integral of 1/(1+P^2 x^2) over the union of unit cells.
  const double right = static_cast<double>(N) + 0.5 + u;
  const double left = static_cast<double>(N) + 0.5 - u;
  const double tails = (std::atan(1.0 / (P * right)) + std::atan(1.0 / (P * left))) / P;
  return sum + tails;
}

double g_p_closed(double u, double P) {
  require_P(P, "g_p_closed");
  const double r = std::exp(-2.0 * pi / P);
  const double one_minus_r = -std::expm1(-2.0 * pi / P);
  const double one_minus_r2 = -std::expm1(-4.0 * pi / P);
  const double centred = u - std::round(u);
  const double s = std::sin(pi * centred);
  return pi / P * one_minus_r2 / (one_minus_r * one_minus_r + 4.0 * r * s * s);
}

namespace {

GridSpec make_grid(int uniform, double geometric_step_log2, int geometric_count) {
  GridSpec grid;
  grid.P_values = {1.5, 2.0, 5.0, 10.0, 100.0, 1000.0};
  for (int k = 0; k <= uniform; ++k) grid.u_points.push_back(static_cast<double>(k) / uniform);
  for (int k = 1; k <= geometric_count; ++k) {
    const double u = std::exp2(-geometric_step_log2 * k);
    grid.u_points.push_back(u);
    grid.u_points.push_back(1.0 - u);
  }
  std::sort(grid.u_points.begin(), grid.u_points.end());
  grid.u_points.erase(std::unique(grid.u_points.begin(), grid.u_points.end()),
                      grid.u_points.end());
  return grid;
}

}  // namespace

GridSpec GridSpec::default_grid() { return make_grid(4000, 1.0, 40); }

GridSpec GridSpec::fine_grid() { return make_grid(8000, 0.5, 80); }

std::vector<KernelSample> kernel_samples(const GridSpec& grid) {
  std::vector<KernelSample> out;
  out.reserve(grid.u_points.size() * grid.P_values.size());
  for (const double P : grid.P_values) {
    for (const double u : grid.u_points) {
      KernelSample s{u, P, s_u_p(u, P), g_p_closed(u, P), 0.0};
      s.ratio = std::abs(s.s_u_p) / s.g_p;
      out.push_back(s);
    }
  }
  return out;
}

Lemma3Result lemma3_check(const GridSpec& grid, double c0_value) {
  Lemma3Result result;
  result.bound = c0_value / (2.0 * pi * pi);
  for (const auto& s : kernel_samples(grid)) {
    ++result.evaluated;
    if (s.ratio > result.worst_ratio) {
      result.worst_ratio = s.ratio;
      result.worst_u = s.u;
      result.worst_P = s.P;
    }
    if (s.ratio > result.bound) result.violations.push_back(s);
  }
  return result;
}

Lemma4Sides lemma4_sides(std::uint64_t q, double P) {
  if (q == 0) throw std::invalid_argument("lemma4: q must be positive");
  require_P(P, "lemma4");
  Lemma4Sides sides;
  const double qd = static_cast<double>(q);
  for (std::uint64_t a = 1; a <= q; ++a) sides.lhs += g_p_closed(static_cast<double>(a) / qd, P);
  const double lead = pi * qd / P;
  sides.rhs = lead * (1.0 + 2.0 / std::expm1(2.0 * pi * qd / P));
  sides.printed_rhs = lead * (1.0 + 2.0 / std::expm1(qd / P));
  sides.discrepancy = std::abs(sides.lhs - sides.rhs);
  return sides;
}

double lemma4_check(std::uint64_t q, double P) { return lemma4_sides(q, P).discrepancy; }

ConstantDerivation constant_derivation(double c0_value) {
  ConstantDerivation d;
  const double sqrt_pi = std::sqrt(pi);
  const double k = 5.0 / (2.0 * pi * pi);
  auto equation = [&](double A) { return 2.0 * sqrt_pi * (1.0 + A * A) - k * (1.0 + 1.0 / (A * A)); };

  d.A_ceiling = 1.0 / (2.0 * sqrt_pi);
  // equation -> -inf as A -> 0+ and is positive at the ceiling.
  double lo = 1e-6, hi = d.A_ceiling;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (equation(mid) < 0.0 ? lo : hi) = mid;
  }
  d.A = 0.5 * (lo + hi);
  d.A_closed = std::sqrt(5.0) / (2.0 * std::pow(pi, 1.25));

  // Golden section for min_B (2 pi B + 1/(2B)) on (0, 1/2].
  auto cost = [](double B) { return 2.0 * pi * B + 1.0 / (2.0 * B); };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-3, b = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    if (cost(x1) < cost(x2)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  d.B_opt = 0.5 * (a + b);
  d.B_min_value = cost(d.B_opt);

  d.f1_at_A = 2.0 * sqrt_pi * (1.0 + d.A * d.A);
  d.c0_over_2pi2 = c0_value / (2.0 * pi * pi);
  d.residual = std::abs(equation(d.A_closed));
  d.a_error = std::abs(d.A - d.A_closed);
  d.f1_error = std::abs(d.f1_at_A - d.c0_over_2pi2);
  return d;
}

double lambda_indicator(double x, double a, double b) {
  if (b - a == 1.0) return 1.0;
  if (x == a || x == b) return 0.5;
  return (a < x && x < b) ? 1.0 : 0.0;
}

double lambda_identity_check(double a, double b, double x) {
  if (!(0.0 <= a && a < b && b <= 1.0))
    throw std::invalid_argument("lambda_identity_check: need 0 <= a < b <= 1");
  if (!(0.0 <= x && x < 1.0)) throw std::invalid_argument("lambda_identity_check: need 0 <= x < 1");
  const double rhs = b - a + sawtooth(x - a) / pi - sawtooth(x - b) / pi;
  return std::abs(lambda_indicator(x, a, b) - rhs);
}

}  // namespace pv::kernel
