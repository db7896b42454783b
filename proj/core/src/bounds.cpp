#include "pv/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pv {

using constants::euler_gamma;
using constants::pi;

namespace {

constexpr std::array<ExplicitBound, 6> kCatalog{{
    {BoundName::theorem1, BoundedQuantity::S, false, true},
    {BoundName::pomerance, BoundedQuantity::S, false, true},
    {BoundName::qiu, BoundedQuantity::S, true, false},
    {BoundName::simalarides, BoundedQuantity::T, true, false},
    {BoundName::dobrowolski_williams, BoundedQuantity::S, false, false},
    {BoundName::bachman_rachakonda, BoundedQuantity::S, false, false},
}};

void require_q(std::uint64_t q, std::string_view who) {
  if (q < 3)
    throw std::invalid_argument(std::string(who) + ": q must be at least 3, got " +
                                std::to_string(q));
}

BoundValue assemble(BoundName name, std::uint64_t q, Parity parity, double main_term,
                    double second_term, double psi_term, bool as_printed) {
  BoundValue b;
  b.name = name;
  b.quantity = bound_info(name).quantity;
  b.q = q;
  b.parity = parity;
  b.main_term = main_term;
  b.second_term = second_term;
  b.psi_term = psi_term;
  b.value = main_term + second_term + psi_term;
  b.as_printed = as_printed;
  return b;
}

}  // namespace

double c0() { return 4.0 * std::pow(pi, 2.5) + 5.0; }

std::string_view to_string(BoundName name) {
  switch (name) {
    case BoundName::theorem1: return "theorem1";
    case BoundName::pomerance: return "pomerance";
    case BoundName::qiu: return "qiu";
    case BoundName::simalarides: return "simalarides";
    case BoundName::dobrowolski_williams: return "dobrowolski_williams";
    case BoundName::bachman_rachakonda: return "bachman_rachakonda";
  }
  return "unknown";
}

std::string_view to_string(BoundedQuantity quantity) {
  return quantity == BoundedQuantity::S ? "S" : "T";
}

BoundName parse_bound_name(std::string_view text) {
  for (const auto& b : kCatalog)
    if (to_string(b.name) == text) return b.name;
  throw std::invalid_argument("unknown bound '" + std::string(text) + "'");
}

std::span<const ExplicitBound> bound_catalog() { return kCatalog; }

const ExplicitBound& bound_info(BoundName name) {
  return kCatalog[static_cast<std::size_t>(name)];
}

double exponential_remainder(double sqrt_q, double scale) {
  const double x = scale * sqrt_q;
  if (x > 745.0) return 0.0;
  // sqrt(q) e^{-x} / (1 - e^{-x})
  return sqrt_q * std::exp(-x) / -std::expm1(-x);
}

double psi1(std::uint64_t q, double c0_value) {
  const double s = std::sqrt(static_cast<double>(q));
  return 1.0 + 24.0 / (pi * pi * c0_value) +
         8.0 / (pi * pi) * exponential_remainder(s, 2.0 / c0_value);
}

double psi2(std::uint64_t q, double c0_value) {
  const double s = std::sqrt(static_cast<double>(q));
  return 1.0 + 3.0 / c0_value + 2.0 / pi * exponential_remainder(s, pi / c0_value);
}

BoundValue theorem1_bound(std::uint64_t q, Parity parity, double c0_value) {
  require_q(q, "theorem1_bound");
  const double s = std::sqrt(static_cast<double>(q));
  const double lq = std::log(static_cast<double>(q));
  if (parity == Parity::even) {
    return assemble(BoundName::theorem1, q, parity, 2.0 / (pi * pi) * s * lq,
                    4.0 / (pi * pi) * s * (1.0 + euler_gamma + std::log(c0_value)),
                    psi1(q, c0_value), false);
  }
  return assemble(BoundName::theorem1, q, parity, 1.0 / (2.0 * pi) * s * lq,
                  1.0 / pi * s * (1.0 + euler_gamma + std::log(2.0 * c0_value / pi)),
                  psi2(q, c0_value), false);
}

BoundValue pomerance_bound(std::uint64_t q, Parity parity) {
  require_q(q, "pomerance_bound");
  const double s = std::sqrt(static_cast<double>(q));
  const double lq = std::log(static_cast<double>(q));
  if (parity == Parity::even) {
    return assemble(BoundName::pomerance, q, parity, 2.0 / (pi * pi) * s * lq,
                    4.0 / (pi * pi) * s * std::log(lq), 1.5 * s, false);
  }
  return assemble(BoundName::pomerance, q, parity, 1.0 / (2.0 * pi) * s * lq,
                  1.0 / pi * s * std::log(lq), s, false);
}

BoundValue evaluate_bound(BoundName name, std::uint64_t q, Parity parity, double c0_value) {
  switch (name) {
    case BoundName::theorem1: return theorem1_bound(q, parity, c0_value);
    case BoundName::pomerance: return pomerance_bound(q, parity);
    default: break;
  }
  require_q(q, to_string(name));
  const double s = std::sqrt(static_cast<double>(q));
  const double lq = std::log(static_cast<double>(q));
  switch (name) {
    case BoundName::qiu:
      return assemble(name, q, parity, 4.0 / (pi * pi) * s * lq, 0.38 * s,
                      0.608 / s + 0.116 * s, true);
    case BoundName::simalarides:
      if (parity == Parity::even)
        return assemble(name, q, parity, 3.0 / (4.0 * pi) * s * lq, 0.0,
                        2.0 - std::log(2.0) / pi - euler_gamma / (2.0 * pi), true);
      return assemble(name, q, parity, 1.0 / pi * s * lq, s, 0.5, false);
    case BoundName::dobrowolski_williams:
      return assemble(name, q, parity, 1.0 / (2.0 * std::log(2.0)) * s * lq, 3.0 * s, 0.0,
                      false);
    case BoundName::bachman_rachakonda:
      return assemble(name, q, parity, 1.0 / (3.0 * std::log(3.0)) * s * lq, 6.5 * s, 0.0,
                      false);
    default: break;
  }
  throw std::logic_error("evaluate_bound: unhandled bound");
}

std::vector<BoundValue> catalog_bounds(std::uint64_t q, Parity parity) {
  std::vector<BoundValue> out;
  for (const auto& b : kCatalog) {
    if (b.name == BoundName::theorem1 || b.name == BoundName::pomerance) continue;
    out.push_back(evaluate_bound(b.name, q, parity));
  }
  return out;
}

double bound_difference(std::uint64_t q, Parity parity) {
  return theorem1_bound(q, parity).value - pomerance_bound(q, parity).value;
}

CrossoverResult crossover(Parity parity, std::uint64_t limit) {
  auto better = [parity](std::uint64_t q) { return bound_difference(q, parity) < 0.0; };
  auto fail = [&] {
    return std::runtime_error("crossover: theorem1 never stays below pomerance (" +
                              std::string(to_string(parity)) + ") below " +
                              std::to_string(limit));
  };

  std::uint64_t q_star = 3;
  if (!better(3)) {
    std::uint64_t lo = 3, hi = 3;
    while (!better(hi)) {
      lo = hi;
      if (hi >= limit) throw fail();
      hi = std::min(hi * 2, limit);
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (better(mid) ? hi : lo) = mid;
    }
    q_star = hi;
  }

  CrossoverResult result;
  result.parity = parity;
  result.scan_limit = limit;
  constexpr std::uint64_t kWindow = 1000;
  constexpr std::size_t kGridPoints = 400;
  for (;;) {
    if (q_star > limit) throw fail();
    std::uint64_t bad = 0;
    const std::uint64_t window_end = std::min(q_star + kWindow, limit);
    for (std::uint64_t q = q_star; q <= window_end && bad == 0; ++q)
      if (!better(q)) bad = q;
    std::size_t grid = 0;
    if (bad == 0 && window_end < limit) {
      const double l0 = std::log(static_cast<double>(window_end));
      const double l1 = std::log(static_cast<double>(limit));
      for (std::size_t i = 1; i <= kGridPoints && bad == 0; ++i) {
        auto q = static_cast<std::uint64_t>(
            std::llround(std::exp(l0 + (l1 - l0) * static_cast<double>(i) / kGridPoints)));
        q = std::clamp(q, window_end, limit);
        ++grid;
        if (!better(q)) bad = q;
      }
    }
    if (bad == 0) {
      result.q_star = q_star;
      result.confirmed_through = window_end;
      result.log_grid_points = grid;
      return result;
    }
    q_star = bad + 1;
  }
}

CharacterRecord make_record(const DirichletCharacter& chi, const CharSumResult& sums) {
  return {chi.modulus(), chi.label(), chi.parity(), chi.conductor(), sums};
}

std::vector<MarginRow> margin_report(std::uint64_t q, std::span<const CharacterRecord> records,
                                     std::span<const BoundName> bounds) {
  std::vector<MarginRow> rows;
  if (records.empty()) return rows;
  const double scale = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
  for (const auto& rec : records) {
    for (const BoundName name : bounds) {
      const auto bv = evaluate_bound(name, q, rec.parity);
      MarginRow row;
      row.label = rec.label;
      row.parity = rec.parity;
      row.bound = name;
      row.quantity = bv.quantity;
      row.bound_value = bv.value;
      row.exact = bv.quantity == BoundedQuantity::S ? rec.sums.s_chi : rec.sums.t_chi;
      row.margin = bv.value - row.exact;
      row.ratio = rec.sums.s_chi / scale;
      row.violation = !(row.margin > 0.0);
      row.gating = bound_info(name).gating;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<MarginRow> margin_report(std::uint64_t q, std::span<const CharacterRecord> records) {
  std::vector<BoundName> all;
  for (const auto& b : kCatalog) all.push_back(b.name);
  return margin_report(q, records, all);
}

}  // namespace pv
