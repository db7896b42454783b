#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pv/characters.hpp"
#include "pv/charsums.hpp"

namespace pv {

namespace constants {
inline constexpr double pi = std::numbers::pi;
/// Euler-Mascheroni constant, 30 significant digits.
inline constexpr double euler_gamma = 0.577215664901532860606512090082;
}  // namespace constants

/// C0 = 4 pi^(5/2) + 5.
double c0();

enum class BoundName : std::uint8_t {
  theorem1,
  pomerance,
  qiu,
  simalarides,
  dobrowolski_williams,
  bachman_rachakonda,
};

/// Which extremal sum a bound controls.
enum class BoundedQuantity : std::uint8_t { S, T };

std::string_view to_string(BoundName name);
std::string_view to_string(BoundedQuantity quantity);
/// Throws std::invalid_argument for unknown names.
BoundName parse_bound_name(std::string_view text);

struct ExplicitBound {
  BoundName name;
  BoundedQuantity quantity;
  /// Transcribed verbatim although the printed form looks suspicious.
  bool as_printed;
  /// Counted as a verification failure when exceeded.
  bool gating;
};

/// Every bound in canonical report order.
std::span<const ExplicitBound> bound_catalog();
const ExplicitBound& bound_info(BoundName name);

struct BoundValue {
  BoundName name = BoundName::theorem1;
  BoundedQuantity quantity = BoundedQuantity::S;
  std::uint64_t q = 0;
  Parity parity = Parity::even;
  double value = 0.0;
  double main_term = 0.0;    // the sqrt(q) log q term
  double second_term = 0.0;  // the next sqrt(q)-order term
  double psi_term = 0.0;     // everything else
  bool as_printed = false;
};

/// sqrt(q) / (exp(x) - 1) with x = scale * sqrt(q), evaluated without overflow.
double exponential_remainder(double sqrt_q, double scale);

double psi1(std::uint64_t q, double c0_value = c0());
double psi2(std::uint64_t q, double c0_value = c0());

/// Throws std::invalid_argument for q < 3.
BoundValue theorem1_bound(std::uint64_t q, Parity parity, double c0_value = c0());
BoundValue pomerance_bound(std::uint64_t q, Parity parity);
BoundValue evaluate_bound(BoundName name, std::uint64_t q, Parity parity,
                          double c0_value = c0());

/// Qiu, Simalarides (parity-specific), Dobrowolski-Williams, Bachman-Rachakonda.
std::vector<BoundValue> catalog_bounds(std::uint64_t q, Parity parity);

/// theorem1(q) - pomerance(q); negative once the new bound is the better one.
double bound_difference(std::uint64_t q, Parity parity);

struct CrossoverResult {
  Parity parity = Parity::even;
  /// Smallest q with theorem1 < pomerance at q and at every tested q beyond.
  std::uint64_t q_star = 0;
  std::uint64_t scan_limit = 0;
  /// Integers checked exhaustively from q_star on.
  std::uint64_t confirmed_through = 0;
  std::size_t log_grid_points = 0;
};

inline constexpr std::uint64_t kCrossoverLimit = 10'000'000;

/// Doubling scan, integer bisection on the first sign change, then exhaustive
/// confirmation on [q*, q* + 1000] and a log grid up to `limit`.
/// Throws std::runtime_error if no crossover exists below `limit`.
CrossoverResult crossover(Parity parity, std::uint64_t limit = kCrossoverLimit);

/// One character's sums paired with what is needed to report it.
struct CharacterRecord {
  std::uint32_t q = 0;
  CharacterLabel label;
  Parity parity = Parity::even;
  std::uint32_t conductor = 0;
  CharSumResult sums;
};

CharacterRecord make_record(const DirichletCharacter& chi, const CharSumResult& sums);

struct MarginRow {
  CharacterLabel label;
  Parity parity = Parity::even;
  BoundName bound = BoundName::theorem1;
  BoundedQuantity quantity = BoundedQuantity::S;
  double bound_value = 0.0;
  double exact = 0.0;
  double margin = 0.0;
  /// S_chi / (sqrt(q) log q).
  double ratio = 0.0;
  bool violation = false;
  bool gating = false;
};

/// bound - S_chi (or bound - T_chi for T bounds) for every record and requested bound.
/// Negative margins are kept and flagged.
std::vector<MarginRow> margin_report(std::uint64_t q, std::span<const CharacterRecord> records,
                                     std::span<const BoundName> bounds);
std::vector<MarginRow> margin_report(std::uint64_t q, std::span<const CharacterRecord> records);

}  // namespace pv
