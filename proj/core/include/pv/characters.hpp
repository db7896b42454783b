#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pv {

enum class Parity : std::uint8_t { even, odd };

std::string_view to_string(Parity parity);
/// Accepts "even" / "odd"; throws std::invalid_argument otherwise.
Parity parse_parity(std::string_view text);

/// Generators of (Z/qZ)^* with the orders of the cyclic factors they span.
/// The product of `orders` is phi(q). Trivial factors (from 2 | q, 2^2 ∤ q) are omitted.
struct UnitGroupStructure {
  std::uint32_t modulus = 1;
  std::vector<std::uint32_t> generators;
  std::vector<std::uint32_t> orders;

  std::uint32_t order() const;
};

/// Builds the generating set prime power by prime power and lifts it with CRT:
/// odd p^k and 4 are cyclic, 2^k (k >= 3) is generated by -1 and 5.
/// Primitive roots are found by trying residues in increasing order.
UnitGroupStructure unit_group(std::uint32_t q);

/// Unit group together with its discrete-log table over the generators.
class UnitGroup {
 public:
  explicit UnitGroup(std::uint32_t q);

  std::uint32_t modulus() const { return structure_.modulus; }
  const UnitGroupStructure& structure() const { return structure_; }
  std::size_t rank() const { return structure_.generators.size(); }
  std::uint32_t size() const { return structure_.order(); }
  /// Least common multiple of the factor orders; every character value is an
  /// `exponent()`-th root of unity.
  std::uint32_t exponent() const { return exponent_; }

  bool is_unit(std::uint32_t residue) const;
  /// Exponent vector of a unit residue (reduced mod q). Empty span for non-units.
  std::span<const std::uint32_t> log(std::uint32_t residue) const;

 private:
  UnitGroupStructure structure_;
  std::uint32_t exponent_ = 1;
  std::vector<std::uint32_t> logs_;
  std::vector<std::uint8_t> unit_;
};

/// Exponent vector on the generators of `unit_group(q)`; identifies a character.
using CharacterLabel = std::vector<std::uint32_t>;

/// "3:0:1" style; the empty label formats as "".
std::string format_label(const CharacterLabel& label);
/// Accepts ':' or ',' separators and optional surrounding brackets.
CharacterLabel parse_label(std::string_view text);

/// e(k/n) = exp(2 pi i k/n), exact at multiples of a quarter turn.
std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n);
/// root_of_unity(k, n) for k = 0..n-1, for reuse across the characters of one modulus.
std::vector<std::complex<double>> roots_of_unity(std::uint64_t n);

/// A Dirichlet character mod q stored as exact phases: chi(a) = e(phase[a] / root_order())
/// for units and chi(a) = 0 otherwise. Immutable once built.
class DirichletCharacter {
 public:
  static constexpr std::int32_t kZero = -1;

  /// Throws std::invalid_argument if the label does not fit the group.
  DirichletCharacter(const UnitGroup& group, CharacterLabel label);

  std::uint32_t modulus() const { return modulus_; }
  const CharacterLabel& label() const { return label_; }
  std::uint32_t root_order() const { return root_order_; }

  /// Phase table indexed by residue; kZero marks non-units.
  std::span<const std::int32_t> phases() const { return phases_; }
  std::optional<std::uint32_t> phase(std::int64_t a) const;

  std::complex<double> operator()(std::int64_t a) const;
  /// Materialized value table, values[a] = chi(a) for 0 <= a < q.
  std::vector<std::complex<double>> values() const;
  /// Same, from a precomputed roots_of_unity(root_order()) table.
  std::vector<std::complex<double>> values(std::span<const std::complex<double>> roots) const;

  std::uint32_t conductor() const { return conductor_; }
  Parity parity() const { return parity_; }
  std::uint32_t order() const { return order_; }

  bool is_primitive() const { return conductor_ == modulus_; }
  bool is_principal() const { return order_ == 1; }
  /// Real-valued (order <= 2).
  bool is_real() const { return order_ <= 2; }

 private:
  std::uint32_t modulus_;
  CharacterLabel label_;
  std::uint32_t root_order_;
  std::vector<std::int32_t> phases_;
  std::uint32_t conductor_ = 1;
  Parity parity_ = Parity::even;
  std::uint32_t order_ = 1;
};

/// All phi(q) characters, labels in lexicographic order.
std::vector<DirichletCharacter> enumerate_characters(std::uint32_t q);
std::vector<DirichletCharacter> enumerate_characters(const UnitGroup& group);
std::vector<DirichletCharacter> primitive_characters(std::uint32_t q);

/// Smallest d | q such that chi(a) = 1 for every unit a = 1 (mod d).
std::uint32_t conductor(const DirichletCharacter& chi);

struct GaussSum {
  std::complex<double> value;
  double modulus = 0.0;
};

/// tau(chi) = sum_{a=1}^{q} chi(a) e(a/q), summed directly.
GaussSum gauss_sum(const DirichletCharacter& chi);
/// Same sum from the value table and additive = roots_of_unity(q).
GaussSum gauss_sum(std::span<const std::complex<double>> values,
                   std::span<const std::complex<double>> additive);

/// |conj(chi(m)) tau - sum_a chi(a) cos(2 pi a m/q)| for even chi, with i*sin for odd chi.
/// Throws std::invalid_argument for imprimitive chi.
double twist_identity_check(const DirichletCharacter& chi, std::int64_t m);
double twist_identity_check(const DirichletCharacter& chi, std::int64_t m,
                            std::complex<double> tau);
/// Table-driven form: values = chi.values(), additive = roots_of_unity(q).
double twist_identity_check(const DirichletCharacter& chi, std::int64_t m,
                            std::complex<double> tau,
                            std::span<const std::complex<double>> values,
                            std::span<const std::complex<double>> additive);

/// Rounds (1/q) sum_{x=1}^{q} e(ax/q); 1 iff q | a.
int delta_q_check(std::uint32_t q, std::int64_t a);

}  // namespace pv
