#include "pv/characters.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pv/arith.hpp"

namespace pv {

namespace {

std::uint32_t reduce(std::int64_t a, std::uint32_t q) {
  const auto m = static_cast<std::int64_t>(q);
  return static_cast<std::uint32_t>(((a % m) + m) % m);
}

// Multiplicative order of g modulo m, given that it divides `group_order`.
std::uint32_t element_order(std::uint32_t g, std::uint32_t m, std::uint32_t group_order) {
  std::uint32_t ord = group_order;
  for (const auto& pp : arith::factorize(group_order)) {
    for (std::uint32_t e = 0; e < pp.exponent; ++e) {
      if (arith::pow_mod(g, ord / pp.prime, m) == 1) {
        ord /= pp.prime;
      } else {
        break;
      }
    }
  }
  return ord;
}

std::uint32_t smallest_primitive_root(std::uint32_t prime_power, std::uint32_t phi) {
  for (std::uint32_t g = 2; g < prime_power; ++g) {
    if (std::gcd(g, prime_power) != 1) continue;
    if (element_order(g, prime_power, phi) == phi) return g;
  }
  throw std::logic_error("no primitive root found");
}

// Lifts a residue mod `component` to q: the given value there, 1 on every other prime power.
std::uint32_t lift(std::uint32_t value, std::uint32_t component,
                   const std::vector<arith::PrimePower>& factors) {
  std::vector<std::uint64_t> residues, moduli;
  for (const auto& pp : factors) {
    moduli.push_back(pp.value);
    residues.push_back(pp.value == component ? value : 1);
  }
  return static_cast<std::uint32_t>(arith::crt(residues, moduli));
}

std::uint32_t definitional_conductor(std::span<const std::int32_t> phases, std::uint32_t q) {
  for (const std::uint32_t d : arith::divisors(q)) {
    bool induced = true;
    for (std::uint32_t a = 1 % d; a < q; a += d) {
      const std::int32_t ph = phases[a];
      if (ph != DirichletCharacter::kZero && ph != 0) {
        induced = false;
        break;
      }
    }
    if (induced) return d;
  }
  return q;
}

}  // namespace

std::string_view to_string(Parity parity) {
  return parity == Parity::even ? "even" : "odd";
}

Parity parse_parity(std::string_view text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  throw std::invalid_argument("parity must be 'even' or 'odd', got '" + std::string(text) + "'");
}

std::uint32_t UnitGroupStructure::order() const {
  std::uint32_t n = 1;
  for (const auto o : orders) n *= o;
  return n;
}

UnitGroupStructure unit_group(std::uint32_t q) {
  if (q == 0) throw std::invalid_argument("unit_group: modulus must be positive");
  UnitGroupStructure s;
  s.modulus = q;
  const auto factors = arith::factorize(q);
  for (const auto& pp : factors) {
    if (pp.prime == 2) {
      if (pp.exponent == 2) {
        s.generators.push_back(lift(3, pp.value, factors));
        s.orders.push_back(2);
      } else if (pp.exponent >= 3) {
        s.generators.push_back(lift(pp.value - 1, pp.value, factors));
        s.orders.push_back(2);
        s.generators.push_back(lift(5, pp.value, factors));
        s.orders.push_back(pp.value / 4);
      }
      continue;
    }
    const std::uint32_t phi = pp.value / pp.prime * (pp.prime - 1);
    s.generators.push_back(lift(smallest_primitive_root(pp.value, phi), pp.value, factors));
    s.orders.push_back(phi);
  }
  return s;
}

UnitGroup::UnitGroup(std::uint32_t q) : structure_(unit_group(q)) {
  const std::size_t r = rank();
  for (const auto o : structure_.orders) exponent_ = std::lcm(exponent_, o);
  logs_.assign(static_cast<std::size_t>(q) * r, 0);
  unit_.assign(q, 0);

  // Walk every exponent vector in mixed radix and record the product it hits.
  std::vector<std::uint32_t> exps(r, 0);
  std::vector<std::uint64_t> partial(r + 1, 1 % q);
  const std::uint32_t total = structure_.order();
  for (std::uint32_t count = 0; count < total; ++count) {
    for (std::size_t i = 0; i < r; ++i)
      partial[i + 1] = arith::mul_mod(
          partial[i], arith::pow_mod(structure_.generators[i], exps[i], q), q);
    const auto a = static_cast<std::uint32_t>(partial[r]);
    if (unit_[a]) throw std::logic_error("unit_group: generators are not independent");
    unit_[a] = 1;
    std::copy(exps.begin(), exps.end(), logs_.begin() + static_cast<std::ptrdiff_t>(a * r));
    for (std::size_t i = r; i-- > 0;) {
      if (++exps[i] < structure_.orders[i]) break;
      exps[i] = 0;
    }
  }
}

bool UnitGroup::is_unit(std::uint32_t residue) const {
  return residue < unit_.size() && unit_[residue] != 0;
}

std::span<const std::uint32_t> UnitGroup::log(std::uint32_t residue) const {
  if (!is_unit(residue)) return {};
  return std::span<const std::uint32_t>(logs_).subspan(residue * rank(), rank());
}

std::string format_label(const CharacterLabel& label) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) out += ':';
    out += std::to_string(label[i]);
  }
  return out;
}

CharacterLabel parse_label(std::string_view text) {
  if (!text.empty() && text.front() == '[') text.remove_prefix(1);
  if (!text.empty() && text.back() == ']') text.remove_suffix(1);
  CharacterLabel label;
  while (!text.empty()) {
    const auto sep = text.find_first_of(":,");
    const auto token = text.substr(0, sep);
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("bad character label component '" + std::string(token) + "'");
    label.push_back(v);
    if (sep == std::string_view::npos) break;
    text.remove_prefix(sep + 1);
  }
  return label;
}

std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n) {
  k %= n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<std::complex<double>> roots_of_unity(std::uint64_t n) {
  std::vector<std::complex<double>> out(n);
  for (std::uint64_t k = 0; k < n; ++k) out[k] = root_of_unity(k, n);
  return out;
}

DirichletCharacter::DirichletCharacter(const UnitGroup& group, CharacterLabel label)
    : modulus_(group.modulus()), label_(std::move(label)), root_order_(group.exponent()) {
  const auto& orders = group.structure().orders;
  if (label_.size() != orders.size())
    throw std::invalid_argument("character label has " + std::to_string(label_.size()) +
                                " components, group mod " + std::to_string(modulus_) +
                                " has rank " + std::to_string(orders.size()));
  std::vector<std::uint64_t> weights(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (label_[i] >= orders[i])
      throw std::invalid_argument("character label component " + std::to_string(i) +
                                  " out of range [0, " + std::to_string(orders[i]) + ")");
    weights[i] = static_cast<std::uint64_t>(label_[i]) * (root_order_ / orders[i]);
    order_ = std::lcm(order_, orders[i] / std::gcd(label_[i], orders[i]));
  }

  phases_.assign(modulus_, kZero);
  for (std::uint32_t a = 0; a < modulus_; ++a) {
    const auto lg = group.log(a);
    if (!group.is_unit(a)) continue;
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < lg.size(); ++i) k += weights[i] * lg[i];
    phases_[a] = static_cast<std::int32_t>(k % root_order_);
  }

  parity_ = phases_[modulus_ - 1] == 0 ? Parity::even : Parity::odd;
  conductor_ = definitional_conductor(phases_, modulus_);
}

std::optional<std::uint32_t> DirichletCharacter::phase(std::int64_t a) const {
  const std::int32_t ph = phases_[reduce(a, modulus_)];
  if (ph == kZero) return std::nullopt;
  return static_cast<std::uint32_t>(ph);
}

std::complex<double> DirichletCharacter::operator()(std::int64_t a) const {
  const std::int32_t ph = phases_[reduce(a, modulus_)];
  if (ph == kZero) return {0.0, 0.0};
  return root_of_unity(static_cast<std::uint64_t>(ph), root_order_);
}

std::vector<std::complex<double>> DirichletCharacter::values() const {
  return values(roots_of_unity(root_order_));
}

std::vector<std::complex<double>> DirichletCharacter::values(
    std::span<const std::complex<double>> roots) const {
  if (roots.size() != root_order_)
    throw std::invalid_argument("values: root table has the wrong order");
  std::vector<std::complex<double>> out(modulus_);
  for (std::uint32_t a = 0; a < modulus_; ++a)
    out[a] = phases_[a] == kZero ? std::complex<double>{} : roots[static_cast<std::size_t>(phases_[a])];
  return out;
}

std::vector<DirichletCharacter> enumerate_characters(const UnitGroup& group) {
  const auto& orders = group.structure().orders;
  std::vector<DirichletCharacter> out;
  out.reserve(group.size());
  CharacterLabel label(orders.size(), 0);
  for (std::uint32_t count = 0; count < group.size(); ++count) {
    out.emplace_back(group, label);
    for (std::size_t i = label.size(); i-- > 0;) {
      if (++label[i] < orders[i]) break;
      label[i] = 0;
    }
  }
  return out;
}

std::vector<DirichletCharacter> enumerate_characters(std::uint32_t q) {
  return enumerate_characters(UnitGroup(q));
}

std::vector<DirichletCharacter> primitive_characters(std::uint32_t q) {
  auto all = enumerate_characters(q);
  std::vector<DirichletCharacter> out;
  for (auto& chi : all)
    if (chi.is_primitive()) out.push_back(std::move(chi));
  return out;
}

std::uint32_t conductor(const DirichletCharacter& chi) {
  return definitional_conductor(chi.phases(), chi.modulus());
}

GaussSum gauss_sum(const DirichletCharacter& chi) {
  return gauss_sum(chi.values(), roots_of_unity(chi.modulus()));
}

GaussSum gauss_sum(std::span<const std::complex<double>> values,
                   std::span<const std::complex<double>> additive) {
  const std::size_t q = values.size();
  if (additive.size() != q) throw std::invalid_argument("gauss_sum: tables differ in length");
  std::complex<double> tau{};
  for (std::size_t a = 1; a <= q; ++a) tau += values[a % q] * additive[a % q];
  return {tau, std::abs(tau)};
}

double twist_identity_check(const DirichletCharacter& chi, std::int64_t m) {
  return twist_identity_check(chi, m, gauss_sum(chi).value);
}

double twist_identity_check(const DirichletCharacter& chi, std::int64_t m,
                            std::complex<double> tau) {
  return twist_identity_check(chi, m, tau, chi.values(), roots_of_unity(chi.modulus()));
}

double twist_identity_check(const DirichletCharacter& chi, std::int64_t m,
                            std::complex<double> tau,
                            std::span<const std::complex<double>> values,
                            std::span<const std::complex<double>> additive) {
  if (!chi.is_primitive())
    throw std::invalid_argument("twist identity holds only for primitive characters");
  const std::uint32_t q = chi.modulus();
  if (values.size() != q || additive.size() != q)
    throw std::invalid_argument("twist_identity_check: tables do not match the modulus");
  const std::uint32_t mr = reduce(m, q);
  const bool even = chi.parity() == Parity::even;
  std::complex<double> rhs{};
  for (std::uint32_t a = 1; a <= q; ++a) {
    const auto c = values[a % q];
    const auto e = additive[static_cast<std::uint64_t>(a % q) * mr % q];
    rhs += even ? c * e.real() : std::complex<double>(0.0, 1.0) * c * e.imag();
  }
  const auto lhs = std::conj(chi(m)) * tau;
  return std::abs(lhs - rhs);
}

int delta_q_check(std::uint32_t q, std::int64_t a) {
  if (q == 0) throw std::invalid_argument("delta_q_check: modulus must be positive");
  const std::uint32_t ar = reduce(a, q);
  std::complex<double> sum{};
  for (std::uint32_t x = 1; x <= q; ++x)
    sum += root_of_unity(static_cast<std::uint64_t>(ar) * x % q, q);
  return static_cast<int>(std::lround(sum.real() / q));
}

}  // namespace pv
