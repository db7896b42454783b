#include "pv/arith.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <stdexcept>

namespace pv::arith {

std::vector<PrimePower> factorize(std::uint32_t n) {
  std::vector<PrimePower> out;
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

std::vector<std::uint32_t> divisors(std::uint32_t n) {
  std::vector<std::uint32_t> small, large;
  for (std::uint32_t d = 1; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::uint32_t totient(std::uint32_t n) {
  std::uint32_t phi = n;
  for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace {

// Inverse of a modulo m for gcd(a, m) = 1, via the extended Euclidean algorithm.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t r0 = static_cast<std::int64_t>(a % m), r1 = static_cast<std::int64_t>(m);
  std::int64_t s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t t = r0 / r1;
    r0 -= t * r1;
    std::swap(r0, r1);
    s0 -= t * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::invalid_argument("crt: moduli not coprime");
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((s0 % mm) + mm) % mm);
}

}  // namespace

std::uint64_t crt(const std::vector<std::uint64_t>& residues,
                  const std::vector<std::uint64_t>& moduli) {
  if (residues.size() != moduli.size())
    throw std::invalid_argument("crt: residue/modulus count mismatch");
  std::uint64_t x = 0;
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t mi = moduli[i];
    if (mi == 1) continue;
    // x + m*t == r_i (mod m_i)
    const std::uint64_t diff = (residues[i] % mi + mi - x % mi) % mi;
    const std::uint64_t t = mul_mod(diff, inverse_mod(m, mi), mi);
    x += m * t;
    m *= mi;
  }
  return x;
}

}  // namespace pv::arith
