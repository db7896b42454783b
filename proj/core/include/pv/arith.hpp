#pragma once

#include <cstdint>
#include <vector>

namespace pv::arith {

struct PrimePower {
  std::uint32_t prime;
  std::uint32_t exponent;
  std::uint32_t value;  // prime^exponent
};

/// Trial-division factorization, primes in increasing order. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint32_t n);

/// All positive divisors of n in increasing order.
std::vector<std::uint32_t> divisors(std::uint32_t n);

std::uint32_t totient(std::uint32_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Chinese remainder for pairwise coprime moduli; returns x mod prod(moduli).
std::uint64_t crt(const std::vector<std::uint64_t>& residues,
                  const std::vector<std::uint64_t>& moduli);

}  // namespace pv::arith
