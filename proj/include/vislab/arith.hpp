#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vislab {

/// 6/pi^2 = 1/zeta(2).
inline constexpr long double kInvZeta2 = 0.607927101854026628663276779258365833L;

std::uint64_t gcd(std::uint64_t u, std::uint64_t v);

/// Table of mu(d) for 1 <= d <= limit, one signed byte per entry.
class MobiusTable {
 public:
  explicit MobiusTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  int operator[](std::uint64_t d) const { return values_[d]; }
  int at(std::uint64_t d) const;

  /// Entries 1..limit (index 0 is unused and holds 0).
  std::span<const std::int8_t> values() const { return values_; }

 private:
  std::uint64_t limit_;
  std::vector<std::int8_t> values_;
};

MobiusTable mobius_sieve(std::uint64_t limit);

/// Primes in [lo, hi], ascending.  Segmented sieve.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

bool is_prime(std::uint64_t n);

/// Sum of mu(d)/d^2 for d <= D, accumulated ascending in long double.
long double zeta2_inverse_partial(std::uint64_t D);

std::uint64_t divisor_count(std::uint64_t k);
unsigned prime_omega(std::uint64_t k);

/// Distinct prime factors of k, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t k);

/// (base^exp) mod m, m < 2^32.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo the prime p; a must be nonzero mod p.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

}  // namespace vislab
