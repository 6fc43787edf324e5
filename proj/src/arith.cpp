#include "vislab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "vislab/errors.hpp"

namespace vislab {

std::uint64_t gcd(std::uint64_t u, std::uint64_t v) { return std::gcd(u, v); }

MobiusTable::MobiusTable(std::uint64_t limit) : limit_(limit), values_(limit + 1, 1) {
  if (limit == 0) throw InvalidArgument("mobius_sieve: limit must be >= 1");
  values_[0] = 0;
  // Linear sieve: every composite is struck once, by its least prime factor.
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      values_[i] = -1;
    }
    for (std::uint32_t q : primes) {
      const std::uint64_t m = i * q;
      if (m > limit) break;
      composite[m] = true;
      if (i % q == 0) {
        values_[m] = 0;
        break;
      }
      values_[m] = static_cast<std::int8_t>(-values_[i]);
    }
  }
}

int MobiusTable::at(std::uint64_t d) const {
  if (d == 0 || d > limit_) throw InvalidArgument("MobiusTable: index out of range");
  return values_[d];
}

MobiusTable mobius_sieve(std::uint64_t limit) { return MobiusTable(limit); }

namespace {

constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 18;

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return out;

  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  const auto base = small_primes(root);

  std::vector<char> marks(kSegmentSize);
  for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegmentSize) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + kSegmentSize - 1);
    const std::uint64_t len = seg_hi - seg_lo + 1;
    std::fill(marks.begin(), marks.begin() + static_cast<std::ptrdiff_t>(len), 1);
    for (std::uint64_t q : base) {
      std::uint64_t start = std::max(q * q, (seg_lo + q - 1) / q * q);
      for (std::uint64_t j = start; j <= seg_hi; j += q) marks[j - seg_lo] = 0;
    }
    for (std::uint64_t i = 0; i < len; ++i)
      if (marks[i]) out.push_back(seg_lo + i);
    if (seg_hi == hi) break;
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  for (std::uint64_t q = 17; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

long double zeta2_inverse_partial(std::uint64_t D) {
  if (D == 0) throw InvalidArgument("zeta2_inverse_partial: D must be >= 1");
  const MobiusTable mu(D);
  long double sum = 0.0L;
  for (std::uint64_t d = 1; d <= D; ++d) {
    if (mu[d] == 0) continue;
    const long double dd = static_cast<long double>(d);
    sum += static_cast<long double>(mu[d]) / (dd * dd);
  }
  return sum;
}

std::uint64_t divisor_count(std::uint64_t k) {
  if (k == 0) throw InvalidArgument("divisor_count: k must be >= 1");
  std::uint64_t tau = 1;
  for (std::uint64_t q = 2; q * q <= k; ++q) {
    unsigned e = 0;
    while (k % q == 0) {
      k /= q;
      ++e;
    }
    tau *= e + 1;
  }
  if (k > 1) tau *= 2;
  return tau;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= k; ++q) {
    if (k % q != 0) continue;
    out.push_back(q);
    while (k % q == 0) k /= q;
  }
  if (k > 1) out.push_back(k);
  return out;
}

unsigned prime_omega(std::uint64_t k) {
  if (k == 0) throw InvalidArgument("prime_omega: k must be >= 1");
  return static_cast<unsigned>(prime_factors(k).size());
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw InvalidArgument("inv_mod: zero has no inverse");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace vislab
