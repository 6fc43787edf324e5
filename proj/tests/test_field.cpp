#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "vislab/errors.hpp"
#include "vislab/field.hpp"
#include "vislab/poly.hpp"

using namespace vislab;

namespace {

// Brute-force irreducibility for degree <= 3: irreducible iff no root in F_p.
bool no_root(const PrimePoly& g, std::uint32_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t j = g.size(); j-- > 0;) acc = (acc * x + g[j]) % p;
    if (acc == 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("find_irreducible_poly examples") {
  CHECK(find_irreducible_poly(5, 1) == PrimePoly{0, 1});
  CHECK(find_irreducible_poly(7, 2) == PrimePoly{1, 0, 1});
  CHECK(find_irreducible_poly(5, 2) == PrimePoly{2, 0, 1});
  CHECK(find_irreducible_poly(5, 2) == find_irreducible_poly(5, 2));
}

TEST_CASE("find_irreducible_poly returns the first candidate in search order") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u})
    for (unsigned k : {2u, 3u}) {
      const PrimePoly g = find_irreducible_poly(p, k);
      REQUIRE(g.size() == k + 1);
      CHECK(g[k] == 1);
      CHECK(no_root(g, p));
      // Every earlier monic candidate has a root.
      const std::uint64_t rank = [&] {
        std::uint64_t r = 0;
        for (unsigned j = k; j-- > 0;) r = r * p + g[j];
        return r;
      }();
      for (std::uint64_t r = 0; r < rank; ++r) {
        PrimePoly c(k + 1, 0);
        c[k] = 1;
        std::uint64_t t = r;
        for (unsigned j = 0; j < k; ++j) {
          c[j] = static_cast<std::uint32_t>(t % p);
          t /= p;
        }
        REQUIRE_FALSE(no_root(c, p));
      }
    }
}

TEST_CASE("Rabin test agrees with root search for degrees 2 and 3") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (unsigned k : {2u, 3u}) {
      const std::uint64_t total = ipow(p, k);
      for (std::uint64_t r = 0; r < total; ++r) {
        PrimePoly c(k + 1, 0);
        c[k] = 1;
        std::uint64_t t = r;
        for (unsigned j = 0; j < k; ++j) {
          c[j] = static_cast<std::uint32_t>(t % p);
          t /= p;
        }
        REQUIRE(is_irreducible_over_prime(c, p) == no_root(c, p));
      }
    }
  // x^4 + 1 over F_3 has no roots but factors.
  CHECK_FALSE(is_irreducible_over_prime({1, 0, 0, 0, 1}, 3));
}

TEST_CASE("ExtensionField axioms on F_49, F_125 and F_16") {
  for (auto [p, k] : {std::pair{7u, 2u}, std::pair{5u, 3u}, std::pair{2u, 4u}}) {
    const ExtensionField F(p, k);
    const std::uint64_t q = ipow(p, k);
    CHECK(F.size() == doctest::Approx(static_cast<double>(q)));
    std::vector<FieldElem> all;
    for (std::uint64_t i = 0; i < q; ++i) all.push_back(F.element(i));
    for (std::uint64_t i = 1; i < q; ++i) {
      const FieldElem& a = all[i];
      REQUIRE(F.pow(a, q - 1) == F.one());
      REQUIRE(F.mul(a, F.inv(a)) == F.one());
      REQUIRE(F.add(a, F.neg(a)) == F.zero());
    }
    std::mt19937_64 rng(k * 1000 + p);
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    for (int t = 0; t < 300; ++t) {
      const FieldElem a = all[pick(rng)], b = all[pick(rng)], c = all[pick(rng)];
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
      CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
      CHECK(F.frobenius(a, k) == a);
      CHECK(F.sub(F.add(a, b), b) == a);
    }
    for (unsigned l = 1; l <= k; ++l) {
      if (k % l) continue;
      std::uint64_t in_sub = 0;
      for (const FieldElem& a : all) in_sub += F.in_subfield(a, l);
      CHECK(in_sub == ipow(p, l));
    }
    std::uint64_t prime_sub = 0;
    for (const FieldElem& a : all) prime_sub += F.is_prime_subfield(a);
    CHECK(prime_sub == p);
  }
  CHECK_THROWS_AS(ExtensionField(5, PrimePoly{1, 0, 1}), InvalidArgument);
}

TEST_CASE("univariate_roots examples") {
  CHECK(univariate_roots(PrimePoly{6, 0, 1}, 7) == std::vector<std::uint32_t>{1, 6});
  CHECK(univariate_roots(PrimePoly{2, 0, 1}, 5).empty());
  CHECK(univariate_roots(PrimePoly{4, 2}, 5) == std::vector<std::uint32_t>{3});
  CHECK_THROWS_AS(univariate_roots(PrimePoly{}, 5), IdenticallyZero);
  CHECK_THROWS_AS(univariate_roots(PrimePoly{0, 0}, 5), IdenticallyZero);
  CHECK(univariate_roots(PrimePoly{3}, 5).empty());
}

TEST_CASE("univariate_roots over F_p match exhaustive evaluation") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u, 13u, 31u, 97u}) {
    std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
    std::uniform_int_distribution<int> deg(1, 7);
    for (int t = 0; t < 60; ++t) {
      PrimePoly g(deg(rng) + 1);
      for (auto& c : g) c = coeff(rng);
      if (t % 3 == 0) {  // plant roots
        for (std::uint32_t r : {coeff(rng), coeff(rng)}) {
          PrimePoly h(g.size() + 1, 0);
          for (std::size_t j = 0; j < g.size(); ++j) {
            h[j + 1] = (h[j + 1] + g[j]) % p;
            h[j] = static_cast<std::uint32_t>((h[j] + std::uint64_t(p - r) * g[j]) % p);
          }
          g = h;
        }
      }
      if (std::all_of(g.begin(), g.end(), [](auto c) { return c == 0; })) continue;
      std::vector<std::uint32_t> expected;
      for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t j = g.size(); j-- > 0;) acc = (acc * x + g[j]) % p;
        if (acc == 0) expected.push_back(static_cast<std::uint32_t>(x));
      }
      REQUIRE(univariate_roots(g, p) == expected);
    }
  }
}

TEST_CASE("roots and factorization over F_25 and F_27") {
  for (auto [p, k] : {std::pair{5u, 2u}, std::pair{3u, 3u}}) {
    const ExtensionField F(p, k);
    const FieldPolyRing R(F);
    const std::uint64_t q = ipow(p, k);
    std::mt19937_64 rng(p + k);
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    for (int t = 0; t < 40; ++t) {
      FieldPoly g;
      const int d = 1 + t % 6;
      for (int j = 0; j < d; ++j) g.push_back(F.element(pick(rng)));
      g.push_back(F.one());
      std::vector<FieldElem> expected;
      for (std::uint64_t i = 0; i < q; ++i)
        if (F.is_zero(R.eval(g, F.element(i)))) expected.push_back(F.element(i));
      REQUIRE(univariate_roots(g, F) == expected);

      if (!R.is_squarefree(g)) continue;
      const auto factors = R.factor_squarefree(g);
      FieldPoly prod = R.constant(F.one());
      for (const FieldPoly& h : factors) {
        CHECK(h.back() == F.one());
        prod = R.mul(prod, h);
        // A factor of degree <= 3 is irreducible iff it has no root.
        if (R.degree(h) <= 3 && R.degree(h) > 1)
          for (std::uint64_t i = 0; i < q; ++i) REQUIRE_FALSE(F.is_zero(R.eval(h, F.element(i))));
      }
      CHECK(prod == g);
    }
  }
}

TEST_CASE("polynomial ring gcd and inverse") {
  const ExtensionField F(7, 2);
  const FieldPolyRing R(F);
  const FieldPoly a = {F.from_int(1), F.zero(), F.one()};  // t^2 + 1
  const FieldPoly b = {F.from_int(6), F.one()};            // t - 1
  CHECK(R.degree(R.gcd(R.mul(a, b), b)) == 1);
  CHECK(R.gcd(a, b) == R.constant(F.one()));
  const FieldPoly inv = R.inv_mod(b, a);
  CHECK(R.mod(R.mul(inv, b), a) == R.constant(F.one()));
}
