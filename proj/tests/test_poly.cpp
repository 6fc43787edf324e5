#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vislab/errors.hpp"
#include "vislab/poly.hpp"

using namespace vislab;

TEST_CASE("parse accepts the documented grammar") {
  const IntBivariatePoly f = IntBivariatePoly::parse("V^2 - U^3 - U - 1");
  CHECK(f.coeff({0, 2}) == 1);
  CHECK(f.coeff({3, 0}) == -1);
  CHECK(f.coeff({1, 0}) == -1);
  CHECK(f.coeff({0, 0}) == -1);
  CHECK(f.degree() == 3);
  CHECK(f.degree_u() == 3);
  CHECK(f.degree_v() == 2);

  const IntBivariatePoly g = IntBivariatePoly::parse(" 3 * U^2 * V  -  2*V^4 ");
  CHECK(g.coeff({2, 1}) == 3);
  CHECK(g.coeff({0, 4}) == -2);
  CHECK(IntBivariatePoly::parse("U*V") == IntBivariatePoly::parse("V*U"));
  CHECK(IntBivariatePoly::parse("U + U - 2*U").is_zero());
  CHECK(IntBivariatePoly::parse("123456789012345678901234567890*U").coeff({1, 0}) ==
        mpz_class("123456789012345678901234567890"));
}

TEST_CASE("parse rejects malformed input") {
  for (const char* bad : {"", "2U", "U*W", "U^", "U^-1", "x+1", "U**V", "+", "U V", "3*", "U + -V"})
    CHECK_THROWS_AS(IntBivariatePoly::parse(bad), ParseError);
}

TEST_CASE("to_string round trip") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const IntBivariatePoly f = oracle::to_poly(oracle::random_terms(rng, 5, 50));
    CHECK(IntBivariatePoly::parse(f.is_zero() ? "0" : f.to_string()) == f);
  }
  CHECK(IntBivariatePoly::parse("V^2 - U^3 - U - 1").to_string() == "-U^3 + V^2 - U - 1");
}

TEST_CASE("reduce_mod examples") {
  const Reduction r1 = reduce_mod(IntBivariatePoly::parse("U*V"), 5);
  CHECK(r1.poly.terms().size() == 1);
  CHECK(r1.poly.coeff({1, 1}) == 1);
  CHECK(r1.reduced_degree == 2);
  CHECK_FALSE(r1.degree_dropped());

  const Reduction r2 = reduce_mod(IntBivariatePoly::parse("5*U^2 + U*V"), 5);
  CHECK(r2.poly.terms().size() == 1);
  CHECK(r2.poly.coeff({1, 1}) == 1);
  CHECK(r2.integer_degree == 2);
  CHECK(r2.reduced_degree == 2);
  CHECK_FALSE(r2.degree_dropped());

  CHECK_THROWS_AS(reduce_mod(IntBivariatePoly::parse("7*U + 7*V"), 7), DegenerateReduction);
  CHECK_THROWS_AS(reduce_mod(IntBivariatePoly::parse("7*U + 3"), 7), DegenerateReduction);

  const Reduction r3 = reduce_mod(IntBivariatePoly::parse("7*U^3 + V - 1"), 7);
  CHECK(r3.degree_dropped());
  CHECK(r3.reduced_degree == 1);
  CHECK(r3.poly.coeff({0, 0}) == 6);
}

TEST_CASE("reduce then lift is congruent coefficient-wise") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-1000, 1000);
  for (std::uint32_t p = 2; p <= 50; ++p) {
    if (!oracle::trial_division_prime(p)) continue;
    for (int t = 0; t < 40; ++t) {
      IntBivariatePoly f;
      for (unsigned i = 0; i <= 4; ++i)
        for (unsigned j = 0; i + j <= 4; ++j) f.add_term({i, j}, coeff(rng));
      f.add_term({1, 1}, 1 - f.coeff({1, 1}) % p);  // keep f nonconstant mod p
      const IntBivariatePoly back = lift(reduce_mod(f, p).poly);
      for (unsigned i = 0; i <= 4; ++i)
        for (unsigned j = 0; i + j <= 4; ++j) {
          const mpz_class diff = f.coeff({i, j}) - back.coeff({i, j});
          REQUIRE(mpz_class(diff % p) == 0);
          REQUIRE(back.coeff({i, j}) >= 0);
          REQUIRE(back.coeff({i, j}) < p);
        }
    }
  }
}

TEST_CASE("specialize_u examples") {
  const ModBivariatePoly uv = reduce_mod(IntBivariatePoly::parse("U*V"), 5).poly;
  CHECK(specialize_u(uv, 0).empty());
  CHECK(specialize_u(uv, 2) == PrimePoly{0, 2});
  const ModBivariatePoly c = reduce_mod(IntBivariatePoly::parse("V^2 - U^3"), 7).poly;
  CHECK(specialize_u(c, 2) == PrimePoly{6, 0, 1});
}

TEST_CASE("specialization is consistent with evaluation for p <= 31") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    for (int t = 0; t < 6; ++t) {
      const oracle::Terms terms = oracle::random_terms(rng, 4, 9);
      ModBivariatePoly g(p);
      for (const auto& term : terms) g.set_coeff({term.u, term.v}, g.coeff({term.u, term.v}) + term.c);
      for (std::uint64_t x = 0; x < p; ++x) {
        const PrimePoly h = specialize_u(g, x);
        for (std::uint64_t y = 0; y < p; ++y) {
          std::uint64_t acc = 0;
          for (std::size_t j = h.size(); j-- > 0;) acc = (acc * y + h[j]) % p;
          REQUIRE(acc == g.eval(x, y));
          REQUIRE(acc == oracle::eval_mod(terms, x, y, p));
        }
      }
    }
  }
}

TEST_CASE("specialization over an extension restricts to the prime field") {
  const ModBivariatePoly g = reduce_mod(IntBivariatePoly::parse("V^3 + 2*U*V - U^2 + 4"), 11).poly;
  const ExtensionField F(11, 2);
  const FieldPolyRing R(F);
  for (std::uint32_t x = 0; x < 11; ++x) {
    const FieldPoly h = specialize_u(g, F, F.embed(x));
    for (std::uint32_t y = 0; y < 11; ++y) CHECK(R.eval(h, F.embed(y)) == F.embed(g.eval(x, y)));
  }
}

TEST_CASE("ModBivariatePoly transforms") {
  const ModBivariatePoly g = reduce_mod(IntBivariatePoly::parse("U^2*V + 3*V - 2"), 7).poly;
  for (std::uint64_t x = 0; x < 7; ++x)
    for (std::uint64_t y = 0; y < 7; ++y) {
      CHECK(g.shifted(3).eval(x, y) == (g.eval(x, y) + 4) % 7);
      CHECK(g.scaled(3).eval(x, y) == g.eval(3 * x, 3 * y));
      CHECK(g.swapped().eval(x, y) == g.eval(y, x));
    }
  CHECK(g.derivative_u() == reduce_mod(IntBivariatePoly::parse("2*U*V"), 7).poly);
  CHECK(g.derivative_v() == reduce_mod(IntBivariatePoly::parse("U^2 + 3"), 7).poly);
  const auto dense = g.dense_by_v();
  REQUIRE(dense.size() == 2);
  CHECK(dense[0][0] == 5);
  CHECK(dense[1][0] == 3);
  CHECK(dense[1][2] == 1);
}

TEST_CASE("integer evaluation and specialization") {
  const IntBivariatePoly f = IntBivariatePoly::parse("V^2 - U^3");
  CHECK(f.eval(4, 8) == 0);
  CHECK(f.eval(2, 3) == 1);
  CHECK(f.specialize_u(2) == std::vector<mpz_class>{-8, 0, 1});
  CHECK(f.shifted(5).coeff({0, 0}) == -5);
}
