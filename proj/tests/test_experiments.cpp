#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vislab/errors.hpp"
#include "vislab/experiments.hpp"
#include "vislab/report.hpp"

using namespace vislab;

namespace {

const char* kCubic = "V^2 - U^3 - U - 1";

long double oracle_expected(double X, double Y, std::uint64_t p) {
  const long double pi = std::numbers::pi_v<long double>;
  return 6.0L / (pi * pi) * static_cast<long double>(X) * static_cast<long double>(Y) / p;
}

// Independent per-level double loop, no histogram.
std::vector<std::uint64_t> oracle_visible_by_level(const oracle::Terms& f, std::uint64_t p,
                                                   std::uint64_t X, std::uint64_t Y) {
  std::vector<std::uint64_t> out(p);
  for (std::uint64_t a = 0; a < p; ++a) out[a] = oracle::count(f, p, a, X, Y, true);
  return out;
}

double oracle_sum(const std::vector<std::uint64_t>& counts, long double E) {
  long double s = 0;
  for (std::uint64_t n : counts) s += std::fabs(static_cast<long double>(n) - E);
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("abs_deviation_sum") {
  CHECK(abs_deviation_sum({}, 1.5L) == 0.0L);
  CHECK(abs_deviation_sum({1, 2, 3}, 2.0L) == 2.0L);
  CHECK(abs_deviation_sum({0, 5}, 2.5L) == 5.0L);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> c(0, 200);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> v(1 + t);
    for (auto& x : v) x = c(rng);
    const long double E = 100.0L + t / 7.0L;
    CHECK(static_cast<double>(abs_deviation_sum(v, E)) == doctest::Approx(oracle_sum(v, E)).epsilon(1e-14));
  }
}

TEST_CASE("hypothesis gating") {
  const auto uv = IntBivariatePoly::parse("U*V");
  const auto circle = IntBivariatePoly::parse("U^2 + V^2");
  CHECK_THROWS_AS(theorem1_sweep(uv, 5, {5, 5}), HypothesisViolated);
  CHECK_THROWS_AS(theorem1_sweep(circle, 7, {7, 7}), HypothesisViolated);
  CHECK_THROWS_AS(theorem1_sweep(circle, 5, {5, 5}), HypothesisViolated);
  CHECK_THROWS_AS(theorem1_sweep(IntBivariatePoly::parse("V - U"), 7, {7, 7}), HypothesisViolated);
  CHECK_THROWS_AS(theorem1_sweep(IntBivariatePoly::parse("7*U^2 + V + U"), 7, {7, 7}), DegenerateReduction);
  CHECK_THROWS_AS(corollary1_profile(uv, 5, {5, 5}, 0.5), HypothesisViolated);
  CHECK_THROWS_AS(theorem1_sweep(IntBivariatePoly::parse(kCubic), 101, {102, 5}), InvalidArgument);
  try {
    theorem1_sweep(circle, 7, {7, 7});
  } catch (const HypothesisViolated& e) {
    CHECK(std::string(e.what()).find("not absolutely irreducible") != std::string::npos);
  }
}

TEST_CASE("theorem1_sweep matches an independent double loop for p <= 101") {
  struct Case {
    const char* f;
    std::uint32_t p;
    double X, Y;
  };
  for (const Case c : {Case{"V - U^2", 7, 7, 7}, Case{kCubic, 11, 11, 11}, Case{kCubic, 31, 20.5, 31},
                       Case{"U*V - 3", 13, 13, 9}, Case{kCubic, 53, 53, 53}, Case{kCubic, 101, 101, 101}}) {
    CAPTURE(c.f);
    CAPTURE(c.p);
    const oracle::Terms terms = oracle::parse_simple(c.f);
    const auto counts = oracle_visible_by_level(terms, c.p, static_cast<std::uint64_t>(c.X),
                                                static_cast<std::uint64_t>(c.Y));
    const double expected_sum = oracle_sum(counts, oracle_expected(c.X, c.Y, c.p));
    const auto res = theorem1_analysis(IntBivariatePoly::parse(c.f), c.p, {c.X, c.Y});
    CHECK(res.histogram.visible_counts == counts);
    CHECK(res.record.sum_abs_dev == expected_sum);
    const double bound = std::sqrt(c.X * c.Y) * std::pow(double(c.p), 0.75) * std::log(double(c.p));
    CHECK(res.record.bound_value == doctest::Approx(bound).epsilon(1e-12));
    CHECK(res.record.ratio == doctest::Approx(expected_sum / bound).epsilon(1e-12));
    CHECK(res.record.sum_abs_dev >= 0);
    CHECK(std::isfinite(res.record.ratio));
    CHECK(res.record.nontrivial == (c.X * c.Y >= std::pow(double(c.p), 1.5)));
    CHECK(res.record.X_floor == static_cast<std::uint64_t>(c.X));
  }
}

TEST_CASE("theorem1_sweep V - U^2 at p = 7 by hand") {
  // Levels partition the coprime pairs of [1,7]^2: 2*(phi(1) + ... + phi(7)) - 1 = 35.
  // Level 0 holds (1,1),(3,2),(5,4),(6,1).
  const auto res = theorem1_analysis(IntBivariatePoly::parse("V - U^2"), 7, {7, 7});
  std::uint64_t total = 0;
  for (auto n : res.histogram.visible_counts) total += n;
  CHECK(total == 35);
  CHECK(res.histogram.visible_counts[0] == 4);
}

TEST_CASE("theorem1 is reproducible across worker counts") {
  const auto f = IntBivariatePoly::parse(kCubic);
  const auto a = theorem1_sweep(f, 211, {211, 150.5}, 1);
  for (unsigned w : {2u, 4u, 7u}) CHECK(theorem1_sweep(f, 211, {211, 150.5}, w) == a);
}

TEST_CASE("theorem2_sweep examples") {
  const auto f = IntBivariatePoly::parse(kCubic);
  CHECK_THROWS_AS(theorem2_sweep(f, 10, {6, 6}), BoxTooLarge);
  CHECK_THROWS_AS(theorem2_sweep(f, 3, {1, 1}), InvalidArgument);

  const auto res = theorem2_analysis(f, 100, {50, 50});
  std::vector<std::uint32_t> ps;
  long double sum = 0;
  const oracle::Terms terms = oracle::parse_simple(kCubic);
  for (const auto& t : res.terms) {
    ps.push_back(t.p);
    const std::uint64_t n = oracle::count(terms, t.p, 0, 50, 50, true);
    CHECK(t.visible == n);
    sum += std::fabs(static_cast<long double>(n) - oracle_expected(50, 50, t.p));
  }
  CHECK(ps == std::vector<std::uint32_t>{53, 59, 61, 67, 71, 73, 79, 83, 89, 97});
  CHECK(res.record.skipped_primes.empty());
  CHECK(res.record.primes_used == 10);
  CHECK(res.record.sum_abs_dev == doctest::Approx(static_cast<double>(sum)).epsilon(1e-14));
  CHECK(res.record.bound_value == doctest::Approx(50 * std::pow(100.0, 0.75)));
  CHECK(res.record.nontrivial);  // 2500 >= 100^{3/2}

  const auto cubic = IntBivariatePoly::parse("V - U^3");
  const auto r2 = theorem2_analysis(cubic, 40, {20, 20});
  std::vector<std::uint32_t> ps2;
  for (const auto& t : r2.terms) {
    ps2.push_back(t.p);
    CHECK(t.visible == oracle::count(oracle::parse_simple("V - U^3"), t.p, 0, 20, 20, true));
  }
  CHECK(ps2 == std::vector<std::uint32_t>{23, 29, 31, 37});
}

TEST_CASE("theorem2 skips primes failing the hypothesis") {
  const auto f = IntBivariatePoly::parse("U*V + 7*V^2 - 7");
  const auto res = theorem2_analysis(f, 14, {7, 7});
  CHECK(res.record.skipped_primes == std::vector<std::uint32_t>{7});
  CHECK(res.record.primes_used == 2);  // 11, 13
}

TEST_CASE("theorem2 is reproducible across worker counts") {
  const auto f = IntBivariatePoly::parse(kCubic);
  const auto a = theorem2_sweep(f, 200, {100, 100}, 1);
  for (unsigned w : {2u, 8u}) CHECK(theorem2_sweep(f, 200, {100, 100}, w) == a);
}

TEST_CASE("bombieri_deviation examples") {
  const auto d1 = bombieri_deviation(LevelCurveSpec(IntBivariatePoly::parse(kCubic), 101, 1), {101, 101});
  CHECK(std::fabs(static_cast<double>(d1.count) - 101.0) <= 5 * std::sqrt(101.0));
  CHECK(d1.count == oracle::count(oracle::parse_simple(kCubic), 101, 1, 101, 101, false));
  CHECK(d1.normalized < 1);

  const auto d2 = bombieri_deviation(LevelCurveSpec(IntBivariatePoly::parse("V - U^2"), 13, 0), {13, 13});
  CHECK(d2.count == 13);
  CHECK(d2.main_term == 13.0L);
  CHECK(d2.abs_dev == 0.0L);

  for (std::uint32_t p : {5u, 11u, 101u}) {
    const auto d = bombieri_deviation(LevelCurveSpec(IntBivariatePoly::parse("U*V"), p, 1), {double(p), double(p)});
    CHECK(d.count == p - 1);
    CHECK(d.abs_dev == 1.0L);
  }
  CHECK_THROWS_AS(bombieri_deviation(LevelCurveSpec(IntBivariatePoly::parse("U*V"), 11, 0), {11, 11}),
                  HypothesisViolated);
}

TEST_CASE("corollary1 profile") {
  const auto f = IntBivariatePoly::parse("V - U^2");
  const auto counts = oracle_visible_by_level(oracle::parse_simple("V - U^2"), 7, 7, 7);
  const long double E = oracle_expected(7, 7, 7);
  std::size_t within = 0;
  for (auto n : counts) within += std::fabs(n - E) <= 0.9L * E;
  CHECK(corollary1_profile(f, 7, {7, 7}, 0.9) == doctest::Approx(within / 7.0));
  CHECK_THROWS_AS(corollary1_profile(f, 7, {7, 7}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(corollary1_profile(f, 7, {7, 7}, 1.0), InvalidArgument);

  const auto h = theorem1_analysis(IntBivariatePoly::parse(kCubic), 101, {101, 101}).histogram;
  double prev = 0;
  for (int i = 1; i < 100; ++i) {
    const double fr = fraction_within(h, i / 100.0);
    CHECK(fr >= prev);
    CHECK(fr <= 1.0);
    prev = fr;
  }
  CHECK(corollary1_profile(IntBivariatePoly::parse(kCubic), 101, {101, 101}, 0.5) ==
        fraction_within(h, 0.5));
}

TEST_CASE("integer_zero_set examples") {
  const auto z = integer_zero_set(IntBivariatePoly::parse("V^2 - U^3"), {100, 1000});
  std::vector<std::pair<std::int64_t, std::int64_t>> expected;
  for (std::int64_t t = 1; t <= 10; ++t) expected.push_back({t * t, t * t * t});
  CHECK(z.points == expected);
  CHECK(integer_zero_set(IntBivariatePoly::parse("U*V"), {50, 50}).points.empty());
  const auto g = integer_zero_set(IntBivariatePoly::parse("V - U^2"), {5, 25});
  CHECK(g.points == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {2, 4}, {3, 9}, {4, 16}, {5, 25}});
}

TEST_CASE("zero-set size is at most min(X, Y) * deg f") {
  std::mt19937_64 rng(12);
  std::vector<std::pair<IntBivariatePoly, CountBox>> cases = {
      {IntBivariatePoly::parse("V^2 - U^3"), {100, 1000}},
      {IntBivariatePoly::parse("V - U^2"), {5, 25}},
      {IntBivariatePoly::parse("U - V"), {40, 40}},
      {IntBivariatePoly::parse("U^2 - V^2"), {30, 30}},
      {IntBivariatePoly::parse("U*V - 12"), {20, 20}},
      {IntBivariatePoly::parse("U*V - U - V + 1"), {25, 25}},
  };
  for (int t = 0; t < 40; ++t) {
    oracle::Terms terms = oracle::random_terms(rng, 1 + t % 3, 3);
    if (terms.empty()) continue;
    cases.push_back({oracle::to_poly(terms), {30, 30}});
  }
  for (const auto& [f, box] : cases) {
    if (f.degree() < 1) continue;
    const auto z = integer_zero_set(f, box);
    CAPTURE(f.to_string());
    CHECK(z.points.size() <= std::min(box.x_max(), box.y_max()) * static_cast<std::uint64_t>(f.degree()));
    std::size_t brute = 0;
    for (std::int64_t u = 1; u <= static_cast<std::int64_t>(box.x_max()); ++u)
      for (std::int64_t v = 1; v <= static_cast<std::int64_t>(box.y_max()); ++v) brute += f.eval(u, v) == 0;
    CHECK(z.points.size() == brute);
    for (const auto& [u, v] : z.points) CHECK(f.eval(u, v) == 0);
  }
}

TEST_CASE("run_sweep_series") {
  const auto f = IntBivariatePoly::parse(kCubic);
  CHECK_THROWS_AS(run_sweep_series(f, {}), EmptyPlan);

  std::vector<SweepPoint> plan;
  for (std::uint32_t p : {101u, 211u, 401u, 809u}) plan.push_back({SweepKind::LevelAverage, p, 0, double(p), double(p)});
  const auto recs = run_sweep_series(f, plan);
  REQUIRE(recs.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(recs[i].ok());
    CHECK(recs[i] == theorem1_sweep(f, plan[i].p, {plan[i].X, plan[i].Y}));
  }

  // Reducible modulo 5 only.
  const auto g = IntBivariatePoly::parse("U*V + 5*V^2 - 5");
  const auto mixed = run_sweep_series(g, {{SweepKind::LevelAverage, 7, 0, 7, 7},
                                          {SweepKind::LevelAverage, 5, 0, 5, 5},
                                          {SweepKind::PrimeAverage, 0, 10, 6, 6},
                                          {SweepKind::LevelAverage, 11, 0, 11, 11}});
  REQUIRE(mixed.size() == 4);
  CHECK(mixed[0].ok());
  CHECK_FALSE(mixed[1].ok());
  CHECK(mixed[1].p == 5);
  CHECK(mixed[1].sum_abs_dev == 0);
  CHECK(mixed[1].error.find("not absolutely irreducible") != std::string::npos);
  CHECK_FALSE(mixed[2].ok());
  CHECK(mixed[3].ok());
  CHECK(mixed[3] == theorem1_sweep(g, 11, {11, 11}));
}

TEST_CASE("CSV and JSON round trips") {
  const auto f = IntBivariatePoly::parse(kCubic);
  std::vector<DiscrepancyRecord> recs = run_sweep_series(
      f, {{SweepKind::LevelAverage, 101, 0, 101, 55.5}, {SweepKind::PrimeAverage, 0, 60, 20, 30}});
  DiscrepancyRecord odd;
  odd.kind = SweepKind::PrimeAverage;
  odd.f = "U*V";
  odd.T = 0.1;
  odd.X = 1e-300;
  odd.skipped_primes = {2, 3, 5};
  odd.error = "a \"quoted\", comma, error";
  recs.push_back(odd);

  std::stringstream csv;
  report::write_records_csv(csv, recs, {"command=test"});
  const std::string text = csv.str();
  CHECK(text.rfind("# schema=1\n", 0) == 0);
  CHECK(text.find(std::string(report::kRecordHeader)) != std::string::npos);
  std::istringstream in(text);
  CHECK(report::read_records_csv(in) == recs);
  CHECK(report::records_from_json(report::records_json(recs)) == recs);

  for (const ZeroSetReport& z : {integer_zero_set(IntBivariatePoly::parse("V^2 - U^3"), {100, 1000}),
                                 integer_zero_set(IntBivariatePoly::parse("U*V"), {3, 3})}) {
    std::stringstream zs;
    report::write_zero_set_csv(zs, z);
    CHECK(report::read_zero_set_csv(zs) == z);
  }
  CHECK(report::format_double(0.1) == "0.1");
  CHECK(report::split_csv_line("a,\"b,\"\"c\"\"\",d") == std::vector<std::string>{"a", "b,\"c\"", "d"});
}
