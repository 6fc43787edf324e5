#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vislab/counting.hpp"
#include "vislab/poly.hpp"

namespace vislab {

enum class SweepKind {
  LevelAverage,  // sum over a = 0..p-1 at fixed p
  PrimeAverage,  // sum over primes T/2 <= p <= T at a = 0
};

const char* sweep_kind_name(SweepKind kind);
SweepKind parse_sweep_kind(const std::string& name);

/// One row of a discrepancy sweep.  A failed sweep point keeps its key fields and
/// carries the diagnostic in `error`; its numeric outputs are zero.
struct DiscrepancyRecord {
  SweepKind kind = SweepKind::LevelAverage;
  std::string f;
  std::uint32_t p = 0;  // LevelAverage only
  double T = 0;         // PrimeAverage only
  double X = 0, Y = 0;
  std::uint64_t X_floor = 0, Y_floor = 0;
  double sum_abs_dev = 0;
  double bound_value = 0;
  double ratio = 0;
  bool nontrivial = false;  // XY >= p^{3/2} (resp. T^{3/2})
  std::uint32_t primes_used = 0;
  std::vector<std::uint32_t> skipped_primes;
  std::string error;

  bool ok() const { return error.empty(); }
  friend bool operator==(const DiscrepancyRecord&, const DiscrepancyRecord&) = default;
};

/// sum_a |counts[a] - expected|, evaluated as (S_hi - S_lo) + (k_lo - k_hi) * expected
/// from exact integer partial sums, so the value is independent of summation order.
long double abs_deviation_sum(const std::vector<std::uint64_t>& counts, long double expected);

/// Throws DegenerateReduction or HypothesisViolated unless f mod p is absolutely
/// irreducible of degree > 1.  Returns the reduction.
ModBivariatePoly require_theorem_hypothesis(const IntBivariatePoly& f, std::uint32_t p);

struct LevelAverageResult {
  DiscrepancyRecord record;
  VisibleHistogram histogram;
};

LevelAverageResult theorem1_analysis(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                                     unsigned workers = 1);
DiscrepancyRecord theorem1_sweep(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                                 unsigned workers = 1);

struct PrimeTerm {
  std::uint32_t p;
  std::uint64_t visible;
  long double expected;
};

struct PrimeAverageResult {
  DiscrepancyRecord record;
  std::vector<PrimeTerm> terms;  // ascending p, skipped primes excluded
};

/// Throws BoxTooLarge when T < 2 max(X, Y).
PrimeAverageResult theorem2_analysis(const IntBivariatePoly& f, double T, const CountBox& box,
                                     unsigned workers = 1);
DiscrepancyRecord theorem2_sweep(const IntBivariatePoly& f, double T, const CountBox& box,
                                 unsigned workers = 1);

struct BombieriDeviation {
  std::uint64_t count;
  long double main_term;
  long double abs_dev;
  long double normalized;  // abs_dev / (sqrt(p) (log p)^2)
};

BombieriDeviation bombieri_deviation(const LevelCurveSpec& spec, const CountBox& box);

/// Fraction of a in [0, p) with |N_a - E| <= delta * E.
double fraction_within(const VisibleHistogram& hist, double delta);
double corollary1_profile(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                          double delta, unsigned workers = 1);

inline const std::vector<double> kDefaultDeltaGrid = {0.1, 0.25, 0.5};

struct ZeroSetReport {
  std::string f;
  double X = 0, Y = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  friend bool operator==(const ZeroSetReport&, const ZeroSetReport&) = default;
};

/// Integer zeros of f in [1, X] x [1, Y], exact arithmetic.
ZeroSetReport integer_zero_set(const IntBivariatePoly& f, const CountBox& box);

struct SweepPoint {
  SweepKind kind = SweepKind::LevelAverage;
  std::uint32_t p = 0;
  double T = 0;
  double X = 0, Y = 0;
};

/// Records in plan order; failing points become error records.  Throws EmptyPlan.
std::vector<DiscrepancyRecord> run_sweep_series(const IntBivariatePoly& f,
                                                const std::vector<SweepPoint>& plan,
                                                unsigned workers = 1);

}  // namespace vislab
