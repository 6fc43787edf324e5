#include "vislab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "vislab/arith.hpp"
#include "vislab/errors.hpp"
#include "vislab/irreducible.hpp"

namespace vislab {

const char* sweep_kind_name(SweepKind kind) {
  return kind == SweepKind::LevelAverage ? "level-average" : "prime-average";
}

SweepKind parse_sweep_kind(const std::string& name) {
  if (name == "level-average") return SweepKind::LevelAverage;
  if (name == "prime-average") return SweepKind::PrimeAverage;
  throw ParseError("unknown sweep kind '" + name + "'");
}

long double abs_deviation_sum(const std::vector<std::uint64_t>& counts, long double expected) {
  std::int64_t s_hi = 0, s_lo = 0, k_hi = 0, k_lo = 0;
  for (std::uint64_t n : counts) {
    if (static_cast<long double>(n) >= expected) {
      s_hi += static_cast<std::int64_t>(n);
      ++k_hi;
    } else {
      s_lo += static_cast<std::int64_t>(n);
      ++k_lo;
    }
  }
  return static_cast<long double>(s_hi - s_lo) + static_cast<long double>(k_lo - k_hi) * expected;
}

ModBivariatePoly require_theorem_hypothesis(const IntBivariatePoly& f, std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
  if (f.degree() < 2)
    throw HypothesisViolated("f = " + f.to_string() + " has degree < 2");
  ModBivariatePoly g = reduce_mod(f, p).poly;
  if (g.degree() < 2)
    throw DegenerateReduction("f = " + f.to_string() + " has degree " + std::to_string(g.degree()) +
                              " modulo " + std::to_string(p));
  const IrreducibilityVerdict v = is_absolutely_irreducible(g);
  if (!v.absolutely_irreducible) {
    std::string why = v.irreducible_over_base ? "splits over an extension" : "is reducible over the base field";
    if (v.witness) why += ": " + v.witness->description;
    throw HypothesisViolated("f = " + f.to_string() + " is not absolutely irreducible modulo " +
                             std::to_string(p) + " (" + why + ")");
  }
  return g;
}

namespace {

DiscrepancyRecord key_record(SweepKind kind, const IntBivariatePoly& f, const CountBox& box) {
  DiscrepancyRecord r;
  r.kind = kind;
  r.f = f.to_string();
  r.X = box.X;
  r.Y = box.Y;
  r.X_floor = box.x_max();
  r.Y_floor = box.y_max();
  return r;
}

long double safe_ratio(long double num, long double den) { return den > 0 ? num / den : 0.0L; }

}  // namespace

LevelAverageResult theorem1_analysis(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                                     unsigned workers) {
  const ModBivariatePoly g = require_theorem_hypothesis(f, p);
  validate_box(box, p);
  LevelAverageResult out;
  out.histogram = visible_histogram(g, box, workers);

  DiscrepancyRecord& r = out.record;
  r = key_record(SweepKind::LevelAverage, f, box);
  r.p = p;
  const long double expected = expected_visible(box, p);
  const long double sum = abs_deviation_sum(out.histogram.visible_counts, expected);
  const long double lp = static_cast<long double>(p);
  const long double bound =
      std::sqrt(static_cast<long double>(box.X) * box.Y) * std::pow(lp, 0.75L) * std::log(lp);
  r.sum_abs_dev = static_cast<double>(sum);
  r.bound_value = static_cast<double>(bound);
  r.ratio = static_cast<double>(safe_ratio(sum, bound));
  r.nontrivial = static_cast<long double>(box.X) * box.Y >= std::pow(lp, 1.5L);
  r.primes_used = 1;
  return out;
}

DiscrepancyRecord theorem1_sweep(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                                 unsigned workers) {
  return theorem1_analysis(f, p, box, workers).record;
}

PrimeAverageResult theorem2_analysis(const IntBivariatePoly& f, double T, const CountBox& box,
                                     unsigned workers) {
  if (!(T >= 4.0)) throw InvalidArgument("T must be >= 4");
  if (!(box.X >= 1.0) || !(box.Y >= 1.0)) throw InvalidArgument("box must satisfy X, Y >= 1");
  if (T < 2.0 * std::max(box.X, box.Y))
    throw BoxTooLarge("T = " + std::to_string(T) + " is below 2*max(X, Y) = " +
                      std::to_string(2.0 * std::max(box.X, box.Y)));
  if (f.degree() < 2) throw HypothesisViolated("f = " + f.to_string() + " has degree < 2");

  const auto lo = static_cast<std::uint64_t>(std::ceil(T / 2.0));
  const auto hi = static_cast<std::uint64_t>(std::floor(T));
  const auto primes = primes_in_range(std::max<std::uint64_t>(lo, 2), hi);

  // Per-prime work is independent; the sum is assembled sequentially in ascending p.
  struct Slot {
    bool skipped = false;
    std::uint64_t visible = 0;
  };
  std::vector<Slot> slots(primes.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto p = static_cast<std::uint32_t>(primes[i]);
      try {
        require_theorem_hypothesis(f, p);
      } catch (const DegenerateReduction&) {
        slots[i].skipped = true;
        continue;
      } catch (const HypothesisViolated&) {
        slots[i].skipped = true;
        continue;
      }
      slots[i].visible = count_visible_direct(LevelCurveSpec(f, p, 0), box);
    }
  };
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(primes.size(), 1)));
  if (workers == 1) {
    work(0, primes.size());
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < primes.size(); i += workers) work(i, i + 1);
      });
    for (auto& t : pool) t.join();
  }

  PrimeAverageResult out;
  DiscrepancyRecord& r = out.record;
  r = key_record(SweepKind::PrimeAverage, f, box);
  r.T = T;
  long double sum = 0.0L, comp = 0.0L;  // Kahan
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto p = static_cast<std::uint32_t>(primes[i]);
    if (slots[i].skipped) {
      r.skipped_primes.push_back(p);
      continue;
    }
    const long double expected = expected_visible(box, p);
    out.terms.push_back({p, slots[i].visible, expected});
    const long double term = std::fabs(static_cast<long double>(slots[i].visible) - expected) - comp;
    const long double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  const long double lt = static_cast<long double>(T);
  const long double bound = std::sqrt(static_cast<long double>(box.X) * box.Y) * std::pow(lt, 0.75L);
  r.sum_abs_dev = static_cast<double>(sum);
  r.bound_value = static_cast<double>(bound);
  r.ratio = static_cast<double>(safe_ratio(sum, bound));
  r.nontrivial = static_cast<long double>(box.X) * box.Y >= std::pow(lt, 1.5L);
  r.primes_used = static_cast<std::uint32_t>(out.terms.size());
  return out;
}

DiscrepancyRecord theorem2_sweep(const IntBivariatePoly& f, double T, const CountBox& box,
                                 unsigned workers) {
  return theorem2_analysis(f, T, box, workers).record;
}

BombieriDeviation bombieri_deviation(const LevelCurveSpec& spec, const CountBox& box) {
  validate_box(box, spec.p());
  require_theorem_hypothesis(spec.f().shifted(spec.a()), spec.p());
  BombieriDeviation d;
  d.count = count_level_points(spec, box);
  const long double lp = static_cast<long double>(spec.p());
  d.main_term = static_cast<long double>(box.X) * box.Y / lp;
  d.abs_dev = std::fabs(static_cast<long double>(d.count) - d.main_term);
  const long double lg = std::log(lp);
  d.normalized = d.abs_dev / (std::sqrt(lp) * lg * lg);
  return d;
}

double fraction_within(const VisibleHistogram& hist, double delta) {
  if (hist.visible_counts.empty()) return 0.0;
  const long double expected = expected_visible(hist.box, hist.p);
  const long double tol = static_cast<long double>(delta) * expected;
  std::size_t within = 0;
  for (std::uint64_t n : hist.visible_counts)
    if (std::fabs(static_cast<long double>(n) - expected) <= tol) ++within;
  return static_cast<double>(within) / static_cast<double>(hist.visible_counts.size());
}

double corollary1_profile(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                          double delta, unsigned workers) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  return fraction_within(theorem1_analysis(f, p, box, workers).histogram, delta);
}

ZeroSetReport integer_zero_set(const IntBivariatePoly& f, const CountBox& box) {
  if (f.is_zero()) throw InvalidArgument("integer_zero_set: f is identically zero");
  if (!(box.X >= 1.0) || !(box.Y >= 1.0)) throw InvalidArgument("box must satisfy X, Y >= 1");
  ZeroSetReport rep;
  rep.f = f.to_string();
  rep.X = box.X;
  rep.Y = box.Y;
  const std::uint64_t xm = box.x_max(), ym = box.y_max();
  mpz_class acc;
  for (std::uint64_t x = 1; x <= xm; ++x) {
    const auto row = f.specialize_u(mpz_class(static_cast<unsigned long>(x)));
    const bool all_zero = std::all_of(row.begin(), row.end(), [](const mpz_class& c) { return c == 0; });
    for (std::uint64_t y = 1; y <= ym; ++y) {
      bool zero = all_zero;
      if (!zero) {
        acc = 0;
        for (std::size_t j = row.size(); j-- > 0;) {
          acc *= static_cast<unsigned long>(y);
          acc += row[j];
        }
        zero = acc == 0;
      }
      if (zero) rep.points.emplace_back(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y));
    }
  }
  return rep;
}

std::vector<DiscrepancyRecord> run_sweep_series(const IntBivariatePoly& f,
                                                const std::vector<SweepPoint>& plan, unsigned workers) {
  if (plan.empty()) throw EmptyPlan("sweep plan is empty");
  std::vector<DiscrepancyRecord> out;
  out.reserve(plan.size());
  for (const SweepPoint& pt : plan) {
    const CountBox box{pt.X, pt.Y};
    try {
      if (pt.kind == SweepKind::LevelAverage)
        out.push_back(theorem1_sweep(f, pt.p, box, workers));
      else
        out.push_back(theorem2_sweep(f, pt.T, box, workers));
    } catch (const Error& e) {
      DiscrepancyRecord r = key_record(pt.kind, f, box);
      r.p = pt.kind == SweepKind::LevelAverage ? pt.p : 0;
      r.T = pt.kind == SweepKind::PrimeAverage ? pt.T : 0;
      r.error = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace vislab
