#include "vislab/counting.hpp"

#include <algorithm>
#include <thread>

#include "vislab/arith.hpp"
#include "vislab/errors.hpp"
#include "vislab/kernels.hpp"

namespace vislab {

namespace {

constexpr std::size_t kRowChunk = 4096;

// Per-row coefficients of V -> g(x, V) mod p.
class RowEvaluator {
 public:
  explicit RowEvaluator(const ModBivariatePoly& g) : p_(g.modulus()), dense_(g.dense_by_v()) {
    coeffs_.resize(dense_.size());
  }

  std::span<const std::uint32_t> row(std::uint64_t x) {
    const std::uint64_t xr = x % p_;
    for (std::size_t j = 0; j < dense_.size(); ++j) {
      std::uint64_t acc = 0;
      const auto& col = dense_[j];
      for (std::size_t i = col.size(); i-- > 0;) acc = (acc * xr + col[i]) % p_;
      coeffs_[j] = static_cast<std::uint32_t>(acc);
    }
    return coeffs_;
  }

 private:
  std::uint64_t p_;
  std::vector<std::vector<std::uint32_t>> dense_;
  std::vector<std::uint32_t> coeffs_;
};

std::uint64_t count_grid(const ModBivariatePoly& g, std::uint32_t a, std::uint64_t x_max,
                         std::uint64_t y_max) {
  const std::uint32_t p = g.modulus();
  RowEvaluator rows(g);
  std::vector<std::uint32_t> values(std::min<std::uint64_t>(y_max, kRowChunk));
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    const auto coeffs = rows.row(x);
    for (std::uint64_t y0 = 1; y0 <= y_max; y0 += kRowChunk) {
      const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kRowChunk, y_max - y0 + 1));
      const std::span<std::uint32_t> out(values.data(), len);
      kernels::eval_row(coeffs, p, static_cast<std::uint32_t>(y0), out);
      count += static_cast<std::uint64_t>(std::count(out.begin(), out.end(), a));
    }
  }
  return count;
}

std::uint64_t count_rows(const ModBivariatePoly& g, std::uint32_t a, std::uint64_t x_max,
                         std::uint64_t y_max) {
  const std::uint32_t p = g.modulus();
  const ModBivariatePoly h = g.shifted(a);
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    const PrimePoly row = specialize_u(h, x);
    if (row.empty()) {
      count += y_max;
      continue;
    }
    for (std::uint32_t r : univariate_roots(row, p)) {
      const std::uint64_t y = r == 0 ? p : r;
      if (y <= y_max) ++count;
    }
  }
  return count;
}

}  // namespace

void validate_box(const CountBox& box, std::uint32_t p) {
  if (!(box.X >= 1.0) || !(box.Y >= 1.0) || box.X > p || box.Y > p)
    throw InvalidArgument("box must satisfy 1 <= X, Y <= p (X=" + std::to_string(box.X) +
                          ", Y=" + std::to_string(box.Y) + ", p=" + std::to_string(p) + ")");
}

LevelCurveSpec::LevelCurveSpec(IntBivariatePoly f, std::uint32_t p, std::int64_t a)
    : f_(std::move(f)), p_(p), a_(0), reduced_(p) {
  if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  a_ = static_cast<std::uint32_t>(r);
  reduced_ = reduce_mod(f_, p).poly;
}

std::uint64_t count_level_points(const ModBivariatePoly& g, std::uint32_t a, std::uint64_t x_max,
                                 std::uint64_t y_max, CountStrategy strategy) {
  if (x_max == 0 || y_max == 0) return 0;
  if (strategy == CountStrategy::Auto)
    strategy = (y_max == g.modulus() && g.degree_v() <= 4 && g.degree_v() >= 0)
                   ? CountStrategy::RowRoots
                   : CountStrategy::GridSweep;
  return strategy == CountStrategy::RowRoots ? count_rows(g, a, x_max, y_max)
                                             : count_grid(g, a, x_max, y_max);
}

std::uint64_t count_level_points(const LevelCurveSpec& spec, const CountBox& box,
                                 CountStrategy strategy) {
  validate_box(box, spec.p());
  return count_level_points(spec.reduced(), spec.a(), box.x_max(), box.y_max(), strategy);
}

std::uint64_t count_divisible(const LevelCurveSpec& spec, const CountBox& box, std::uint64_t d) {
  validate_box(box, spec.p());
  if (d == 0) throw InvalidArgument("count_divisible: d must be >= 1");
  const std::uint64_t xm = box.x_max(), ym = box.y_max();
  if (d > std::min(xm, ym)) return 0;
  return count_level_points(spec.reduced().scaled(d), spec.a(), xm / d, ym / d,
                            CountStrategy::GridSweep);
}

std::uint64_t count_visible_direct(const LevelCurveSpec& spec, const CountBox& box) {
  validate_box(box, spec.p());
  const std::uint32_t p = spec.p(), a = spec.a();
  const std::uint64_t xm = box.x_max(), ym = box.y_max();
  RowEvaluator rows(spec.reduced());
  std::vector<std::uint32_t> values(ym);
  std::vector<std::uint8_t> coprime(ym);
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x <= xm; ++x) {
    kernels::eval_row(rows.row(x), p, 1, values);
    kernels::coprime_row(static_cast<std::uint32_t>(x), 1, coprime);
    for (std::uint64_t k = 0; k < ym; ++k) count += (values[k] == a) & coprime[k];
  }
  return count;
}

std::uint64_t count_visible_mobius(const LevelCurveSpec& spec, const CountBox& box) {
  validate_box(box, spec.p());
  const std::uint64_t dmax = std::min(box.x_max(), box.y_max());
  const MobiusTable mu = mobius_sieve(dmax);
  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= dmax; ++d) {
    if (mu[d] == 0) continue;
    total += mu[d] * static_cast<std::int64_t>(count_divisible(spec, box, d));
  }
  return static_cast<std::uint64_t>(total);
}

long double expected_visible(const CountBox& box, std::uint32_t p) {
  return kInvZeta2 * static_cast<long double>(box.X) * static_cast<long double>(box.Y) /
         static_cast<long double>(p);
}

VisibleHistogram visible_histogram(const ModBivariatePoly& g, const CountBox& box, unsigned workers) {
  const std::uint32_t p = g.modulus();
  validate_box(box, p);
  if (g.is_constant())
    throw DegenerateReduction("visible_histogram: polynomial is constant modulo " + std::to_string(p));
  const std::uint64_t xm = box.x_max(), ym = box.y_max();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, xm));

  struct Partial {
    std::vector<std::uint64_t> level, visible;
  };
  std::vector<Partial> partials(workers);
  auto sweep = [&](unsigned w, std::uint64_t x_lo, std::uint64_t x_hi) {
    Partial& part = partials[w];
    part.level.assign(p, 0);
    part.visible.assign(p, 0);
    RowEvaluator rows(g);
    std::vector<std::uint32_t> values(ym);
    std::vector<std::uint8_t> coprime(ym);
    for (std::uint64_t x = x_lo; x < x_hi; ++x) {
      kernels::eval_row(rows.row(x), p, 1, values);
      kernels::coprime_row(static_cast<std::uint32_t>(x), 1, coprime);
      for (std::uint64_t k = 0; k < ym; ++k) {
        ++part.level[values[k]];
        part.visible[values[k]] += coprime[k];
      }
    }
  };

  const std::uint64_t chunk = (xm + workers - 1) / workers;
  if (workers == 1) {
    sweep(0, 1, xm + 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = 1 + w * chunk;
      const std::uint64_t hi = std::min(xm + 1, lo + chunk);
      if (lo >= hi) {
        partials[w].level.assign(p, 0);
        partials[w].visible.assign(p, 0);
        continue;
      }
      pool.emplace_back(sweep, w, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  VisibleHistogram h;
  h.p = p;
  h.box = box;
  h.level_counts.assign(p, 0);
  h.visible_counts.assign(p, 0);
  for (const Partial& part : partials)
    for (std::uint32_t a = 0; a < p; ++a) {
      h.level_counts[a] += part.level[a];
      h.visible_counts[a] += part.visible[a];
    }
  return h;
}

VisibleHistogram visible_histogram(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                                   unsigned workers) {
  if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
  return visible_histogram(reduce_mod(f, p).poly, box, workers);
}

}  // namespace vislab
