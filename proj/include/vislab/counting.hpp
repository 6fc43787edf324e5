#pragma once

#include <cstdint>
#include <vector>

#include "vislab/poly.hpp"

namespace vislab {

/// The box [1, X] x [1, Y].  X and Y are real; enumeration uses their floors.
struct CountBox {
  double X = 1;
  double Y = 1;

  std::uint64_t x_max() const { return static_cast<std::uint64_t>(X); }
  std::uint64_t y_max() const { return static_cast<std::uint64_t>(Y); }
};

/// Throws InvalidArgument unless 1 <= X, Y <= p.
void validate_box(const CountBox& box, std::uint32_t p);

/// The congruence f(x, y) = a (mod p).
class LevelCurveSpec {
 public:
  /// Throws InvalidArgument for non-prime p, DegenerateReduction if f mod p is constant.
  LevelCurveSpec(IntBivariatePoly f, std::uint32_t p, std::int64_t a);

  const IntBivariatePoly& f() const { return f_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t a() const { return a_; }
  const ModBivariatePoly& reduced() const { return reduced_; }
  /// Theorems need deg(f mod p) > 1; smaller degrees are counted but flagged.
  bool in_theorem_scope() const { return reduced_.degree() > 1; }

 private:
  IntBivariatePoly f_;
  std::uint32_t p_;
  std::uint32_t a_;
  ModBivariatePoly reduced_;
};

enum class CountStrategy { Auto, GridSweep, RowRoots };

/// #{(x, y) in box : f(x, y) = a mod p}.
std::uint64_t count_level_points(const LevelCurveSpec& spec, const CountBox& box,
                                 CountStrategy strategy = CountStrategy::Auto);

/// Same count for an already reduced polynomial; box bounds are the floored X, Y (<= p).
std::uint64_t count_level_points(const ModBivariatePoly& g, std::uint32_t a, std::uint64_t x_max,
                                 std::uint64_t y_max, CountStrategy strategy);

/// M(d) = #{(s, t) in [1, X/d] x [1, Y/d] : f(ds, dt) = a mod p}.  Zero for d > min(X, Y).
std::uint64_t count_divisible(const LevelCurveSpec& spec, const CountBox& box, std::uint64_t d);

/// Level points with gcd(x, y) = 1, by gcd filtering.
std::uint64_t count_visible_direct(const LevelCurveSpec& spec, const CountBox& box);

/// sum_{d <= min(X, Y)} mu(d) M(d).  Always equals count_visible_direct.
std::uint64_t count_visible_mobius(const LevelCurveSpec& spec, const CountBox& box);

/// (6/pi^2) X Y / p with the unfloored X, Y.
long double expected_visible(const CountBox& box, std::uint32_t p);

struct VisibleHistogram {
  std::uint32_t p = 0;
  CountBox box;
  std::vector<std::uint64_t> level_counts;    // entry a = #F_{p,a}(X, Y)
  std::vector<std::uint64_t> visible_counts;  // entry a = N_{p,a}(X, Y)
};

/// One sweep over the box accumulating both per-level arrays.  Rows are split across
/// `workers` threads; the result does not depend on the worker count.
/// Throws DegenerateReduction if f mod p is constant.
VisibleHistogram visible_histogram(const IntBivariatePoly& f, std::uint32_t p, const CountBox& box,
                                   unsigned workers = 1);
VisibleHistogram visible_histogram(const ModBivariatePoly& g, const CountBox& box,
                                   unsigned workers = 1);

}  // namespace vislab
