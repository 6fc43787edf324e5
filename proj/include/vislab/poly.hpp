#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vislab/field.hpp"

namespace vislab {

/// Exponent pair (i, j) of the monomial U^i V^j.
struct Monomial {
  unsigned u = 0;
  unsigned v = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// f(U, V) in Z[U, V] with exact coefficients.  Zero coefficients are never stored.
class IntBivariatePoly {
 public:
  using TermMap = std::map<Monomial, mpz_class>;

  IntBivariatePoly() = default;

  /// Parses `c*U^i*V^j` terms joined by + or -.  Throws ParseError.
  static IntBivariatePoly parse(std::string_view text);

  void set_coeff(Monomial m, const mpz_class& c);
  void add_term(Monomial m, const mpz_class& c);
  mpz_class coeff(Monomial m) const;
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const { return degree_; }
  int degree_u() const;
  int degree_v() const;

  mpz_class eval(const mpz_class& u, const mpz_class& v) const;
  /// Coefficients of V^j in f(u, V), j = 0..degree_v().
  std::vector<mpz_class> specialize_u(const mpz_class& u) const;

  /// f - a.
  IntBivariatePoly shifted(const mpz_class& a) const;

  std::string to_string() const;

  friend bool operator==(const IntBivariatePoly&, const IntBivariatePoly&) = default;

 private:
  void recompute_degree();

  TermMap terms_;
  int degree_ = -1;
};

/// f mod p with coefficients in [0, p).  Zero coefficients are never stored.
class ModBivariatePoly {
 public:
  using TermMap = std::map<Monomial, std::uint32_t>;

  explicit ModBivariatePoly(std::uint32_t p) : p_(p) {}

  std::uint32_t modulus() const { return p_; }
  const TermMap& terms() const { return terms_; }
  std::uint32_t coeff(Monomial m) const;
  void set_coeff(Monomial m, std::int64_t c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree_ <= 0; }
  int degree() const { return degree_; }
  int degree_u() const;
  int degree_v() const;

  std::uint32_t eval(std::uint64_t x, std::uint64_t y) const;

  /// f - a.
  ModBivariatePoly shifted(std::uint64_t a) const;
  /// f(dU, dV).
  ModBivariatePoly scaled(std::uint64_t d) const;
  /// f(V, U).
  ModBivariatePoly swapped() const;
  /// Partial derivatives.
  ModBivariatePoly derivative_u() const;
  ModBivariatePoly derivative_v() const;

  /// Dense table: rows indexed by V-degree j, entry i is the coefficient of U^i V^j.
  std::vector<std::vector<std::uint32_t>> dense_by_v() const;

  std::string to_string() const;

  friend bool operator==(const ModBivariatePoly&, const ModBivariatePoly&) = default;

 private:
  void recompute_degree();

  std::uint32_t p_;
  TermMap terms_;
  int degree_ = -1;
};

struct Reduction {
  ModBivariatePoly poly;
  int integer_degree;
  int reduced_degree;
  bool degree_dropped() const { return reduced_degree < integer_degree; }
};

/// Reduces every coefficient mod p.  Throws DegenerateReduction if f mod p is constant.
Reduction reduce_mod(const IntBivariatePoly& f, std::uint32_t p);

/// Integer lift with coefficients in [0, p).
IntBivariatePoly lift(const ModBivariatePoly& f);

/// V -> f(x, V) over F_p, trimmed.
PrimePoly specialize_u(const ModBivariatePoly& f, std::uint64_t x);
/// V -> f(x, V) over an extension of F_p (f's modulus must equal the characteristic).
FieldPoly specialize_u(const ModBivariatePoly& f, const ExtensionField& F, const FieldElem& x);

/// Roots of g in F.  Throws IdenticallyZero when g = 0.
std::vector<FieldElem> univariate_roots(const FieldPoly& g, const ExtensionField& F);
/// Roots of g in F_p, ascending.  Throws IdenticallyZero when g = 0.
std::vector<std::uint32_t> univariate_roots(const PrimePoly& g, std::uint32_t p);

}  // namespace vislab
