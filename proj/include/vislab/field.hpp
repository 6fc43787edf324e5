#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace vislab {

inline constexpr unsigned kMaxExtensionDegree = 24;

/// Element of F_{p^k} as a coefficient vector modulo the field's defining polynomial.
/// Entries at index >= k are always zero.
struct FieldElem {
  std::array<std::uint32_t, kMaxExtensionDegree> c{};
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// Univariate polynomial over F_p as coefficients c[0] + c[1] t + ..., each in [0, p).
using PrimePoly = std::vector<std::uint32_t>;

/// Monic degree-k polynomial over F_p, irreducible, first in lexicographic order
/// (coefficient vectors compared from the highest non-leading coefficient down).
PrimePoly find_irreducible_poly(std::uint32_t p, unsigned k);

/// Rabin's test.
bool is_irreducible_over_prime(const PrimePoly& g, std::uint32_t p);

class ExtensionField {
 public:
  /// F_{p^k} built from find_irreducible_poly(p, k).
  ExtensionField(std::uint32_t p, unsigned k);
  /// F_{p^k} from an explicit monic modulus; throws InvalidArgument if reducible.
  ExtensionField(std::uint32_t p, PrimePoly modulus);

  static ExtensionField prime(std::uint32_t p) { return ExtensionField(p, 1); }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  const PrimePoly& modulus() const { return modulus_; }
  /// p^k as a long double (exact while below 2^64).
  long double size() const;

  FieldElem zero() const { return {}; }
  FieldElem one() const { return from_int(1); }
  FieldElem from_int(std::int64_t v) const;
  /// The index-th element: base-p digits of index become coefficients.
  FieldElem element(std::uint64_t index) const;
  /// Embedding of an F_p-element.
  FieldElem embed(std::uint32_t residue) const { return from_int(residue); }

  bool is_zero(const FieldElem& a) const { return a == FieldElem{}; }
  bool is_prime_subfield(const FieldElem& a) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  FieldElem inv(const FieldElem& a) const;
  /// a^(p^times).
  FieldElem frobenius(FieldElem a, unsigned times = 1) const;
  /// True when a lies in the subfield F_{p^l} (l must divide the degree).
  bool in_subfield(const FieldElem& a, unsigned l) const;

 private:
  std::uint32_t p_;
  unsigned k_;
  PrimePoly modulus_;
};

/// Univariate polynomial over an ExtensionField, low degree first, no trailing zeros.
using FieldPoly = std::vector<FieldElem>;

/// Polynomial arithmetic over a fixed field.  Holds a reference; the field must outlive it.
class FieldPolyRing {
 public:
  explicit FieldPolyRing(const ExtensionField& field, std::uint64_t seed = 0x5eed);

  const ExtensionField& field() const { return F_; }

  void trim(FieldPoly& a) const;
  int degree(const FieldPoly& a) const { return static_cast<int>(a.size()) - 1; }
  bool is_zero(const FieldPoly& a) const { return a.empty(); }

  FieldPoly constant(const FieldElem& c) const;
  FieldPoly x() const;

  FieldPoly add(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly sub(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly mul(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly scale(const FieldPoly& a, const FieldElem& c) const;
  /// Quotient and remainder; b must be nonzero.
  void divmod(const FieldPoly& a, const FieldPoly& b, FieldPoly& q, FieldPoly& r) const;
  FieldPoly mod(const FieldPoly& a, const FieldPoly& b) const;
  FieldPoly monic(const FieldPoly& a) const;
  /// Monic gcd (zero if both are zero).
  FieldPoly gcd(FieldPoly a, FieldPoly b) const;
  /// Inverse of a modulo m; a and m coprime.
  FieldPoly inv_mod(const FieldPoly& a, const FieldPoly& m) const;
  FieldPoly derivative(const FieldPoly& a) const;
  FieldElem eval(const FieldPoly& a, const FieldElem& x) const;

  FieldPoly mulmod(const FieldPoly& a, const FieldPoly& b, const FieldPoly& m) const;
  FieldPoly powmod(FieldPoly a, std::uint64_t e, const FieldPoly& m) const;
  /// a^(p^times) mod m.
  FieldPoly frobenius_mod(FieldPoly a, unsigned times, const FieldPoly& m) const;

  bool is_squarefree(const FieldPoly& a) const;

  /// Irreducible monic factors of a squarefree polynomial of positive degree.
  std::vector<FieldPoly> factor_squarefree(const FieldPoly& a) const;

  /// Distinct roots in the field, sorted by element index (ascending residue over F_p).
  /// Throws IdenticallyZero for the zero polynomial.
  std::vector<FieldElem> roots(const FieldPoly& a) const;

 private:
  std::vector<FieldPoly> equal_degree_split(const FieldPoly& a, unsigned d) const;
  FieldPoly random_poly(unsigned below_degree) const;

  const ExtensionField& F_;
  mutable std::mt19937_64 rng_;
};

}  // namespace vislab
