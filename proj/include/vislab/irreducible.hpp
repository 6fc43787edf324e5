#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vislab/field.hpp"
#include "vislab/poly.hpp"

namespace vislab {

/// A nontrivial factorization found over F_{p^extension_degree}.
struct SplitWitness {
  unsigned extension_degree = 1;
  int factor_degree = 0;    // total degree of the exhibited factor
  int cofactor_degree = 0;  // total degree of f / factor
  std::string description;
};

struct IrreducibilityVerdict {
  bool irreducible_over_base = false;
  bool absolutely_irreducible = false;
  std::optional<SplitWitness> witness;
};

/// Searches for a factorization of f over F_{p^extension_degree}.  Returns the witness if
/// f is reducible there, std::nullopt if f is irreducible.
/// Throws ConstantPolynomial for constant f.
std::optional<SplitWitness> find_split(const ModBivariatePoly& f, unsigned extension_degree);

/// True iff f has no factorization into two nonconstant factors over `field`.
bool is_irreducible_bivariate(const ModBivariatePoly& f, const ExtensionField& field);

/// Exact test: f is absolutely irreducible iff it is irreducible over F_{p^l} for l = 1
/// and for every prime l dividing deg f.
IrreducibilityVerdict is_absolutely_irreducible(const ModBivariatePoly& f);

/// Residues a in [0, p) for which f - a is not absolutely irreducible mod p.
/// Throws DegenerateReduction if f mod p is constant.
std::vector<std::uint32_t> bad_level_values(const IntBivariatePoly& f, std::uint32_t p,
                                            unsigned workers = 1);

}  // namespace vislab
