#include "vislab/irreducible.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <thread>

#include "vislab/arith.hpp"
#include "vislab/errors.hpp"

namespace vislab {

namespace {

// Polynomial in V whose coefficients are polynomials (or truncated series) in one
// other variable.  Index j holds the coefficient of V^j.
using BiPoly = std::vector<FieldPoly>;

const ExtensionField& cached_field(std::uint32_t p, unsigned k) {
  thread_local std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<ExtensionField>> cache;
  auto& slot = cache[{p, k}];
  if (!slot) slot = std::make_unique<ExtensionField>(p, k);
  return *slot;
}

void trim_bi(BiPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

FieldPoly truncate(FieldPoly a, std::size_t prec, const FieldPolyRing& R) {
  if (a.size() > prec) a.resize(prec);
  R.trim(a);
  return a;
}

// a(c + T)
FieldPoly taylor_shift(const FieldPoly& a, const FieldElem& c, const FieldPolyRing& R) {
  const FieldPoly lin = {c, R.field().one()};
  FieldPoly acc;
  for (std::size_t i = a.size(); i-- > 0;) acc = R.add(R.mul(acc, lin), R.constant(a[i]));
  return acc;
}

FieldPoly series_mul(const FieldPoly& a, const FieldPoly& b, std::size_t prec,
                     const FieldPolyRing& R) {
  return truncate(R.mul(a, b), prec, R);
}

FieldPoly series_inv(const FieldPoly& a, std::size_t prec, const FieldPolyRing& R) {
  const ExtensionField& F = R.field();
  const FieldElem a0_inv = F.inv(a.at(0));
  FieldPoly inv(prec, F.zero());
  inv[0] = a0_inv;
  for (std::size_t k = 1; k < prec; ++k) {
    FieldElem s = F.zero();
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s = F.add(s, F.mul(a[i], inv[k - i]));
    inv[k] = F.neg(F.mul(s, a0_inv));
  }
  R.trim(inv);
  return inv;
}

BiPoly bi_mul(const BiPoly& a, const BiPoly& b, std::size_t prec, const FieldPolyRing& R) {
  if (a.empty() || b.empty()) return {};
  BiPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = R.add(r[i + j], series_mul(a[i], b[j], prec, R));
  trim_bi(r);
  return r;
}

FieldElem coeff_at(const FieldPoly& a, std::size_t k, const ExtensionField& F) {
  return k < a.size() ? a[k] : F.zero();
}

// Exact division test in L[U][V].
bool divides(const BiPoly& numerator, const BiPoly& divisor, const FieldPolyRing& R) {
  BiPoly rem = numerator;
  trim_bi(rem);
  const std::size_t dh = divisor.size() - 1;
  const FieldPoly& lead = divisor.back();
  while (!rem.empty() && rem.size() - 1 >= dh) {
    FieldPoly q, r;
    R.divmod(rem.back(), lead, q, r);
    if (!r.empty()) return false;
    const std::size_t shift = rem.size() - 1 - dh;
    for (std::size_t j = 0; j <= dh; ++j) rem[shift + j] = R.sub(rem[shift + j], R.mul(q, divisor[j]));
    trim_bi(rem);
  }
  return rem.empty();
}

std::string elem_text(const FieldElem& e, const ExtensionField& F) {
  if (F.is_prime_subfield(e)) return std::to_string(e.c[0]);
  std::string s;
  for (unsigned i = F.degree(); i-- > 0;) {
    if (!e.c[i]) continue;
    if (!s.empty()) s += " + ";
    const bool unit = e.c[i] == 1 && i > 0;
    if (!unit) s += std::to_string(e.c[i]);
    if (i > 0) {
      if (!unit) s += "*";
      s += "t";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return "(" + s + ")";
}

std::string bipoly_text(const BiPoly& h, const ExtensionField& F, bool swapped) {
  std::string out;
  for (std::size_t j = h.size(); j-- > 0;) {
    for (std::size_t i = h[j].size(); i-- > 0;) {
      if (F.is_zero(h[j][i])) continue;
      const std::size_t eu = swapped ? j : i, ev = swapped ? i : j;
      std::string mono;
      if (eu) mono += "U" + (eu > 1 ? "^" + std::to_string(eu) : std::string());
      if (ev) mono += (mono.empty() ? "" : "*") + std::string("V") + (ev > 1 ? "^" + std::to_string(ev) : std::string());
      const std::string c = elem_text(h[j][i], F);
      std::string term = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
      out += (out.empty() ? "" : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string field_text(const ExtensionField& F) {
  std::string s = "F_" + std::to_string(F.characteristic());
  if (F.degree() == 1) return s;
  s += "^" + std::to_string(F.degree()) + " = F_" + std::to_string(F.characteristic()) + "[t]/(";
  const auto& m = F.modulus();
  bool first = true;
  for (std::size_t i = m.size(); i-- > 0;) {
    if (!m[i]) continue;
    if (!first) s += " + ";
    first = false;
    if (i == 0 || m[i] != 1) s += std::to_string(m[i]);
    if (i > 0) s += (m[i] != 1 ? "*t" : "t") + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return s + ")";
}

BiPoly to_bipoly(const ModBivariatePoly& f, const ExtensionField& L, const FieldPolyRing& R) {
  const auto dense = f.dense_by_v();
  BiPoly out(dense.size());
  for (std::size_t j = 0; j < dense.size(); ++j) {
    for (std::uint32_t c : dense[j]) out[j].push_back(L.embed(c));
    R.trim(out[j]);
  }
  trim_bi(out);
  return out;
}

SplitWitness make_witness(unsigned ell, int factor_degree, int total_degree, std::string text) {
  SplitWitness w;
  w.extension_degree = ell;
  w.factor_degree = factor_degree;
  w.cofactor_degree = total_degree - factor_degree;
  w.description = std::move(text);
  return w;
}

int total_degree(const BiPoly& h) {
  int d = -1;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (!h[j].empty()) d = std::max(d, static_cast<int>(j + h[j].size() - 1));
  return d;
}

// Hensel lifting at u0 in L followed by subset recombination.  f is primitive in V,
// f(u0, V) is squarefree of full V-degree.
std::optional<SplitWitness> recombine(const BiPoly& f, const FieldElem& u0, const ExtensionField& L,
                                      unsigned ell, int n, bool swapped) {
  const FieldPolyRing R(L);
  const std::size_t d = f.size() - 1;
  std::size_t deg_u = 0;
  for (const auto& c : f) deg_u = std::max(deg_u, c.size() == 0 ? 0 : c.size() - 1);
  const std::size_t prec = deg_u + 1;

  BiPoly shifted(f.size());
  for (std::size_t j = 0; j <= d; ++j) shifted[j] = taylor_shift(f[j], u0, R);
  const FieldPoly lc = shifted[d];

  FieldPoly f0(d + 1);
  for (std::size_t j = 0; j <= d; ++j) f0[j] = coeff_at(shifted[j], 0, L);
  const auto factors0 = R.factor_squarefree(f0);
  const std::size_t r = factors0.size();
  if (r == 1) return std::nullopt;

  // Monic target F = f(u0+T, V) / lc(u0+T).
  const FieldPoly lc_inv = series_inv(lc, prec, R);
  BiPoly target(d + 1);
  for (std::size_t j = 0; j <= d; ++j) target[j] = series_mul(shifted[j], lc_inv, prec, R);

  const FieldPoly f0_monic = R.monic(f0);
  std::vector<FieldPoly> bezout(r);
  for (std::size_t i = 0; i < r; ++i) {
    FieldPoly q, rem;
    R.divmod(f0_monic, factors0[i], q, rem);
    bezout[i] = R.inv_mod(q, factors0[i]);
  }

  std::vector<BiPoly> lifted(r);
  for (std::size_t i = 0; i < r; ++i) {
    lifted[i].resize(factors0[i].size());
    for (std::size_t j = 0; j < factors0[i].size(); ++j) lifted[i][j] = R.constant(factors0[i][j]);
  }

  for (std::size_t k = 1; k < prec; ++k) {
    BiPoly prod = lifted[0];
    for (std::size_t i = 1; i < r; ++i) prod = bi_mul(prod, lifted[i], k + 1, R);
    FieldPoly err(d + 1, L.zero());
    for (std::size_t j = 0; j <= d; ++j) {
      const FieldPoly& t = target[j];
      const FieldPoly empty;
      const FieldPoly& pj = j < prod.size() ? prod[j] : empty;
      err[j] = L.sub(coeff_at(t, k, L), coeff_at(pj, k, L));
    }
    R.trim(err);
    if (err.empty()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      const FieldPoly delta = R.mod(R.mul(err, bezout[i]), factors0[i]);
      for (std::size_t j = 0; j < delta.size(); ++j) {
        FieldPoly& c = lifted[i][j];
        if (c.size() <= k) c.resize(k + 1, L.zero());
        c[k] = L.add(c[k], delta[j]);
        R.trim(c);
      }
    }
  }

  const FieldElem minus_u0 = L.neg(u0);
  // Subsets avoiding the last factor: each unordered split {S, complement} once.
  const std::size_t subsets = std::size_t{1} << (r - 1);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    BiPoly cand = {lc};
    for (std::size_t i = 0; i + 1 < r; ++i)
      if (mask >> i & 1) cand = bi_mul(cand, lifted[i], prec, R);
    for (auto& c : cand) c = taylor_shift(c, minus_u0, R);
    trim_bi(cand);

    FieldPoly content;
    for (const auto& c : cand) content = R.gcd(content, c);
    if (R.degree(content) > 0)
      for (auto& c : cand) {
        FieldPoly q, rem;
        R.divmod(c, content, q, rem);
        c = q;
      }
    if (cand.size() < 2) continue;
    if (!divides(f, cand, R)) continue;

    const FieldElem norm = L.inv(cand.back().back());
    bool defined_over_subfield = true;
    for (auto& c : cand) {
      c = R.scale(c, norm);
      for (const auto& e : c)
        if (defined_over_subfield && !L.in_subfield(e, ell)) defined_over_subfield = false;
    }
    if (!defined_over_subfield) continue;

    const int fd = total_degree(cand);
    return make_witness(ell, fd, n,
                        "factor " + bipoly_text(cand, L, swapped) + " over " + field_text(L));
  }
  return std::nullopt;
}

}  // namespace

std::optional<SplitWitness> find_split(const ModBivariatePoly& f_in, unsigned ell) {
  if (f_in.is_constant()) throw ConstantPolynomial("irreducibility test on a constant polynomial");
  if (ell == 0) throw InvalidArgument("extension degree must be >= 1");
  const int n = f_in.degree();
  if (n == 1) return std::nullopt;
  const std::uint32_t p = f_in.modulus();

  ModBivariatePoly f = f_in;
  const bool dv_zero = f.derivative_v().is_zero();
  const bool du_zero = f.derivative_u().is_zero();
  if (dv_zero && du_zero)
    return make_witness(ell, n / static_cast<int>(p), n,
                        "f is a p-th power (all exponents divisible by " + std::to_string(p) + ")");
  const bool swapped = dv_zero;
  if (swapped) f = f.swapped();

  // Content in the main variable: a nonconstant gcd of the V-coefficients is a factor over F_p.
  {
    const ExtensionField& Fp = cached_field(p, 1);
    const FieldPolyRing R(Fp);
    const BiPoly fb = to_bipoly(f, Fp, R);
    FieldPoly content;
    for (const auto& c : fb) content = R.gcd(content, c);
    if (R.degree(content) > 0) {
      BiPoly shown = {content};
      return make_witness(ell, R.degree(content), n,
                          "content factor " + bipoly_text(shown, Fp, swapped) + " over F_" +
                              std::to_string(p));
    }
  }

  const int dv = f.degree_v();
  if (dv == 1) return std::nullopt;  // primitive and linear in the main variable

  // Good specialization: lc(u0) != 0 and f(u0, V) squarefree.  If the discriminant
  // were nonzero it would vanish at no more than 2*dv*n points.
  const std::uint64_t needed = 2ull * static_cast<std::uint64_t>(dv) * static_cast<std::uint64_t>(n) + 1;
  for (unsigned r = 1;; ++r) {
    const unsigned m = ell * r;
    if (m > kMaxExtensionDegree) throw Error("find_split: required extension degree too large");
    const ExtensionField& L = cached_field(p, m);
    const FieldPolyRing R(L);
    const long double size = L.size();
    const std::uint64_t tries =
        size < static_cast<long double>(needed) ? static_cast<std::uint64_t>(size) : needed;
    const BiPoly fb = to_bipoly(f, L, R);
    for (std::uint64_t idx = 0; idx < tries; ++idx) {
      const FieldElem u0 = L.element(idx);
      FieldPoly spec(fb.size());
      for (std::size_t j = 0; j < fb.size(); ++j) spec[j] = R.eval(fb[j], u0);
      if (L.is_zero(spec.back())) continue;
      if (!R.is_squarefree(spec)) continue;
      return recombine(fb, u0, L, ell, n, swapped);
    }
    if (tries == needed) {
      // Discriminant vanishes identically: f shares a factor with df/dV over F_p.
      return make_witness(ell, -1, n, "f is not squarefree in " + std::string(swapped ? "U" : "V") +
                                          " (repeated or inseparable factor over F_" +
                                          std::to_string(p) + ")");
    }
  }
}

bool is_irreducible_bivariate(const ModBivariatePoly& f, const ExtensionField& field) {
  if (field.characteristic() != f.modulus())
    throw InvalidArgument("is_irreducible_bivariate: field characteristic differs from modulus");
  return !find_split(f, field.degree()).has_value();
}

IrreducibilityVerdict is_absolutely_irreducible(const ModBivariatePoly& f) {
  if (f.is_constant()) throw ConstantPolynomial("irreducibility test on a constant polynomial");
  IrreducibilityVerdict v;
  if (auto w = find_split(f, 1)) {
    v.witness = std::move(w);
    return v;
  }
  v.irreducible_over_base = true;
  for (std::uint64_t ell : prime_factors(static_cast<std::uint64_t>(f.degree()))) {
    if (auto w = find_split(f, static_cast<unsigned>(ell))) {
      v.witness = std::move(w);
      return v;
    }
  }
  v.absolutely_irreducible = true;
  return v;
}

std::vector<std::uint32_t> bad_level_values(const IntBivariatePoly& f, std::uint32_t p,
                                            unsigned workers) {
  const ModBivariatePoly g = reduce_mod(f, p).poly;
  workers = std::max(1u, std::min(workers, p));
  std::vector<char> bad(p, 0);
  auto scan = [&](std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t a = begin; a < end; ++a)
      bad[a] = !is_absolutely_irreducible(g.shifted(a)).absolutely_irreducible;
  };
  if (workers == 1) {
    scan(0, p);
  } else {
    std::vector<std::thread> pool;
    const std::uint32_t chunk = (p + workers - 1) / workers;
    for (std::uint32_t begin = 0; begin < p; begin += chunk)
      pool.emplace_back(scan, begin, std::min(p, begin + chunk));
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < p; ++a)
    if (bad[a]) out.push_back(a);
  return out;
}

}  // namespace vislab
