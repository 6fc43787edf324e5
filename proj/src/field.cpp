#include "vislab/field.hpp"

#include <algorithm>
#include <cmath>

#include "vislab/arith.hpp"
#include "vislab/errors.hpp"

namespace vislab {

namespace {

bool index_less(const FieldElem& a, const FieldElem& b) {
  for (unsigned i = kMaxExtensionDegree; i-- > 0;)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Prime-field helpers

bool is_irreducible_over_prime(const PrimePoly& g_in, std::uint32_t p) {
  PrimePoly g = g_in;
  while (!g.empty() && g.back() % p == 0) g.pop_back();
  if (g.size() < 2) return false;
  const unsigned k = static_cast<unsigned>(g.size() - 1);
  if (k == 1) return true;

  const ExtensionField Fp = ExtensionField::prime(p);
  const FieldPolyRing R(Fp);
  FieldPoly G;
  for (std::uint32_t c : g) G.push_back(Fp.embed(c % p));
  R.trim(G);
  G = R.monic(G);

  const FieldPoly X = R.mod(R.x(), G);
  if (R.frobenius_mod(X, k, G) != X) return false;
  for (std::uint64_t r : prime_factors(k)) {
    const FieldPoly h = R.frobenius_mod(X, static_cast<unsigned>(k / r), G);
    if (R.degree(R.gcd(G, R.sub(h, X))) > 0) return false;
  }
  return true;
}

PrimePoly find_irreducible_poly(std::uint32_t p, unsigned k) {
  if (p < 2 || !is_prime(p)) throw InvalidArgument("find_irreducible_poly: p must be prime");
  if (k == 0) throw InvalidArgument("find_irreducible_poly: degree must be >= 1");
  if (k > kMaxExtensionDegree)
    throw InvalidArgument("find_irreducible_poly: degree exceeds kMaxExtensionDegree");
  PrimePoly g(k + 1, 0);
  g[k] = 1;
  if (k == 1) return g;
  // Odometer over (c_0, ..., c_{k-1}) with c_0 the fastest digit.
  for (;;) {
    if (is_irreducible_over_prime(g, p)) return g;
    unsigned i = 0;
    while (i < k && ++g[i] == p) g[i++] = 0;
    if (i == k) break;
  }
  throw Error("find_irreducible_poly: exhausted search space");
}

// ---------------------------------------------------------------------------
// ExtensionField

ExtensionField::ExtensionField(std::uint32_t p, unsigned k) : p_(p), k_(k) {
  if (p < 2 || !is_prime(p)) throw InvalidArgument("ExtensionField: p must be prime");
  if (p >= (1u << 31)) throw InvalidArgument("ExtensionField: p must be below 2^31");
  if (k == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = find_irreducible_poly(p, k);
  }
}

ExtensionField::ExtensionField(std::uint32_t p, PrimePoly modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (p < 2 || !is_prime(p)) throw InvalidArgument("ExtensionField: p must be prime");
  for (auto& c : modulus_) c %= p;
  while (!modulus_.empty() && modulus_.back() == 0) modulus_.pop_back();
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw InvalidArgument("ExtensionField: modulus must be monic of degree >= 1");
  k_ = static_cast<unsigned>(modulus_.size() - 1);
  if (k_ > kMaxExtensionDegree) throw InvalidArgument("ExtensionField: degree too large");
  if (k_ > 1 && !is_irreducible_over_prime(modulus_, p))
    throw InvalidArgument("ExtensionField: modulus is reducible");
}

long double ExtensionField::size() const {
  return std::pow(static_cast<long double>(p_), static_cast<long double>(k_));
}

FieldElem ExtensionField::from_int(std::int64_t v) const {
  FieldElem e;
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  e.c[0] = static_cast<std::uint32_t>(r);
  return e;
}

FieldElem ExtensionField::element(std::uint64_t index) const {
  FieldElem e;
  for (unsigned i = 0; i < k_ && index; ++i) {
    e.c[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return e;
}

bool ExtensionField::is_prime_subfield(const FieldElem& a) const {
  for (unsigned i = 1; i < k_; ++i)
    if (a.c[i]) return false;
  return true;
}

FieldElem ExtensionField::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t s = a.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FieldElem ExtensionField::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  for (unsigned i = 0; i < k_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
  return r;
}

FieldElem ExtensionField::neg(const FieldElem& a) const { return sub(FieldElem{}, a); }

FieldElem ExtensionField::mul(const FieldElem& a, const FieldElem& b) const {
  const std::uint64_t p = p_;
  FieldElem r;
  if (k_ == 1) {
    r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p);
    return r;
  }
  std::array<std::uint64_t, 2 * kMaxExtensionDegree - 1> prod{};
  for (unsigned i = 0; i < k_; ++i) {
    if (!a.c[i]) continue;
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = (prod[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p;
  }
  for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t c = prod[i];
    if (!c) continue;
    // t^k = -(m_0 + ... + m_{k-1} t^{k-1})
    for (unsigned j = 0; j < k_; ++j)
      prod[i - k_ + j] = (prod[i - k_ + j] + c * (p - modulus_[j])) % p;
  }
  for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

FieldElem ExtensionField::pow(FieldElem a, std::uint64_t e) const {
  FieldElem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem ExtensionField::frobenius(FieldElem a, unsigned times) const {
  if (k_ == 1) return a;
  times %= k_;
  for (unsigned i = 0; i < times; ++i) a = pow(a, p_);
  return a;
}

FieldElem ExtensionField::inv(const FieldElem& a) const {
  if (is_zero(a)) throw InvalidArgument("ExtensionField::inv: zero has no inverse");
  if (k_ == 1) {
    FieldElem r;
    r.c[0] = static_cast<std::uint32_t>(inv_mod(a.c[0], p_));
    return r;
  }
  // a^{-1} = b / N(a) with b = a^p a^{p^2} ... a^{p^{k-1}} and N(a) = a b in F_p.
  FieldElem b = one();
  FieldElem conj = a;
  for (unsigned i = 1; i < k_; ++i) {
    conj = pow(conj, p_);
    b = mul(b, conj);
  }
  const FieldElem norm = mul(a, b);
  return mul(b, from_int(static_cast<std::int64_t>(inv_mod(norm.c[0], p_))));
}

bool ExtensionField::in_subfield(const FieldElem& a, unsigned l) const {
  if (l == 0 || k_ % l != 0) throw InvalidArgument("in_subfield: l must divide the degree");
  if (l == k_) return true;
  return frobenius(a, l) == a;
}

// ---------------------------------------------------------------------------
// FieldPolyRing

FieldPolyRing::FieldPolyRing(const ExtensionField& field, std::uint64_t seed)
    : F_(field), rng_(seed) {}

void FieldPolyRing::trim(FieldPoly& a) const {
  while (!a.empty() && F_.is_zero(a.back())) a.pop_back();
}

FieldPoly FieldPolyRing::constant(const FieldElem& c) const {
  if (F_.is_zero(c)) return {};
  return {c};
}

FieldPoly FieldPolyRing::x() const { return {F_.zero(), F_.one()}; }

FieldPoly FieldPolyRing::add(const FieldPoly& a, const FieldPoly& b) const {
  FieldPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = F_.add(a[i], b[i]);
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(r);
  return r;
}

FieldPoly FieldPolyRing::sub(const FieldPoly& a, const FieldPoly& b) const {
  FieldPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const FieldElem ai = i < a.size() ? a[i] : F_.zero();
    const FieldElem bi = i < b.size() ? b[i] : F_.zero();
    r[i] = F_.sub(ai, bi);
  }
  trim(r);
  return r;
}

FieldPoly FieldPolyRing::mul(const FieldPoly& a, const FieldPoly& b) const {
  if (a.empty() || b.empty()) return {};
  FieldPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (F_.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F_.add(r[i + j], F_.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

FieldPoly FieldPolyRing::scale(const FieldPoly& a, const FieldElem& c) const {
  FieldPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.mul(a[i], c);
  trim(r);
  return r;
}

void FieldPolyRing::divmod(const FieldPoly& a, const FieldPoly& b, FieldPoly& q,
                           FieldPoly& r) const {
  if (b.empty()) throw InvalidArgument("FieldPolyRing::divmod: division by zero polynomial");
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, F_.zero());
  const FieldElem lead_inv = F_.inv(b.back());
  for (std::size_t i = r.size(); i-- >= b.size();) {
    if (F_.is_zero(r[i])) continue;
    const FieldElem c = F_.mul(r[i], lead_inv);
    const std::size_t shift = i + 1 - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = F_.sub(r[shift + j], F_.mul(c, b[j]));
  }
  trim(q);
  trim(r);
}

FieldPoly FieldPolyRing::mod(const FieldPoly& a, const FieldPoly& b) const {
  FieldPoly q, r;
  divmod(a, b, q, r);
  return r;
}

FieldPoly FieldPolyRing::monic(const FieldPoly& a) const {
  if (a.empty()) return a;
  return scale(a, F_.inv(a.back()));
}

FieldPoly FieldPolyRing::gcd(FieldPoly a, FieldPoly b) const {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FieldPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

FieldPoly FieldPolyRing::inv_mod(const FieldPoly& a, const FieldPoly& m) const {
  FieldPoly r0 = m, r1 = mod(a, m);
  FieldPoly s0, s1 = constant(F_.one());
  while (!r1.empty()) {
    FieldPoly q, r;
    divmod(r0, r1, q, r);
    FieldPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw InvalidArgument("FieldPolyRing::inv_mod: not coprime");
  return mod(scale(s0, F_.inv(r0[0])), m);
}

FieldPoly FieldPolyRing::derivative(const FieldPoly& a) const {
  if (a.size() < 2) return {};
  FieldPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = F_.mul(a[i], F_.from_int(static_cast<std::int64_t>(i)));
  trim(r);
  return r;
}

FieldElem FieldPolyRing::eval(const FieldPoly& a, const FieldElem& x) const {
  FieldElem acc = F_.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = F_.add(F_.mul(acc, x), a[i]);
  return acc;
}

FieldPoly FieldPolyRing::mulmod(const FieldPoly& a, const FieldPoly& b, const FieldPoly& m) const {
  return mod(mul(a, b), m);
}

FieldPoly FieldPolyRing::powmod(FieldPoly a, std::uint64_t e, const FieldPoly& m) const {
  FieldPoly r = mod(constant(F_.one()), m);
  a = mod(a, m);
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    e >>= 1;
    if (e) a = mulmod(a, a, m);
  }
  return r;
}

FieldPoly FieldPolyRing::frobenius_mod(FieldPoly a, unsigned times, const FieldPoly& m) const {
  a = mod(a, m);
  for (unsigned i = 0; i < times; ++i) a = powmod(a, F_.characteristic(), m);
  return a;
}

bool FieldPolyRing::is_squarefree(const FieldPoly& a) const {
  if (a.size() < 2) return true;
  return degree(gcd(a, derivative(a))) == 0;
}

FieldPoly FieldPolyRing::random_poly(unsigned below_degree) const {
  std::uniform_int_distribution<std::uint32_t> digit(0, F_.characteristic() - 1);
  FieldPoly r(below_degree);
  for (auto& c : r)
    for (unsigned i = 0; i < F_.degree(); ++i) c.c[i] = digit(rng_);
  trim(r);
  return r;
}

std::vector<FieldPoly> FieldPolyRing::equal_degree_split(const FieldPoly& a, unsigned d) const {
  const int n = degree(a);
  if (n <= static_cast<int>(d)) return {a};
  const unsigned ext = F_.degree() * d;  // the factors' roots live in F_{p^ext}
  const std::uint32_t p = F_.characteristic();
  for (;;) {
    FieldPoly r = random_poly(static_cast<unsigned>(n));
    if (degree(r) < 1) continue;
    FieldPoly w;
    if (p == 2) {
      // Absolute trace r + r^2 + ... + r^(2^(ext-1)).
      FieldPoly term = mod(r, a);
      w = term;
      for (unsigned i = 1; i < ext; ++i) {
        term = mulmod(term, term, a);
        w = add(w, term);
      }
    } else {
      // r^((p^ext - 1)/2) = (prod_i r^(p^i))^((p-1)/2).
      FieldPoly term = mod(r, a);
      FieldPoly norm = term;
      for (unsigned i = 1; i < ext; ++i) {
        term = powmod(term, p, a);
        norm = mulmod(norm, term, a);
      }
      w = sub(powmod(norm, (p - 1) / 2, a), constant(F_.one()));
    }
    FieldPoly g = gcd(a, w);
    const int dg = degree(g);
    if (dg <= 0 || dg == n) continue;
    FieldPoly q, rem;
    divmod(a, g, q, rem);
    auto left = equal_degree_split(g, d);
    auto right = equal_degree_split(monic(q), d);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
}

std::vector<FieldPoly> FieldPolyRing::factor_squarefree(const FieldPoly& a_in) const {
  FieldPoly f = monic(a_in);
  if (degree(f) < 1) throw InvalidArgument("factor_squarefree: degree must be positive");
  std::vector<FieldPoly> out;
  FieldPoly h = mod(x(), f);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(degree(f)); ++d) {
    h = frobenius_mod(h, F_.degree(), f);
    FieldPoly g = gcd(f, sub(h, x()));
    if (degree(g) > 0) {
      auto parts = equal_degree_split(g, d);
      out.insert(out.end(), parts.begin(), parts.end());
      FieldPoly q, r;
      divmod(f, g, q, r);
      f = monic(q);
      h = mod(h, f);
    }
  }
  if (degree(f) > 0) out.push_back(f);
  return out;
}

std::vector<FieldElem> FieldPolyRing::roots(const FieldPoly& a_in) const {
  FieldPoly a = a_in;
  trim(a);
  if (a.empty()) throw IdenticallyZero("roots: polynomial is identically zero");
  std::vector<FieldElem> out;
  if (degree(a) == 0) return out;
  a = monic(a);
  const FieldPoly h = frobenius_mod(x(), F_.degree(), a);
  const FieldPoly g = gcd(a, sub(h, mod(x(), a)));
  if (degree(g) <= 0) return out;
  for (const FieldPoly& lin : equal_degree_split(g, 1)) out.push_back(F_.neg(lin[0]));
  std::sort(out.begin(), out.end(), index_less);
  return out;
}

}  // namespace vislab
