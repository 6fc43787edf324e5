#include "vislab/poly.hpp"

#include <algorithm>
#include <cctype>

#include "vislab/errors.hpp"

namespace vislab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  IntBivariatePoly run() {
    if (s_.empty()) fail("empty polynomial");
    IntBivariatePoly f;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = s_[pos_++] == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      f.add_term(m, sign * c);
    }
    return f;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return s_.substr(start, pos_ - start);
  }

  std::pair<Monomial, mpz_class> term() {
    Monomial m;
    mpz_class c = 1;
    for (;;) {
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= mpz_class(digits());
      } else if (ch == 'U' || ch == 'V') {
        ++pos_;
        unsigned e = 1;
        if (peek() == '^') {
          ++pos_;
          const std::string d = digits();
          if (d.size() > 4) fail("exponent too large");
          e = static_cast<unsigned>(std::stoul(d));
        }
        (ch == 'U' ? m.u : m.v) += e;
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        fail(std::string("unknown variable '") + ch + "' (only U and V are allowed)");
      } else {
        fail("expected a coefficient or variable");
      }
      if (peek() != '*') break;
      ++pos_;
    }
    const char next = peek();
    if (next != '\0' && next != '+' && next != '-') {
      if (std::isdigit(static_cast<unsigned char>(next)) || std::isalpha(static_cast<unsigned char>(next)))
        fail("missing '*' between factors");
      fail(std::string("unexpected character '") + next + "'");
    }
    return {m, c};
  }

  std::string s_;
  std::size_t pos_ = 0;
};

// Terms ordered by descending total degree, then descending U-degree.
template <typename TermMap>
std::vector<typename TermMap::const_iterator> display_order(const TermMap& terms) {
  std::vector<typename TermMap::const_iterator> order;
  for (auto it = terms.begin(); it != terms.end(); ++it) order.push_back(it);
  std::sort(order.begin(), order.end(), [](auto a, auto b) {
    const unsigned da = a->first.u + a->first.v, db = b->first.u + b->first.v;
    if (da != db) return da > db;
    return a->first.u > b->first.u;
  });
  return order;
}

std::string monomial_text(Monomial m) {
  std::string s;
  auto append = [&s](char var, unsigned e) {
    if (e == 0) return;
    if (!s.empty()) s += '*';
    s += var;
    if (e > 1) s += "^" + std::to_string(e);
  };
  append('U', m.u);
  append('V', m.v);
  return s;
}

void append_term(std::string& out, bool first, bool negative, const std::string& magnitude,
                 Monomial m) {
  if (first)
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  const std::string mono = monomial_text(m);
  if (mono.empty()) {
    out += magnitude;
  } else {
    if (magnitude != "1") out += magnitude + "*";
    out += mono;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// IntBivariatePoly

IntBivariatePoly IntBivariatePoly::parse(std::string_view text) { return Parser(text).run(); }

void IntBivariatePoly::set_coeff(Monomial m, const mpz_class& c) {
  if (c == 0)
    terms_.erase(m);
  else
    terms_[m] = c;
  recompute_degree();
}

void IntBivariatePoly::add_term(Monomial m, const mpz_class& c) { set_coeff(m, coeff(m) + c); }

mpz_class IntBivariatePoly::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void IntBivariatePoly::recompute_degree() {
  degree_ = -1;
  for (const auto& [m, c] : terms_) degree_ = std::max(degree_, static_cast<int>(m.u + m.v));
}

int IntBivariatePoly::degree_u() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.u));
  return d;
}

int IntBivariatePoly::degree_v() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.v));
  return d;
}

std::vector<mpz_class> IntBivariatePoly::specialize_u(const mpz_class& u) const {
  std::vector<mpz_class> out(static_cast<std::size_t>(std::max(degree_v(), 0) + 1));
  mpz_class power;
  for (const auto& [m, c] : terms_) {
    mpz_pow_ui(power.get_mpz_t(), u.get_mpz_t(), m.u);
    out[m.v] += c * power;
  }
  return out;
}

mpz_class IntBivariatePoly::eval(const mpz_class& u, const mpz_class& v) const {
  const auto row = specialize_u(u);
  mpz_class acc = 0;
  for (std::size_t j = row.size(); j-- > 0;) acc = acc * v + row[j];
  return acc;
}

IntBivariatePoly IntBivariatePoly::shifted(const mpz_class& a) const {
  IntBivariatePoly g = *this;
  g.add_term({0, 0}, -a);
  return g;
}

std::string IntBivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it : display_order(terms_)) {
    const mpz_class mag = abs(it->second);
    append_term(out, first, sgn(it->second) < 0, mag.get_str(), it->first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ModBivariatePoly

std::uint32_t ModBivariatePoly::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void ModBivariatePoly::set_coeff(Monomial m, std::int64_t c) {
  std::int64_t r = c % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  if (r == 0)
    terms_.erase(m);
  else
    terms_[m] = static_cast<std::uint32_t>(r);
  recompute_degree();
}

void ModBivariatePoly::recompute_degree() {
  degree_ = -1;
  for (const auto& [m, c] : terms_) degree_ = std::max(degree_, static_cast<int>(m.u + m.v));
}

int ModBivariatePoly::degree_u() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.u));
  return d;
}

int ModBivariatePoly::degree_v() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.v));
  return d;
}

std::uint32_t ModBivariatePoly::eval(std::uint64_t x, std::uint64_t y) const {
  const std::uint64_t p = p_;
  x %= p;
  y %= p;
  std::uint64_t acc = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t t = c;
    for (unsigned i = 0; i < m.u; ++i) t = t * x % p;
    for (unsigned j = 0; j < m.v; ++j) t = t * y % p;
    acc = (acc + t) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

ModBivariatePoly ModBivariatePoly::shifted(std::uint64_t a) const {
  ModBivariatePoly g = *this;
  g.set_coeff({0, 0}, static_cast<std::int64_t>(coeff({0, 0})) - static_cast<std::int64_t>(a % p_));
  return g;
}

ModBivariatePoly ModBivariatePoly::scaled(std::uint64_t d) const {
  ModBivariatePoly g(p_);
  const std::uint64_t p = p_;
  for (const auto& [m, c] : terms_) {
    std::uint64_t t = c;
    for (unsigned k = 0; k < m.u + m.v; ++k) t = t * (d % p) % p;
    g.set_coeff(m, static_cast<std::int64_t>(t));
  }
  return g;
}

ModBivariatePoly ModBivariatePoly::swapped() const {
  ModBivariatePoly g(p_);
  for (const auto& [m, c] : terms_) g.set_coeff({m.v, m.u}, c);
  return g;
}

ModBivariatePoly ModBivariatePoly::derivative_u() const {
  ModBivariatePoly g(p_);
  for (const auto& [m, c] : terms_)
    if (m.u > 0) g.set_coeff({m.u - 1, m.v}, static_cast<std::int64_t>(std::uint64_t{c} * (m.u % p_) % p_));
  return g;
}

ModBivariatePoly ModBivariatePoly::derivative_v() const {
  ModBivariatePoly g(p_);
  for (const auto& [m, c] : terms_)
    if (m.v > 0) g.set_coeff({m.u, m.v - 1}, static_cast<std::int64_t>(std::uint64_t{c} * (m.v % p_) % p_));
  return g;
}

std::vector<std::vector<std::uint32_t>> ModBivariatePoly::dense_by_v() const {
  const int dv = std::max(degree_v(), 0);
  const int du = std::max(degree_u(), 0);
  std::vector<std::vector<std::uint32_t>> rows(dv + 1, std::vector<std::uint32_t>(du + 1, 0));
  for (const auto& [m, c] : terms_) rows[m.v][m.u] = c;
  return rows;
}

std::string ModBivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it : display_order(terms_)) {
    append_term(out, first, false, std::to_string(it->second), it->first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

Reduction reduce_mod(const IntBivariatePoly& f, std::uint32_t p) {
  ModBivariatePoly g(p);
  for (const auto& [m, c] : f.terms()) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    g.set_coeff(m, static_cast<std::int64_t>(r.get_ui()));
  }
  if (g.is_constant())
    throw DegenerateReduction("f = " + f.to_string() + " is constant modulo " + std::to_string(p));
  return Reduction{g, f.degree(), g.degree()};
}

IntBivariatePoly lift(const ModBivariatePoly& f) {
  IntBivariatePoly g;
  for (const auto& [m, c] : f.terms()) g.set_coeff(m, mpz_class(c));
  return g;
}

PrimePoly specialize_u(const ModBivariatePoly& f, std::uint64_t x) {
  const std::uint64_t p = f.modulus();
  x %= p;
  PrimePoly out(static_cast<std::size_t>(std::max(f.degree_v(), 0) + 1), 0);
  for (const auto& [m, c] : f.terms()) {
    std::uint64_t t = c;
    for (unsigned i = 0; i < m.u; ++i) t = t * x % p;
    out[m.v] = static_cast<std::uint32_t>((out[m.v] + t) % p);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

FieldPoly specialize_u(const ModBivariatePoly& f, const ExtensionField& F, const FieldElem& x) {
  if (f.modulus() != F.characteristic())
    throw InvalidArgument("specialize_u: field characteristic differs from the modulus");
  FieldPoly out(static_cast<std::size_t>(std::max(f.degree_v(), 0) + 1), F.zero());
  for (const auto& [m, c] : f.terms())
    out[m.v] = F.add(out[m.v], F.mul(F.embed(c), F.pow(x, m.u)));
  while (!out.empty() && F.is_zero(out.back())) out.pop_back();
  return out;
}

std::vector<FieldElem> univariate_roots(const FieldPoly& g, const ExtensionField& F) {
  return FieldPolyRing(F).roots(g);
}

std::vector<std::uint32_t> univariate_roots(const PrimePoly& g, std::uint32_t p) {
  const ExtensionField F = ExtensionField::prime(p);
  FieldPoly G;
  for (std::uint32_t c : g) G.push_back(F.embed(c % p));
  std::vector<std::uint32_t> out;
  for (const FieldElem& r : FieldPolyRing(F).roots(G)) out.push_back(r.c[0]);
  return out;
}

}  // namespace vislab
