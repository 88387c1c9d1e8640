#include "unitgroup/poly.hpp"

#include <algorithm>
#include <numeric>

#include "lexer.hpp"
#include "unitgroup/error.hpp"

namespace unitgroup {

namespace {

int grevlex_range(const Exponents& a, const Exponents& b, size_t lo, size_t hi) {
  long da = 0, db = 0;
  for (size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  switch (kind) {
    case Lex:
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Grevlex:
      return grevlex_range(a, b, 0, a.size());
    case BlockElimination: {
      size_t s = std::min(static_cast<size_t>(split), a.size());
      int c = grevlex_range(a, b, 0, s);
      if (c != 0) return c;
      return grevlex_range(a, b, s, a.size());
    }
  }
  return 0;
}

PolyRing::PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order)
    : field_(std::move(field)), vars_(std::move(vars)), order_(order) {
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == field_.variable() && field_.kind() != FieldKind::Rationals)
      fail(ErrorCode::InvalidInput, "variable '" + vars_[i] + "' clashes with the field variable");
    for (size_t j = 0; j < i; ++j)
      if (vars_[i] == vars_[j]) fail(ErrorCode::InvalidInput, "duplicate variable '" + vars_[i] + "'");
  }
}

int PolyRing::index_of(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  fail(ErrorCode::UnknownVariable, "no variable named '" + name + "'");
}

bool PolyRing::has_var(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

bool PolyRing::same_as(const PolyRing& o) const {
  return this == &o || (field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_);
}

RingPtr make_ring(const Field& field, std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const PolyRing>(field, std::move(vars), order);
}

RingPtr with_order(const RingPtr& r, MonomialOrder order) {
  if (r->order() == order) return r;
  return make_ring(r->field(), r->vars(), order);
}

std::string fresh_name(const RingPtr& r, const std::string& base) {
  std::string name = base;
  int k = 0;
  while (r->has_var(name) || name == r->field().variable()) name = base + std::to_string(++k);
  return name;
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const auto& ord = ring_->order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.exp, b.exp) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().exp == t.exp) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff.is_zero()) terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

MultiPoly MultiPoly::constant(const RingPtr& ring, const FieldElem& c) {
  return monomial(ring, Exponents(ring->nvars(), 0), c);
}

MultiPoly MultiPoly::constant(const RingPtr& ring, const mpq_class& c) {
  return constant(ring, ring->field().embed(c));
}

MultiPoly MultiPoly::variable(const RingPtr& ring, int index) {
  Exponents e(ring->nvars(), 0);
  e.at(static_cast<size_t>(index)) = 1;
  return monomial(ring, std::move(e), ring->field().one());
}

MultiPoly MultiPoly::variable(const RingPtr& ring, const std::string& name) {
  return variable(ring, ring->index_of(name));
}

MultiPoly MultiPoly::monomial(const RingPtr& ring, Exponents exp, const FieldElem& c) {
  MultiPoly p(ring);
  if (c.field() != ring->field()) fail(ErrorCode::DescriptorMismatch, "coefficient from another field");
  if (!c.is_zero()) p.terms_.push_back({std::move(exp), c});
  return p;
}

MultiPoly MultiPoly::from_sorted(RingPtr ring, std::vector<Term> terms) {
  MultiPoly p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_[0].exp)
    if (e) return false;
  return true;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, std::accumulate(t.exp.begin(), t.exp.end(), 0));
  return d;
}

int MultiPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[static_cast<size_t>(var)]));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& t : terms_) {
    int td = std::accumulate(t.exp.begin(), t.exp.end(), 0);
    if (d >= 0 && td != d) return false;
    d = td;
  }
  return true;
}

FieldElem MultiPoly::coefficient(const Exponents& e) const {
  for (const auto& t : terms_)
    if (t.exp == e) return t.coeff;
  return field().zero();
}

void MultiPoly::check(const MultiPoly& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
    fail(ErrorCode::DescriptorMismatch, "polynomials from different rings");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && !ring_) return *this = o;
  *this = sub_mul_term(o, Exponents(ring_->nvars(), 0), -field().one());
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && !ring_) return *this = -o;
  *this = sub_mul_term(o, Exponents(ring_->nvars(), 0), field().one());
  return *this;
}

MultiPoly MultiPoly::sub_mul_term(const MultiPoly& g, const Exponents& e, const FieldElem& c) const {
  check(g);
  const auto& ord = ring_->order();
  MultiPoly r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  size_t i = 0, j = 0;
  Exponents shifted(e.size());
  auto shift = [&](const Exponents& x) {
    for (size_t k = 0; k < x.size(); ++k) shifted[k] = x[k] + e[k];
  };
  bool have = false;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j < g.terms_.size() && !have) {
      shift(g.terms_[j].exp);
      have = true;
    }
    int c3 = (i >= terms_.size()) ? -1 : (j >= g.terms_.size() ? 1 : ord.compare(terms_[i].exp, shifted));
    if (c3 > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c3 < 0) {
      r.terms_.push_back({shifted, -(c * g.terms_[j].coeff)});
      ++j;
      have = false;
    } else {
      FieldElem v = terms_[i].coeff - c * g.terms_[j].coeff;
      if (!v.is_zero()) r.terms_.push_back({terms_[i].exp, std::move(v)});
      ++i;
      ++j;
      have = false;
    }
  }
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check(b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring_);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].exp, b.terms_[0].coeff);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].exp, a.terms_[0].coeff);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Exponents e(s.exp.size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = s.exp[k] + t.exp[k];
      out.push_back({std::move(e), s.coeff * t.coeff});
    }
  return MultiPoly(a.ring_, std::move(out));
}

MultiPoly MultiPoly::scaled(const FieldElem& c) const {
  if (c.is_zero()) return MultiPoly(ring_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MultiPoly MultiPoly::mul_term(const Exponents& e, const FieldElem& c) const {
  if (c.is_zero()) return MultiPoly(ring_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) {
    for (size_t k = 0; k < e.size(); ++k) t.exp[k] += e[k];
    t.coeff *= c;
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(ring_, field().one()), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inverse());
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.ring_->same_as(*b.ring_)) {
    for (size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }
  if (a.field() != b.field() || a.ring_->vars() != b.ring_->vars()) return false;
  auto ta = a.terms_, tb = b.terms_;
  auto by_exp = [](const Term& x, const Term& y) { return x.exp < y.exp; };
  std::sort(ta.begin(), ta.end(), by_exp);
  std::sort(tb.begin(), tb.end(), by_exp);
  for (size_t i = 0; i < ta.size(); ++i)
    if (ta[i].exp != tb[i].exp || ta[i].coeff != tb[i].coeff) return false;
  return true;
}

MultiPoly MultiPoly::map_to(const RingPtr& target, const std::vector<int>& var_map) const {
  if (target->field() != field()) fail(ErrorCode::DescriptorMismatch, "target ring has another field");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target->nvars(), 0);
    for (size_t k = 0; k < t.exp.size(); ++k) {
      if (t.exp[k] == 0) continue;
      if (var_map[k] < 0) fail(ErrorCode::UnknownVariable, "variable '" + ring_->vars()[k] + "' not in target ring");
      e[static_cast<size_t>(var_map[k])] += t.exp[k];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly(target, std::move(out));
}

MultiPoly MultiPoly::embed_in(const RingPtr& target) const {
  if (ring_->same_as(*target)) return *this;
  std::vector<int> m(ring_->nvars(), -1);
  for (size_t k = 0; k < m.size(); ++k)
    if (target->has_var(ring_->vars()[k])) m[k] = target->index_of(ring_->vars()[k]);
  return map_to(target, m);
}

MultiPoly MultiPoly::substitute(const RingPtr& target, const std::vector<MultiPoly>& values) const {
  std::vector<std::vector<MultiPoly>> powers(values.size());
  auto power_of = [&](size_t v, int e) -> const MultiPoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target, target->field().one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * values[v].embed_in(target));
    return cache[static_cast<size_t>(e)];
  };
  MultiPoly acc(target);
  for (const auto& t : terms_) {
    MultiPoly m = MultiPoly::constant(target, t.coeff);
    for (size_t k = 0; k < t.exp.size(); ++k)
      if (t.exp[k]) m = m * power_of(k, t.exp[k]);
    acc += m;
  }
  return acc;
}

namespace {

std::string monomial_string(const std::vector<std::string>& vars, const std::vector<int32_t>& e) {
  std::string s;
  for (size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[k];
    if (e[k] != 1) s += "^" + std::to_string(e[k]);
  }
  return s;
}

std::string render_terms(const std::vector<std::string>& vars, const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    FieldElem c = t.coeff;
    bool neg = c.to_string()[0] == '-';
    if (neg) c = -c;
    std::string m = monomial_string(vars, t.exp);
    std::string cs = c.to_string();
    if (c.needs_parens() && (!m.empty() || terms.size() > 1)) cs = "(" + cs + ")";
    std::string piece;
    if (m.empty()) piece = cs;
    else if (c.is_one()) piece = m;
    else piece = cs + "*" + m;
    if (i == 0) out = neg ? "-" + piece : piece;
    else out += (neg ? " - " : " + ") + piece;
  }
  return out;
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (is_zero()) return "0";
  return render_terms(ring_->vars(), terms_);
}

// ---------------------------------------------------------------------------

LaurentPoly::LaurentPoly(MultiPoly numerator) : num_(std::move(numerator)) {
  den_.assign(num_.ring() ? num_.ring()->nvars() : 0, 0);
}

LaurentPoly::LaurentPoly(MultiPoly numerator, Exponents den) : num_(std::move(numerator)), den_(std::move(den)) {
  canonicalize();
}

LaurentPoly LaurentPoly::monomial(const RingPtr& ring, const std::vector<int32_t>& exps, const FieldElem& c) {
  Exponents num(exps.size()), den(exps.size());
  for (size_t k = 0; k < exps.size(); ++k) {
    num[k] = std::max(exps[k], 0);
    den[k] = std::max(-exps[k], 0);
  }
  return LaurentPoly(MultiPoly::monomial(ring, num, c), den);
}

void LaurentPoly::canonicalize() {
  if (num_.is_zero()) {
    std::fill(den_.begin(), den_.end(), 0);
    return;
  }
  Exponents shift(den_.size(), 0);
  bool any = false;
  for (size_t k = 0; k < den_.size(); ++k) {
    if (den_[k] == 0) continue;
    int32_t mn = den_[k];
    for (const auto& t : num_.terms()) mn = std::min(mn, t.exp[k]);
    shift[k] = mn;
    any = any || mn > 0;
  }
  if (!any) return;
  std::vector<Term> ts = num_.terms();
  for (auto& t : ts)
    for (size_t k = 0; k < shift.size(); ++k) t.exp[k] -= shift[k];
  for (size_t k = 0; k < shift.size(); ++k) den_[k] -= shift[k];
  num_ = MultiPoly(num_.ring(), std::move(ts));
}

bool LaurentPoly::is_polynomial() const {
  return std::all_of(den_.begin(), den_.end(), [](int32_t e) { return e == 0; });
}

std::vector<Term> LaurentPoly::signed_terms() const {
  std::vector<Term> ts = num_.terms();
  for (auto& t : ts)
    for (size_t k = 0; k < den_.size(); ++k) t.exp[k] -= den_[k];
  return ts;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  r.num_ = -num_;
  return r;
}

namespace {

std::pair<MultiPoly, MultiPoly> common_denominator(const LaurentPoly& a, const LaurentPoly& b, Exponents& den) {
  den.assign(a.denominator().size(), 0);
  Exponents ea(den.size()), eb(den.size());
  for (size_t k = 0; k < den.size(); ++k) {
    den[k] = std::max(a.denominator()[k], b.denominator()[k]);
    ea[k] = den[k] - a.denominator()[k];
    eb[k] = den[k] - b.denominator()[k];
  }
  const Field& F = a.numerator().field();
  return {a.numerator().mul_term(ea, F.one()), b.numerator().mul_term(eb, F.one())};
}

}  // namespace

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  Exponents den;
  auto [na, nb] = common_denominator(a, b, den);
  return LaurentPoly(na + nb, den);
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  Exponents den;
  auto [na, nb] = common_denominator(a, b, den);
  return LaurentPoly(na - nb, den);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  Exponents den(a.den_.size());
  for (size_t k = 0; k < den.size(); ++k) den[k] = a.den_[k] + b.den_[k];
  return LaurentPoly(a.num_ * b.num_, den);
}

LaurentPoly LaurentPoly::scaled(const FieldElem& c) const { return LaurentPoly(num_.scaled(c), den_); }

LaurentPoly LaurentPoly::inverse_monomial() const {
  if (!is_monomial()) fail(ErrorCode::InvalidInput, "only monomials are invertible in this representation");
  auto t = signed_terms().front();
  for (auto& e : t.exp) e = -e;
  return monomial(ring(), t.exp, t.coeff.inverse());
}

LaurentPoly LaurentPoly::pow(long e) const {
  if (e < 0) return inverse_monomial().pow(-e);
  LaurentPoly result(MultiPoly::constant(ring(), ring()->field().one()));
  LaurentPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.den_ == b.den_ && a.num_ == b.num_; }

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  return render_terms(ring()->vars(), signed_terms());
}

// ---------------------------------------------------------------------------

MultiPoly homogenize(const MultiPoly& f, const std::string& new_var, int position) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot homogenize the zero polynomial");
  const auto& R = f.ring();
  std::vector<std::string> vars = R->vars();
  size_t pos = position < 0 ? vars.size() : static_cast<size_t>(position);
  vars.insert(vars.begin() + static_cast<long>(pos), new_var);
  MonomialOrder ord = R->order();
  if (ord.kind == MonomialOrder::BlockElimination && static_cast<int>(pos) < ord.split) ++ord.split;
  RingPtr H = make_ring(R->field(), vars, ord);
  int d = f.total_degree();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Exponents e = t.exp;
    int td = std::accumulate(e.begin(), e.end(), 0);
    e.insert(e.begin() + static_cast<long>(pos), d - td);
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly(H, std::move(out));
}

MultiPoly dehomogenize(const MultiPoly& F, const std::string& var) {
  const auto& R = F.ring();
  size_t idx = static_cast<size_t>(R->index_of(var));
  std::vector<std::string> vars = R->vars();
  vars.erase(vars.begin() + static_cast<long>(idx));
  MonomialOrder ord = R->order();
  if (ord.kind == MonomialOrder::BlockElimination && static_cast<int>(idx) < ord.split) --ord.split;
  RingPtr D = make_ring(R->field(), vars, ord);
  std::vector<Term> out;
  for (const auto& t : F.terms()) {
    Exponents e = t.exp;
    e.erase(e.begin() + static_cast<long>(idx));
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly(D, std::move(out));
}

RingPtr presentation_ring(const RingPtr& base, MonomialOrder order) {
  std::vector<std::string> vars = base->vars();
  vars.push_back(fresh_name(base, "u"));
  return make_ring(base->field(), vars, order);
}

MultiPoly laurent_to_presentation(const LaurentPoly& h, const RingPtr& pres_ring) {
  // Termwise: x^a with negative entries becomes u^m * x^(a + m*1), m = max(-a).
  std::vector<Term> out;
  for (const auto& t : h.signed_terms()) {
    int32_t m = 0;
    for (auto a : t.exp) m = std::max(m, -a);
    Exponents e(t.exp.size() + 1);
    for (size_t k = 0; k < t.exp.size(); ++k) e[k] = t.exp[k] + m;
    e.back() = m;
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly(pres_ring, std::move(out));
}

LaurentPoly presentation_to_laurent(const MultiPoly& p, const RingPtr& base) {
  size_t n = base->nvars();
  int32_t B = 0;
  for (const auto& t : p.terms()) B = std::max(B, t.exp[n]);
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Exponents e(t.exp.begin(), t.exp.begin() + static_cast<long>(n));
    for (auto& x : e) x += B - t.exp[n];
    out.push_back({std::move(e), t.coeff});
  }
  return LaurentPoly(MultiPoly(base, std::move(out)), Exponents(n, B));
}

// ---------------------------------------------------------------------------

namespace {

struct LaurentParseCallbacks {
  const RingPtr& ring;
  LaurentPoly zero() { return LaurentPoly(MultiPoly(ring)); }
  LaurentPoly constant(const FieldElem& c) { return LaurentPoly(MultiPoly::constant(ring, c)); }
  LaurentPoly number(const std::string& s) { return constant(ring->field().embed(mpq_class(mpz_class(s)))); }
  LaurentPoly ident(const std::string& s) {
    if (ring->has_var(s)) return LaurentPoly(MultiPoly::variable(ring, s));
    const Field& F = ring->field();
    if (F.kind() != FieldKind::Rationals && s == F.variable()) return constant(F.generator());
    fail(ErrorCode::ParseError, "unknown symbol '" + s + "'");
  }
  LaurentPoly divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (!b.is_monomial()) fail(ErrorCode::ParseError, "division by a non-monomial");
    return a * b.inverse_monomial();
  }
  LaurentPoly power(const LaurentPoly& a, long e) {
    if (e < 0 && !a.is_monomial()) fail(ErrorCode::ParseError, "negative power of a non-monomial");
    return a.pow(e);
  }
};

}  // namespace

LaurentPoly parse_laurent(const RingPtr& ring, const std::string& text) {
  LaurentParseCallbacks cb{ring};
  return detail::ExprParser<LaurentPoly, LaurentParseCallbacks>(text, cb).parse();
}

MultiPoly parse_poly(const RingPtr& ring, const std::string& text) {
  LaurentPoly h = parse_laurent(ring, text);
  if (!h.is_polynomial()) fail(ErrorCode::ParseError, "negative exponent in polynomial \"" + text + "\"");
  return h.numerator();
}

MultiPoly primitive_part(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Field K = f.field();
  switch (K.kind()) {
    case FieldKind::NumberField:
      return f.monic();
    case FieldKind::Rationals: {
      mpz_class den = 1, num = 0;
      for (const auto& t : f.terms()) {
        mpq_class q = t.coeff.rational_value();
        den = lcm(den, mpz_class(q.get_den()));
        num = gcd(num, mpz_class(q.get_num()));
      }
      mpq_class c(den, num);
      c.canonicalize();
      if (f.lc().rational_value() < 0) c = -c;
      return f.scaled(K.embed(c));
    }
    case FieldKind::RationalFunctions: {
      QPoly L = QPoly::constant(1);
      for (const auto& t : f.terms()) L = L * t.coeff.den() / QPoly::gcd(L, t.coeff.den());
      QPoly G;
      for (const auto& t : f.terms()) G = QPoly::gcd(G, t.coeff.num() * (L / t.coeff.den()));
      MultiPoly g = f.scaled(K.from_fraction(L, G));
      // rational content of the now polynomial coefficients
      mpz_class den = 1, num = 0;
      for (const auto& t : g.terms()) {
        QPoly n = t.coeff.num();
        for (const auto& q : n.coeffs()) {
          den = lcm(den, mpz_class(q.get_den()));
          num = gcd(num, mpz_class(q.get_num()));
        }
      }
      mpq_class c(den, num);
      c.canonicalize();
      if (g.lc().num().leading() < 0) c = -c;
      return g.scaled(K.embed(c));
    }
  }
  return f;
}

LaurentPoly primitive_part(const LaurentPoly& h) { return LaurentPoly(primitive_part(h.numerator()), h.denominator()); }

}  // namespace unitgroup
