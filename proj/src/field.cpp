#include "unitgroup/field.hpp"

#include <deque>
#include <map>
#include <mutex>

#include "lexer.hpp"
#include "unitgroup/error.hpp"

namespace unitgroup {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::deque<FieldDescriptor>& registry() {
  static std::deque<FieldDescriptor> r{FieldDescriptor{FieldKind::Rationals, QPoly(), ""}};
  return r;
}

const FieldDescriptor* intern(const FieldDescriptor& d) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& r = registry();
  for (const auto& e : r)
    if (e.kind == d.kind && e.modulus == d.modulus && e.variable == d.variable) return &e;
  r.push_back(d);
  return &r.back();
}

}  // namespace

Field Field::rationals() {
  static const FieldDescriptor* q = intern(FieldDescriptor{FieldKind::Rationals, QPoly(), ""});
  return Field(q);
}

Field Field::number_field(const QPoly& modulus, const std::string& var) {
  if (modulus.degree() < 1) fail(ErrorCode::InvalidInput, "number field modulus must have degree >= 1");
  return Field(intern(FieldDescriptor{FieldKind::NumberField, modulus.monic(), var}));
}

Field Field::rational_functions(const std::string& var) {
  return Field(intern(FieldDescriptor{FieldKind::RationalFunctions, QPoly(), var}));
}

FieldElem Field::zero() const { return embed(0); }
FieldElem Field::one() const { return embed(1); }

FieldElem Field::embed(const mpq_class& q0) const {
  FieldElem e(d_);
  mpq_class q = q0;
  q.canonicalize();
  switch (d_->kind) {
    case FieldKind::Rationals:
      e.q_ = q;
      break;
    case FieldKind::NumberField:
      e.num_ = QPoly::constant(q);
      break;
    case FieldKind::RationalFunctions:
      e.num_ = QPoly::constant(q);
      e.den_ = QPoly::constant(1);
      break;
  }
  return e;
}

FieldElem Field::generator() const {
  if (d_->kind == FieldKind::Rationals) fail(ErrorCode::InvalidInput, "Q has no generator");
  return from_poly(QPoly::variable());
}

FieldElem Field::from_poly(const QPoly& p) const { return from_fraction(p, QPoly::constant(1)); }

FieldElem Field::from_fraction(const QPoly& num, const QPoly& den) const {
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
  FieldElem e(d_);
  switch (d_->kind) {
    case FieldKind::Rationals:
      if (!num.is_constant() || !den.is_constant())
        fail(ErrorCode::DescriptorMismatch, "non-constant polynomial in Q");
      e.q_ = num.coeff(0) / den.coeff(0);
      return e;
    case FieldKind::NumberField: {
      e.num_ = num % d_->modulus;
      if (den.is_constant()) {
        e.num_ *= mpq_class(1 / den.coeff(0));
        return e;
      }
      FieldElem d(d_);
      d.num_ = den % d_->modulus;
      return e / d;
    }
    case FieldKind::RationalFunctions:
      e.num_ = num;
      e.den_ = den;
      e.normalize();
      return e;
  }
  return e;
}

namespace {

struct FieldParseCallbacks {
  const Field& field;
  FieldElem zero() { return field.zero(); }
  FieldElem number(const std::string& s) { return field.embed(mpq_class(mpz_class(s))); }
  FieldElem ident(const std::string& s) {
    if (field.kind() != FieldKind::Rationals && s == field.variable()) return field.generator();
    fail(ErrorCode::ParseError, "unknown symbol '" + s + "' in field element");
  }
  FieldElem divide(const FieldElem& a, const FieldElem& b) { return a / b; }
  FieldElem power(const FieldElem& a, long e) { return a.pow(e); }
};

}  // namespace

FieldElem Field::parse(const std::string& text) const {
  FieldParseCallbacks cb{*this};
  try {
    return detail::ExprParser<FieldElem, FieldParseCallbacks>(text, cb).parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DivisionByZero) fail(ErrorCode::ParseError, "division by zero in \"" + text + "\"");
    throw;
  }
}

std::string Field::to_string() const {
  switch (d_->kind) {
    case FieldKind::Rationals: return "QQ";
    case FieldKind::NumberField: return "QQ[" + d_->variable + "]/(" + d_->modulus.to_string(d_->variable) + ")";
    case FieldKind::RationalFunctions: return "QQ(" + d_->variable + ")";
  }
  return "";
}

QPoly cyclotomic_polynomial(int d) {
  if (d < 1) fail(ErrorCode::InvalidInput, "cyclotomic order must be >= 1");
  static std::mutex m;
  static std::map<int, QPoly> cache;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  QPoly p = QPoly::monomial(1, d) - QPoly::constant(1);
  for (int e = 1; e < d; ++e)
    if (d % e == 0) p = p / cyclotomic_polynomial(e);
  std::lock_guard<std::mutex> lock(m);
  cache.emplace(d, p);
  return p;
}

Field cyclotomic_field(int d, const std::string& var) {
  return Field::number_field(cyclotomic_polynomial(d), var);
}

// ---------------------------------------------------------------------------

FieldElem::FieldElem() : d_(Field::rationals().d_) {}

void FieldElem::check(const FieldElem& o) const {
  if (d_ != o.d_) fail(ErrorCode::DescriptorMismatch, "operands live in different fields");
}

void FieldElem::normalize() {
  if (d_->kind != FieldKind::RationalFunctions) return;
  if (num_.is_zero()) {
    den_ = QPoly::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    QPoly g = QPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  mpq_class lc = den_.leading();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

bool FieldElem::is_zero() const {
  return d_->kind == FieldKind::Rationals ? q_ == 0 : num_.is_zero();
}

bool FieldElem::is_one() const {
  if (d_->kind == FieldKind::Rationals) return q_ == 1;
  return num_.degree() == 0 && num_.leading() == 1 && (d_->kind == FieldKind::NumberField || den_.degree() == 0);
}

bool FieldElem::is_rational() const {
  if (d_->kind == FieldKind::Rationals) return true;
  return num_.is_constant() && (d_->kind == FieldKind::NumberField || den_.is_constant());
}

mpq_class FieldElem::rational_value() const {
  return d_->kind == FieldKind::Rationals ? q_ : num_.coeff(0);
}

QPoly FieldElem::num() const { return d_->kind == FieldKind::Rationals ? QPoly::constant(q_) : num_; }

QPoly FieldElem::den() const {
  return d_->kind == FieldKind::RationalFunctions ? den_ : QPoly::constant(1);
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  if (d_->kind == FieldKind::Rationals) r.q_ = -q_;
  else r.num_ = -num_;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check(o);
  switch (d_->kind) {
    case FieldKind::Rationals:
      q_ += o.q_;
      break;
    case FieldKind::NumberField:
      num_ += o.num_;
      break;
    case FieldKind::RationalFunctions:
      if (den_ == o.den_) {
        num_ += o.num_;
      } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
      }
      normalize();
      break;
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check(o);
  switch (d_->kind) {
    case FieldKind::Rationals:
      q_ *= o.q_;
      break;
    case FieldKind::NumberField:
      num_ = (num_ * o.num_) % d_->modulus;
      break;
    case FieldKind::RationalFunctions:
      num_ = num_ * o.num_;
      den_ = den_ * o.den_;
      normalize();
      break;
  }
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

FieldElem FieldElem::scaled(const mpq_class& c) const {
  FieldElem r = *this;
  if (d_->kind == FieldKind::Rationals) r.q_ *= c;
  else r.num_ *= c;
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  FieldElem r(d_);
  switch (d_->kind) {
    case FieldKind::Rationals:
      r.q_ = 1 / q_;
      break;
    case FieldKind::NumberField: {
      auto [g, s] = QPoly::inverse_mod(num_, d_->modulus);
      if (g.degree() != 0) fail(ErrorCode::DivisionByZero, "zero divisor in " + field().to_string());
      r.num_ = s;
      break;
    }
    case FieldKind::RationalFunctions:
      r.num_ = den_;
      r.den_ = num_;
      r.normalize();
      break;
  }
  return r;
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem result = field().one(), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.d_ != b.d_) return false;
  switch (a.d_->kind) {
    case FieldKind::Rationals: return a.q_ == b.q_;
    case FieldKind::NumberField: return a.num_ == b.num_;
    case FieldKind::RationalFunctions: return a.num_ == b.num_ && a.den_ == b.den_;
  }
  return false;
}

int compare(const FieldElem& a, const FieldElem& b) {
  if (a.d_ != b.d_) return a.d_ < b.d_ ? -1 : 1;
  if (a.d_->kind == FieldKind::Rationals) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  int c = compare(a.num_, b.num_);
  if (c != 0 || a.d_->kind == FieldKind::NumberField) return c;
  return compare(a.den_, b.den_);
}

std::string FieldElem::to_string() const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return q_.get_str();
    case FieldKind::NumberField:
      return num_.to_string(d_->variable);
    case FieldKind::RationalFunctions: {
      std::string n = num_.to_string(d_->variable);
      if (den_.degree() == 0) return n;
      auto multi = [](const std::string& s) { return s.find_first_of("+-", 1) != std::string::npos; };
      if (multi(n)) n = "(" + n + ")";
      std::string d = den_.to_string(d_->variable);
      // Parenthesize anything that is not a bare power of the variable.
      size_t terms = 0;
      for (const auto& c : den_.coeffs()) terms += (c != 0);
      if (terms > 1) d = "(" + d + ")";
      return n + "/" + d;
    }
  }
  return "";
}

bool FieldElem::needs_parens() const {
  std::string s = to_string();
  return s.find_first_of("+-", 1) != std::string::npos;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<FieldElem> quadratic_nf_sqrt(const FieldElem& r) {
  Field K = r.field();
  const QPoly& m = K.modulus();
  mpq_class m0 = m.coeff(0), m1 = m.coeff(1);
  QPoly n = r.num();
  mpq_class d0 = n.coeff(0), d1 = n.coeff(1);
  // (a + b t)^2 = r reduces to a quadratic in B = b^2.
  QPoly eq(std::vector<mpq_class>{d1 * d1, 2 * d1 * m1 - 4 * d0, m1 * m1 - 4 * m0});
  std::vector<mpq_class> cands;
  if (eq.is_zero()) return std::nullopt;
  if (eq.degree() == 0) {
    // only possible when d1 == 0 and the B-terms vanish
  } else {
    for (const auto& [B, mult] : rational_roots(eq)) {
      (void)mult;
      cands.push_back(B);
    }
  }
  for (const auto& B : cands) {
    if (B < 0) continue;
    mpq_class b;
    if (!rational_sqrt(B, b)) continue;
    mpq_class a;
    if (b == 0) {
      if (d1 != 0 || !rational_sqrt(d0, a)) continue;
    } else {
      a = (d1 + m1 * B) / (2 * b);
    }
    FieldElem s = K.from_poly(QPoly(std::vector<mpq_class>{a, b}));
    if (s * s == r) return s;
  }
  return std::nullopt;
}

std::vector<mpq_class> small_rationals(int bound) {
  std::vector<mpq_class> v{0};
  for (int q = 1; q <= bound; ++q)
    for (int p = 1; p <= bound; ++p) {
      if (gcd(mpz_class(p), mpz_class(q)) != 1) continue;
      v.emplace_back(p, q);
      v.emplace_back(-p, q);
    }
  return v;
}

std::optional<FieldElem> searched_nf_sqrt(const FieldElem& r) {
  Field K = r.field();
  int deg = K.modulus().degree();
  FieldElem t = K.generator();
  // Candidates a + b*t^k with small-height b; a is solved from the t^k coefficient.
  auto bs = small_rationals(6);
  for (int k = 0; k < deg; ++k) {
    FieldElem tk = t.pow(k);
    FieldElem t2k = tk * tk;
    for (const auto& b : bs) {
      FieldElem w = r - t2k.scaled(b * b);
      std::vector<mpq_class> as;
      if (b == 0 || k == 0) {
        if (!w.is_rational()) continue;
        mpq_class a;
        if (!rational_sqrt(w.rational_value(), a)) continue;
        as.push_back(a);
      } else {
        as.push_back(w.num().coeff(k) / (2 * b));
      }
      for (const auto& a : as) {
        FieldElem s = K.embed(a) + tk.scaled(b);
        if (s * s == r) return s;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FieldElem> field_sqrt(const FieldElem& a) {
  Field K = a.field();
  if (a.is_zero()) return a;
  switch (K.kind()) {
    case FieldKind::Rationals: {
      mpq_class r;
      if (!rational_sqrt(a.rational_value(), r)) return std::nullopt;
      return K.embed(r);
    }
    case FieldKind::RationalFunctions: {
      QPoly r;
      if (!poly_sqrt(a.num() * a.den(), r)) return std::nullopt;
      return K.from_fraction(r, a.den());
    }
    case FieldKind::NumberField: {
      if (K.modulus().degree() == 1) {
        mpq_class r;
        if (!rational_sqrt(a.num().coeff(0), r)) return std::nullopt;
        return K.embed(r);
      }
      if (K.modulus().degree() == 2) return quadratic_nf_sqrt(a);
      return searched_nf_sqrt(a);
    }
  }
  return std::nullopt;
}

}  // namespace unitgroup
