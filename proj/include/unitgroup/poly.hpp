#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "unitgroup/field.hpp"

namespace unitgroup {

using Exponents = std::vector<int32_t>;

struct MonomialOrder {
  enum Kind { Lex, Grevlex, BlockElimination };
  Kind kind = Grevlex;
  /// For BlockElimination: variables [0, split) form the eliminated block.
  int split = 0;

  static MonomialOrder lex() { return {Lex, 0}; }
  static MonomialOrder grevlex() { return {Grevlex, 0}; }
  static MonomialOrder block(int split) { return {BlockElimination, split}; }

  /// Three-way comparison of exponent vectors of equal length.
  int compare(const Exponents& a, const Exponents& b) const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && (a.kind != BlockElimination || a.split == b.split);
  }
};

class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }
  /// Index of a variable; throws UnknownVariable.
  int index_of(const std::string& name) const;
  bool has_var(const std::string& name) const;

  bool same_as(const PolyRing& o) const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(const Field& field, std::vector<std::string> vars,
                  MonomialOrder order = MonomialOrder::grevlex());
/// The same variables and field under another order.
RingPtr with_order(const RingPtr& r, MonomialOrder order);
/// A variable name not already used by the ring or the field.
std::string fresh_name(const RingPtr& r, const std::string& base);

struct Term {
  Exponents exp;
  FieldElem coeff;
};

/// Sparse polynomial; terms are kept sorted strictly decreasing in the ring order.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  MultiPoly(RingPtr ring, std::vector<Term> terms);

  static MultiPoly constant(const RingPtr& ring, const FieldElem& c);
  static MultiPoly constant(const RingPtr& ring, const mpq_class& c);
  static MultiPoly variable(const RingPtr& ring, int index);
  static MultiPoly variable(const RingPtr& ring, const std::string& name);
  static MultiPoly monomial(const RingPtr& ring, Exponents exp, const FieldElem& c);
  /// Terms must already be strictly decreasing with nonzero coefficients.
  static MultiPoly from_sorted(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading() const { return terms_.front(); }
  const Exponents& lm() const { return terms_.front().exp; }
  const FieldElem& lc() const { return terms_.front().coeff; }
  int total_degree() const;
  int degree_in(int var) const;
  bool is_homogeneous() const;
  FieldElem coefficient(const Exponents& e) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const FieldElem& c) const;
  MultiPoly mul_term(const Exponents& e, const FieldElem& c) const;
  /// this - c * x^e * g, by a single merge.
  MultiPoly sub_mul_term(const MultiPoly& g, const Exponents& e, const FieldElem& c) const;
  MultiPoly pow(unsigned e) const;
  MultiPoly monic() const;
  void drop_leading() { terms_.erase(terms_.begin()); }

  /// Exact equality of coefficient maps (ring order is irrelevant).
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Re-expresses the polynomial in another ring. var_map[i] is the target
  /// index of source variable i, or -1 if that variable must not occur.
  MultiPoly map_to(const RingPtr& target, const std::vector<int>& var_map) const;
  /// Same variables by name, possibly another order or variable superset.
  MultiPoly embed_in(const RingPtr& target) const;
  /// Substitutes polynomials (all in one target ring) for every variable.
  MultiPoly substitute(const RingPtr& target, const std::vector<MultiPoly>& values) const;

  std::string to_string() const;

 private:
  void check(const MultiPoly& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Laurent polynomial numerator / x^den. Canonical: for each variable either
/// the denominator exponent is zero or the numerator is not divisible by it.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(MultiPoly numerator);
  LaurentPoly(MultiPoly numerator, Exponents den);

  static LaurentPoly monomial(const RingPtr& ring, const std::vector<int32_t>& exps, const FieldElem& c);

  const RingPtr& ring() const { return num_.ring(); }
  const MultiPoly& numerator() const { return num_; }
  const Exponents& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;
  /// A single term c*x^e with e possibly negative.
  bool is_monomial() const { return num_.size() == 1; }
  size_t size() const { return num_.size(); }
  /// Terms with signed exponents, in the ring order.
  std::vector<Term> signed_terms() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const FieldElem& c) const;
  /// Negative powers are allowed for monomials only.
  LaurentPoly pow(long e) const;
  LaurentPoly inverse_monomial() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void canonicalize();
  MultiPoly num_;
  Exponents den_;
};

/// Scalar multiple with the simplest coefficients: integer and coprime over Q,
/// polynomial and coprime over Q(t), leading coefficient 1 over a number field.
/// The leading coefficient is made positive where that makes sense.
MultiPoly primitive_part(const MultiPoly& f);
LaurentPoly primitive_part(const LaurentPoly& h);

/// x0^deg f * f(x/x0); the new variable is appended unless a position is given.
MultiPoly homogenize(const MultiPoly& f, const std::string& new_var, int position = -1);
/// Sets the variable to 1 and removes it from the ring. Throws UnknownVariable.
MultiPoly dehomogenize(const MultiPoly& F, const std::string& var);

/// Image of h in k[x_1..x_n, u]: each term x^a becomes u^m * x^(a + m*1) with m = max(-a).
/// The torus variable is appended; its name defaults to a fresh "u".
MultiPoly laurent_to_presentation(const LaurentPoly& h, const RingPtr& pres_ring);
/// The ring k[x_1..x_n, u] used by laurent_to_presentation.
RingPtr presentation_ring(const RingPtr& base, MonomialOrder order = MonomialOrder::grevlex());
/// Inverse map: substitutes u = 1/(x_1...x_n).
LaurentPoly presentation_to_laurent(const MultiPoly& p, const RingPtr& base);

/// Grammar: terms joined by + and -, coefficients as field expressions, monomials like x1^3*x2.
MultiPoly parse_poly(const RingPtr& ring, const std::string& text);
/// As parse_poly, but negative exponents and division by monomials are allowed.
LaurentPoly parse_laurent(const RingPtr& ring, const std::string& text);

}  // namespace unitgroup
