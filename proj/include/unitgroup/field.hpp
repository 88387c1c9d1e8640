#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "unitgroup/qpoly.hpp"

namespace unitgroup {

enum class FieldKind { Rationals, NumberField, RationalFunctions };

struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  QPoly modulus;  // number fields only, monic
  std::string variable;
};

class FieldElem;

/// Handle to an interned field descriptor. Handles compare equal iff the
/// descriptors match exactly, so comparison is a pointer test.
class Field {
 public:
  Field() : Field(rationals()) {}

  static Field rationals();
  /// Q[var]/(modulus). The modulus is made monic; irreducibility is the caller's problem.
  static Field number_field(const QPoly& modulus, const std::string& var = "t");
  static Field rational_functions(const std::string& var = "t");

  FieldKind kind() const { return d_->kind; }
  const QPoly& modulus() const { return d_->modulus; }
  const std::string& variable() const { return d_->variable; }
  const FieldDescriptor* descriptor() const { return d_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem embed(const mpq_class& q) const;
  /// The class of the variable (t in Q(t), the root of the modulus in a number field).
  FieldElem generator() const;
  /// Element from a univariate polynomial in the field variable.
  FieldElem from_poly(const QPoly& p) const;
  FieldElem from_fraction(const QPoly& num, const QPoly& den) const;

  /// Parses expressions like "3/2", "t^2-t+1", "(t+1)/(t-1)". Throws ParseError.
  FieldElem parse(const std::string& text) const;

  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

 private:
  explicit Field(const FieldDescriptor* d) : d_(d) {}
  const FieldDescriptor* d_;
  friend class FieldElem;
};

/// The d-th cyclotomic field Q[t]/(Phi_d). Throws InvalidInput for d < 1.
Field cyclotomic_field(int d, const std::string& var = "t");
QPoly cyclotomic_polynomial(int d);

class FieldElem {
 public:
  FieldElem();

  Field field() const { return Field(d_); }
  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in the prime field Q.
  bool is_rational() const;
  /// Value in Q; only meaningful when is_rational().
  mpq_class rational_value() const;

  // Payload access. For Rationals num() is a constant polynomial and den() is 1.
  QPoly num() const;
  QPoly den() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  FieldElem scaled(const mpq_class& c) const;

  FieldElem inverse() const;
  FieldElem pow(long e) const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  /// Deterministic total order for containers; unrelated to any field ordering.
  friend int compare(const FieldElem& a, const FieldElem& b);
  friend bool operator<(const FieldElem& a, const FieldElem& b) { return compare(a, b) < 0; }

  std::string to_string() const;
  /// Whether to_string() must be parenthesized when used as a factor.
  bool needs_parens() const;

 private:
  explicit FieldElem(const FieldDescriptor* d) : d_(d) {}
  void normalize();
  void check(const FieldElem& o) const;

  const FieldDescriptor* d_;
  mpq_class q_;      // Rationals
  QPoly num_, den_;  // NumberField uses num_ only
  friend class Field;
};

/// A square root in the field if one is found. Exact over Q and Q(t); over a
/// number field the search is complete for degree <= 2 and bounded otherwise.
std::optional<FieldElem> field_sqrt(const FieldElem& a);

}  // namespace unitgroup
