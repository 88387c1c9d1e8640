#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace unitgroup {

/// Dense univariate polynomial with rational coefficients, stored low to high.
/// The zero polynomial has no coefficients; otherwise the top coefficient is nonzero.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);

  static QPoly constant(const mpq_class& c);
  static QPoly monomial(const mpq_class& c, int degree);
  static QPoly variable() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(int i) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const mpq_class& c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws DivisionByZero for a zero divisor.
  std::pair<QPoly, QPoly> divmod(const QPoly& divisor) const;
  QPoly operator%(const QPoly& m) const { return divmod(m).second; }
  /// Exact quotient; the remainder is discarded.
  QPoly operator/(const QPoly& d) const { return divmod(d).first; }

  QPoly pow(unsigned e) const;
  QPoly derivative() const;
  QPoly monic() const;
  mpq_class evaluate(const mpq_class& x) const;

  /// Monic gcd; gcd(0, 0) = 0.
  static QPoly gcd(QPoly a, QPoly b);
  /// Returns (g, s) with s*a = g (mod m) and g = gcd(a, m) monic.
  static std::pair<QPoly, QPoly> inverse_mod(const QPoly& a, const QPoly& m);

  /// Integer coefficients of the primitive integer multiple with positive leading coefficient.
  std::vector<mpz_class> primitive_integer() const;

  /// Compact rendering such as "t^2-t+1" or "3/2*t".
  std::string to_string(const std::string& var) const;

  /// Deterministic total order (not an algebraic order) for use in containers.
  friend int compare(const QPoly& a, const QPoly& b);

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// Rational roots with multiplicities, ordered by absolute value with the
/// positive root first.
std::vector<std::pair<mpq_class, int>> rational_roots(const QPoly& p);

/// Square root in Q if it exists.
bool rational_sqrt(const mpq_class& q, mpq_class& root);

/// Square root in Q[t] (leading coefficient made positive) if p is a perfect square.
bool poly_sqrt(const QPoly& p, QPoly& root);

}  // namespace unitgroup
