#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "unitgroup/divisors.hpp"
#include "unitgroup/groebner.hpp"
#include "unitgroup/lattice.hpp"

namespace unitgroup {

/// y^2 = x^3 + a x^2 + b x + c over Q, base point O = [0:1:0].
struct WeierstrassCurve {
  mpq_class a, b, c;

  WeierstrassCurve() = default;
  /// Throws InvalidInput when the cubic has a repeated root.
  WeierstrassCurve(mpq_class a, mpq_class b, mpq_class c);
  mpq_class discriminant() const;
  mpq_class rhs(const mpq_class& x) const { return ((x + a) * x + b) * x + c; }
  std::string to_string() const;
};

class ECPoint {
 public:
  ECPoint() = default;
  ECPoint(mpq_class x, mpq_class y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
  static ECPoint infinity() { return ECPoint(); }

  bool is_infinity() const { return inf_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }
  /// "O" or "(x, y)".
  std::string to_string() const;
  ProjPoint to_proj() const;

  friend bool operator==(const ECPoint& p, const ECPoint& q) {
    return p.inf_ == q.inf_ && (p.inf_ || (p.x_ == q.x_ && p.y_ == q.y_));
  }
  friend bool operator!=(const ECPoint& p, const ECPoint& q) { return !(p == q); }
  /// O first, then by x, then by y.
  friend bool operator<(const ECPoint& p, const ECPoint& q);

 private:
  bool inf_ = true;
  mpq_class x_, y_;
};

bool on_curve(const WeierstrassCurve& E, const ECPoint& P);
/// Throws PointNotOnCurve.
void require_on_curve(const WeierstrassCurve& E, const ECPoint& P);

ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& P);
ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q);
/// Double-and-add; |k| <= 2^16.
ECPoint ec_mul(const WeierstrassCurve& E, const ECPoint& P, long k);

struct TorsionInfo {
  bool torsion = false;
  int order = 0;  // 0 when not torsion
};
/// Exact: searches kP = O for k <= 12.
TorsionInfo is_torsion(const WeierstrassCurve& E, const ECPoint& P);

/// log max(|p|, |q|) for x = p/q in lowest terms.
long double naive_height(const mpq_class& x);

struct HeightValue {
  long double estimate = 0;
  long double radius = 0;
};

struct EllipticConfig {
  long double tolerance = 1e-8L;
  int max_doubling = 40;
  int radius_cap = 16;
};

/// Canonical height with the normalization 1/2 lim 4^-N h(x(2^N P)).
/// Throws PrecisionExhausted when more than max_doubling doublings are needed.
HeightValue canonical_height(const WeierstrassCurve& E, const ECPoint& P, const EllipticConfig& cfg = {});
std::vector<std::vector<HeightValue>> height_pairing_matrix(const WeierstrassCurve& E,
                                                           const std::vector<ECPoint>& points,
                                                           const EllipticConfig& cfg = {});

/// Relations sum n_i T_i = O among torsion points, by exhaustive search.
IntLattice torsion_relations(const WeierstrassCurve& E, const std::vector<ECPoint>& points,
                             const std::vector<int>& orders);
/// All m with sum m_i Q_i torsion. Throws RankUndecidable.
IntLattice nontorsion_relations(const WeierstrassCurve& E, const std::vector<ECPoint>& points,
                                const EllipticConfig& cfg = {});
/// Degree-zero relations among the boundary points, in the order given.
IntLattice boundary_relation_lattice(const WeierstrassCurve& E, const std::vector<ECPoint>& boundary,
                                     const EllipticConfig& cfg = {});

/// Intersection with x = 0, y = 0, z = 0: O, the roots on y = 0, the points on
/// x = 0; then stably sorted torsion first. Throws BoundaryNotInField.
std::vector<ECPoint> elliptic_boundary(const WeierstrassCurve& E);

/// The form x_coef*x + y_coef*y + z_coef*z.
struct LinearForm {
  mpq_class xc, yc, zc;
  std::string to_string() const;
  MultiPoly to_poly(const RingPtr& ring) const;
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.xc == b.xc && a.yc == b.yc && a.zc == b.zc;
  }
};

using ECDivisor = Divisor<ECPoint>;

/// div(form / z). Throws IrrationalIntersection.
ECDivisor line_divisor(const WeierstrassCurve& E, const LinearForm& form);

struct MillerResult {
  std::vector<LinearForm> numerator, denominator;
};
/// A product of lines with divisor D, or nullopt when D is not principal.
std::optional<MillerResult> miller_interpolate(const WeierstrassCurve& E, const ECDivisor& D);

struct EllipticUnit {
  IntVec relation;
  MillerResult lines;
  LaurentPoly unit;
  IntVec divisor;
  bool is_unit = false;
};

struct EllipticResult {
  std::vector<ECPoint> boundary;
  std::vector<TorsionInfo> torsion;
  std::vector<HeightValue> heights;
  IntLattice relations;
  RingPtr base;
  std::vector<EllipticUnit> units;
  /// Every relation sums to O in the group and has degree zero.
  bool relations_verified = false;
  bool lattice_matches = false;
};

LaurentIdeal elliptic_ideal(const WeierstrassCurve& E, const RingPtr& base);
/// Empty boundary means elliptic_boundary(E). Every given point must lie on
/// xyz = 0, otherwise InvalidInput.
EllipticResult elliptic_unit_basis(const WeierstrassCurve& E, const std::vector<ECPoint>& boundary = {},
                                   const EllipticConfig& cfg = {});

}  // namespace unitgroup
