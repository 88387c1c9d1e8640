#pragma once

#include <map>
#include <string>
#include <vector>

#include "unitgroup/error.hpp"
#include "unitgroup/field.hpp"
#include "unitgroup/lattice.hpp"

namespace unitgroup {

/// Projective point normalized so its last nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(std::vector<FieldElem> coords);

  const std::vector<FieldElem>& coords() const { return coords_; }
  const FieldElem& operator[](size_t i) const { return coords_[i]; }
  size_t size() const { return coords_.size(); }
  std::string to_string() const;
  std::vector<std::string> to_strings() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

 private:
  std::vector<FieldElem> coords_;
};

/// Finite formal sum of points; no zero multiplicities are stored.
template <class Point>
class Divisor {
 public:
  Divisor() = default;
  static Divisor point(const Point& p, long mult = 1) {
    Divisor d;
    d.add(p, mult);
    return d;
  }

  void add(const Point& p, long mult) {
    if (mult == 0) return;
    long& m = support_[p];
    m += mult;
    if (m == 0) support_.erase(p);
  }
  long multiplicity(const Point& p) const {
    auto it = support_.find(p);
    return it == support_.end() ? 0 : it->second;
  }
  const std::map<Point, long>& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  long degree() const {
    long d = 0;
    for (const auto& [p, m] : support_) d += m;
    return d;
  }

  Divisor& operator+=(const Divisor& o) {
    for (const auto& [p, m] : o.support_) add(p, m);
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    for (const auto& [p, m] : o.support_) add(p, -m);
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  Divisor operator-() const {
    Divisor d;
    for (const auto& [p, m] : support_) d.support_[p] = -m;
    return d;
  }
  Divisor scaled(long k) const {
    Divisor d;
    if (k == 0) return d;
    for (const auto& [p, m] : support_) d.support_[p] = m * k;
    return d;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.support_ == b.support_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

  /// Coordinates against an ordered boundary. Throws UnsupportedPoint.
  IntVec to_vector(const std::vector<Point>& boundary) const {
    IntVec v(boundary.size(), mpz_class(0));
    for (const auto& [p, m] : support_) {
      size_t i = 0;
      while (i < boundary.size() && !(boundary[i] == p)) ++i;
      if (i == boundary.size()) fail(ErrorCode::UnsupportedPoint, "divisor point outside the boundary");
      v[i] = m;
    }
    return v;
  }
  static Divisor from_vector(const IntVec& v, const std::vector<Point>& boundary) {
    if (v.size() != boundary.size()) fail(ErrorCode::InvalidInput, "vector length does not match the boundary");
    Divisor d;
    for (size_t i = 0; i < v.size(); ++i) d.add(boundary[i], v[i].get_si());
    return d;
  }

 private:
  std::map<Point, long> support_;
};

/// (n+1)d - 1: the largest possible unit rank of a degree d curve in P^n.
long unit_rank_bound(long n, long d);

}  // namespace unitgroup
