#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "unitgroup/error.hpp"
#include "unitgroup/groebner.hpp"

namespace unitgroup::oracle {

namespace {

// ---------------------------------------------------------------- Macaulay matrices

class RowSpace {
 public:
  explicit RowSpace(size_t cols) : cols_(cols) {}

  // Reduces v against the echelon rows; returns the remainder.
  std::vector<mpq_class> reduce(std::vector<mpq_class> v) const {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      mpq_class c = v[pivot];
      for (size_t j = pivot; j < cols_; ++j)
        if (row[j] != 0) v[j] -= c * row[j];
    }
    return v;
  }

  void insert(std::vector<mpq_class> v) {
    v = reduce(std::move(v));
    size_t p = 0;
    while (p < cols_ && v[p] == 0) ++p;
    if (p == cols_) return;
    mpq_class inv = 1 / v[p];
    for (size_t j = p; j < cols_; ++j) v[j] *= inv;
    for (auto& [q, row] : rows_)
      if (row[p] != 0) {
        mpq_class c = row[p];
        for (size_t j = p; j < cols_; ++j) row[j] -= c * v[j];
      }
    rows_.emplace(p, std::move(v));
  }

 private:
  size_t cols_;
  std::map<size_t, std::vector<mpq_class>> rows_;
};

std::vector<Exponents> monomials_up_to(size_t nvars, int degree) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, degree);
  return out;
}

class Macaulay {
 public:
  Macaulay(const std::vector<MultiPoly>& gens, int degree) : space_(0) {
    RingPtr R = gens.front().ring();
    auto mons = monomials_up_to(R->nvars(), degree);
    for (size_t i = 0; i < mons.size(); ++i) col_[mons[i]] = i;
    space_ = RowSpace(mons.size());
    for (const auto& g : gens) {
      int dg = g.total_degree();
      for (const auto& m : monomials_up_to(R->nvars(), degree - dg))
        space_.insert(vec(g.mul_term(m, R->field().one())));
    }
  }

  bool contains(const MultiPoly& f) const {
    auto r = space_.reduce(vec(f));
    return std::all_of(r.begin(), r.end(), [](const mpq_class& c) { return c == 0; });
  }

 private:
  std::vector<mpq_class> vec(const MultiPoly& f) const {
    std::vector<mpq_class> v(col_.size(), mpq_class(0));
    for (const auto& t : f.terms()) v[col_.at(t.exp)] = t.coeff.rational_value();
    return v;
  }
  std::map<Exponents, size_t> col_;
  RowSpace space_;
};

MultiPoly random_poly(const RingPtr& R, int max_degree, int terms, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  auto mons = monomials_up_to(R->nvars(), max_degree);
  std::uniform_int_distribution<size_t> pick(0, mons.size() - 1);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    int c = coef(rng);
    if (c == 0) c = 1;
    ts.push_back({mons[pick(rng)], R->field().embed(c)});
  }
  return MultiPoly(R, ts);
}

// ---------------------------------------------------------------- curve helpers

const WeierstrassCurve& curve68() {
  static const WeierstrassCurve E(-4, -1, 4);
  return E;
}

ECDivisor lines_divisor(const WeierstrassCurve& E, const MillerResult& f) {
  ECDivisor d;
  for (const auto& l : f.numerator) d += line_divisor(E, l);
  for (const auto& l : f.denominator) d -= line_divisor(E, l);
  return d;
}

LinearForm line_through(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q) {
  if (P.x() == Q.x()) {
    if (P.y() == Q.y() && P.y() != 0) {
      mpq_class lambda = (3 * P.x() * P.x() + 2 * E.a * P.x() + E.b) / (2 * P.y());
      return {-lambda, 1, lambda * P.x() - P.y()};
    }
    return {1, 0, -P.x()};
  }
  mpq_class lambda = (Q.y() - P.y()) / (Q.x() - P.x());
  return {-lambda, 1, lambda * P.x() - P.y()};
}

}  // namespace

OracleReport ideal_membership(int ideals, uint32_t seed) {
  std::mt19937 rng(seed);
  OracleReport rep;
  std::uniform_int_distribution<int> nv(1, 2), ng(1, 3), deg(1, 3), nt(1, 4), cdeg(0, 2);
  for (int trial = 0; trial < ideals; ++trial) {
    RingPtr R = nv(rng) == 1 ? make_ring(Field::rationals(), {"x"}) : make_ring(Field::rationals(), {"x", "y"});
    std::vector<MultiPoly> gens;
    int count = ng(rng);
    while (int(gens.size()) < count) {
      MultiPoly g = random_poly(R, deg(rng), nt(rng), rng);
      if (!g.is_zero() && !g.is_constant()) gens.push_back(g);
    }
    GroebnerBasis G = groebner_basis(gens);
    Macaulay M(gens, 12);

    MultiPoly member(R);
    for (const auto& g : gens) member += random_poly(R, cdeg(rng), nt(rng), rng) * g;
    MultiPoly other = member + random_poly(R, 3, nt(rng), rng);

    for (const MultiPoly* f : {&member, &other}) {
      ++rep.trials;
      bool by_reduce = reduce(*f, G.gens).remainder.is_zero();
      bool by_matrix = M.contains(*f);
      if (by_reduce == by_matrix) {
        ++rep.agreements;
      } else if (rep.first_failure.empty()) {
        rep.first_failure = "f = " + f->to_string() + " reduce says " + (by_reduce ? "member" : "non-member");
      }
    }
  }
  return rep;
}

OracleReport klein_torsion(uint32_t seed) {
  std::mt19937 rng(seed);
  OracleReport rep;
  for (const WeierstrassCurve& E : {curve68(), WeierstrassCurve(0, -1, 0)}) {
    std::vector<ECPoint> elems{ECPoint::infinity()};
    for (const auto& P : elliptic_boundary(E))
      if (!P.is_infinity() && P.y() == 0) elems.push_back(P);
    if (elems.size() != 4) fail(ErrorCode::InternalError, "expected full rational 2-torsion");
    // table[i][j] = index of elems[i] + elems[j]
    std::vector<std::vector<size_t>> table(4, std::vector<size_t>(4));
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j) {
        ECPoint s = ec_add(E, elems[i], elems[j]);
        table[i][j] = std::find(elems.begin(), elems.end(), s) - elems.begin();
        if (table[i][j] == 4) fail(ErrorCode::InternalError, "2-torsion is not closed");
      }
    auto times = [&](size_t i, long k) {
      size_t acc = 0;
      for (long r = 0; r < ((k % 2) + 2) % 2; ++r) acc = table[acc][i];
      return acc;
    };
    std::uniform_int_distribution<int> len(1, 4), which(0, 3);
    for (int round = 0; round < 10; ++round) {
      std::vector<ECPoint> pts;
      std::vector<size_t> ids;
      std::vector<int> orders;
      int n = len(rng);
      for (int k = 0; k < n; ++k) {
        size_t id = which(rng);
        ids.push_back(id);
        pts.push_back(elems[id]);
        orders.push_back(id == 0 ? 1 : 2);
      }
      IntLattice L = torsion_relations(E, pts, orders);
      // every vector in the box [-2, 2]^n
      std::vector<long> v(n, -2);
      while (true) {
        size_t acc = 0;
        IntVec iv;
        for (int k = 0; k < n; ++k) {
          acc = table[acc][times(ids[k], v[k])];
          iv.emplace_back(v[k]);
        }
        ++rep.trials;
        if ((acc == 0) == L.contains(iv)) {
          ++rep.agreements;
        } else if (rep.first_failure.empty()) {
          rep.first_failure = "vector " + to_string(iv) + " on " + E.to_string();
        }
        int k = 0;
        while (k < n && ++v[k] > 2) v[k++] = -2;
        if (k == n) break;
      }
    }
  }
  return rep;
}

OracleReport miller_roundtrip(int divisors, uint32_t seed) {
  std::mt19937 rng(seed);
  const WeierstrassCurve& E = curve68();
  OracleReport rep;
  auto pool = small_points(12, seed + 1);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> nlines(1, 3);
  for (int trial = 0; trial < divisors; ++trial) {
    ECDivisor D;
    for (int side = 0; side < 2; ++side)
      for (int k = nlines(rng); k > 0; --k) {
        const ECPoint& P = pool[pick(rng)];
        const ECPoint& Q = pool[pick(rng)];
        ECDivisor d = line_divisor(E, line_through(E, P, Q));
        if (side == 0)
          D += d;
        else
          D -= d;
      }
    ++rep.trials;
    auto f = miller_interpolate(E, D);
    if (f && lines_divisor(E, *f) == D) {
      ++rep.agreements;
    } else if (rep.first_failure.empty()) {
      rep.first_failure = f ? "line divisors differ" : "reported not principal";
    }
  }
  return rep;
}

std::vector<ECPoint> small_points(int count, uint32_t seed) {
  const WeierstrassCurve& E = curve68();
  std::mt19937 rng(seed);
  const ECPoint Q1(0, 2);
  std::vector<ECPoint> torsion{ECPoint::infinity(), ECPoint(1, 0), ECPoint(-1, 0), ECPoint(4, 0)};
  std::uniform_int_distribution<int> k(-3, 3), t(0, 3);
  std::vector<ECPoint> out;
  while (int(out.size()) < count) {
    int m = k(rng);
    if (m == 0) continue;
    out.push_back(ec_add(E, ec_mul(E, Q1, m), torsion[t(rng)]));
  }
  return out;
}

HeightReport height_properties(int points, uint32_t seed, const EllipticConfig& cfg) {
  const WeierstrassCurve& E = curve68();
  HeightReport rep;
  auto pts = small_points(points, seed);
  auto h = [&](const ECPoint& P) { return canonical_height(E, P, cfg).estimate; };
  for (size_t i = 0; i < pts.size(); ++i) {
    const ECPoint& P = pts[i];
    const ECPoint& Q = pts[(i + 1) % pts.size()];
    long double par = std::fabs(h(ec_add(E, P, Q)) + h(ec_add(E, P, ec_neg(E, Q))) - 2 * h(P) - 2 * h(Q));
    rep.max_parallelogram = std::max(rep.max_parallelogram, par);
    rep.max_doubling = std::max(rep.max_doubling, std::fabs(h(ec_mul(E, P, 2)) - 4 * h(P)));
  }
  for (const auto& T : {ECPoint(1, 0), ECPoint(-1, 0), ECPoint(4, 0)})
    rep.max_two_torsion = std::max(rep.max_two_torsion, std::fabs(h(T)));
  rep.q1 = h(ECPoint(0, 2));
  return rep;
}

}  // namespace unitgroup::oracle
