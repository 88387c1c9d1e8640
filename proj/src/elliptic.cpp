#include "unitgroup/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "unitgroup/error.hpp"

namespace unitgroup {

// ---------------------------------------------------------------- curve and points

WeierstrassCurve::WeierstrassCurve(mpq_class a_, mpq_class b_, mpq_class c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
  if (discriminant() == 0) fail(ErrorCode::InvalidInput, "singular cubic " + to_string());
}

mpq_class WeierstrassCurve::discriminant() const {
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

std::string WeierstrassCurve::to_string() const {
  RingPtr R = make_ring(Field::rationals(), {"x"});
  MultiPoly x = MultiPoly::variable(R, 0);
  MultiPoly rhs = x.pow(3) + x.pow(2).scaled(R->field().embed(a)) + x.scaled(R->field().embed(b)) +
                  MultiPoly::constant(R, c);
  return "y^2 = " + rhs.to_string();
}

bool operator<(const ECPoint& p, const ECPoint& q) {
  if (p.inf_ || q.inf_) return p.inf_ && !q.inf_;
  if (p.x_ != q.x_) return p.x_ < q.x_;
  return p.y_ < q.y_;
}

std::string ECPoint::to_string() const {
  if (inf_) return "O";
  return "(" + x_.get_str() + ", " + y_.get_str() + ")";
}

ProjPoint ECPoint::to_proj() const {
  Field Q = Field::rationals();
  if (inf_) return ProjPoint({Q.zero(), Q.one(), Q.zero()});
  return ProjPoint({Q.embed(x_), Q.embed(y_), Q.one()});
}

bool on_curve(const WeierstrassCurve& E, const ECPoint& P) {
  return P.is_infinity() || P.y() * P.y() == E.rhs(P.x());
}

void require_on_curve(const WeierstrassCurve& E, const ECPoint& P) {
  if (!on_curve(E, P)) fail(ErrorCode::PointNotOnCurve, P.to_string() + " is not on " + E.to_string());
}

ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& P) {
  require_on_curve(E, P);
  if (P.is_infinity()) return P;
  return ECPoint(P.x(), -P.y());
}

namespace {

ECPoint add_unchecked(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  mpq_class lambda;
  if (P.x() == Q.x()) {
    if (P.y() != Q.y() || P.y() == 0) return ECPoint::infinity();
    lambda = (3 * P.x() * P.x() + 2 * E.a * P.x() + E.b) / (2 * P.y());
  } else {
    lambda = (Q.y() - P.y()) / (Q.x() - P.x());
  }
  mpq_class x3 = lambda * lambda - E.a - P.x() - Q.x();
  mpq_class y3 = lambda * (P.x() - x3) - P.y();
  return ECPoint(x3, y3);
}

ECPoint mul_unchecked(const WeierstrassCurve& E, ECPoint P, long k) {
  if (k < 0) {
    if (!P.is_infinity()) P = ECPoint(P.x(), -P.y());
    k = -k;
  }
  ECPoint acc;
  while (k) {
    if (k & 1) acc = add_unchecked(E, acc, P);
    k >>= 1;
    if (k) P = add_unchecked(E, P, P);
  }
  return acc;
}

ECPoint point_sum(const WeierstrassCurve& E, const std::vector<ECPoint>& pts, const IntVec& coeffs) {
  ECPoint acc;
  for (size_t i = 0; i < pts.size(); ++i)
    if (coeffs[i] != 0) acc = add_unchecked(E, acc, mul_unchecked(E, pts[i], coeffs[i].get_si()));
  return acc;
}

}  // namespace

ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q) {
  require_on_curve(E, P);
  require_on_curve(E, Q);
  return add_unchecked(E, P, Q);
}

ECPoint ec_mul(const WeierstrassCurve& E, const ECPoint& P, long k) {
  require_on_curve(E, P);
  if (k > 65536 || k < -65536) fail(ErrorCode::InvalidInput, "scalar multiple exceeds 2^16");
  return mul_unchecked(E, P, k);
}

TorsionInfo is_torsion(const WeierstrassCurve& E, const ECPoint& P) {
  require_on_curve(E, P);
  ECPoint Q = P;
  for (int k = 1; k <= 12; ++k) {
    if (Q.is_infinity()) return {true, k};
    Q = add_unchecked(E, Q, P);
  }
  return {false, 0};
}

// ---------------------------------------------------------------- heights

namespace {

long double log_abs(const mpz_class& z) {
  if (z == 0) return -INFINITY;
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(d))) + static_cast<long double>(e) * std::log(2.0L);
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> M) {
  size_t n = M.size();
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && M[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

// Resultant of two binary forms of degree 4, coefficients listed from the X^4 term down.
mpz_class resultant44(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
  std::vector<std::vector<mpz_class>> S(8, std::vector<mpz_class>(8, mpz_class(0)));
  for (size_t r = 0; r < 4; ++r)
    for (size_t k = 0; k < 5; ++k) {
      S[r][r + k] = f[k];
      S[r + 4][r + k] = g[k];
    }
  return bareiss_det(S);
}

mpz_class eval_form(const std::vector<mpz_class>& f, const mpz_class& p, const mpz_class& q) {
  mpz_class acc = 0;
  mpz_class qp = 1;
  std::vector<mpz_class> qpow(5);
  for (int k = 0; k < 5; ++k) {
    qpow[k] = qp;
    qp *= q;
  }
  mpz_class pp = 1;
  for (int k = 4; k >= 0; --k) {
    acc += f[k] * pp * qpow[k];
    pp *= p;
  }
  return acc;
}

long double eval_form_real(const std::vector<long double>& f, long double p, long double q) {
  long double acc = 0, pp = 1;
  long double qpow[5] = {1, q, q * q, q * q * q, q * q * q * q};
  for (int k = 4; k >= 0; --k) {
    acc += f[k] * pp * qpow[k];
    pp *= p;
  }
  return acc;
}

mpz_class common_denominator(const WeierstrassCurve& E) {
  mpz_class u = 1;
  for (const mpq_class* q : {&E.a, &E.b, &E.c}) u = lcm(u, mpz_class(q->get_den()));
  return u;
}

}  // namespace

long double naive_height(const mpq_class& x) {
  mpz_class n = abs(x.get_num()), d = x.get_den();
  return log_abs(n > d ? n : d);
}

HeightValue canonical_height(const WeierstrassCurve& E, const ECPoint& P, const EllipticConfig& cfg) {
  if (cfg.tolerance <= 0) fail(ErrorCode::InvalidInput, "tolerance must be positive");
  if (is_torsion(E, P).torsion) return {0, 0};
  // integral model x -> u^2 x
  mpz_class u = common_denominator(E);
  mpz_class u2 = u * u;
  mpq_class Aq = E.a * u2, Bq = E.b * u2 * u2, Cq = E.c * u2 * u2 * u2;
  mpz_class A = Aq.get_num(), B = Bq.get_num(), C = Cq.get_num();
  mpz_class b2 = 4 * A, b4 = 2 * B, b6 = 4 * C, b8 = 4 * A * C - B * B;
  std::vector<mpz_class> F{1, 0, -b4, -2 * b6, -b8};
  std::vector<mpz_class> G{0, 4, b2, 2 * b4, b6};
  mpz_class R = abs(resultant44(F, G));
  if (R == 0) fail(ErrorCode::InternalError, "doubling map has a common factor");
  std::vector<long double> Fr, Gr;
  for (const auto& c : F) Fr.push_back(static_cast<long double>(c.get_d()));
  for (const auto& c : G) Gr.push_back(static_cast<long double>(c.get_d()));

  mpq_class X = P.x() * u2;
  mpz_class p = X.get_num(), q = X.get_den();
  mpz_class M;
  mpz_pow_ui(M.get_mpz_t(), R.get_mpz_t(), static_cast<unsigned long>(cfg.max_doubling + 1));
  mpz_class pm = p % M, qm = q % M;
  long double pr, qr;
  if (abs(p) >= q) {
    pr = 1;
    qr = static_cast<long double>(mpq_class(mpq_class(q) / p).get_d());
  } else {
    pr = static_cast<long double>(X.get_d());
    qr = 1;
  }

  long double sum = naive_height(X);
  long double bound = std::max<long double>(1, log_abs(R));
  long double scale = 1;
  const long double logR = log_abs(R);
  for (int n = 0; n < cfg.max_doubling; ++n) {
    scale /= 4;
    long double fr = eval_form_real(Fr, pr, qr), gr = eval_form_real(Gr, pr, qr);
    long double mx = std::max(std::fabs(fr), std::fabs(gr));
    long double phi = std::log(mx);
    mpz_class fm = eval_form(F, pm, qm) % M, gm = eval_form(G, pm, qm) % M;
    mpz_class g = gcd(gcd(fm, gm), R);
    long double term = phi - log_abs(g);
    sum += scale * term;
    bound = std::max(bound, std::fabs(term));
    bound = std::max(bound, logR);
    M /= g;
    pm = (fm / g) % M;
    qm = (gm / g) % M;
    pr = fr / mx;
    qr = gr / mx;
    long double radius = 0.5L * bound * scale / 3;
    if (radius < cfg.tolerance) return {sum / 2, radius};
  }
  fail(ErrorCode::PrecisionExhausted, "canonical height of " + P.to_string() + " needs more than " +
                                          std::to_string(cfg.max_doubling) + " doublings");
}

std::vector<std::vector<HeightValue>> height_pairing_matrix(const WeierstrassCurve& E,
                                                           const std::vector<ECPoint>& points,
                                                           const EllipticConfig& cfg) {
  size_t n = points.size();
  std::vector<HeightValue> h;
  for (const auto& P : points) h.push_back(canonical_height(E, P, cfg));
  std::vector<std::vector<HeightValue>> A(n, std::vector<HeightValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      HeightValue s = canonical_height(E, ec_add(E, points[i], points[j]), cfg);
      HeightValue v{s.estimate - h[i].estimate - h[j].estimate, s.radius + h[i].radius + h[j].radius};
      A[i][j] = A[j][i] = v;
    }
  return A;
}

// ---------------------------------------------------------------- relations

IntLattice torsion_relations(const WeierstrassCurve& E, const std::vector<ECPoint>& points,
                             const std::vector<int>& orders) {
  size_t r = points.size();
  if (orders.size() != r) fail(ErrorCode::InvalidInput, "one order per torsion point is required");
  std::vector<std::vector<ECPoint>> mult(r);
  for (size_t i = 0; i < r; ++i) {
    require_on_curve(E, points[i]);
    if (orders[i] < 1 || !mul_unchecked(E, points[i], orders[i]).is_infinity())
      fail(ErrorCode::InvalidInput, points[i].to_string() + " does not have order dividing " + std::to_string(orders[i]));
    for (int k = 0; k <= orders[i]; ++k) mult[i].push_back(mul_unchecked(E, points[i], k));
  }
  std::vector<IntVec> hits;
  std::vector<int> idx(r, 0);
  while (true) {
    ECPoint s;
    for (size_t i = 0; i < r; ++i) s = add_unchecked(E, s, mult[i][idx[i]]);
    if (s.is_infinity()) {
      IntVec v;
      for (int k : idx) v.emplace_back(k);
      hits.push_back(v);
    }
    size_t k = 0;
    while (k < r && ++idx[k] > orders[k]) idx[k++] = 0;
    if (k == r) break;
  }
  return IntLattice::from_generators(hits, r);
}

namespace {

using RMat = std::vector<std::vector<long double>>;

// Cyclic Jacobi; returns eigenvalues and eigenvectors as columns.
std::pair<std::vector<long double>, RMat> jacobi_eigen(RMat A) {
  size_t n = A.size();
  RMat V(n, std::vector<long double>(n, 0));
  for (size_t i = 0; i < n; ++i) V[i][i] = 1;
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
    if (off < 1e-36L) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (std::fabs(A[p][q]) < 1e-300L) continue;
        long double theta = (A[q][q] - A[p][p]) / (2 * A[p][q]);
        long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          long double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          long double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
        for (size_t k = 0; k < n; ++k) {
          long double vkp = V[k][p], vkq = V[k][q];
          V[k][p] = c * vkp - s * vkq;
          V[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<long double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = A[i][i];
  return {ev, V};
}

long double quad_form(const RMat& A, const IntVec& v) {
  long double s = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) s += A[i][j] * v[i].get_d() * v[j].get_d();
  return s;
}

}  // namespace

IntLattice nontorsion_relations(const WeierstrassCurve& E, const std::vector<ECPoint>& points,
                                const EllipticConfig& cfg) {
  size_t n = points.size();
  if (n == 0) return IntLattice(0);
  for (const auto& P : points)
    if (is_torsion(E, P).torsion) fail(ErrorCode::InvalidInput, P.to_string() + " is torsion");
  auto H = height_pairing_matrix(E, points, cfg);
  RMat A(n, std::vector<long double>(n));
  long double err = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      A[i][j] = H[i][j].estimate;
      err += H[i][j].radius;
    }
  long double thr = 2 * err + 1e-15L;
  auto [ev, V] = jacobi_eigen(A);
  size_t numeric_rank = 0;
  for (long double l : ev) {
    if (l > thr && l <= 1000 * thr)
      fail(ErrorCode::RankUndecidable, "height pairing eigenvalue within the error band; tighten the tolerance");
    if (l > thr) ++numeric_rank;
  }
  size_t k = n - numeric_rank;
  IntLattice found(n);
  if (k == 0) return found;

  std::vector<IntVec> rels;
  auto consider = [&](const IntVec& v) {
    bool zero = std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
    if (zero) return;
    mpz_class norm2 = 0;
    for (const auto& x : v) norm2 += x * x;
    if (quad_form(A, v) > 2 * thr * norm2.get_d()) return;
    if (!is_torsion(E, point_sum(E, points, v)).torsion) return;
    rels.push_back(v);
    found = saturate(IntLattice::from_generators(rels, n));
  };
  // rounded kernel eigenvectors first
  for (size_t e = 0; e < n && found.rank() < k; ++e) {
    if (ev[e] > thr) continue;
    long double mx = 0;
    for (size_t i = 0; i < n; ++i) mx = std::max(mx, std::fabs(V[i][e]));
    for (int s = 1; s <= cfg.radius_cap && found.rank() < k; ++s) {
      IntVec v;
      for (size_t i = 0; i < n; ++i) v.emplace_back(static_cast<long>(std::lround(s * V[i][e] / mx)));
      consider(v);
    }
  }
  for (int radius = 1; found.rank() < k; radius *= 2) {
    int rad = std::min(radius, cfg.radius_cap);
    for (const auto& v : enumerate_ball(IntLattice::full(n), rad)) {
      if (found.rank() == k) break;
      if (!found.contains(v)) consider(v);
    }
    if (rad == cfg.radius_cap) break;
  }
  if (found.rank() != k)
    fail(ErrorCode::RankUndecidable, "found " + std::to_string(found.rank()) + " of " + std::to_string(k) +
                                         " independent relations within the search radius");
  return found;
}

IntLattice boundary_relation_lattice(const WeierstrassCurve& E, const std::vector<ECPoint>& boundary,
                                     const EllipticConfig& cfg) {
  const size_t N = boundary.size();
  for (size_t i = 0; i < N; ++i) {
    require_on_curve(E, boundary[i]);
    for (size_t j = 0; j < i; ++j)
      if (boundary[i] == boundary[j]) fail(ErrorCode::InvalidInput, "boundary point repeated");
  }
  std::vector<size_t> tidx, qidx;
  std::vector<int> orders;
  for (size_t i = 0; i < N; ++i) {
    TorsionInfo t = is_torsion(E, boundary[i]);
    if (t.torsion) {
      tidx.push_back(i);
      orders.push_back(t.order);
    } else {
      qidx.push_back(i);
    }
  }
  std::vector<ECPoint> T, Q;
  for (size_t i : tidx) T.push_back(boundary[i]);
  for (size_t i : qidx) Q.push_back(boundary[i]);
  const size_t r = T.size(), n = Q.size();

  std::vector<IntVec> D;
  auto embed = [&](const IntVec& m, const IntVec& t) {
    IntVec v(N, mpz_class(0));
    for (size_t i = 0; i < n; ++i) v[qidx[i]] = m[i];
    for (size_t j = 0; j < r; ++j) v[tidx[j]] = t[j];
    return v;
  };
  for (const auto& t : torsion_relations(E, T, orders).generators()) D.push_back(embed(IntVec(n, mpz_class(0)), t));

  // the finite group generated by the torsion points, with a representation of each element
  std::map<ECPoint, IntVec> group;
  group[ECPoint::infinity()] = IntVec(r, mpz_class(0));
  std::vector<ECPoint> frontier{ECPoint::infinity()};
  while (!frontier.empty()) {
    std::vector<ECPoint> next;
    for (const auto& g : frontier)
      for (size_t j = 0; j < r; ++j) {
        ECPoint h = add_unchecked(E, g, T[j]);
        if (group.count(h)) continue;
        IntVec rep = group[g];
        rep[j] += 1;
        group[h] = rep;
        next.push_back(h);
        if (group.size() > 64) fail(ErrorCode::GNotClosed, "torsion subgroup enumeration did not close");
      }
    frontier = std::move(next);
  }

  if (n > 0) {
    IntLattice DQ = nontorsion_relations(E, Q, cfg);
    size_t ell = DQ.rank();
    if (ell > 0) {
      auto in_group = [&](const IntVec& m) { return group.count(point_sum(E, Q, m)) > 0; };
      mpz_class longest = 0;
      for (const auto& b : DQ.generators()) {
        mpz_class s = 0;
        for (const auto& x : b) s += x * x;
        longest = std::max(longest, s);
      }
      // 12 b lies in the group for every basis vector b, so this lambda always suffices
      mpz_class lam_max = 12 * (sqrt(longest) + 1);
      long lam = 0;
      while (true) {
        ++lam;
        if (lam > lam_max) fail(ErrorCode::InternalError, "relation search exceeded its theoretical bound");
        std::vector<IntVec> S;
        for (const auto& m : enumerate_ball(DQ, lam))
          if (in_group(m)) S.push_back(m);
        if (IntLattice::from_generators(S, n).rank() == ell) break;
      }
      mpq_class radius = lam;
      for (size_t k = 1; k < ell; ++k) radius *= mpq_class(3, 2);
      for (const auto& m : enumerate_ball(DQ, radius)) {
        ECPoint s = point_sum(E, Q, m);
        auto it = group.find(s);
        if (it == group.end()) continue;
        // sum n_j T_j = -s
        ECPoint neg = s.is_infinity() ? s : ECPoint(s.x(), -s.y());
        D.push_back(embed(m, group.at(neg)));
      }
    }
  }
  return intersect_degree_zero(IntLattice::from_generators(D, N));
}

std::vector<ECPoint> elliptic_boundary(const WeierstrassCurve& E) {
  std::vector<ECPoint> out{ECPoint::infinity()};
  auto roots = rational_roots(QPoly({E.c, E.b, E.a, 1}));
  int total = 0;
  for (const auto& [r, m] : roots) {
    out.emplace_back(r, 0);
    total += m;
  }
  if (total != 3) fail(ErrorCode::BoundaryNotInField, "the cubic " + E.to_string() + " does not split over Q");
  if (E.c != 0) {
    mpq_class s;
    if (!rational_sqrt(E.c, s)) fail(ErrorCode::BoundaryNotInField, "x = 0 meets the curve in irrational points");
    s = abs(s);
    out.emplace_back(0, s);
    out.emplace_back(0, -s);
  }
  std::stable_partition(out.begin(), out.end(), [&](const ECPoint& P) { return is_torsion(E, P).torsion; });
  return out;
}

// ---------------------------------------------------------------- lines and Miller

std::string LinearForm::to_string() const { return to_poly(make_ring(Field::rationals(), {"x", "y", "z"})).to_string(); }

MultiPoly LinearForm::to_poly(const RingPtr& ring) const {
  const Field& K = ring->field();
  return MultiPoly::variable(ring, 0).scaled(K.embed(xc)) + MultiPoly::variable(ring, 1).scaled(K.embed(yc)) +
         MultiPoly::variable(ring, 2).scaled(K.embed(zc));
}

ECDivisor line_divisor(const WeierstrassCurve& E, const LinearForm& l) {
  ECDivisor d;
  const ECPoint O = ECPoint::infinity();
  if (l.yc != 0) {
    mpq_class s = -l.xc / l.yc, t = -l.zc / l.yc;
    QPoly cubic({E.c - t * t, E.b - 2 * s * t, E.a - s * s, 1});
    int total = 0;
    for (const auto& [x, m] : rational_roots(cubic)) {
      d.add(ECPoint(x, s * x + t), m);
      total += m;
    }
    if (total != 3) fail(ErrorCode::IrrationalIntersection, "line " + l.to_string() + " meets the curve irrationally");
    d.add(O, -3);
    return d;
  }
  if (l.xc != 0) {
    mpq_class x0 = -l.zc / l.xc;
    mpq_class v = E.rhs(x0), y;
    if (v == 0) {
      d.add(ECPoint(x0, 0), 2);
    } else {
      if (!rational_sqrt(v, y)) fail(ErrorCode::IrrationalIntersection, "line " + l.to_string() + " meets the curve irrationally");
      d.add(ECPoint(x0, y), 1);
      d.add(ECPoint(x0, -y), 1);
    }
    d.add(O, -2);
    return d;
  }
  if (l.zc == 0) fail(ErrorCode::InvalidInput, "zero linear form");
  return d;
}

namespace {

LinearForm vertical(const ECPoint& P) { return {1, 0, -P.x()}; }

LinearForm through(const mpq_class& lambda, const ECPoint& P) { return {-lambda, 1, -(P.y() - lambda * P.x())}; }

LinearForm chord(const ECPoint& P, const ECPoint& Q) { return through((Q.y() - P.y()) / (Q.x() - P.x()), P); }

LinearForm tangent(const WeierstrassCurve& E, const ECPoint& P) {
  if (P.y() == 0) return vertical(P);
  return through((3 * P.x() * P.x() + 2 * E.a * P.x() + E.b) / (2 * P.y()), P);
}

}  // namespace

std::optional<MillerResult> miller_interpolate(const WeierstrassCurve& E, const ECDivisor& D0) {
  if (D0.degree() != 0) fail(ErrorCode::InvalidInput, "divisor must have degree 0");
  for (const auto& [P, m] : D0.support()) require_on_curve(E, P);
  const ECPoint O = ECPoint::infinity();
  auto neg = [](const ECPoint& P) { return P.is_infinity() ? P : ECPoint(P.x(), -P.y()); };
  ECDivisor D = D0;
  MillerResult f;
  // adds sign * (P + Q + R - 3O) style divisors
  auto shift = [&](int sign, std::initializer_list<ECPoint> pts, long o) {
    for (const auto& P : pts) D.add(P, sign);
    D.add(O, sign * o);
  };
  for (int guard = 0; guard < 100000; ++guard) {
    std::vector<std::pair<ECPoint, long>> pos, negs;
    for (const auto& [P, m] : D.support()) {
      if (P.is_infinity()) continue;
      if (m > 0) pos.emplace_back(P, m);
      if (m < 0) negs.emplace_back(P, -m);
    }
    if (pos.empty() && negs.empty()) return f;

    auto find_pair = [&](const std::vector<std::pair<ECPoint, long>>& v, bool inverse) -> std::optional<std::pair<ECPoint, ECPoint>> {
      for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
          if ((v[i].first == neg(v[j].first)) == inverse) return std::make_pair(v[i].first, v[j].first);
      return std::nullopt;
    };
    if (auto pq = find_pair(pos, false)) {
      auto [P, Q] = *pq;
      shift(-1, {P, Q, neg(add_unchecked(E, P, Q))}, -3);
      f.numerator.push_back(chord(P, Q));
      continue;
    }
    if (auto pq = find_pair(pos, true)) {
      auto [P, Q] = *pq;
      shift(-1, {P, Q}, -2);
      f.numerator.push_back(vertical(P));
      continue;
    }
    if (auto pq = find_pair(negs, false)) {
      auto [P, Q] = *pq;
      shift(+1, {P, Q, neg(add_unchecked(E, P, Q))}, -3);
      f.denominator.push_back(chord(P, Q));
      continue;
    }
    if (auto pq = find_pair(negs, true)) {
      auto [P, Q] = *pq;
      shift(+1, {P, Q}, -2);
      f.denominator.push_back(vertical(P));
      continue;
    }
    long m = pos.empty() ? 0 : pos[0].second;
    long n = negs.empty() ? 0 : negs[0].second;
    auto order23 = [&](const ECPoint& P) {
      ECPoint twice = add_unchecked(E, P, P);
      if (twice.is_infinity()) return 2;
      if (add_unchecked(E, twice, P).is_infinity()) return 3;
      return 0;
    };
    if (m >= 2 || n >= 2) {
      int sign = m >= 2 ? -1 : +1;
      const ECPoint& P = m >= 2 ? pos[0].first : negs[0].first;
      switch (order23(P)) {
        case 3:
          shift(sign, {P, P, P}, -3);
          break;
        case 2:
          shift(sign, {P, P}, -2);
          break;
        default:
          shift(sign, {P, P, neg(add_unchecked(E, P, P))}, -3);
      }
      (m >= 2 ? f.numerator : f.denominator).push_back(tangent(E, P));
      continue;
    }
    if (m == 1 && n == 1) {
      const ECPoint& Q = negs[0].first;
      shift(+1, {Q, neg(Q)}, -2);
      f.denominator.push_back(vertical(Q));
      continue;
    }
    return std::nullopt;
  }
  fail(ErrorCode::InternalError, "Miller reduction did not terminate");
}

// ---------------------------------------------------------------- pipeline

LaurentIdeal elliptic_ideal(const WeierstrassCurve& E, const RingPtr& base) {
  const Field& K = base->field();
  MultiPoly x = MultiPoly::variable(base, 0), y = MultiPoly::variable(base, 1);
  MultiPoly f = y.pow(2) - x.pow(3) - x.pow(2).scaled(K.embed(E.a)) - x.scaled(K.embed(E.b)) -
                MultiPoly::constant(base, E.c);
  return LaurentIdeal(base, {LaurentPoly(f)});
}

EllipticResult elliptic_unit_basis(const WeierstrassCurve& E, const std::vector<ECPoint>& boundary,
                                   const EllipticConfig& cfg) {
  EllipticResult res;
  res.boundary = boundary.empty() ? elliptic_boundary(E) : boundary;
  const size_t N = res.boundary.size();
  for (const auto& P : res.boundary) {
    require_on_curve(E, P);
    if (!P.is_infinity() && P.x() != 0 && P.y() != 0)
      fail(ErrorCode::InvalidInput, P.to_string() + " does not lie on xyz = 0");
  }
  for (const auto& P : res.boundary) {
    res.torsion.push_back(is_torsion(E, P));
    res.heights.push_back(canonical_height(E, P, cfg));
  }
  res.relations = boundary_relation_lattice(E, res.boundary, cfg);
  res.relations_verified = true;
  for (const auto& v : res.relations.generators()) {
    mpz_class deg = 0;
    for (const auto& x : v) deg += x;
    if (deg != 0 || !point_sum(E, res.boundary, v).is_infinity()) res.relations_verified = false;
  }

  RingPtr R3 = make_ring(Field::rationals(), {"x", "y", "z"});
  res.base = make_ring(Field::rationals(), {"x", "y"});
  LaurentIdeal I = elliptic_ideal(E, res.base);
  MultiPoly z = MultiPoly::variable(R3, 2);
  std::vector<IntVec> divs;
  for (const auto& v : res.relations.generators()) {
    EllipticUnit u;
    u.relation = v;
    ECDivisor D = ECDivisor::from_vector(v, res.boundary);
    auto lines = miller_interpolate(E, D);
    if (!lines) fail(ErrorCode::InternalError, "relation " + to_string(v) + " is not principal");
    u.lines = *lines;
    MultiPoly F = MultiPoly::constant(R3, 1), G = F;
    ECDivisor check;
    for (const auto& l : u.lines.numerator) {
      F = F * l.to_poly(R3);
      check += line_divisor(E, l);
    }
    for (const auto& l : u.lines.denominator) {
      G = G * l.to_poly(R3);
      check -= line_divisor(E, l);
    }
    int diff = int(u.lines.numerator.size()) - int(u.lines.denominator.size());
    if (diff > 0) G = G * z.pow(diff);
    if (diff < 0) F = F * z.pow(-diff);
    auto h = unit_preimage(F, G, "z", I);
    if (!h) fail(ErrorCode::InternalError, "Miller function for " + to_string(v) + " is not a unit");
    u.unit = primitive_part(*h);
    u.divisor = check.to_vector(res.boundary);
    u.is_unit = test_unit(u.unit, I);
    divs.push_back(u.divisor);
    res.units.push_back(std::move(u));
  }
  res.lattice_matches = IntLattice::from_generators(divs, N) == res.relations;
  return res;
}

}  // namespace unitgroup
