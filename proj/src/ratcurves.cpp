#include "unitgroup/ratcurves.hpp"

#include <algorithm>
#include <numeric>

#include "unitgroup/error.hpp"

namespace unitgroup {

namespace {

using UPoly = std::vector<FieldElem>;  // ascending coefficients

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

FieldElem horner(const UPoly& p, const FieldElem& x) {
  FieldElem acc = x.field().zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Quotient by (X - r), assuming r is a root.
UPoly deflate(const UPoly& p, const FieldElem& r) {
  size_t n = p.size() - 1;
  UPoly q(n);
  q[n - 1] = p[n];
  for (size_t k = n - 1; k > 0; --k) q[k - 1] = p[k] + r * q[k];
  return q;
}

std::optional<FieldElem> rational_candidate(const UPoly& p) {
  FieldElem inv = p.back().inverse();
  std::vector<mpq_class> qs;
  for (const auto& c : p) {
    FieldElem m = c * inv;
    if (!m.is_rational()) return std::nullopt;
    qs.push_back(m.rational_value());
  }
  auto rr = rational_roots(QPoly(qs));
  if (rr.empty()) return std::nullopt;
  return p.back().field().embed(rr.front().first);
}

std::optional<FieldElem> number_field_candidate(const UPoly& p) {
  Field K = p.back().field();
  const std::vector<mpq_class> heights{0,  1, -1, 2, -2, mpq_class(1, 2), mpq_class(-1, 2), 3, -3, mpq_class(1, 3),
                                       mpq_class(-1, 3), mpq_class(3, 2), mpq_class(-3, 2), mpq_class(2, 3),
                                       mpq_class(-2, 3)};
  int m = K.modulus().degree();
  std::vector<size_t> idx(m, 0);
  const long cap = 200000;
  for (long it = 0; it < cap; ++it) {
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == heights.size()) idx[k++] = 0;
    if (k == idx.size()) break;
    std::vector<mpq_class> c(m);
    for (int j = 0; j < m; ++j) c[j] = heights[idx[j]];
    FieldElem a = K.from_poly(QPoly(c));
    if (horner(p, a).is_zero()) return a;
  }
  return std::nullopt;
}

std::vector<QPoly> monic_divisors(const QPoly& h) {
  auto rr = rational_roots(h);
  QPoly rest = h.monic();
  for (const auto& [r, e] : rr) rest = rest / QPoly({-r, 1}).pow(e);
  std::vector<QPoly> out{QPoly::constant(1)};
  for (const auto& [r, e] : rr) {
    std::vector<QPoly> next;
    QPoly lin({-r, 1});
    for (const auto& d : out) {
      QPoly cur = d;
      for (int k = 0; k <= e && next.size() < 512; ++k, cur = cur * lin) next.push_back(cur);
    }
    out = std::move(next);
  }
  if (rest.degree() > 0) {
    size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.push_back(out[i] * rest);
  }
  return out;
}

std::optional<FieldElem> function_field_candidate(const UPoly& p) {
  Field K = p.back().field();
  QPoly L = QPoly::constant(1);
  for (const auto& c : p) L = L * c.den() / QPoly::gcd(L, c.den());
  std::vector<QPoly> cs;
  for (const auto& c : p) cs.push_back(c.num() * (L / c.den()));
  const QPoly& c0 = cs.front();
  const QPoly& cn = cs.back();
  for (const auto& num : monic_divisors(c0)) {
    for (const auto& den : monic_divisors(cn)) {
      if (QPoly::gcd(num, den).degree() > 0) continue;
      for (long t0 = 2; t0 < 64; ++t0) {
        mpq_class pt = num.evaluate(t0), qt = den.evaluate(t0);
        if (pt == 0 || qt == 0 || cn.evaluate(t0) == 0) continue;
        mpq_class ratio = pt / qt, power = 1;
        std::vector<mpq_class> g;
        for (const auto& c : cs) {
          g.push_back(c.evaluate(t0) * power);
          power *= ratio;
        }
        for (const auto& [lam, mult] : rational_roots(QPoly(g))) {
          FieldElem a = K.from_fraction(num * lam, den);
          if (horner(p, a).is_zero()) return a;
        }
        break;
      }
    }
  }
  return std::nullopt;
}

void add_root(std::vector<std::pair<FieldElem, int>>& out, const FieldElem& r, int m) {
  for (auto& [x, k] : out)
    if (x == r) {
      k += m;
      return;
    }
  out.emplace_back(r, m);
}

}  // namespace

std::vector<std::pair<FieldElem, int>> field_roots(std::vector<FieldElem> p) {
  trim(p);
  if (p.empty()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  Field K = p.back().field();
  std::vector<std::pair<FieldElem, int>> out;
  int zeros = 0;
  while (p.front().is_zero()) {
    p.erase(p.begin());
    ++zeros;
  }
  if (zeros) out.emplace_back(K.zero(), zeros);
  while (p.size() > 1) {
    if (p.size() == 2) {
      add_root(out, -p[0] / p[1], 1);
      break;
    }
    if (p.size() == 3) {
      for (const auto& [pt, m] : binary_quadratic_roots(p[2], p[1], p[0])) add_root(out, pt[0] / pt[1], m);
      break;
    }
    std::optional<FieldElem> r = rational_candidate(p);
    if (!r && K.kind() == FieldKind::NumberField) r = number_field_candidate(p);
    if (!r && K.kind() == FieldKind::RationalFunctions) r = function_field_candidate(p);
    if (!r) fail(ErrorCode::BoundaryNotInField, "polynomial does not split into linear factors over " + K.to_string());
    int m = 0;
    while (p.size() > 1 && horner(p, *r).is_zero()) {
      p = deflate(p, *r);
      ++m;
    }
    add_root(out, *r, m);
  }
  return out;
}

std::vector<std::pair<ProjPoint, int>> binary_quadratic_roots(const FieldElem& a, const FieldElem& b,
                                                              const FieldElem& c) {
  Field K = a.field();
  auto pt = [&](const FieldElem& u, const FieldElem& v) { return ProjPoint({u, v}); };
  std::vector<std::pair<ProjPoint, int>> out;
  if (a.is_zero()) {
    if (b.is_zero()) {
      if (c.is_zero()) fail(ErrorCode::DegenerateConic, "binary form vanishes identically");
      out.emplace_back(pt(K.one(), K.zero()), 2);
      return out;
    }
    out.emplace_back(pt(K.one(), K.zero()), 1);
    out.emplace_back(pt(-c / b, K.one()), 1);
    return out;
  }
  FieldElem disc = b * b - a * c * K.embed(4);
  FieldElem two_a = a * K.embed(2);
  if (disc.is_zero()) {
    out.emplace_back(pt(-b / two_a, K.one()), 2);
    return out;
  }
  auto r = field_sqrt(disc);
  if (!r) fail(ErrorCode::BoundaryNotInField, "discriminant " + disc.to_string() + " is not a square in " + K.to_string());
  out.emplace_back(pt((-b + *r) / two_a, K.one()), 1);
  out.emplace_back(pt((-b - *r) / two_a, K.one()), 1);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// ---------------------------------------------------------------- conics

FieldElem evaluate(const MultiPoly& f, const std::vector<FieldElem>& point) {
  FieldElem acc = f.field().zero();
  for (const auto& t : f.terms()) {
    FieldElem m = t.coeff;
    for (size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i]) m *= point[i].pow(t.exp[i]);
    acc += m;
  }
  return acc;
}

namespace {

using Vec3 = std::vector<FieldElem>;

FieldElem quad_coeff(const MultiPoly& f, int i, int j) {
  Exponents e(3, 0);
  e[i] += 1;
  e[j] += 1;
  return f.coefficient(e);
}

Vec3 gradient(const MultiPoly& f, const Vec3& P) {
  Field K = f.field();
  Vec3 g(3, K.zero());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FieldElem c = quad_coeff(f, i, j);
      if (i == j) c = c * K.embed(2);
      g[i] += c * P[j];
    }
  return g;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

FieldElem dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 combine(const FieldElem& u, const Vec3& A, const FieldElem& v, const Vec3& B) {
  return {u * A[0] + v * B[0], u * A[1] + v * B[1], u * A[2] + v * B[2]};
}

// Intersection of the conic with the line spanned by A and B.
std::vector<std::pair<ProjPoint, int>> section(const MultiPoly& f, const Vec3& A, const Vec3& B) {
  Field K = f.field();
  FieldElem a = evaluate(f, A), c = evaluate(f, B);
  FieldElem b = evaluate(f, combine(K.one(), A, K.one(), B)) - a - c;
  std::vector<std::pair<ProjPoint, int>> out;
  for (const auto& [uv, m] : binary_quadratic_roots(a, b, c)) out.emplace_back(ProjPoint(combine(uv[0], A, uv[1], B)), m);
  return out;
}

std::pair<Vec3, Vec3> line_basis(const Vec3& l) {
  Field K = l[0].field();
  int k = 0;
  while (k < 3 && l[k].is_zero()) ++k;
  if (k == 3) fail(ErrorCode::InvalidInput, "zero line");
  std::vector<Vec3> pts;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    Vec3 v(3, K.zero());
    v[i] = K.one();
    v[k] = -l[i] / l[k];
    pts.push_back(v);
  }
  return {pts[0], pts[1]};
}

MultiPoly line_poly(const RingPtr& R, const Vec3& l) {
  MultiPoly out(R);
  for (int i = 0; i < 3; ++i)
    if (!l[i].is_zero()) out += MultiPoly::variable(R, i).scaled(l[i]);
  return out;
}

std::optional<Vec3> sweep_aux_point(const MultiPoly& f, const Vec3& P, const std::vector<BoundaryPoint>& boundary) {
  Field K = f.field();
  Vec3 grad = gradient(f, P);
  auto on_boundary = [&](const ProjPoint& q) {
    for (const auto& b : boundary)
      if (b.point == q) return true;
    return false;
  };
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        Vec3 V{K.embed(a), K.embed(b), K.embed(c)};
        FieldElem fv = evaluate(f, V), gv = dot(grad, V);
        Vec3 R = fv.is_zero() ? V : combine(fv, P, -gv, V);
        if (R[0].is_zero() && R[1].is_zero() && R[2].is_zero()) continue;
        if (!evaluate(f, R).is_zero()) continue;
        ProjPoint q(R);
        if (on_boundary(q)) continue;
        return q.coords();
      }
  return std::nullopt;
}

}  // namespace

void check_conic(const ConicProblem& p) {
  if (!p.ring || p.ring->nvars() != 3) fail(ErrorCode::InvalidInput, "a conic needs exactly three variables");
  const MultiPoly& f = p.quadric;
  if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != 2)
    fail(ErrorCode::InvalidInput, "conic must be a nonzero homogeneous quadric");
  Field K = f.field();
  FieldElem half = K.embed(mpq_class(1, 2));
  FieldElem M[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = i == j ? quad_coeff(f, i, i) : quad_coeff(f, i, j) * half;
  FieldElem det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                  M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  if (det.is_zero()) fail(ErrorCode::DegenerateConic, "quadric " + f.to_string() + " is singular");
}

std::vector<BoundaryPoint> conic_boundary(const ConicProblem& p) {
  check_conic(p);
  Field K = p.quadric.field();
  std::vector<BoundaryPoint> out;
  for (int k = 0; k < 3; ++k) {
    Vec3 l(3, K.zero());
    l[k] = K.one();
    auto [A, B] = line_basis(l);
    auto pts = section(p.quadric, A, B);
    std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [pt, m] : pts) {
      auto it = std::find_if(out.begin(), out.end(), [&](const BoundaryPoint& b) { return b.point == pt; });
      if (it == out.end())
        out.push_back({pt, m});
      else
        it->multiplicity = std::max(it->multiplicity, m);
    }
  }
  return out;
}

Divisor<ProjPoint> line_section(const ConicProblem& p, const std::vector<FieldElem>& line) {
  auto [A, B] = line_basis(line);
  Divisor<ProjPoint> d;
  for (const auto& [pt, m] : section(p.quadric, A, B)) d.add(pt, m);
  return d;
}

std::vector<TreeEdge> path_tree(size_t npoints) {
  std::vector<TreeEdge> out;
  for (size_t i = 0; i + 1 < npoints; ++i) out.push_back({int(i), int(i + 1), std::nullopt});
  return out;
}

LaurentIdeal conic_ideal(const ConicProblem& p) {
  const auto& vars = p.ring->vars();
  RingPtr base = make_ring(p.ring->field(), {vars[0], vars[1]});
  return LaurentIdeal(base, {LaurentPoly(dehomogenize(p.quadric, vars[2]).embed_in(base))});
}

ConicResult conic_unit_basis(const ConicProblem& p, const std::optional<std::vector<TreeEdge>>& tree) {
  ConicResult res;
  res.boundary = conic_boundary(p);
  const size_t n = res.boundary.size();
  std::vector<TreeEdge> edges = tree ? *tree : path_tree(n);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : edges) pairs.emplace_back(e.a, e.b);
  std::vector<IntVec> tree_basis = spanning_tree_basis(n, pairs);

  LaurentIdeal I = conic_ideal(p);
  res.base = I.base_ring();
  std::vector<ProjPoint> pts;
  for (const auto& b : res.boundary) pts.push_back(b.point);
  const std::string& zvar = p.ring->vars()[2];

  for (const auto& e : edges) {
    ConicUnit u;
    u.edge = e;
    const Vec3& Pa = pts[e.a].coords();
    const Vec3& Pb = pts[e.b].coords();
    std::optional<Vec3> aux;
    int aux_index = -1;
    if (e.aux) {
      if (*e.aux < 0 || size_t(*e.aux) >= n) fail(ErrorCode::InvalidInput, "auxiliary point index out of range");
      aux_index = *e.aux;
    } else {
      for (size_t i = 0; i < n && aux_index < 0; ++i)
        if (int(i) != e.a && int(i) != e.b) aux_index = int(i);
      if (aux_index < 0) {
        aux = sweep_aux_point(p.quadric, Pa, res.boundary);
        if (!aux) aux_index = e.a;
      }
    }
    if (aux_index >= 0) {
      u.edge.aux = aux_index;
      aux = pts[aux_index].coords();
    }
    u.aux_point = ProjPoint(*aux);
    u.line_a = aux_index == e.a ? gradient(p.quadric, Pa) : cross(Pa, *aux);
    u.line_b = aux_index == e.b ? gradient(p.quadric, Pb) : cross(Pb, *aux);
    if (aux_index == e.a && aux_index == e.b) fail(ErrorCode::InvalidInput, "edge joins a point to itself");

    auto h = unit_preimage(line_poly(p.ring, u.line_a), line_poly(p.ring, u.line_b), zvar, I);
    if (!h) fail(ErrorCode::InternalError, "chord quotient did not restrict to a unit");
    u.unit = primitive_part(*h);
    u.divisor = (line_section(p, u.line_a) - line_section(p, u.line_b)).to_vector(pts);
    u.is_unit = test_unit(u.unit, I);
    res.units.push_back(std::move(u));
  }
  std::vector<IntVec> divs;
  for (const auto& u : res.units) divs.push_back(u.divisor);
  res.lattice_matches = IntLattice::from_generators(divs, n) == IntLattice::from_generators(tree_basis, n);
  return res;
}

// ---------------------------------------------------------------- rational normal curves

void check_rnc(const RNCProblem& p) {
  if (!p.param_ring || p.param_ring->nvars() != 2) fail(ErrorCode::InvalidInput, "parametrization needs two variables");
  if (p.params.size() < 2) fail(ErrorCode::InvalidInput, "need at least two parametrizing forms");
  if (p.coords.size() != p.params.size()) fail(ErrorCode::InvalidInput, "one coordinate name per form is required");
  if (p.chart < 0 || size_t(p.chart) >= p.params.size()) fail(ErrorCode::InvalidInput, "chart index out of range");
  check_parametrization(p.params);
}

namespace {

std::vector<std::pair<ProjPoint, int>> param_roots(const MultiPoly& f) {
  Field K = f.field();
  int n = f.total_degree();
  int tpow = n;
  UPoly coeffs(n + 1, K.zero());
  for (const auto& t : f.terms()) {
    coeffs[t.exp[0]] = t.coeff;
    tpow = std::min(tpow, int(t.exp[1]));
  }
  trim(coeffs);
  std::vector<std::pair<ProjPoint, int>> out;
  for (const auto& [r, m] : field_roots(coeffs)) out.emplace_back(ProjPoint({r, K.one()}), m);
  if (tpow > 0) out.emplace_back(ProjPoint({K.one(), K.zero()}), tpow);
  return out;
}

}  // namespace

Divisor<ProjPoint> param_divisor(const RNCProblem& p, size_t i) {
  Divisor<ProjPoint> d;
  for (const auto& [pt, m] : param_roots(p.params.at(i))) d.add(pt, m);
  return d;
}

std::vector<ProjPoint> rnc_boundary_preimages(const RNCProblem& p) {
  check_rnc(p);
  std::vector<ProjPoint> out;
  for (const auto& f : p.params)
    for (const auto& [pt, m] : param_roots(f))
      if (std::find(out.begin(), out.end(), pt) == out.end()) out.push_back(pt);
  return out;
}

MultiPoly point_form(const RingPtr& R, const ProjPoint& pt) {
  return MultiPoly::variable(R, 0).scaled(pt[1]) - MultiPoly::variable(R, 1).scaled(pt[0]);
}

RingPtr rnc_target_ring(const RNCProblem& p) {
  std::vector<std::string> names;
  for (size_t i = 0; i < p.coords.size(); ++i)
    if (int(i) != p.chart) names.push_back(p.coords[i]);
  return make_ring(p.param_ring->field(), names);
}

LaurentIdeal rnc_ideal(const RNCProblem& p) {
  check_rnc(p);
  RingPtr target = rnc_target_ring(p);
  std::vector<std::string> names{"s_", p.param_ring->vars()[0], p.param_ring->vars()[1]};
  for (const auto& v : target->vars()) names.push_back(v);
  RingPtr big = make_ring(p.param_ring->field(), names, MonomialOrder::block(3));
  std::vector<MultiPoly> F;
  for (const auto& f : p.params) F.push_back(f.map_to(big, {1, 2}));
  const MultiPoly& fc = F[p.chart];
  std::vector<MultiPoly> gens;
  int j = 3;
  for (size_t i = 0; i < F.size(); ++i) {
    if (int(i) == p.chart) continue;
    gens.push_back(MultiPoly::variable(big, j++) * fc - F[i]);
  }
  gens.push_back(MultiPoly::variable(big, 0) * fc - MultiPoly::constant(big, 1));
  GroebnerBasis G = groebner_basis(gens);
  std::vector<int> back(big->nvars(), -1);
  for (size_t k = 3; k < big->nvars(); ++k) back[k] = int(k - 3);
  std::vector<LaurentPoly> eqs;
  for (const auto& g : G.gens) {
    bool eliminated = true;
    for (const auto& t : g.terms())
      if (t.exp[0] || t.exp[1] || t.exp[2]) eliminated = false;
    if (eliminated) eqs.emplace_back(g.map_to(target, back));
  }
  return LaurentIdeal(target, eqs);
}

bool pullback_matches(const RNCProblem& p, const LaurentPoly& gamma, const MultiPoly& f, const MultiPoly& g) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < p.params.size(); ++i)
    if (int(i) != p.chart) idx.push_back(i);
  auto terms = gamma.signed_terms();
  if (terms.empty()) return false;
  std::vector<int> m(idx.size(), 0);
  int M = 0;
  for (const auto& t : terms) {
    int total = 0;
    for (size_t j = 0; j < idx.size(); ++j) {
      m[j] = std::max(m[j], -int(t.exp[j]));
      total += t.exp[j];
    }
    M = std::max(M, total);
  }
  const MultiPoly& fc = p.params[p.chart];
  MultiPoly num(p.param_ring);
  MultiPoly den = fc.pow(M);
  for (size_t j = 0; j < idx.size(); ++j) den = den * p.params[idx[j]].pow(m[j]);
  for (const auto& t : terms) {
    MultiPoly prod = MultiPoly::constant(p.param_ring, t.coeff);
    int total = 0;
    for (size_t j = 0; j < idx.size(); ++j) {
      prod = prod * p.params[idx[j]].pow(t.exp[j] + m[j]);
      total += t.exp[j];
    }
    num += prod * fc.pow(M - total);
  }
  MultiPoly lhs = num * g, rhs = f * den;
  if (lhs.is_zero() || rhs.is_zero()) return false;
  return lhs == rhs.scaled(lhs.lc() / rhs.lc());
}

RNCResult rnc_unit_basis(const RNCProblem& p, const std::optional<std::vector<IntVec>>& basis) {
  RNCResult res;
  res.boundary = rnc_boundary_preimages(p);
  const size_t n = res.boundary.size();
  std::vector<IntVec> vecs = basis ? *basis : spanning_tree_basis(n);
  res.target = rnc_target_ring(p);
  LaurentIdeal I = rnc_ideal(p);
  for (const auto& v : vecs) {
    if (v.size() != n) fail(ErrorCode::InvalidInput, "basis vector length does not match the boundary");
    mpz_class sum = std::accumulate(v.begin(), v.end(), mpz_class(0));
    if (sum != 0) fail(ErrorCode::InvalidInput, "basis divisor " + to_string(v) + " has nonzero degree");
    RNCUnit u;
    u.divisor = v;
    u.f = MultiPoly::constant(p.param_ring, 1);
    u.g = u.f;
    for (size_t i = 0; i < n; ++i) {
      long c = v[i].get_si();
      if (c > 0) u.f = u.f * point_form(p.param_ring, res.boundary[i]).pow(c);
      if (c < 0) u.g = u.g * point_form(p.param_ring, res.boundary[i]).pow(-c);
    }
    auto gamma = subalgebra_membership(u.f, u.g, p.params, res.target, p.chart);
    if (!gamma) fail(ErrorCode::InternalError, "boundary divisor " + to_string(v) + " has no Laurent preimage");
    u.unit = primitive_part(*gamma);
    u.pullback_ok = pullback_matches(p, u.unit, u.f, u.g);
    u.is_unit = test_unit(u.unit, I);
    res.units.push_back(std::move(u));
  }
  IntMatrix ones(1, n);
  for (size_t i = 0; i < n; ++i) ones(0, i) = 1;
  res.lattice_matches = IntLattice::from_generators(vecs, n) == kernel_Z(ones);
  return res;
}

}  // namespace unitgroup
