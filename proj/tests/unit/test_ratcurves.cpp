#include <doctest.h>

#include <algorithm>

#include "unitgroup/error.hpp"
#include "unitgroup/ratcurves.hpp"

using namespace unitgroup;

namespace {

ProjPoint pt(const Field& K, std::initializer_list<const char*> cs) {
  std::vector<FieldElem> v;
  for (const char* c : cs) v.push_back(K.parse(c));
  return ProjPoint(v);
}

ConicProblem puiseux_conic(const Field& K) {
  RingPtr R = make_ring(K, {"x", "y", "z"});
  return {R, parse_poly(R, "(1+t)*x^2 + (1+t)*y^2 + (1+t)*z^2 - (2+2*t+t^2)*x*y - (2+2*t+t^2)*y*z - "
                           "(2+2*t+t^2)*x*z")};
}

RNCProblem twisted_cubic() {
  RingPtr P = make_ring(Field::rationals(), {"S", "T"});
  return {P,
          {parse_poly(P, "S^3 - 4*S*T^2"), parse_poly(P, "S^2*T - 9*T^3"), parse_poly(P, "(S - 3*T)*T^2"),
           parse_poly(P, "(S + 3*T)*T^2")},
          {"x", "y", "z", "w"},
          3};
}

size_t index_of(const std::vector<ProjPoint>& pts, const ProjPoint& p) {
  auto it = std::find(pts.begin(), pts.end(), p);
  REQUIRE(it != pts.end());
  return size_t(it - pts.begin());
}

}  // namespace

TEST_CASE("roots over fields") {
  Field Q = Field::rationals();
  auto r = field_roots({Q.embed(-6), Q.embed(11), Q.embed(-6), Q.embed(1)});
  CHECK(r.size() == 3);
  Field Gi = cyclotomic_field(4);
  FieldElem i = Gi.generator();
  // (X^2 + 1)(X - 2) X^2
  auto ri = field_roots({Gi.zero(), Gi.zero(), Gi.embed(-2), Gi.one(), Gi.embed(-2), Gi.one()});
  CHECK(ri.size() == 4);
  for (const auto& [x, m] : ri) {
    CHECK((x.is_zero() ? m == 2 : m == 1));
    CHECK((x == i || x == -i || x == Gi.embed(2) || x.is_zero()));
  }
  CHECK_THROWS_AS(field_roots({Q.embed(1), Q.zero(), Q.embed(1)}), Error);
  CHECK_THROWS_AS(field_roots({Q.embed(-2), Q.zero(), Q.zero(), Q.embed(1)}), Error);

  Field Kt = Field::rational_functions();
  FieldElem t = Kt.generator();
  // (X - t)(X - 1/(t+1))(X + t^2)
  std::vector<FieldElem> roots{t, (t + Kt.one()).inverse(), -t * t};
  std::vector<FieldElem> p{Kt.one()};
  for (const auto& a : roots) {
    std::vector<FieldElem> q(p.size() + 1, Kt.zero());
    for (size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= a * p[k];
    }
    p = q;
  }
  auto rt = field_roots(p);
  REQUIRE(rt.size() == 3);
  for (const auto& a : roots)
    CHECK(std::any_of(rt.begin(), rt.end(), [&](const auto& x) { return x.first == a; }));
}

TEST_CASE("conic boundary over Q(t)") {
  Field K = Field::rational_functions();
  ConicProblem p = puiseux_conic(K);
  auto b = conic_boundary(p);
  REQUIRE(b.size() == 6);
  std::vector<ProjPoint> expect{pt(K, {"0", "1", "t+1"}), pt(K, {"0", "t+1", "1"}), pt(K, {"1", "0", "t+1"}),
                                pt(K, {"t+1", "0", "1"}), pt(K, {"1", "t+1", "0"}), pt(K, {"t+1", "1", "0"})};
  for (size_t i = 0; i < 6; ++i) {
    CHECK(b[i].point == expect[i]);
    CHECK(b[i].multiplicity == 1);
  }
}

TEST_CASE("conic boundary degenerations") {
  Field Q = Field::rationals();
  RingPtr R = make_ring(Q, {"x", "y", "z"});
  ConicProblem at0{R, parse_poly(R, "x^2 + y^2 + z^2 - 2*x*y - 2*y*z - 2*x*z")};
  auto b = conic_boundary(at0);
  REQUIRE(b.size() == 3);
  for (const auto& q : b) CHECK(q.multiplicity == 2);
  CHECK(b[0].point == pt(Q, {"0", "1", "1"}));
  CHECK(b[1].point == pt(Q, {"1", "0", "1"}));
  CHECK(b[2].point == pt(Q, {"1", "1", "0"}));

  ConicProblem circle{R, parse_poly(R, "x^2 + y^2 - 2*z^2")};
  CHECK_THROWS_AS(conic_boundary(circle), Error);
  try {
    conic_boundary(circle);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundaryNotInField);
  }
  ConicProblem lines{R, parse_poly(R, "x^2 - y^2")};
  try {
    conic_boundary(lines);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateConic);
  }

  Field Gi = cyclotomic_field(4, "i");
  RingPtr Ri = make_ring(Gi, {"x", "y", "z"});
  auto bi = conic_boundary({Ri, parse_poly(Ri, "x^2 + y^2 - z^2")});
  REQUIRE(bi.size() == 6);
  auto has = [&](const ProjPoint& q) {
    return std::any_of(bi.begin(), bi.end(), [&](const BoundaryPoint& x) { return x.point == q; });
  };
  CHECK(has(pt(Gi, {"i", "1", "0"})));
  CHECK(has(pt(Gi, {"-i", "1", "0"})));
  CHECK(has(pt(Gi, {"1", "0", "1"})));
  CHECK(has(pt(Gi, {"0", "-1", "1"})));
}

TEST_CASE("conic units reproduce the chord generators") {
  Field K = Field::rational_functions();
  ConicProblem p = puiseux_conic(K);
  std::vector<TreeEdge> tree{{2, 0, 1}, {2, 1, 0}, {4, 2, 3}, {4, 3, 2}, {5, 0, 1}};
  ConicResult res = conic_unit_basis(p, tree);
  REQUIRE(res.units.size() == 5);
  RingPtr B = res.base;
  std::vector<LaurentPoly> printed{
      parse_laurent(B, "(t+1)^2 + y*x^-1 - (t+1)*x^-1"), parse_laurent(B, "(t+1) + (t+1)*y*x^-1 - x^-1"),
      parse_laurent(B, "(t+1)*x*y^-1 - 1 - (t+1)^2*y^-1"), parse_laurent(B, "(t+1)*x*y^-1 - 1 - y^-1"),
      parse_laurent(B, "1 - (t+1)*y*x^-1 + (t+1)^2*x^-1")};
  LaurentIdeal I = conic_ideal(p);
  for (size_t k = 0; k < 5; ++k) {
    CHECK(res.units[k].is_unit);
    CHECK(equal_mod_scalars(res.units[k].unit, printed[k], I));
    CHECK(test_unit(printed[k], I));
  }
  CHECK(res.lattice_matches);
  CHECK(res.units[0].divisor == IntVec{-1, 0, 1, 0, 0, 0});

  ConicResult path = conic_unit_basis(p);
  CHECK(path.units.size() == 5);
  CHECK(path.lattice_matches);
  for (const auto& u : path.units) CHECK(u.is_unit);
}

TEST_CASE("conic with tangencies and two boundary points") {
  Field Q = Field::rationals();
  RingPtr R = make_ring(Q, {"x", "y", "z"});
  ConicProblem at0{R, parse_poly(R, "x^2 + y^2 + z^2 - 2*x*y - 2*y*z - 2*x*z")};
  ConicResult r0 = conic_unit_basis(at0);
  CHECK(r0.units.size() == 2);
  CHECK(r0.lattice_matches);
  for (const auto& u : r0.units) CHECK(u.is_unit);

  ConicProblem hyp{R, parse_poly(R, "x*y - z^2")};
  auto b = conic_boundary(hyp);
  REQUIRE(b.size() == 2);
  ConicResult rh = conic_unit_basis(hyp);
  REQUIRE(rh.units.size() == 1);
  CHECK(rh.units[0].is_unit);
  CHECK(rh.lattice_matches);
  ConicResult rt = conic_unit_basis(hyp, std::vector<TreeEdge>{{0, 1, 0}});
  CHECK(rt.units[0].is_unit);
  CHECK(rt.lattice_matches);
  CHECK_THROWS_AS(conic_unit_basis(hyp, std::vector<TreeEdge>{{0, 1, 5}}), Error);
}

TEST_CASE("rnc boundary") {
  RNCProblem p = twisted_cubic();
  auto pts = rnc_boundary_preimages(p);
  Field Q = Field::rationals();
  std::vector<ProjPoint> expect{pt(Q, {"0", "1"}), pt(Q, {"1", "0"}),  pt(Q, {"3", "1"}),
                                pt(Q, {"-3", "1"}), pt(Q, {"2", "1"}), pt(Q, {"-2", "1"})};
  CHECK(pts.size() == 6);
  for (const auto& e : expect) CHECK(std::find(pts.begin(), pts.end(), e) != pts.end());

  RingPtr P = p.param_ring;
  RNCProblem cube{P, {parse_poly(P, "S^3"), parse_poly(P, "S^2*T"), parse_poly(P, "S*T^2"), parse_poly(P, "T^3")},
                  {"x", "y", "z", "w"}, 0};
  CHECK(param_divisor(cube, 0).multiplicity(pt(Q, {"0", "1"})) == 3);
  CHECK(param_divisor(cube, 3).multiplicity(pt(Q, {"1", "0"})) == 3);
  CHECK(rnc_boundary_preimages(cube).size() == 2);

  RNCProblem bad{P, {parse_poly(P, "S^2 + T^2"), parse_poly(P, "S*T"), parse_poly(P, "T^2")}, {"x", "y", "z"}, 0};
  try {
    rnc_boundary_preimages(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundaryNotInField);
  }
}

TEST_CASE("rnc units for the chosen basis") {
  RNCProblem p = twisted_cubic();
  Field Q = Field::rationals();
  auto pts = rnc_boundary_preimages(p);
  std::vector<ProjPoint> P{pt(Q, {"0", "1"}), pt(Q, {"1", "0"}),  pt(Q, {"3", "1"}),
                           pt(Q, {"-3", "1"}), pt(Q, {"2", "1"}), pt(Q, {"-2", "1"})};
  auto vec = [&](std::initializer_list<std::pair<int, long>> entries) {
    IntVec v(pts.size(), mpz_class(0));
    for (auto [k, c] : entries) v[index_of(pts, P[k])] += c;
    return v;
  };
  std::vector<IntVec> basis{vec({{0, 1}, {1, -2}, {3, -1}, {4, 1}, {5, 1}}), vec({{1, 1}, {2, -1}}),
                            vec({{2, 1}, {3, -1}}), vec({{3, 1}, {4, -1}}), vec({{4, 1}, {5, -1}})};
  RNCResult res = rnc_unit_basis(p, basis);
  REQUIRE(res.units.size() == 5);
  for (const auto& u : res.units) {
    CHECK(u.pullback_ok);
    CHECK(u.is_unit);
  }
  CHECK(res.lattice_matches);
  RingPtr T = res.target;
  CHECK(res.units[0].unit == parse_laurent(T, "x"));

  LaurentIdeal I = rnc_ideal(p);
  LaurentPoly item4 = parse_laurent(T, "(x + 5*y + 45/6*(1 - z) + 5*(1 + z))*x^-1");
  LaurentPoly item5 = parse_laurent(T, "(x - 4*y - 6*(1 - z) + 4*(1 + z))*x^-1");
  CHECK(equal_mod_scalars(res.units[3].unit, item4, I));
  CHECK(equal_mod_scalars(res.units[4].unit, item5, I));
  CHECK(pullback_matches(p, item4, res.units[3].f, res.units[3].g));
  CHECK(pullback_matches(p, item5, res.units[4].f, res.units[4].g));
  LaurentPoly printed5 = parse_laurent(T, "(x - 4*y + 6*(1 - z) + 4*(1 + z))*x^-1");
  CHECK(!pullback_matches(p, printed5, res.units[4].f, res.units[4].g));

  RNCResult star = rnc_unit_basis(p);
  CHECK(star.units.size() == 5);
  for (const auto& u : star.units) CHECK((u.pullback_ok && u.is_unit));
  IntVec odd(pts.size(), mpz_class(0));
  odd[0] = 1;
  CHECK_THROWS_AS(rnc_unit_basis(p, std::vector<IntVec>{odd}), Error);
}
