// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails, except criterion 4's literal clause, whose
// failure is expected (see the line it prints).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "unitgroup/error.hpp"
#include "unitgroup/fermat.hpp"
#include "unitgroup/problem.hpp"

using namespace unitgroup;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  /// Failure matches a known defect in the printed source data.
  bool expected_failure = false;
};

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ProjPoint pt(const Field& K, std::initializer_list<const char*> cs) {
  std::vector<FieldElem> v;
  for (const char* c : cs) v.push_back(K.parse(c));
  return ProjPoint(v);
}

std::string yes(bool b) { return b ? "yes" : "no"; }

Outcome fermat_lattice() {
  const long printed[6][5] = {{-1, -1, -1, -1, 1}, {-1, -1, -1, -1, -1}, {0, 1, 0, 2, 0},
                              {0, 1, 0, 0, 0},     {1, 0, 2, 0, 0},      {1, 0, 0, 0, 0}};
  FermatUnitSet s = fermat_divisor_matrix(2);
  bool exact = s.divisor_matrix.rows() == 6 && s.divisor_matrix.cols() == 5;
  for (size_t r = 0; exact && r < 6; ++r)
    for (size_t c = 0; c < 5; ++c) exact = exact && s.divisor_matrix(r, c) == printed[r][c];
  size_t rk = rank(s.divisor_matrix);
  LatticeIndex idx = fermat_index(2);
  bool full = true;
  for (int d = 2; d <= 6; ++d) full = full && fermat_rank_check(d);
  Outcome o;
  o.pass = exact && rk == 5 && !idx.infinite && idx.value == 4 && full;
  o.detail = "matrix exact " + yes(exact) + ", rank " + std::to_string(rk) + ", index " +
             (idx.infinite ? std::string("infinite") : idx.value.get_str()) + ", full rank for d=2..6 " + yes(full);
  return o;
}

Outcome fermat_units() {
  bool d2 = fermat_unit_verify(2), d3 = fermat_unit_verify(3);
  return {d2 && d3, "Groebner unit certificates d=2 " + yes(d2) + ", d=3 " + yes(d3)};
}

Outcome puiseux_conic() {
  Field K = Field::rational_functions();
  RingPtr R = make_ring(K, {"x", "y", "z"});
  ConicProblem p{R, parse_poly(R, "(1+t)*x^2 + (1+t)*y^2 + (1+t)*z^2 - (2+2*t+t^2)*x*y - (2+2*t+t^2)*y*z - "
                                  "(2+2*t+t^2)*x*z")};
  std::vector<ProjPoint> printed{pt(K, {"0", "1", "t+1"}), pt(K, {"0", "t+1", "1"}), pt(K, {"1", "0", "t+1"}),
                                 pt(K, {"t+1", "0", "1"}), pt(K, {"1", "t+1", "0"}), pt(K, {"t+1", "1", "0"})};
  std::vector<TreeEdge> tree{{2, 0, 1}, {2, 1, 0}, {4, 2, 3}, {4, 3, 2}, {5, 0, 1}};
  ConicResult res = conic_unit_basis(p, tree);
  bool boundary = res.boundary.size() == 6;
  for (size_t i = 0; boundary && i < 6; ++i) boundary = res.boundary[i].point == printed[i];
  RingPtr B = res.base;
  std::vector<std::string> f{"(t+1)^2 + y*x^-1 - (t+1)*x^-1", "(t+1) + (t+1)*y*x^-1 - x^-1",
                             "(t+1)*x*y^-1 - 1 - (t+1)^2*y^-1", "(t+1)*x*y^-1 - 1 - y^-1",
                             "1 - (t+1)*y*x^-1 + (t+1)^2*x^-1"};
  std::vector<IntVec> divisors{iv({-1, 0, 1, 0, 0, 0}), iv({0, -1, 1, 0, 0, 0}), iv({0, 0, -1, 0, 1, 0}),
                               iv({0, 0, 0, -1, 1, 0}), iv({-1, 0, 0, 0, 0, 1})};
  LaurentIdeal I = conic_ideal(p);
  bool units = res.units.size() == 5, divs = units;
  for (size_t k = 0; units && k < 5; ++k) {
    LaurentPoly printed_f = parse_laurent(B, f[k]);
    units = units && res.units[k].is_unit && equal_mod_scalars(res.units[k].unit, printed_f, I) && test_unit(printed_f, I);
    divs = divs && res.units[k].divisor == divisors[k];
  }
  std::vector<IntVec> got;
  for (const auto& u : res.units) got.push_back(u.divisor);
  bool hnf = IntLattice::from_generators(got, 6) == intersect_degree_zero(IntLattice::full(6));
  return {boundary && units && divs && hnf && res.lattice_matches,
          "boundary = printed P1..P6 " + yes(boundary) + ", units = f1..f5 mod I " + yes(units) +
              ", divisor vectors " + yes(divs) + ", HNF = Div0 " + yes(hnf)};
}

Outcome twisted_cubic() {
  Field Q = Field::rationals();
  RingPtr P = make_ring(Q, {"S", "T"});
  RNCProblem p{P,
               {parse_poly(P, "S^3 - 4*S*T^2"), parse_poly(P, "S^2*T - 9*T^3"), parse_poly(P, "(S - 3*T)*T^2"),
                parse_poly(P, "(S + 3*T)*T^2")},
               {"x", "y", "z", "w"},
               3};
  std::vector<ProjPoint> printed{pt(Q, {"0", "1"}),  pt(Q, {"1", "0"}), pt(Q, {"3", "1"}),
                                 pt(Q, {"-3", "1"}), pt(Q, {"2", "1"}), pt(Q, {"-2", "1"})};
  auto pts = rnc_boundary_preimages(p);
  bool boundary = pts.size() == 6;
  for (const auto& q : printed) boundary = boundary && std::find(pts.begin(), pts.end(), q) != pts.end();
  if (!boundary) return {false, "boundary preimages differ from the printed six points"};
  auto index = [&](size_t k) { return static_cast<size_t>(std::find(pts.begin(), pts.end(), printed[k]) - pts.begin()); };
  auto vec = [&](std::initializer_list<std::pair<size_t, long>> entries) {
    IntVec v(6, mpz_class(0));
    for (auto [k, c] : entries) v[index(k)] += c;
    return v;
  };
  std::vector<IntVec> basis{vec({{0, 1}, {1, -2}, {3, -1}, {4, 1}, {5, 1}}), vec({{1, 1}, {2, -1}}),
                            vec({{2, 1}, {3, -1}}), vec({{3, 1}, {4, -1}}), vec({{4, 1}, {5, -1}})};
  RNCResult res = rnc_unit_basis(p, basis);
  RingPtr T = res.target;
  LaurentIdeal I = rnc_ideal(p);
  const char* printed4 = "(x + 5*y + 45/6*(1 - z) + 10*(1 + z))*x^-1";
  const char* printed5 = "(x - 4*y + 6*(1 - z) + 4*(1 + z))*x^-1";
  const char* fixed4 = "(x + 5*y + 45/6*(1 - z) + 5*(1 + z))*x^-1";
  const char* fixed5 = "(x - 4*y - 6*(1 - z) + 4*(1 + z))*x^-1";
  auto pulls = [&](const char* s, size_t k) { return pullback_matches(p, parse_laurent(T, s), res.units[k].f, res.units[k].g); };
  bool literal = pulls(printed4, 3) && pulls(printed5, 4);
  bool corrected = pulls(fixed4, 3) && pulls(fixed5, 4) && equal_mod_scalars(res.units[3].unit, parse_laurent(T, fixed4), I) &&
                   equal_mod_scalars(res.units[4].unit, parse_laurent(T, fixed5), I);
  bool all_ok = res.lattice_matches;
  for (const auto& u : res.units) all_ok = all_ok && u.is_unit && u.pullback_ok;
  Outcome o;
  o.pass = literal && corrected && all_ok;
  o.detail = "boundary exact yes, printed items (4),(5) pass pullback " + yes(literal) +
             ", corrected items (coefficient 5 on (1+z) in (4), -6 on (1-z) in (5)) pass pullback and match output " +
             yes(corrected) + ", all units certified " + yes(all_ok);
  // The printed numerators S^2+5ST+16T^2 and S^3-4S^2T+4ST^2+72T^3 have no
  // linear factors over Q, so the literal clause cannot hold for any basis.
  o.expected_failure = !literal && corrected && all_ok;
  return o;
}

Outcome elliptic_example() {
  WeierstrassCurve E(-4, -1, 4);
  EllipticConfig cfg;
  cfg.tolerance = 1e-8L;
  auto B = elliptic_boundary(E);
  IntLattice printed = IntLattice::from_generators(
      {iv({1, 1, 1, 1, -2, -2}), iv({0, 2, 0, 0, -1, -1}), iv({0, 0, 2, 0, -1, -1}), iv({0, 0, 0, 2, -1, -1})}, 6);
  bool lattice = boundary_relation_lattice(E, B, cfg) == printed;
  EllipticResult res = elliptic_unit_basis(E, B, cfg);
  LaurentIdeal I = elliptic_ideal(E, res.base);
  std::vector<std::string> f{"-y*x^-2", "(x - 1)*x^-1", "(x + 1)*x^-1", "(x - 4)*x^-1"};
  bool units = res.units.size() == 4;
  for (size_t k = 0; units && k < 4; ++k)
    units = res.units[k].is_unit && equal_mod_scalars(res.units[k].unit, parse_laurent(res.base, f[k]), I);
  return {lattice && units && res.relations_verified && res.lattice_matches,
          "relation HNF = printed " + yes(lattice) + ", units = {-y/x^2, (x-1)/x, (x+1)/x, (x-4)/x} mod I " + yes(units) +
              ", group law check " + yes(res.relations_verified) + ", tolerance 1e-8"};
}

Outcome heights() {
  auto r = oracle::height_properties(20, 3);
  bool ok = r.max_parallelogram <= 6e-8L && r.max_doubling <= 5e-8L && r.max_two_torsion < 1e-8L && r.q1 > 1e-3L;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "20 points: parallelogram %.2Le <= 6e-8, |h(2P)-4h(P)| %.2Le <= 5e-8, 2-torsion %.2Le < 1e-8, "
                "h(Q1) %.6Lf > 1e-3",
                r.max_parallelogram, r.max_doubling, r.max_two_torsion, r.q1);
  return {ok, buf};
}

Outcome structural_bounds() {
  namespace fs = std::filesystem;
  std::ostringstream detail;
  bool ok = true;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(UNITGROUP_FIXTURE_DIR))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    UnitReport r = run_problem(load_problem(f));
    bool genus0 = r.kind == ProblemKind::Conic || r.kind == ProblemKind::RNC;
    bool equal = !genus0 || r.units.size() + 1 == r.boundary.size();
    ok = ok && r.rank_bound_ok() && equal;
    detail << f.stem().string() << " " << r.units.size() << "<=" << r.rank_bound;
    if (genus0) detail << (equal ? " =#bd-1" : " !=#bd-1");
    detail << "; ";
  }
  std::string s = detail.str();
  if (s.size() >= 2) s.resize(s.size() - 2);
  return {ok && !files.empty(), s};
}

Outcome oracles() {
  auto ideal = oracle::ideal_membership(50, 20240601);
  auto klein = oracle::klein_torsion(7);
  auto miller = oracle::miller_roundtrip(25, 11);
  std::string detail = "ideal membership " + std::to_string(ideal.agreements) + "/" + std::to_string(ideal.trials) +
                       " (50 ideals), Klein table " + std::to_string(klein.agreements) + "/" +
                       std::to_string(klein.trials) + ", Miller " + std::to_string(miller.agreements) + "/" +
                       std::to_string(miller.trials);
  for (const auto* r : {&ideal, &klein, &miller})
    if (!r->first_failure.empty()) detail += "; first failure: " + r->first_failure;
  return {ideal.ok() && ideal.trials == 100 && klein.ok() && miller.ok() && miller.trials == 25, detail};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Fermat lattice", fermat_lattice},        {"Fermat units", fermat_units},
      {"conic over Q(t)", puiseux_conic},        {"rational normal curve", twisted_cubic},
      {"elliptic curve", elliptic_example},      {"height properties", heights},
      {"structural bounds", structural_bounds},  {"oracle suites", oracles}};
  int unexpected = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail;
    if (!o.pass && o.expected_failure) std::cout << " [expected: printed source data is inconsistent]";
    std::cout << "\n";
    if (!o.pass && !o.expected_failure) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
