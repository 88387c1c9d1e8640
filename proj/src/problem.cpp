#include "unitgroup/problem.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unitgroup/error.hpp"
#include "unitgroup/fermat.hpp"

namespace unitgroup {

using nlohmann::json;

std::string_view problem_kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Conic:
      return "conic";
    case ProblemKind::RNC:
      return "rnc";
    case ProblemKind::Elliptic:
      return "elliptic";
    case ProblemKind::Fermat:
      return "fermat";
  }
  return "?";
}

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  fail(ErrorCode::ParseError, "field '" + field + "': " + msg);
}

const json& require(const json& j, const std::string& key, const std::string& path = "") {
  auto it = j.find(key);
  if (it == j.end()) bad(path + key, "missing");
  return *it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

mpq_class get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  std::string s = get_string(j, path);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) bad(path, "expected a rational like \"-3/4\", got \"" + s + "\"");
  q.canonicalize();
  return q;
}

std::vector<std::string> get_strings(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// "[a:b:...]" with coordinates in K
ProjPoint parse_point(const Field& K, const std::string& text, const std::string& path) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') bad(path, "expected a point like \"[1:0]\"");
  std::vector<FieldElem> coords;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string part;
  while (std::getline(ss, part, ':')) coords.push_back(K.parse(part));
  return ProjPoint(coords);
}

template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError && std::string(e.what()).find("field '") != std::string::npos) throw;
    bad(path, e.what());
  }
}

std::string fmt_real(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

json vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::string vec_text(const IntVec& v) { return to_string(v); }

}  // namespace

Field parse_field(const json& j) {
  if (!j.is_object()) bad("field", "expected an object");
  std::string kind = get_string(require(j, "kind", "field."), "field.kind");
  std::string var = j.contains("variable") ? get_string(j["variable"], "field.variable") : "t";
  if (kind == "rationals") return Field::rationals();
  if (kind == "rational_functions") return Field::rational_functions(var);
  if (kind == "number_field") {
    const json& m = require(j, "modulus", "field.");
    if (!m.is_array()) bad("field.modulus", "expected coefficient strings, low degree first");
    std::vector<mpq_class> cs;
    for (size_t i = 0; i < m.size(); ++i) cs.push_back(get_rational(m[i], "field.modulus[" + std::to_string(i) + "]"));
    QPoly mod(cs);
    if (mod.degree() < 1) bad("field.modulus", "degree must be at least 1");
    return Field::number_field(mod, var);
  }
  bad("field.kind", "unknown kind \"" + kind + "\"");
}

json field_to_json(const Field& K) {
  json j;
  switch (K.kind()) {
    case FieldKind::Rationals:
      j["kind"] = "rationals";
      break;
    case FieldKind::NumberField: {
      j["kind"] = "number_field";
      json m = json::array();
      for (const auto& c : K.modulus().coeffs()) m.push_back(c.get_str());
      j["modulus"] = m;
      j["variable"] = K.variable();
      break;
    }
    case FieldKind::RationalFunctions:
      j["kind"] = "rational_functions";
      j["variable"] = K.variable();
      break;
  }
  return j;
}

ProblemFile parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::ParseError, "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!j.is_object()) fail(ErrorCode::ParseError, "problem file must be a JSON object");

  ProblemFile p;
  std::string kind = get_string(require(j, "kind"), "kind");
  if (kind == "conic")
    p.kind = ProblemKind::Conic;
  else if (kind == "rnc")
    p.kind = ProblemKind::RNC;
  else if (kind == "elliptic")
    p.kind = ProblemKind::Elliptic;
  else if (kind == "fermat")
    p.kind = ProblemKind::Fermat;
  else
    bad("kind", "unknown kind \"" + kind + "\"");
  if (j.contains("name")) p.name = get_string(j["name"], "name");
  if (j.contains("field")) p.field = parse_field(j["field"]);
  if (j.contains("variables")) p.variables = get_strings(j["variables"], "variables");

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) bad("options", "expected an object");
    if (o.contains("tolerance")) {
      const json& t = o["tolerance"];
      if (t.is_number())
        p.config.tolerance = t.get<double>();
      else
        p.config.tolerance = std::stold(get_string(t, "options.tolerance"));
      if (!(p.config.tolerance > 0)) bad("options.tolerance", "must be positive");
    }
    if (o.contains("max_doubling")) p.config.max_doubling = static_cast<int>(get_int(o["max_doubling"], "options.max_doubling"));
    if (o.contains("radius_cap")) p.config.radius_cap = static_cast<int>(get_int(o["radius_cap"], "options.radius_cap"));
    if (p.config.max_doubling < 1) bad("options.max_doubling", "must be at least 1");
    if (p.config.radius_cap < 1) bad("options.radius_cap", "must be at least 1");
  }

  switch (p.kind) {
    case ProblemKind::Conic: {
      if (p.variables.empty()) p.variables = {"x", "y", "z"};
      if (p.variables.size() != 3) bad("variables", "a conic needs three coordinates");
      RingPtr R = with_path("variables", [&] { return make_ring(p.field, p.variables); });
      std::string q = get_string(require(j, "quadric"), "quadric");
      p.conic = ConicProblem{R, with_path("quadric", [&] { return parse_poly(R, q); })};
      if (j.contains("tree")) {
        const json& t = j["tree"];
        if (!t.is_array()) bad("tree", "expected an array of edges");
        std::vector<TreeEdge> edges;
        for (size_t i = 0; i < t.size(); ++i) {
          std::string path = "tree[" + std::to_string(i) + "]";
          if (!t[i].is_array() || t[i].size() < 2 || t[i].size() > 3) bad(path, "expected [a, b] or [a, b, aux]");
          TreeEdge e;
          e.a = static_cast<int>(get_int(t[i][0], path));
          e.b = static_cast<int>(get_int(t[i][1], path));
          if (t[i].size() == 3) e.aux = static_cast<int>(get_int(t[i][2], path));
          edges.push_back(e);
        }
        p.tree = edges;
      }
      break;
    }
    case ProblemKind::RNC: {
      if (p.variables.empty()) bad("variables", "missing");
      std::vector<std::string> params{"S", "T"};
      if (j.contains("parameters")) params = get_strings(j["parameters"], "parameters");
      if (params.size() != 2) bad("parameters", "expected two homogeneous parameters");
      RingPtr P = with_path("parameters", [&] { return make_ring(p.field, params); });
      auto fs = get_strings(require(j, "parametrization"), "parametrization");
      if (fs.size() != p.variables.size()) bad("parametrization", "one form per coordinate is required");
      RNCProblem r;
      r.param_ring = P;
      r.coords = p.variables;
      r.chart = static_cast<int>(p.variables.size()) - 1;
      if (j.contains("chart")) r.chart = static_cast<int>(get_int(j["chart"], "chart"));
      if (r.chart < 0 || r.chart >= static_cast<int>(p.variables.size())) bad("chart", "out of range");
      for (size_t i = 0; i < fs.size(); ++i)
        r.params.push_back(with_path("parametrization[" + std::to_string(i) + "]", [&] { return parse_poly(P, fs[i]); }));
      p.rnc = r;
      if (j.contains("basis")) {
        const json& b = j["basis"];
        if (!b.is_array() || b.empty()) bad("basis", "expected a nonempty array");
        if (b[0].is_array()) {
          std::vector<IntVec> vs;
          for (size_t i = 0; i < b.size(); ++i) {
            std::string path = "basis[" + std::to_string(i) + "]";
            if (!b[i].is_array()) bad(path, "expected an integer vector");
            IntVec v;
            for (const auto& x : b[i]) v.emplace_back(get_int(x, path));
            vs.push_back(v);
          }
          p.basis_vectors = vs;
        } else {
          std::vector<PointCombination> cs;
          for (size_t i = 0; i < b.size(); ++i) {
            std::string path = "basis[" + std::to_string(i) + "]";
            if (!b[i].is_object()) bad(path, "expected {\"[a:b]\": coefficient, ...}");
            PointCombination c;
            for (const auto& [key, val] : b[i].items())
              c.emplace_back(with_path(path, [&] { return parse_point(p.field, key, path); }), get_int(val, path + "." + key));
            cs.push_back(c);
          }
          p.basis_points = cs;
        }
      }
      break;
    }
    case ProblemKind::Elliptic: {
      if (p.field.kind() != FieldKind::Rationals) bad("field", "elliptic curves are supported over Q only");
      const json& c = require(j, "curve");
      if (!c.is_object()) bad("curve", "expected {\"a\", \"b\", \"c\"} for y^2 = x^3 + a x^2 + b x + c");
      mpq_class a = get_rational(require(c, "a", "curve."), "curve.a");
      mpq_class b = get_rational(require(c, "b", "curve."), "curve.b");
      mpq_class cc = get_rational(require(c, "c", "curve."), "curve.c");
      p.curve = with_path("curve", [&] { return WeierstrassCurve(a, b, cc); });
      if (j.contains("boundary")) {
        const json& bd = j["boundary"];
        if (!bd.is_array()) bad("boundary", "expected an array of points");
        for (size_t i = 0; i < bd.size(); ++i) {
          std::string path = "boundary[" + std::to_string(i) + "]";
          if (bd[i].is_string() && bd[i].get<std::string>() == "O") {
            p.ec_boundary.push_back(ECPoint::infinity());
          } else if (bd[i].is_array() && bd[i].size() == 2) {
            p.ec_boundary.emplace_back(get_rational(bd[i][0], path), get_rational(bd[i][1], path));
          } else {
            bad(path, "expected \"O\" or [x, y]");
          }
        }
      }
      break;
    }
    case ProblemKind::Fermat:
      p.degree = static_cast<int>(get_int(require(j, "degree"), "degree"));
      if (p.degree < 2 || p.degree > 6) bad("degree", "supported degrees are 2 to 6");
      break;
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

bool UnitReport::verified() const {
  bool ok = lattice_matches && rank_bound_ok() && genus_zero_equality.value_or(true);
  for (const auto& u : units) ok = ok && u.is_unit && u.pullback_ok.value_or(true);
  return ok;
}

UnitReport run_problem(const ProblemFile& p) {
  UnitReport r;
  r.kind = p.kind;
  r.name = p.name;
  r.field = p.field;
  switch (p.kind) {
    case ProblemKind::Conic: {
      ConicResult res = conic_unit_basis(*p.conic, p.tree);
      json mult = json::array();
      for (const auto& b : res.boundary) {
        r.boundary.push_back(b.point.to_string());
        mult.push_back(std::to_string(b.multiplicity));
      }
      std::vector<IntVec> divs;
      json edges = json::array();
      for (const auto& u : res.units) {
        r.units.push_back({u.unit.to_string(), u.divisor, u.is_unit, std::nullopt});
        divs.push_back(u.divisor);
        edges.push_back({std::to_string(u.edge.a), std::to_string(u.edge.b), u.aux_point.to_string()});
      }
      r.relation_lattice = IntLattice::from_generators(divs, res.boundary.size()).generators();
      r.lattice_matches = res.lattice_matches;
      r.rank_bound = unit_rank_bound(2, 2);
      r.genus_zero_equality = r.units.size() + 1 == res.boundary.size();
      r.details["boundary_multiplicities"] = mult;
      r.details["edges"] = edges;
      break;
    }
    case ProblemKind::RNC: {
      std::optional<std::vector<IntVec>> basis = p.basis_vectors;
      auto pts = rnc_boundary_preimages(*p.rnc);
      if (p.basis_points) {
        std::vector<IntVec> vs;
        for (const auto& comb : *p.basis_points) {
          IntVec v(pts.size(), mpz_class(0));
          for (const auto& [pt, c] : comb) {
            auto it = std::find(pts.begin(), pts.end(), pt);
            if (it == pts.end()) fail(ErrorCode::UnsupportedPoint, pt.to_string() + " is not a boundary preimage");
            v[static_cast<size_t>(it - pts.begin())] += c;
          }
          vs.push_back(v);
        }
        basis = vs;
      }
      RNCResult res = rnc_unit_basis(*p.rnc, basis);
      for (const auto& b : res.boundary) r.boundary.push_back(b.to_string());
      std::vector<IntVec> divs;
      for (const auto& u : res.units) {
        r.units.push_back({u.unit.to_string(), u.divisor, u.is_unit, u.pullback_ok});
        divs.push_back(u.divisor);
      }
      r.relation_lattice = IntLattice::from_generators(divs, res.boundary.size()).generators();
      r.lattice_matches = res.lattice_matches;
      long n = static_cast<long>(p.rnc->coords.size()) - 1;
      long d = p.rnc->params.front().total_degree();
      r.rank_bound = unit_rank_bound(n, d);
      r.genus_zero_equality = r.units.size() + 1 == res.boundary.size();
      json coords = json::array();
      for (const auto& c : p.rnc->coords) coords.push_back(c);
      r.details["coordinates"] = coords;
      r.details["chart"] = p.rnc->coords[static_cast<size_t>(p.rnc->chart)];
      break;
    }
    case ProblemKind::Elliptic: {
      EllipticResult res = elliptic_unit_basis(*p.curve, p.ec_boundary, p.config);
      json heights = json::array(), torsion = json::array();
      for (size_t i = 0; i < res.boundary.size(); ++i) {
        r.boundary.push_back(res.boundary[i].to_string());
        heights.push_back({{"estimate", fmt_real(res.heights[i].estimate)}, {"radius", fmt_real(res.heights[i].radius)}});
        torsion.push_back(res.torsion[i].torsion ? std::to_string(res.torsion[i].order) : "infinite");
      }
      for (const auto& u : res.units) r.units.push_back({u.unit.to_string(), u.divisor, u.is_unit, std::nullopt});
      r.relation_lattice = res.relations.generators();
      r.lattice_matches = res.lattice_matches && res.relations_verified;
      r.rank_bound = unit_rank_bound(2, 3);
      r.details["curve"] = p.curve->to_string();
      r.details["heights"] = heights;
      r.details["orders"] = torsion;
      r.details["relations_verified"] = res.relations_verified;
      json cfg;
      cfg["tolerance"] = fmt_real(p.config.tolerance);
      cfg["max_doubling"] = std::to_string(p.config.max_doubling);
      cfg["radius_cap"] = std::to_string(p.config.radius_cap);
      r.details["options"] = cfg;
      break;
    }
    case ProblemKind::Fermat: {
      const int d = p.degree;
      FermatUnitSet s = fermat_divisor_matrix(d);
      for (const char* fam : {"P", "Q", "T"})
        for (int k = 0; k < d; ++k) r.boundary.push_back(std::string(fam) + std::to_string(k));
      bool verified = fermat_unit_verify(d);
      std::vector<IntVec> cols;
      for (size_t c = 0; c < s.divisor_matrix.cols(); ++c) {
        IntVec v;
        for (size_t row = 0; row < s.divisor_matrix.rows(); ++row) v.push_back(s.divisor_matrix(row, c));
        r.units.push_back({s.unit_descriptions[c], v, verified, std::nullopt});
        cols.push_back(v);
      }
      r.relation_lattice = IntLattice::from_generators(cols, s.divisor_matrix.rows()).generators();
      size_t rk = rank(s.divisor_matrix);
      bool full = fermat_rank_check(d);
      LatticeIndex idx = fermat_index(d);
      // the candidates are only known to span a finite index sublattice
      r.lattice_matches = full;
      r.rank_bound = unit_rank_bound(2, d);
      json matrix = json::array();
      for (size_t row = 0; row < s.divisor_matrix.rows(); ++row) {
        json line = json::array();
        for (size_t c = 0; c < s.divisor_matrix.cols(); ++c) line.push_back(s.divisor_matrix(row, c).get_str());
        matrix.push_back(line);
      }
      r.details["matrix"] = matrix;
      r.details["rank"] = std::to_string(rk);
      r.details["full_rank"] = full;
      if (!idx.infinite) r.details["index_in_tree_lattice"] = idx.value.get_str();
      break;
    }
  }
  return r;
}

json report_to_json(const UnitReport& r) {
  json j;
  j["kind"] = std::string(problem_kind_name(r.kind));
  j["name"] = r.name;
  j["field"] = field_to_json(r.field);
  j["boundary"] = r.boundary;
  json lat = json::array();
  for (const auto& v : r.relation_lattice) lat.push_back(vec_json(v));
  j["relation_lattice"] = lat;
  json units = json::array();
  for (const auto& u : r.units) {
    json ju;
    ju["unit"] = u.unit;
    ju["divisor"] = vec_json(u.divisor);
    ju["is_unit"] = u.is_unit;
    if (u.pullback_ok) ju["pullback_ok"] = *u.pullback_ok;
    units.push_back(ju);
  }
  j["units"] = units;
  j["torus_dimension"] = std::to_string(r.torus_dimension());
  json v;
  v["lattice_hnf_equal"] = r.lattice_matches;
  v["rank_bound"] = {{"bound", std::to_string(r.rank_bound)}, {"ok", r.rank_bound_ok()}};
  if (r.genus_zero_equality) v["genus_zero_equality"] = *r.genus_zero_equality;
  v["all_units"] = std::all_of(r.units.begin(), r.units.end(), [](const ReportUnit& u) { return u.is_unit; });
  v["passed"] = r.verified();
  j["verification"] = v;
  j["details"] = r.details;
  if (r.seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.seconds);
    j["timing"] = {{"seconds", std::string(buf)}};
  }
  return j;
}

std::string emit_report(const UnitReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  out << "problem: " << (r.name.empty() ? "(unnamed)" : r.name) << " [" << problem_kind_name(r.kind) << "]\n";
  out << "field: " << r.field.to_string() << "\n";
  out << "boundary (" << r.boundary.size() << "):\n";
  for (size_t i = 0; i < r.boundary.size(); ++i) out << "  P" << i + 1 << " = " << r.boundary[i] << "\n";
  out << "relation lattice (HNF):\n";
  for (const auto& v : r.relation_lattice) out << "  " << vec_text(v) << "\n";
  out << "units (" << r.units.size() << "):\n";
  for (size_t i = 0; i < r.units.size(); ++i) {
    const auto& u = r.units[i];
    out << "  u" << i + 1 << " = " << u.unit << "\n";
    out << "       divisor " << vec_text(u.divisor) << ", unit " << yes(u.is_unit);
    if (u.pullback_ok) out << ", pullback " << yes(*u.pullback_ok);
    out << "\n";
  }
  out << "intrinsic torus dimension: " << r.torus_dimension() << "\n";
  out << "lattice matches: " << yes(r.lattice_matches) << "\n";
  out << "rank bound: " << r.units.size() << " <= " << r.rank_bound << " " << yes(r.rank_bound_ok()) << "\n";
  if (r.genus_zero_equality) out << "genus zero equality: " << yes(*r.genus_zero_equality) << "\n";
  if (r.seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.seconds);
    out << "time: " << buf << " s\n";
  }
  out << "verification: " << (r.verified() ? "passed" : "FAILED") << "\n";
  return out.str();
}

}  // namespace unitgroup
