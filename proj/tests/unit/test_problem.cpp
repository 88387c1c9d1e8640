#include <doctest.h>

#include "unitgroup/error.hpp"
#include "unitgroup/problem.hpp"

using namespace unitgroup;

namespace {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(UNITGROUP_FIXTURE_DIR) / name; }

ErrorCode code_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("parsing fixtures") {
  ProblemFile e = load_problem(fixture("elliptic_split.json"));
  CHECK(e.kind == ProblemKind::Elliptic);
  REQUIRE(e.curve);
  CHECK(e.curve->a == -4);
  CHECK(e.curve->b == -1);
  CHECK(e.curve->c == 4);

  ProblemFile f = parse_problem(R"({"kind": "fermat", "degree": 2})");
  CHECK(f.kind == ProblemKind::Fermat);
  CHECK(f.degree == 2);

  ProblemFile c = load_problem(fixture("circle_gaussian.json"));
  CHECK(c.field.kind() == FieldKind::NumberField);
  CHECK(c.tree == std::nullopt);

  ProblemFile r = load_problem(fixture("twisted_cubic.json"));
  REQUIRE(r.rnc);
  CHECK(r.rnc->chart == 3);
  REQUIRE(r.basis_points);
  CHECK(r.basis_points->size() == 5);
}

TEST_CASE("parse errors") {
  CHECK(code_of(R"({"name": "no kind"})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"kind": "surface"})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"kind": "conic", "quadric": "x^2 +"})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"kind": "elliptic", "curve": {"a": "1/0", "b": "0", "c": "1"}})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"kind": "elliptic", "curve": {"a": "0", "b": "0", "c": "0"}})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"kind": "fermat", "degree": "two"})") == ErrorCode::ParseError);
  CHECK(code_of("{\"kind\": \n") == ErrorCode::ParseError);
  try {
    parse_problem(R"({"kind": "conic", "field": {"kind": "number_field"}, "quadric": "x*y - z^2"})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("field.modulus") != std::string::npos);
  }
}

TEST_CASE("field descriptors round trip") {
  for (const Field& K : {Field::rationals(), Field::rational_functions("t"), cyclotomic_field(4, "i")}) {
    CHECK(parse_field(field_to_json(K)) == K);
  }
}

TEST_CASE("reports") {
  for (const char* name :
       {"elliptic_split.json", "puiseux_conic.json", "twisted_cubic.json", "circle_gaussian.json", "fermat_quadric.json"}) {
    CAPTURE(name);
    ProblemFile p = load_problem(fixture(name));
    UnitReport r = run_problem(p);
    CHECK(r.verified());
    CHECK(r.units.size() == 5 - (p.kind == ProblemKind::Elliptic ? 1 : 0));
    std::string a = emit_report(r, ReportFormat::Json);
    CHECK(a == emit_report(run_problem(p), ReportFormat::Json));
    CHECK(nlohmann::json::parse(a) == report_to_json(r));
    std::string text = emit_report(r, ReportFormat::Text);
    CHECK(text.find("intrinsic torus dimension: " + std::to_string(r.units.size())) != std::string::npos);
    CHECK(nlohmann::json::parse(a)["torus_dimension"] == std::to_string(r.units.size()));
  }
}

TEST_CASE("elliptic report with an explicit boundary") {
  ProblemFile p = parse_problem(
      R"({"kind": "elliptic", "curve": {"a": -4, "b": -1, "c": 4}, "boundary": ["O", ["1", "0"], ["-1", "0"]]})");
  UnitReport r = run_problem(p);
  CHECK(r.verified());
  CHECK(r.units.size() == 2);
  CHECK(r.boundary == std::vector<std::string>{"O", "(1, 0)", "(-1, 0)"});
}

TEST_CASE("pipeline errors surface with their codes") {
  ProblemFile p = parse_problem(R"({"kind": "conic", "quadric": "x^2 + y^2 - 2*z^2"})");
  try {
    run_problem(p);
    FAIL("expected BoundaryNotInField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundaryNotInField);
    CHECK(error_category(e.code()) == ErrorCategory::Mathematical);
  }
  ProblemFile q = load_problem(fixture("elliptic_split.json"));
  q.config.max_doubling = 2;
  try {
    run_problem(q);
    FAIL("expected PrecisionExhausted");
  } catch (const Error& e) {
    CHECK(error_category(e.code()) == ErrorCategory::Precision);
  }
}
