#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "unitgroup/elliptic.hpp"
#include "unitgroup/ratcurves.hpp"

namespace unitgroup {

enum class ProblemKind { Conic, RNC, Elliptic, Fermat };

std::string_view problem_kind_name(ProblemKind k);

/// An RNC basis vector keyed by boundary point, resolved once the boundary is known.
using PointCombination = std::vector<std::pair<ProjPoint, long>>;

struct ProblemFile {
  ProblemKind kind = ProblemKind::Conic;
  std::string name;
  Field field;
  std::vector<std::string> variables;

  std::optional<ConicProblem> conic;
  std::optional<std::vector<TreeEdge>> tree;

  std::optional<RNCProblem> rnc;
  std::optional<std::vector<IntVec>> basis_vectors;
  std::optional<std::vector<PointCombination>> basis_points;

  std::optional<WeierstrassCurve> curve;
  std::vector<ECPoint> ec_boundary;

  int degree = 0;
  EllipticConfig config;
};

/// Field descriptors in their JSON form: {"kind", "modulus"?, "variable"?}.
Field parse_field(const nlohmann::json& j);
nlohmann::json field_to_json(const Field& K);

/// Throws ParseError naming the offending field.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::filesystem::path& path);

struct ReportUnit {
  std::string unit;
  IntVec divisor;
  bool is_unit = false;
  /// Only for parametrized curves.
  std::optional<bool> pullback_ok;
};

struct UnitReport {
  ProblemKind kind = ProblemKind::Conic;
  std::string name;
  Field field;
  std::vector<std::string> boundary;
  std::vector<IntVec> relation_lattice;  // HNF generators
  std::vector<ReportUnit> units;
  bool lattice_matches = false;
  long rank_bound = 0;
  /// Genus zero curves must reach #boundary - 1 exactly.
  std::optional<bool> genus_zero_equality;
  /// Per kind extras: heights, torsion orders, the Fermat matrix.
  nlohmann::json details = nlohmann::json::object();
  std::optional<double> seconds;

  size_t torus_dimension() const { return units.size(); }
  bool rank_bound_ok() const { return static_cast<long>(units.size()) <= rank_bound; }
  /// Every verification flag holds.
  bool verified() const;
};

UnitReport run_problem(const ProblemFile& p);

enum class ReportFormat { Json, Text };
nlohmann::json report_to_json(const UnitReport& r);
/// Deterministic: sorted keys, canonical polynomial strings.
std::string emit_report(const UnitReport& r, ReportFormat format);

}  // namespace unitgroup
