#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitgroup/divisors.hpp"
#include "unitgroup/groebner.hpp"
#include "unitgroup/lattice.hpp"
#include "unitgroup/poly.hpp"

namespace unitgroup {

/// Roots with multiplicities of sum coeffs[k] X^k over the coefficient field.
/// Throws BoundaryNotInField when some irreducible factor has degree >= 2 (or
/// when the bounded candidate search cannot split the polynomial).
std::vector<std::pair<FieldElem, int>> field_roots(std::vector<FieldElem> coeffs);

struct BoundaryPoint {
  ProjPoint point;
  int multiplicity = 1;
};

/// Points of a binary quadratic a u^2 + b u v + c v^2 = 0 in P^1.
std::vector<std::pair<ProjPoint, int>> binary_quadratic_roots(const FieldElem& a, const FieldElem& b,
                                                              const FieldElem& c);

// ---------------------------------------------------------------- conics

/// A plane conic. The ring has three variables; the last one is the
/// dehomogenizing coordinate.
struct ConicProblem {
  RingPtr ring;
  MultiPoly quadric;
};

/// Throws InvalidInput for a non-quadric, DegenerateConic for a singular one.
void check_conic(const ConicProblem& p);
FieldElem evaluate(const MultiPoly& f, const std::vector<FieldElem>& point);

/// Intersections with x=0, y=0, z=0 in that order; tangency gives multiplicity 2.
std::vector<BoundaryPoint> conic_boundary(const ConicProblem& p);
/// Intersection divisor of the line sum l_i x_i = 0 with the conic.
Divisor<ProjPoint> line_section(const ConicProblem& p, const std::vector<FieldElem>& line);

/// An edge P_a - P_b. The unit is line(P_a, aux) / line(P_b, aux); aux == a
/// uses the tangent at P_a.
struct TreeEdge {
  int a = 0, b = 0;
  std::optional<int> aux;
};

struct ConicUnit {
  TreeEdge edge;
  ProjPoint aux_point;
  /// Lines as coefficient vectors; numerator through P_a, denominator through P_b.
  std::vector<FieldElem> line_a, line_b;
  LaurentPoly unit;
  IntVec divisor;
  bool is_unit = false;
};

struct ConicResult {
  std::vector<BoundaryPoint> boundary;
  RingPtr base;  // the two affine coordinates
  std::vector<ConicUnit> units;
  /// Divisor lattice of the units equals the lattice of the tree.
  bool lattice_matches = false;
};

std::vector<TreeEdge> path_tree(size_t npoints);
/// Default tree is the path P_1 - P_2, ..., P_{n-1} - P_n.
ConicResult conic_unit_basis(const ConicProblem& p, const std::optional<std::vector<TreeEdge>>& tree = {});
LaurentIdeal conic_ideal(const ConicProblem& p);

// ---------------------------------------------------------------- rational normal curves

/// A parametrized curve [f_0 : ... : f_n] with f_i in k[S, T]. coords names
/// the ambient coordinates; the one at index chart is set to 1.
struct RNCProblem {
  RingPtr param_ring;
  std::vector<MultiPoly> params;
  std::vector<std::string> coords;
  int chart = 0;
};

void check_rnc(const RNCProblem& p);
/// Distinct roots of the f_i in P^1, in order of discovery through f_0..f_n.
std::vector<ProjPoint> rnc_boundary_preimages(const RNCProblem& p);
/// Zero divisor of one parameter on P^1.
Divisor<ProjPoint> param_divisor(const RNCProblem& p, size_t i);
/// The form b S - a T vanishing at [a:b].
MultiPoly point_form(const RingPtr& param_ring, const ProjPoint& pt);

struct RNCUnit {
  IntVec divisor;
  MultiPoly f, g;
  LaurentPoly unit;
  bool pullback_ok = false;
  bool is_unit = false;
};

struct RNCResult {
  std::vector<ProjPoint> boundary;
  RingPtr target;
  std::vector<RNCUnit> units;
  bool lattice_matches = false;
};

/// The affine coordinate ring of the chart (coordinates other than coords[chart]).
RingPtr rnc_target_ring(const RNCProblem& p);
/// Implicit ideal of the affine chart, by elimination.
LaurentIdeal rnc_ideal(const RNCProblem& p);
/// gamma(f_i / f_chart) == c * f / g for a nonzero scalar c.
bool pullback_matches(const RNCProblem& p, const LaurentPoly& gamma, const MultiPoly& f, const MultiPoly& g);
/// basis vectors are indexed like rnc_boundary_preimages; default is the star tree.
RNCResult rnc_unit_basis(const RNCProblem& p, const std::optional<std::vector<IntVec>>& basis = {});

}  // namespace unitgroup
