#pragma once

#include <optional>
#include <vector>

#include "unitgroup/poly.hpp"

namespace unitgroup {

struct GroebnerBasis {
  RingPtr ring;
  /// Reduced basis with leading coefficients 1.
  std::vector<MultiPoly> gens;
  /// The generators the basis was computed from.
  std::vector<MultiPoly> input;
  /// gens[i] = sum_j cofactors[i][j] * input[j]; empty unless requested.
  std::vector<std::vector<MultiPoly>> cofactors;

  bool is_unit_ideal() const { return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero(); }
  bool has_cofactors() const { return !cofactors.empty(); }
};

GroebnerBasis groebner_basis(const std::vector<MultiPoly>& gens, bool track_cofactors = false);

struct Reduction {
  MultiPoly remainder;
  std::vector<MultiPoly> quotients;
};

/// Full multivariate division: f = sum quotients[i]*G[i] + remainder, and no
/// term of the remainder is divisible by a leading monomial of G.
Reduction reduce(const MultiPoly& f, const std::vector<MultiPoly>& G);
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& G);

/// An ideal of the Laurent ring k[x^{+-1}], held through its presentation in
/// k[x, u]/(u*x_1*...*x_n - 1) together with a grevlex basis of that ideal.
class LaurentIdeal {
 public:
  LaurentIdeal(RingPtr base, std::vector<LaurentPoly> gens);

  const RingPtr& base_ring() const { return base_; }
  const RingPtr& pres_ring() const { return pres_; }
  const std::vector<LaurentPoly>& generators() const { return gens_; }
  /// Presented generators followed by the torus relation.
  const std::vector<MultiPoly>& presentation() const { return presentation_; }
  const MultiPoly& torus_relation() const { return presentation_.back(); }
  const GroebnerBasis& basis() const { return gb_; }

  MultiPoly present(const LaurentPoly& h) const;
  LaurentPoly unpresent(const MultiPoly& p) const;
  bool contains(const LaurentPoly& h) const;
  /// Canonical representative of h modulo the ideal.
  LaurentPoly normal_form(const LaurentPoly& h) const;

 private:
  RingPtr base_, pres_;
  std::vector<LaurentPoly> gens_;
  std::vector<MultiPoly> presentation_;
  GroebnerBasis gb_;
};

/// Some h with f - g*h in I, or nullopt when f is not in I + (g).
std::optional<LaurentPoly> clear_denominators(const LaurentPoly& f, const LaurentPoly& g, const LaurentIdeal& I);

/// Whether h is a unit modulo I.
bool test_unit(const LaurentPoly& h, const LaurentIdeal& I);

/// A Laurent representative of F/G after dehomogenizing at homog_var, or
/// nullopt when F/G does not restrict to a unit.
std::optional<LaurentPoly> unit_preimage(const MultiPoly& F, const MultiPoly& G, const std::string& homog_var,
                                         const LaurentIdeal& I);

/// True when a = c*b modulo I for some nonzero scalar c.
bool equal_mod_scalars(const LaurentPoly& a, const LaurentPoly& b, const LaurentIdeal& I);

/// Expresses f/g as a Laurent polynomial in the coordinates x_i = f_i/f_chart
/// of the curve parametrized by params, or nullopt when it is not one.
/// target must have one variable per parameter other than the chart.
std::optional<LaurentPoly> subalgebra_membership(const MultiPoly& f, const MultiPoly& g,
                                                 const std::vector<MultiPoly>& params, const RingPtr& target,
                                                 int chart = 0);

/// Throws InvalidParametrization unless the params are homogeneous of one
/// degree and linearly independent over the field.
void check_parametrization(const std::vector<MultiPoly>& params);

}  // namespace unitgroup
