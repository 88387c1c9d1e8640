#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unitgroup/elliptic.hpp"

namespace unitgroup::oracle {

struct OracleReport {
  int trials = 0;
  int agreements = 0;
  /// Description of the first disagreement, empty when all agree.
  std::string first_failure;
  bool ok() const { return trials > 0 && agreements == trials; }
};

/// Random ideals in at most two variables, generators of degree <= 3. Each
/// trial tests one member and one perturbed candidate against a truncated
/// Macaulay matrix.
OracleReport ideal_membership(int ideals, uint32_t seed);

/// torsion_relations against the Klein four group table, on curves with full
/// rational 2-torsion.
OracleReport klein_torsion(uint32_t seed);

/// Principal divisors built as div of random line products, interpolated and
/// recomputed through line_divisor.
OracleReport miller_roundtrip(int divisors, uint32_t seed);

/// Small points kQ + T on the curve y^2 = (x - 1)(x + 1)(x - 4).
std::vector<ECPoint> small_points(int count, uint32_t seed);

struct HeightReport {
  long double max_parallelogram = 0;
  long double max_doubling = 0;
  long double max_two_torsion = 0;
  long double q1 = 0;
};
HeightReport height_properties(int points, uint32_t seed, const EllipticConfig& cfg = {});

}  // namespace unitgroup::oracle
