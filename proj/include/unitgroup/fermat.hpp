#pragma once

#include <string>
#include <vector>

#include "unitgroup/lattice.hpp"

namespace unitgroup {

/// Candidate units on x^d + y^d = 1 and their boundary divisors.
///
/// Columns: x, y, y - z_d^j, x - z_d^j, x - z_2d^(2j+1) y, each family over
/// j = 0..d-2. Rows: P_0..P_{d-1} at infinity, Q_0..Q_{d-1} on y = 0,
/// T_0..T_{d-1} on x = 0.
struct FermatUnitSet {
  int degree = 0;
  std::vector<std::string> unit_descriptions;
  IntMatrix divisor_matrix;
};

FermatUnitSet fermat_divisor_matrix(int d);
bool fermat_rank_check(int d);
/// Gröbner unit test of every candidate over Q(zeta_2d). Supports d <= 6.
bool fermat_unit_verify(int d);
/// Index of the candidate lattice in the degree-zero boundary lattice.
LatticeIndex fermat_index(int d);

}  // namespace unitgroup
