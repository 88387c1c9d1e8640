#include "unitgroup/fermat.hpp"

#include "unitgroup/divisors.hpp"
#include "unitgroup/error.hpp"
#include "unitgroup/groebner.hpp"

namespace unitgroup {

namespace {

void check_degree(int d, int max) {
  if (d < 2) fail(ErrorCode::InvalidInput, "fermat degree must be at least 2");
  if (max > 0 && d > max) fail(ErrorCode::InvalidInput, "fermat degree too large for unit verification");
}

}  // namespace

FermatUnitSet fermat_divisor_matrix(int d) {
  check_degree(d, 0);
  const size_t n = static_cast<size_t>(d);
  const size_t P = 0, Q = n, T = 2 * n;
  FermatUnitSet out;
  out.degree = d;
  out.divisor_matrix = IntMatrix(3 * n, 3 * n - 1);
  IntMatrix& M = out.divisor_matrix;
  size_t col = 0;
  auto minus_all_P = [&](size_t c) {
    for (size_t i = 0; i < n; ++i) M(P + i, c) -= 1;
  };

  out.unit_descriptions.push_back("x");
  minus_all_P(col);
  for (size_t i = 0; i < n; ++i) M(T + i, col) += 1;
  ++col;

  out.unit_descriptions.push_back("y");
  minus_all_P(col);
  for (size_t i = 0; i < n; ++i) M(Q + i, col) += 1;
  ++col;

  for (size_t j = 0; j + 1 < n; ++j, ++col) {
    out.unit_descriptions.push_back("y-zeta_" + std::to_string(d) + "^" + std::to_string(j));
    minus_all_P(col);
    M(T + j, col) += d;
  }
  for (size_t j = 0; j + 1 < n; ++j, ++col) {
    out.unit_descriptions.push_back("x-zeta_" + std::to_string(d) + "^" + std::to_string(j));
    minus_all_P(col);
    M(Q + j, col) += d;
  }
  for (size_t j = 0; j + 1 < n; ++j, ++col) {
    out.unit_descriptions.push_back("x-zeta_" + std::to_string(2 * d) + "^" + std::to_string(2 * j + 1) + "*y");
    minus_all_P(col);
    M(P + j, col) += d;
  }
  return out;
}

bool fermat_rank_check(int d) {
  FermatUnitSet s = fermat_divisor_matrix(d);
  return rank(s.divisor_matrix) == static_cast<size_t>(3 * d - 1);
}

LatticeIndex fermat_index(int d) {
  FermatUnitSet s = fermat_divisor_matrix(d);
  size_t r = s.divisor_matrix.rows();
  return lattice_index(IntLattice::from_matrix(s.divisor_matrix),
                       IntLattice::from_generators(spanning_tree_basis(r), r));
}

bool fermat_unit_verify(int d) {
  check_degree(d, 6);
  Field K = cyclotomic_field(2 * d);
  FieldElem z2d = K.generator();
  FieldElem zd = z2d * z2d;
  RingPtr R = make_ring(K, {"x", "y"});
  MultiPoly x = MultiPoly::variable(R, 0), y = MultiPoly::variable(R, 1);
  MultiPoly one = MultiPoly::constant(R, K.one());
  LaurentIdeal I(R, {LaurentPoly(x.pow(d) + y.pow(d) - one)});

  std::vector<MultiPoly> cands{x, y};
  for (int j = 0; j + 1 < d; ++j) cands.push_back(y - MultiPoly::constant(R, zd.pow(j)));
  for (int j = 0; j + 1 < d; ++j) cands.push_back(x - MultiPoly::constant(R, zd.pow(j)));
  for (int j = 0; j + 1 < d; ++j) cands.push_back(x - y.scaled(z2d.pow(2 * j + 1)));
  for (const auto& c : cands)
    if (!test_unit(LaurentPoly(c), I)) return false;
  return true;
}

}  // namespace unitgroup
