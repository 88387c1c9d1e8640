#include <doctest.h>

#include <random>
#include <set>

#include "unitgroup/divisors.hpp"
#include "unitgroup/error.hpp"
#include "unitgroup/lattice.hpp"

using namespace unitgroup;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntMatrix rows(std::initializer_list<std::initializer_list<long>> rs) {
  std::vector<IntVec> v;
  for (auto r : rs) v.push_back(iv(r));
  return IntMatrix::from_rows(v);
}

mpz_class norm2(const IntVec& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("hermite normal form") {
  CHECK(hnf(rows({{2, 0}, {0, 2}})) == rows({{2, 0}, {0, 2}}));
  CHECK(hnf(rows({{1, 1, 0}, {0, 1, 1}, {1, 0, -1}})).cols() == 2);
  CHECK(hnf(rows({{2, 3}, {0, 0}})) == rows({{1}, {0}}));
  IntMatrix H = hnf(rows({{3, 5, 7}, {1, 2, 9}, {4, -1, 2}}));
  CHECK(hnf(H) == H);
  for (size_t c = 0; c < H.cols(); ++c) CHECK(H(c, c) > 0);
  for (size_t r = 0; r < H.rows(); ++r)
    for (size_t c = 0; c < r && c < H.cols(); ++c) {
      CHECK(H(r, c) >= 0);
      CHECK(H(r, c) < H(r, r));
    }
}

TEST_CASE("hnf preserves the column span") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int it = 0; it < 50; ++it) {
    IntMatrix M(4, 5);
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 5; ++c) M(r, c) = d(rng);
    IntLattice L = IntLattice::from_matrix(M);
    for (const auto& col : M.columns()) CHECK(L.contains(col));
    IntLattice back = IntLattice::from_generators(L.generators(), 4);
    CHECK(back == L);
    IntMatrix H = L.basis();
    // each HNF column is an integer combination of M's columns
    IntLattice span = IntLattice::from_matrix(M);
    for (const auto& col : H.columns()) CHECK(span.contains(col));
  }
}

TEST_CASE("integer kernels") {
  IntLattice K = kernel_Z(rows({{1, 1, 1}}));
  CHECK(K.rank() == 2);
  CHECK(K.contains(iv({1, -1, 0})));
  CHECK(K.contains(iv({0, 1, -1})));
  CHECK(kernel_Z(IntMatrix::identity(3)).rank() == 0);
  IntLattice K2 = kernel_Z(rows({{2, -1}}));
  CHECK(K2 == IntLattice::from_generators({iv({1, 2})}, 2));

  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 40; ++it) {
    IntMatrix M(2, 5);
    for (size_t r = 0; r < 2; ++r)
      for (size_t c = 0; c < 5; ++c) M(r, c) = d(rng);
    IntLattice Ker = kernel_Z(M);
    for (const auto& v : Ker.generators())
      for (const auto& x : M.apply(v)) CHECK(x == 0);
    CHECK(Ker.rank() + rank(M) == 5);
    CHECK(saturate(Ker) == Ker);
  }
}

TEST_CASE("sublattice index") {
  IntMatrix fermat = rows({{-1, -1, -1, -1, 1},
                           {-1, -1, -1, -1, -1},
                           {0, 1, 0, 2, 0},
                           {0, 1, 0, 0, 0},
                           {1, 0, 2, 0, 0},
                           {1, 0, 0, 0, 0}});
  IntLattice L1 = IntLattice::from_matrix(fermat);
  IntLattice L2 = IntLattice::from_generators(spanning_tree_basis(6), 6);
  auto idx = lattice_index(L1, L2);
  CHECK(!idx.infinite);
  CHECK(idx.value == 4);
  CHECK(lattice_index(L2, L2).value == 1);
  IntLattice twoZ2 = IntLattice::from_generators({iv({2, 0}), iv({0, 2})}, 2);
  CHECK(lattice_index(twoZ2, IntLattice::full(2)).value == 4);
  CHECK(lattice_index(IntLattice::from_generators({iv({2, 0})}, 2), IntLattice::full(2)).infinite);
  CHECK_THROWS_AS(lattice_index(IntLattice::full(2), twoZ2), Error);
}

TEST_CASE("ball enumeration") {
  CHECK(enumerate_ball(IntLattice::full(2), 1).size() == 5);
  CHECK(enumerate_ball(IntLattice::from_generators({iv({2})}, 1), 1).size() == 1);
  auto pts = enumerate_ball(IntLattice::from_generators({iv({1, 2})}, 2), 3);
  REQUIRE(pts.size() == 3);
  std::set<IntVec> s(pts.begin(), pts.end());
  CHECK(s.count(iv({1, 2})));
  CHECK(s.count(iv({-1, -2})));
  CHECK(s.count(iv({0, 0})));

  // brute-force comparison on a skewed rank-2 lattice in Z^3
  IntLattice L = IntLattice::from_generators({iv({1, 3, 0}), iv({2, 5, 1})}, 3);
  auto got = enumerate_ball(L, mpq_class(7, 1));
  std::set<IntVec> expect;
  for (int a = -40; a <= 40; ++a)
    for (int b = -40; b <= 40; ++b) {
      IntVec v = iv({a + 2 * b, 3 * a + 5 * b, b});
      if (norm2(v) <= 49) expect.insert(v);
    }
  CHECK(std::set<IntVec>(got.begin(), got.end()) == expect);
  CHECK(got.size() == expect.size());
  for (const auto& v : got) {
    IntVec neg = v;
    for (auto& x : neg) x = -x;
    CHECK(expect.count(neg));
  }
}

TEST_CASE("spanning tree bases") {
  auto star = spanning_tree_basis(6);
  REQUIRE(star.size() == 5);
  CHECK(star[0] == iv({1, -1, 0, 0, 0, 0}));
  CHECK(star[4] == iv({1, 0, 0, 0, 0, -1}));
  CHECK(spanning_tree_basis(2) == std::vector<IntVec>{iv({1, -1})});
  auto path = spanning_tree_basis(3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(path == std::vector<IntVec>{iv({1, -1, 0}), iv({0, 1, -1})});
  CHECK_THROWS_AS(spanning_tree_basis(3, std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(spanning_tree_basis(3, std::vector<std::pair<int, int>>{{0, 1}}), Error);
  IntLattice deg0 = kernel_Z(rows({{1, 1, 1, 1, 1, 1}}));
  CHECK(IntLattice::from_generators(star, 6) == deg0);
}

TEST_CASE("degree-zero intersection") {
  IntLattice D = IntLattice::from_generators({iv({2, 0}), iv({0, 2})}, 2);
  CHECK(intersect_degree_zero(D) == IntLattice::from_generators({iv({2, -2})}, 2));
}

TEST_CASE("divisor bookkeeping") {
  Field Q = Field::rationals();
  auto pt = [&](long a, long b, long c) { return ProjPoint({Q.embed(a), Q.embed(b), Q.embed(c)}); };
  ProjPoint P1 = pt(0, 1, 1), P2 = pt(2, 0, 2);
  CHECK(P2 == pt(1, 0, 1));
  using D = Divisor<ProjPoint>;
  CHECK(D().degree() == 0);
  D d = D::point(P1) - D::point(P2);
  CHECK(d.degree() == 0);
  CHECK(d.to_vector({P1, P2}) == iv({1, -1}));
  CHECK(D::from_vector(iv({1, -1}), {P1, P2}) == d);
  CHECK_THROWS_AS(d.to_vector({P1}), Error);
  std::vector<ProjPoint> boundary{pt(0, 1, 0), pt(1, 0, 1), pt(-1, 0, 1), pt(4, 0, 1), pt(0, 2, 1), pt(0, -2, 1)};
  D divf = D::point(boundary[0]) + D::point(boundary[1]) + D::point(boundary[2]) + D::point(boundary[3]) -
           D::point(boundary[4], 2) - D::point(boundary[5], 2);
  CHECK(divf.to_vector(boundary) == iv({1, 1, 1, 1, -2, -2}));
  CHECK(unit_rank_bound(2, 2) == 5);
  CHECK(unit_rank_bound(2, 3) == 8);
  CHECK(unit_rank_bound(1, 1) == 1);
}
