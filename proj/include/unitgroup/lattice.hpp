#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace unitgroup {

using IntVec = std::vector<mpz_class>;

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, mpz_class(0)) {}
  static IntMatrix from_rows(const std::vector<IntVec>& rows, size_t ncols = 0);
  static IntMatrix from_columns(const std::vector<IntVec>& cols, size_t nrows);
  static IntMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  mpz_class& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  IntVec column(size_t c) const;
  IntVec row(size_t r) const;
  std::vector<IntVec> columns() const;
  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  IntVec apply(const IntVec& v) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Column Hermite normal form with zero columns dropped: pivot rows strictly
/// increase, pivots are positive and entries left of a pivot lie in [0, pivot).
IntMatrix hnf(const IntMatrix& M);
size_t rank(const IntMatrix& M);

/// Sublattice of Z^r stored by its HNF basis; equality is HNF equality.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}
  static IntLattice from_generators(const std::vector<IntVec>& gens, size_t ambient);
  static IntLattice from_matrix(const IntMatrix& columns);
  static IntLattice full(size_t ambient);

  size_t ambient_rank() const { return ambient_; }
  size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  std::vector<IntVec> generators() const { return basis_.columns(); }
  bool contains(const IntVec& v) const;
  bool contains(const IntLattice& o) const;
  /// Pivot row of each basis column.
  std::vector<size_t> pivot_rows() const;

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  size_t ambient_ = 0;
  IntMatrix basis_;
};

/// All integer v with M v = 0.
IntLattice kernel_Z(const IntMatrix& M);
/// Integer points of the rational span of L.
IntLattice saturate(const IntLattice& L);
/// L intersected with {v : sum v_i = 0}.
IntLattice intersect_degree_zero(const IntLattice& L);

struct LatticeIndex {
  bool infinite = false;
  mpz_class value = 1;
};
/// [L2 : L1]. Throws NotASublattice when L1 is not contained in L2.
LatticeIndex lattice_index(const IntLattice& L1, const IntLattice& L2);

/// Every lattice vector of Euclidean norm <= radius, 0 included, each once.
std::vector<IntVec> enumerate_ball(const IntLattice& L, const mpq_class& radius);

/// Basis of the degree-zero sublattice of Z^r from a spanning tree; the edge
/// (a, b) contributes e_a - e_b. Default is the star rooted at label 0.
/// Throws NotASpanningTree.
std::vector<IntVec> spanning_tree_basis(size_t r, const std::optional<std::vector<std::pair<int, int>>>& edges = {});

std::string to_string(const IntVec& v);

}  // namespace unitgroup
