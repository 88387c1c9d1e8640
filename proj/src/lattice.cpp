#include "unitgroup/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "unitgroup/error.hpp"

namespace unitgroup {

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, size_t ncols) {
  size_t c = rows.empty() ? ncols : rows[0].size();
  IntMatrix M(rows.size(), c);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != c) fail(ErrorCode::InvalidInput, "ragged matrix");
    for (size_t j = 0; j < c; ++j) M(r, j) = rows[r][j];
  }
  return M;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols, size_t nrows) {
  IntMatrix M(nrows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != nrows) fail(ErrorCode::InvalidInput, "column of wrong length");
    for (size_t r = 0; r < nrows; ++r) M(r, j) = cols[j][r];
  }
  return M;
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix M(n, n);
  for (size_t i = 0; i < n; ++i) M(i, i) = 1;
  return M;
}

IntVec IntMatrix::column(size_t c) const {
  IntVec v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVec IntMatrix::row(size_t r) const {
  return IntVec(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

std::vector<IntVec> IntMatrix::columns() const {
  std::vector<IntVec> out;
  for (size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) T(c, r) = (*this)(r, c);
  return T;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::InvalidInput, "matrix shape mismatch");
  IntMatrix P(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) P(i, j) += a(i, k) * b(k, j);
    }
  return P;
}

IntVec IntMatrix::apply(const IntVec& v) const {
  if (v.size() != cols_) fail(ErrorCode::InvalidInput, "vector length mismatch");
  IntVec out(rows_, mpz_class(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

namespace {

void col_axpy(IntMatrix& A, size_t dst, size_t src, const mpz_class& q) {
  // col_dst -= q * col_src
  for (size_t r = 0; r < A.rows(); ++r)
    if (A(r, src) != 0) A(r, dst) -= q * A(r, src);
}

void col_swap(IntMatrix& A, size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < A.rows(); ++r) std::swap(A(r, a), A(r, b));
}

void col_neg(IntMatrix& A, size_t a) {
  for (size_t r = 0; r < A.rows(); ++r) A(r, a) = -A(r, a);
}

// Column HNF driven by the first `top` rows; column operations touch every row.
// Returns the number of pivot columns.
size_t hnf_in_place(IntMatrix& A, size_t top) {
  size_t n = A.cols(), k = 0;
  for (size_t i = 0; i < top && k < n; ++i) {
    while (true) {
      size_t best = n;
      for (size_t j = k; j < n; ++j)
        if (A(i, j) != 0 && (best == n || abs(A(i, j)) < abs(A(i, best)))) best = j;
      if (best == n) break;
      col_swap(A, k, best);
      bool others = false;
      for (size_t j = k + 1; j < n; ++j) {
        if (A(i, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, j).get_mpz_t(), A(i, k).get_mpz_t());
        col_axpy(A, j, k, q);
        if (A(i, j) != 0) others = true;
      }
      if (!others) break;
    }
    if (A(i, k) == 0) continue;
    if (A(i, k) < 0) col_neg(A, k);
    for (size_t j = 0; j < k; ++j) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), A(i, j).get_mpz_t(), A(i, k).get_mpz_t());
      if (q != 0) col_axpy(A, j, k, q);
    }
    ++k;
  }
  return k;
}

IntMatrix first_columns(const IntMatrix& A, size_t k, size_t row_lo, size_t row_hi) {
  IntMatrix B(row_hi - row_lo, k);
  for (size_t r = row_lo; r < row_hi; ++r)
    for (size_t c = 0; c < k; ++c) B(r - row_lo, c) = A(r, c);
  return B;
}

}  // namespace

IntMatrix hnf(const IntMatrix& M) {
  IntMatrix A = M;
  size_t k = hnf_in_place(A, A.rows());
  return first_columns(A, k, 0, A.rows());
}

size_t rank(const IntMatrix& M) { return hnf(M).cols(); }

IntLattice IntLattice::from_generators(const std::vector<IntVec>& gens, size_t ambient) {
  return from_matrix(IntMatrix::from_columns(gens, ambient));
}

IntLattice IntLattice::from_matrix(const IntMatrix& columns) {
  IntLattice L;
  L.ambient_ = columns.rows();
  L.basis_ = hnf(columns);
  return L;
}

IntLattice IntLattice::full(size_t ambient) { return from_matrix(IntMatrix::identity(ambient)); }

std::vector<size_t> IntLattice::pivot_rows() const {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < basis_.cols(); ++c) {
    while (basis_(r, c) == 0) ++r;
    piv.push_back(r);
  }
  return piv;
}

bool IntLattice::contains(const IntVec& v0) const {
  if (v0.size() != ambient_) return false;
  IntVec v = v0;
  auto piv = pivot_rows();
  size_t c = 0;
  for (size_t r = 0; r < ambient_; ++r) {
    if (c < piv.size() && piv[c] == r) {
      if (!mpz_divisible_p(v[r].get_mpz_t(), basis_(r, c).get_mpz_t())) return false;
      mpz_class q = v[r] / basis_(r, c);
      for (size_t s = r; s < ambient_; ++s) v[s] -= q * basis_(s, c);
      ++c;
    } else if (v[r] != 0) {
      return false;
    }
  }
  return true;
}

bool IntLattice::contains(const IntLattice& o) const {
  for (const auto& g : o.generators())
    if (!contains(g)) return false;
  return o.ambient_ == ambient_;
}

IntLattice kernel_Z(const IntMatrix& M) {
  size_t m = M.rows(), n = M.cols();
  IntMatrix A(m + n, n);
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < n; ++c) A(r, c) = M(r, c);
  for (size_t c = 0; c < n; ++c) A(m + c, c) = 1;
  size_t k = hnf_in_place(A, m);
  std::vector<IntVec> gens;
  for (size_t c = k; c < n; ++c) {
    IntVec v(n);
    for (size_t r = 0; r < n; ++r) v[r] = A(m + r, c);
    gens.push_back(v);
  }
  return IntLattice::from_generators(gens, n);
}

IntLattice saturate(const IntLattice& L) {
  size_t r = L.ambient_rank();
  if (L.rank() == 0) return L;
  IntLattice perp = kernel_Z(L.basis().transpose());
  if (perp.rank() == 0) return IntLattice::full(r);
  return kernel_Z(perp.basis().transpose());
}

IntLattice intersect_degree_zero(const IntLattice& L) {
  size_t r = L.ambient_rank();
  if (L.rank() == 0) return L;
  IntMatrix ones(1, r);
  for (size_t i = 0; i < r; ++i) ones(0, i) = 1;
  IntLattice K = kernel_Z(ones * L.basis());
  if (K.rank() == 0) return IntLattice(r);
  return IntLattice::from_matrix(L.basis() * K.basis());
}

LatticeIndex lattice_index(const IntLattice& L1, const IntLattice& L2) {
  if (!L2.contains(L1)) fail(ErrorCode::NotASublattice, "first lattice is not contained in the second");
  LatticeIndex out;
  if (L1.rank() != L2.rank()) {
    out.infinite = true;
    return out;
  }
  auto p1 = L1.pivot_rows(), p2 = L2.pivot_rows();
  mpz_class a = 1, b = 1;
  for (size_t c = 0; c < p1.size(); ++c) {
    a *= L1.basis()(p1[c], c);
    b *= L2.basis()(p2[c], c);
  }
  out.value = a / b;
  return out;
}

std::vector<IntVec> enumerate_ball(const IntLattice& L, const mpq_class& radius) {
  if (radius < 0) fail(ErrorCode::InvalidInput, "negative radius");
  size_t r = L.ambient_rank(), k = L.rank();
  std::vector<IntVec> out;
  const IntMatrix& B = L.basis();
  // Exact Gram-Schmidt: Bs[i] = |b*_i|^2, mu[j][i] = <b_j, b*_i> / Bs[i].
  std::vector<std::vector<mpq_class>> bstar(k, std::vector<mpq_class>(r));
  std::vector<std::vector<mpq_class>> mu(k, std::vector<mpq_class>(k, mpq_class(0)));
  std::vector<mpq_class> Bs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t t = 0; t < r; ++t) bstar[i][t] = B(t, i);
    for (size_t j = 0; j < i; ++j) {
      mpq_class dot = 0;
      for (size_t t = 0; t < r; ++t) dot += mpq_class(B(t, i)) * bstar[j][t];
      mu[i][j] = dot / Bs[j];
      for (size_t t = 0; t < r; ++t) bstar[i][t] -= mu[i][j] * bstar[j][t];
    }
    Bs[i] = 0;
    for (size_t t = 0; t < r; ++t) Bs[i] += bstar[i][t] * bstar[i][t];
  }
  mpq_class R2 = radius * radius;
  std::vector<mpz_class> x(k, mpz_class(0));
  std::function<void(long, const mpq_class&)> rec = [&](long i, const mpq_class& budget) {
    if (i < 0) {
      IntVec v(r, mpz_class(0));
      for (size_t j = 0; j < k; ++j)
        if (x[j] != 0)
          for (size_t t = 0; t < r; ++t) v[t] += x[j] * B(t, j);
      out.push_back(std::move(v));
      return;
    }
    size_t ui = static_cast<size_t>(i);
    mpq_class c = 0;
    for (size_t j = ui + 1; j < k; ++j) c += mu[j][ui] * x[j];
    double s = std::sqrt(std::max(0.0, mpq_class(budget / Bs[ui]).get_d()));
    double cd = c.get_d();
    mpz_class lo(std::floor(-cd - s) - 1), hi(std::ceil(-cd + s) + 1);
    for (mpz_class xi = lo; xi <= hi; ++xi) {
      mpq_class d = mpq_class(xi) + c;
      mpq_class used = Bs[ui] * d * d;
      if (used > budget) continue;
      x[ui] = xi;
      rec(i - 1, budget - used);
    }
    x[ui] = 0;
  };
  rec(static_cast<long>(k) - 1, R2);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> spanning_tree_basis(size_t r, const std::optional<std::vector<std::pair<int, int>>>& edges) {
  std::vector<std::pair<int, int>> E;
  if (edges) {
    E = *edges;
  } else {
    for (size_t i = 1; i < r; ++i) E.emplace_back(0, static_cast<int>(i));
  }
  if (r == 0) fail(ErrorCode::NotASpanningTree, "no labels");
  if (E.size() != r - 1) fail(ErrorCode::NotASpanningTree, "a spanning tree on r labels has r-1 edges");
  std::vector<size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  std::vector<IntVec> out;
  for (auto [a, b] : E) {
    if (a < 0 || b < 0 || static_cast<size_t>(a) >= r || static_cast<size_t>(b) >= r || a == b)
      fail(ErrorCode::NotASpanningTree, "edge endpoint out of range");
    size_t ra = find(static_cast<size_t>(a)), rb = find(static_cast<size_t>(b));
    if (ra == rb) fail(ErrorCode::NotASpanningTree, "edges contain a cycle");
    parent[ra] = rb;
    IntVec v(r, mpz_class(0));
    v[static_cast<size_t>(a)] = 1;
    v[static_cast<size_t>(b)] = -1;
    out.push_back(std::move(v));
  }
  return out;
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace unitgroup
