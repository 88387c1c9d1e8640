#include "unitgroup/groebner.hpp"

#include <algorithm>

#include "unitgroup/error.hpp"

namespace unitgroup {

namespace {

bool divides(const Exponents& a, const Exponents& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Exponents lcm_of(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
  return r;
}

Exponents diff(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}

struct Elem {
  MultiPoly p;
  std::vector<MultiPoly> cof;
  bool active = true;
};

struct Pair {
  size_t i, j;
  Exponents lcm;
};

class Buchberger {
 public:
  Buchberger(const std::vector<MultiPoly>& input, bool track) : input_(input), track_(track) {
    ring_ = input.front().ring();
    zero_ = MultiPoly(ring_);
  }

  GroebnerBasis run() {
    for (size_t j = 0; j < input_.size(); ++j) {
      Elem e;
      e.p = input_[j];
      if (track_) {
        e.cof.assign(input_.size(), zero_);
        e.cof[j] = MultiPoly::constant(ring_, ring_->field().one());
      }
      reduce_full(e);
      if (e.p.is_zero()) continue;
      if (add(std::move(e))) return finish();
    }
    while (!pairs_.empty()) {
      size_t best = 0;
      const auto& ord = ring_->order();
      for (size_t k = 1; k < pairs_.size(); ++k)
        if (ord.compare(pairs_[k].lcm, pairs_[best].lcm) < 0) best = k;
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<long>(best));
      Elem s = spoly(pr);
      reduce_full(s);
      if (s.p.is_zero()) continue;
      if (add(std::move(s))) return finish();
    }
    return finish();
  }

 private:
  Elem spoly(const Pair& pr) {
    const Elem& a = elems_[pr.i];
    const Elem& b = elems_[pr.j];
    Exponents ea = diff(pr.lcm, a.p.lm()), eb = diff(pr.lcm, b.p.lm());
    const FieldElem one = ring_->field().one();
    Elem s;
    // both operands are monic
    s.p = a.p.mul_term(ea, one).sub_mul_term(b.p, eb, one);
    if (track_) {
      s.cof.resize(input_.size());
      for (size_t k = 0; k < input_.size(); ++k)
        s.cof[k] = a.cof[k].mul_term(ea, one).sub_mul_term(b.cof[k], eb, one);
    }
    return s;
  }

  const Elem* find_reducer(const Exponents& m) const {
    for (const auto& e : elems_)
      if (e.active && divides(e.p.lm(), m)) return &e;
    return nullptr;
  }

  void reduce_full(Elem& e) {
    std::vector<Term> rem;
    MultiPoly& p = e.p;
    while (!p.is_zero()) {
      const Elem* r = find_reducer(p.lm());
      if (!r) {
        rem.push_back(p.leading());
        p.drop_leading();
        continue;
      }
      Exponents t = diff(p.lm(), r->p.lm());
      FieldElem c = p.lc() / r->p.lc();
      if (track_)
        for (size_t k = 0; k < input_.size(); ++k) e.cof[k] = e.cof[k].sub_mul_term(r->cof[k], t, c);
      p = p.sub_mul_term(r->p, t, c);
    }
    p = MultiPoly::from_sorted(ring_, std::move(rem));
    if (!p.is_zero()) {
      FieldElem inv = p.lc().inverse();
      p = p.scaled(inv);
      if (track_)
        for (auto& c : e.cof) c = c.scaled(inv);
    }
  }

  // Gebauer-Moeller update. Returns true once the unit ideal is reached.
  bool add(Elem h) {
    if (h.p.is_constant()) {
      unit_ = std::move(h);
      return true;
    }
    size_t hi = elems_.size();
    const Exponents& lh = h.p.lm();
    std::vector<size_t> cur;
    for (size_t k = 0; k < elems_.size(); ++k)
      if (elems_[k].active) cur.push_back(k);

    std::vector<Pair> C;
    for (size_t k : cur) C.push_back({k, hi, lcm_of(elems_[k].p.lm(), lh)});
    std::vector<Pair> D;
    for (size_t a = 0; a < C.size(); ++a) {
      bool keep = coprime(elems_[C[a].i].p.lm(), lh);
      if (!keep) {
        keep = true;
        for (size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides(C[b].lcm, C[a].lcm)) keep = false;
        for (size_t b = 0; b < D.size() && keep; ++b)
          if (divides(D[b].lcm, C[a].lcm)) keep = false;
      }
      if (keep) D.push_back(C[a]);
    }
    std::vector<Pair> next;
    for (auto& pr : pairs_) {
      const Exponents& li = elems_[pr.i].p.lm();
      const Exponents& lj = elems_[pr.j].p.lm();
      bool drop = divides(lh, pr.lcm) && lcm_of(li, lh) != pr.lcm && lcm_of(lj, lh) != pr.lcm;
      if (!drop) next.push_back(std::move(pr));
    }
    for (auto& pr : D)
      if (!coprime(elems_[pr.i].p.lm(), lh)) next.push_back(std::move(pr));
    pairs_ = std::move(next);
    for (size_t k : cur)
      if (divides(lh, elems_[k].p.lm())) elems_[k].active = false;
    elems_.push_back(std::move(h));
    return false;
  }

  GroebnerBasis finish() {
    GroebnerBasis gb;
    gb.ring = ring_;
    gb.input = input_;
    std::vector<Elem> basis;
    if (unit_) {
      basis.push_back(std::move(*unit_));
    } else {
      for (auto& e : elems_)
        if (e.active) basis.push_back(std::move(e));
      elems_.clear();
      // Interreduce: leading monomials are already minimal.
      for (size_t k = 0; k < basis.size(); ++k) {
        elems_.clear();
        for (size_t m = 0; m < basis.size(); ++m)
          if (m != k) elems_.push_back(basis[m]);
        Elem e = std::move(basis[k]);
        Term lead = e.p.leading();
        MultiPoly tail = e.p;
        tail.drop_leading();
        Elem t{tail, e.cof, true};
        reduce_full_tail(t);
        std::vector<Term> ts{lead};
        for (const auto& term : t.p.terms()) ts.push_back(term);
        e.p = MultiPoly::from_sorted(ring_, std::move(ts));
        if (track_) {
          // e = lead + tail; tail was rewritten as t.p + (t.cof - e.cof) combination
          e.cof = t.cof;
        }
        basis[k] = std::move(e);
      }
      std::sort(basis.begin(), basis.end(),
                [&](const Elem& a, const Elem& b) { return ring_->order().compare(a.p.lm(), b.p.lm()) > 0; });
    }
    for (auto& e : basis) {
      gb.gens.push_back(e.p);
      if (track_) gb.cofactors.push_back(e.cof);
    }
    if (basis.empty()) gb.gens.clear();
    return gb;
  }

  // Reduces every term of t.p without rescaling; cofactors follow the subtraction.
  void reduce_full_tail(Elem& t) {
    std::vector<Term> rem;
    MultiPoly& p = t.p;
    while (!p.is_zero()) {
      const Elem* r = find_reducer(p.lm());
      if (!r) {
        rem.push_back(p.leading());
        p.drop_leading();
        continue;
      }
      Exponents d = diff(p.lm(), r->p.lm());
      FieldElem c = p.lc() / r->p.lc();
      if (track_)
        for (size_t k = 0; k < input_.size(); ++k) t.cof[k] = t.cof[k].sub_mul_term(r->cof[k], d, c);
      p = p.sub_mul_term(r->p, d, c);
    }
    p = MultiPoly::from_sorted(ring_, std::move(rem));
  }

  std::vector<MultiPoly> input_;
  bool track_;
  RingPtr ring_;
  MultiPoly zero_;
  std::vector<Elem> elems_;
  std::vector<Pair> pairs_;
  std::optional<Elem> unit_;
};

}  // namespace

GroebnerBasis groebner_basis(const std::vector<MultiPoly>& gens, bool track_cofactors) {
  if (gens.empty()) fail(ErrorCode::InvalidInput, "empty generator list");
  for (const auto& g : gens)
    if (!g.ring() || !g.ring()->same_as(*gens.front().ring()))
      fail(ErrorCode::DescriptorMismatch, "generators from different rings");
  GroebnerBasis gb = Buchberger(gens, track_cofactors).run();
  return gb;
}

Reduction reduce(const MultiPoly& f, const std::vector<MultiPoly>& G) {
  const RingPtr& R = f.ring();
  Reduction out;
  out.quotients.assign(G.size(), MultiPoly(R));
  std::vector<Term> rem;
  MultiPoly p = f;
  while (!p.is_zero()) {
    size_t k = 0;
    while (k < G.size() && !(!G[k].is_zero() && divides(G[k].lm(), p.lm()))) ++k;
    if (k == G.size()) {
      rem.push_back(p.leading());
      p.drop_leading();
      continue;
    }
    Exponents t = diff(p.lm(), G[k].lm());
    FieldElem c = p.lc() / G[k].lc();
    out.quotients[k] += MultiPoly::monomial(R, t, c);
    p = p.sub_mul_term(G[k], t, c);
  }
  out.remainder = MultiPoly::from_sorted(R, std::move(rem));
  return out;
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& G) {
  const RingPtr& R = f.ring();
  std::vector<Term> rem;
  MultiPoly p = f;
  while (!p.is_zero()) {
    const MultiPoly* g = nullptr;
    for (const auto& c : G)
      if (!c.is_zero() && divides(c.lm(), p.lm())) {
        g = &c;
        break;
      }
    if (!g) {
      rem.push_back(p.leading());
      p.drop_leading();
      continue;
    }
    p = p.sub_mul_term(*g, diff(p.lm(), g->lm()), p.lc() / g->lc());
  }
  return MultiPoly::from_sorted(R, std::move(rem));
}

// ---------------------------------------------------------------------------

LaurentIdeal::LaurentIdeal(RingPtr base, std::vector<LaurentPoly> gens)
    : base_(std::move(base)), gens_(std::move(gens)) {
  pres_ = presentation_ring(base_);
  for (const auto& g : gens_) presentation_.push_back(present(g));
  std::vector<Term> torus;
  Exponents e(pres_->nvars(), 1);
  torus.push_back({e, base_->field().one()});
  torus.push_back({Exponents(pres_->nvars(), 0), -base_->field().one()});
  presentation_.push_back(MultiPoly(pres_, std::move(torus)));
  gb_ = groebner_basis(presentation_);
}

MultiPoly LaurentIdeal::present(const LaurentPoly& h) const {
  LaurentPoly hh = h;
  if (!h.ring()->same_as(*base_)) {
    hh = LaurentPoly(h.numerator().embed_in(base_), h.denominator());
  }
  return laurent_to_presentation(hh, pres_);
}

LaurentPoly LaurentIdeal::unpresent(const MultiPoly& p) const { return presentation_to_laurent(p, base_); }

bool LaurentIdeal::contains(const LaurentPoly& h) const { return normal_form(h).is_zero(); }

LaurentPoly LaurentIdeal::normal_form(const LaurentPoly& h) const {
  return unpresent(unitgroup::normal_form(present(h), gb_.gens));
}

std::optional<LaurentPoly> clear_denominators(const LaurentPoly& f, const LaurentPoly& g, const LaurentIdeal& I) {
  std::vector<MultiPoly> J;
  J.push_back(I.present(g));
  for (const auto& p : I.presentation()) J.push_back(p);
  GroebnerBasis gb = groebner_basis(J, true);
  Reduction red = reduce(I.present(f), gb.gens);
  if (!red.remainder.is_zero()) return std::nullopt;
  MultiPoly c0(I.pres_ring());
  for (size_t k = 0; k < gb.gens.size(); ++k) c0 += red.quotients[k] * gb.cofactors[k][0];
  LaurentPoly h = I.unpresent(c0);
  LaurentPoly reduced = I.normal_form(h);
  if (reduced.size() < h.size()) return reduced;
  return h;
}

bool test_unit(const LaurentPoly& h, const LaurentIdeal& I) {
  if (h.is_zero()) return false;
  std::vector<MultiPoly> gens = I.basis().gens;
  gens.push_back(I.present(h));
  return groebner_basis(gens).is_unit_ideal();
}

std::optional<LaurentPoly> unit_preimage(const MultiPoly& F, const MultiPoly& G, const std::string& homog_var,
                                         const LaurentIdeal& I) {
  if (!F.is_homogeneous() || !G.is_homogeneous())
    fail(ErrorCode::InvalidInput, "unit_preimage expects homogeneous forms");
  if (!F.is_zero() && !G.is_zero() && F.total_degree() != G.total_degree())
    fail(ErrorCode::InvalidInput, "unit_preimage expects forms of equal degree");
  LaurentPoly f(dehomogenize(F, homog_var).embed_in(I.base_ring()));
  LaurentPoly g(dehomogenize(G, homog_var).embed_in(I.base_ring()));
  if (I.contains(g)) fail(ErrorCode::InvalidInput, "denominator vanishes on the curve");
  auto h = clear_denominators(f, g, I);
  if (!h) return std::nullopt;
  if (!test_unit(*h, I)) return std::nullopt;
  return h;
}

bool equal_mod_scalars(const LaurentPoly& a, const LaurentPoly& b, const LaurentIdeal& I) {
  MultiPoly na = unitgroup::normal_form(I.present(a), I.basis().gens);
  MultiPoly nb = unitgroup::normal_form(I.present(b), I.basis().gens);
  if (na.is_zero() || nb.is_zero()) return na.is_zero() && nb.is_zero();
  if (na.lm() != nb.lm()) return false;
  return na.scaled(nb.lc()) == nb.scaled(na.lc());
}

// ---------------------------------------------------------------------------

void check_parametrization(const std::vector<MultiPoly>& params) {
  if (params.size() < 2) fail(ErrorCode::InvalidParametrization, "need at least two parametrizing forms");
  int deg = -1;
  for (const auto& p : params) {
    if (p.is_zero() || !p.is_homogeneous()) fail(ErrorCode::InvalidParametrization, "forms must be homogeneous");
    if (p.ring()->nvars() != 2) fail(ErrorCode::InvalidParametrization, "forms must be binary");
    if (deg >= 0 && p.total_degree() != deg) fail(ErrorCode::InvalidParametrization, "forms must share a degree");
    deg = p.total_degree();
  }
  // Rank of the coefficient matrix (rows = forms, columns = degree in the first variable).
  const Field& K = params.front().field();
  std::vector<std::vector<FieldElem>> M;
  for (const auto& p : params) {
    std::vector<FieldElem> row(static_cast<size_t>(deg) + 1, K.zero());
    for (const auto& t : p.terms()) row[static_cast<size_t>(t.exp[0])] = t.coeff;
    M.push_back(row);
  }
  size_t rank = 0;
  for (size_t col = 0; col < M[0].size() && rank < M.size(); ++col) {
    size_t piv = rank;
    while (piv < M.size() && M[piv][col].is_zero()) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[piv], M[rank]);
    for (size_t r = rank + 1; r < M.size(); ++r) {
      if (M[r][col].is_zero()) continue;
      FieldElem f = M[r][col] / M[rank][col];
      for (size_t c = col; c < M[r].size(); ++c) M[r][c] -= f * M[rank][c];
    }
    ++rank;
  }
  if (rank != params.size()) fail(ErrorCode::InvalidParametrization, "forms are linearly dependent");
}

std::optional<LaurentPoly> subalgebra_membership(const MultiPoly& f, const MultiPoly& g,
                                                 const std::vector<MultiPoly>& params, const RingPtr& target,
                                                 int chart) {
  check_parametrization(params);
  if (g.is_zero()) fail(ErrorCode::DivisionByZero, "g = 0");
  size_t m = params.size();
  if (chart < 0 || static_cast<size_t>(chart) >= m) fail(ErrorCode::InvalidInput, "chart index out of range");
  if (target->nvars() != m - 1) fail(ErrorCode::InvalidInput, "target ring must have one variable per coordinate");
  const Field& K = params.front().field();

  std::vector<std::string> vars{"S_", "T_", "s_"};
  for (size_t i = 0; i < m; ++i) vars.push_back("s" + std::to_string(i) + "_");
  for (size_t i = 0; i < m; ++i) vars.push_back("y" + std::to_string(i) + "_");
  for (size_t i = 0; i < m; ++i) vars.push_back("z" + std::to_string(i) + "_");
  const int split = static_cast<int>(3 + m);
  RingPtr R = make_ring(K, vars, MonomialOrder::block(split));
  auto var = [&](size_t i) { return MultiPoly::variable(R, static_cast<int>(i)); };
  auto lift = [&](const MultiPoly& p) { return p.map_to(R, {0, 1}); };
  MultiPoly one = MultiPoly::constant(R, K.one());
  const size_t s_idx = 2, si0 = 3, y0 = 3 + m, z0 = 3 + 2 * m;

  std::vector<MultiPoly> gens;
  for (size_t i = 0; i < m; ++i) gens.push_back(var(y0 + i) - lift(params[i]));
  for (size_t i = 0; i < m; ++i) gens.push_back(var(z0 + i) - var(si0 + i));
  for (size_t i = 0; i < m; ++i) gens.push_back(lift(params[i]) * var(si0 + i) - one);
  gens.push_back(lift(g) * var(s_idx) - one);
  GroebnerBasis gb = groebner_basis(gens);
  MultiPoly h = normal_form(lift(f) * var(s_idx), gb.gens);

  LaurentPoly out{MultiPoly(target)};
  for (const auto& t : h.terms()) {
    for (size_t k = 0; k < y0; ++k)
      if (t.exp[k]) return std::nullopt;
    std::vector<int32_t> e(m - 1, 0);
    for (size_t i = 0, j = 0; i < m; ++i) {
      if (static_cast<int>(i) == chart) continue;
      e[j++] = t.exp[y0 + i] - t.exp[z0 + i];
    }
    out = out + LaurentPoly::monomial(target, e, t.coeff);
  }
  return out;
}

}  // namespace unitgroup
