#include "unitgroup/qpoly.hpp"

#include <algorithm>
#include <map>

#include "unitgroup/error.hpp"

namespace unitgroup {

QPoly::QPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

QPoly QPoly::constant(const mpq_class& c) { return QPoly(std::vector<mpq_class>{c}); }

QPoly QPoly::monomial(const mpq_class& c, int degree) {
  if (c == 0) return {};
  std::vector<mpq_class> v(static_cast<size_t>(degree) + 1, mpq_class(0));
  v.back() = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpq_class(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpq_class(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  QPoly p;
  p.coeffs_ = std::move(r);
  p.trim();
  return p;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  QPoly rem = *this;
  if (rem.degree() < d.degree()) return {QPoly(), rem};
  std::vector<mpq_class> q(static_cast<size_t>(rem.degree() - d.degree() + 1), mpq_class(0));
  mpq_class inv_lc = 1 / d.leading();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    mpq_class c = rem.leading() * inv_lc;
    q[static_cast<size_t>(shift)] = c;
    for (size_t i = 0; i < d.coeffs_.size(); ++i) rem.coeffs_[i + static_cast<size_t>(shift)] -= c * d.coeffs_[i];
    rem.trim();
  }
  return {QPoly(std::move(q)), rem};
}

QPoly QPoly::pow(unsigned e) const {
  QPoly result = constant(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> r(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  return *this * mpq_class(1 / leading());
}

mpq_class QPoly::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<QPoly, QPoly> QPoly::inverse_mod(const QPoly& a, const QPoly& m) {
  // Extended Euclid tracking only the coefficient of a.
  QPoly r0 = m, r1 = a % m;
  QPoly s0, s1 = constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {QPoly(), QPoly()};
  mpq_class inv = 1 / r0.leading();
  return {r0 * inv, (s0 * inv) % m};
}

std::vector<mpz_class> QPoly::primitive_integer() const {
  std::vector<mpz_class> out;
  if (is_zero()) return out;
  mpz_class den = 1;
  for (const auto& c : coeffs_) den = ::lcm(den, mpz_class(c.get_den()));
  mpz_class g = 0;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    mpz_class v = c.get_num() * (den / c.get_den());
    g = ::gcd(g, v);
    out.push_back(v);
  }
  if (out.back() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    mpq_class a = abs(c);
    if (!s.empty()) s += neg ? "-" : "+";
    else if (neg) s += "-";
    if (i == 0) {
      s += a.get_str();
      continue;
    }
    if (a != 1) s += a.get_str() + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

int compare(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i) {
    int c = cmp(a.coeffs_[static_cast<size_t>(i)], b.coeffs_[static_cast<size_t>(i)]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

namespace {

// Horner evaluation of integer coefficients (low to high) modulo m.
mpz_class eval_mod(const std::vector<mpz_class>& f, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % m;
  return acc < 0 ? acc + m : acc;
}

std::vector<mpz_class> derivative_of(const std::vector<mpz_class>& f) {
  std::vector<mpz_class> d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

// Candidate rational roots of a squarefree integer polynomial: roots modulo a
// prime at which every root is simple, lifted p-adically until lc * root is
// determined as an integer. Every true rational root is among the candidates.
std::vector<mpq_class> root_candidates(const std::vector<mpz_class>& f) {
  const mpz_class& lc = f.back();
  std::vector<mpz_class> df = derivative_of(f);
  mpz_class maxc = 0;
  for (size_t i = 0; i + 1 < f.size(); ++i) maxc = std::max(maxc, mpz_class(abs(f[i])));
  // |root| <= 1 + max|a_i| / |lc|, so |lc * root| <= |lc| + maxc
  mpz_class need = 2 * (abs(lc) + maxc) + 1;

  unsigned long p = 2;
  while (true) {
    mpz_class pz;
    mpz_nextprime(pz.get_mpz_t(), mpz_class(p).get_mpz_t());
    p = pz.get_ui();
    if (lc % pz == 0) continue;
    std::vector<mpz_class> roots;
    bool simple = true;
    for (unsigned long r = 0; r < p && simple; ++r) {
      if (eval_mod(f, r, pz) != 0) continue;
      if (eval_mod(df, r, pz) == 0) simple = false;
      roots.emplace_back(r);
    }
    if (!simple) continue;
    std::vector<mpq_class> out;
    for (mpz_class r : roots) {
      mpz_class m = pz;
      while (m < need) {
        m *= m;
        mpz_class inv, d = eval_mod(df, r, m);
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        r = (r - eval_mod(f, r, m) * inv) % m;
        if (r < 0) r += m;
      }
      mpz_class n = (lc * r) % m;
      if (n < 0) n += m;
      if (2 * n > m) n -= m;
      mpq_class c(n, lc);
      c.canonicalize();
      out.push_back(c);
    }
    return out;
  }
}

}  // namespace

std::vector<std::pair<mpq_class, int>> rational_roots(const QPoly& p) {
  std::vector<std::pair<mpq_class, int>> roots;
  if (p.is_zero()) return roots;
  QPoly rest = p;
  int zero_mult = 0;
  while (!rest.is_zero() && rest.coeff(0) == 0) {
    rest = rest / QPoly::variable();
    ++zero_mult;
  }
  if (rest.degree() >= 1) {
    QPoly squarefree = rest / QPoly::gcd(rest, rest.derivative());
    std::vector<mpq_class> cands;
    for (const auto& c : root_candidates(squarefree.primitive_integer()))
      if (squarefree.evaluate(c) == 0) cands.push_back(c);
    std::sort(cands.begin(), cands.end(), [](const mpq_class& x, const mpq_class& y) {
      int c = cmp(abs(x), abs(y));
      if (c != 0) return c < 0;
      return x > y;
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& c : cands) {
      int mult = 0;
      QPoly lin(std::vector<mpq_class>{-c, 1});
      while (rest.degree() >= 1 && rest.evaluate(c) == 0) {
        rest = rest / lin;
        ++mult;
      }
      roots.emplace_back(c, mult);
    }
  }
  if (zero_mult) roots.insert(roots.begin(), {mpq_class(0), zero_mult});
  return roots;
}

bool rational_sqrt(const mpq_class& q, mpq_class& root) {
  if (q < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = mpq_class(rn, rd);
  root.canonicalize();
  return true;
}

bool poly_sqrt(const QPoly& p, QPoly& root) {
  if (p.is_zero()) {
    root = QPoly();
    return true;
  }
  if (p.degree() % 2 != 0) return false;
  mpq_class top;
  if (!rational_sqrt(p.leading(), top)) return false;
  int m = p.degree() / 2;
  std::vector<mpq_class> r(static_cast<size_t>(m) + 1, mpq_class(0));
  r[static_cast<size_t>(m)] = top;
  for (int k = 1; k <= m; ++k) {
    // coefficient of t^(2m-k) in r^2 determines r_{m-k}
    mpq_class acc = p.coeff(2 * m - k);
    for (int i = m - k + 1; i <= m; ++i) {
      int j = 2 * m - k - i;
      if (j >= m - k + 1 && j <= m) acc -= r[static_cast<size_t>(i)] * r[static_cast<size_t>(j)];
    }
    r[static_cast<size_t>(m - k)] = acc / (2 * top);
  }
  QPoly cand(std::move(r));
  if (!(cand * cand == p)) return false;
  root = cand;
  return true;
}

}  // namespace unitgroup
