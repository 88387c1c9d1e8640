#include "unitgroup/divisors.hpp"

namespace unitgroup {

ProjPoint::ProjPoint(std::vector<FieldElem> coords) : coords_(std::move(coords)) {
  size_t i = coords_.size();
  while (i > 0 && coords_[i - 1].is_zero()) --i;
  if (i == 0) fail(ErrorCode::InvalidInput, "projective point with all coordinates zero");
  if (coords_[i - 1].is_one()) return;
  FieldElem inv = coords_[i - 1].inverse();
  for (auto& c : coords_) c *= inv;
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  if (a.coords_.size() != b.coords_.size()) return a.coords_.size() < b.coords_.size();
  for (size_t i = 0; i < a.coords_.size(); ++i) {
    int c = compare(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::vector<std::string> ProjPoint::to_strings() const {
  std::vector<std::string> out;
  for (const auto& c : coords_) out.push_back(c.to_string());
  return out;
}

std::string ProjPoint::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].to_string();
  }
  return s + "]";
}

long unit_rank_bound(long n, long d) {
  if (n < 1 || d < 1) fail(ErrorCode::InvalidInput, "unit_rank_bound needs n, d >= 1");
  return (n + 1) * d - 1;
}

}  // namespace unitgroup
