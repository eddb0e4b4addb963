#include "core/stability.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace permstab {

namespace {

std::vector<int> y_sequence(std::span<const std::uint8_t> chi_u, std::span<const std::uint8_t> chi_v, int m) {
  auto chi_at = [](std::span<const std::uint8_t> chi, int i) { return i <= static_cast<int>(chi.size()) ? chi[i - 1] : 0; };
  std::vector<int> y(m + 1);
  int lam = 0;  // Λ_i(u) + Λ_i(v), built from the right
  for (int i = m + 1; i >= 1; --i) {
    lam += chi_at(chi_u, i) + chi_at(chi_v, i);
    y[i - 1] = lam + i - 1;
  }
  return y;
}

}  // namespace

WalkTrace walk(const Permutation& u, const Permutation& v) {
  WalkTrace t;
  t.m = std::max(fs_of(u), fs_of(v));
  auto cu = chi_vector(u), cv = chi_vector(v);
  t.y = y_sequence(cu, cv, t.m);
  t.fs = *std::max_element(t.y.begin(), t.y.end());
  for (int i = 0; i < static_cast<int>(t.y.size()); ++i)
    if (t.y[i] == t.fs) t.argmax_indices.push_back(i + 1);
  return t;
}

int fs_from_chi(std::span<const std::uint8_t> chi_u, int fs_u, std::span<const std::uint8_t> chi_v, int fs_v) {
  const int m = std::max(fs_u, fs_v);
  auto chi_at = [](std::span<const std::uint8_t> chi, int i) { return i <= static_cast<int>(chi.size()) ? chi[i - 1] : 0; };
  int lam = 0, best = m;  // Y_{m+1} = m
  for (int i = m; i >= 1; --i) {
    lam += chi_at(chi_u, i) + chi_at(chi_v, i);
    best = std::max(best, lam + i - 1);
  }
  return best;
}

int fs_pair(const Permutation& u, const Permutation& v) {
  auto cu = chi_vector(u), cv = chi_vector(v);
  return fs_from_chi(cu, fs_of(u), cv, fs_of(v));
}

int bs_pair(const Permutation& u, const Permutation& v, int n) {
  if (n < 1 || u.size() > n || v.size() > n) fail(ErrorCode::OutOfRange, "bs_pair: permutations must fit in S_n");
  return fs_pair(conjugate_by_w0(u.embed(n)), conjugate_by_w0(v.embed(n))) - n;
}

std::vector<int> increments(const WalkTrace& trace) {
  std::vector<int> d;
  for (size_t i = 0; i + 1 < trace.y.size(); ++i) d.push_back(trace.y[i + 1] - trace.y[i]);
  return d;
}

bool increments_match_records(const WalkTrace& trace, const Permutation& u, const Permutation& v) {
  auto d = increments(trace);
  for (int i = 1; i <= trace.m; ++i) {
    int cu = i <= u.size() ? 1 - (left_inversion_count(u, i) == 0) : 0;
    int cv = i <= v.size() ? 1 - (left_inversion_count(v, i) == 0) : 0;
    if (d[i - 1] != 1 - cu - cv) return false;
  }
  return true;
}

}  // namespace permstab
