#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "core/perm.hpp"

namespace testing {

inline permstab::Permutation P(const char* s) { return permstab::Permutation::parse(s); }

// All of S_n in lexicographic order, via std::next_permutation.
inline std::vector<permstab::Permutation> all_perms(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<permstab::Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Brute force: does some k-subset of positions (containing all of `must`, 0-based) standardize to pi?
inline bool brute_contains(const permstab::Permutation& w, const permstab::Permutation& pi,
                           std::vector<int> must = {}) {
  const int n = w.size(), k = pi.size();
  if (k > n) return false;
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    bool ok = true;
    for (int m : must) ok = ok && pick[m];
    if (!ok) continue;
    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
      if (pick[i]) sub.push_back(w.values()[i]);
    bool match = true;
    for (int a = 0; a < k && match; ++a)
      for (int b = a + 1; b < k && match; ++b)
        match = (sub[a] < sub[b]) == (pi.values()[a] < pi.values()[b]);
    if (match) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

inline std::vector<int> brute_records(const permstab::Permutation& w) {
  std::vector<int> r;
  int best = 0;
  for (int j = 1; j <= w.size(); ++j)
    if (w(j) > best) {
      best = w(j);
      r.push_back(j);
    }
  return r;
}

}  // namespace testing
