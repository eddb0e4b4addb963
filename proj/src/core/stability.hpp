#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/perm.hpp"

namespace permstab {

struct WalkTrace {
  std::vector<int> y;  // y[i-1] = Y_i, i = 1..m+1
  int m = 0;
  int fs = 0;
  std::vector<int> argmax_indices;  // 1-based i with Y_i = fs
};

WalkTrace walk(const Permutation& u, const Permutation& v);
int fs_pair(const Permutation& u, const Permutation& v);
// Raw value FS(w0 u w0, w0 v w0) - n; negative only for the identity pair at n > 1.
int bs_pair(const Permutation& u, const Permutation& v, int n);

std::vector<int> increments(const WalkTrace& trace);
// Checks Δ_i = 1 - χ_i(u) - χ_i(v) for i <= m.
bool increments_match_records(const WalkTrace& trace, const Permutation& u, const Permutation& v);

// Fast path for samplers: chi vectors and fs_of values precomputed.
int fs_from_chi(std::span<const std::uint8_t> chi_u, int fs_u, std::span<const std::uint8_t> chi_v, int fs_v);

}  // namespace permstab
