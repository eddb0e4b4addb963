#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "core/classes.hpp"
#include "core/closed_forms.hpp"

namespace permstab {

struct ExactDistribution {
  std::map<int, ExactInt> counts;
  ExactInt total = 0;

  std::vector<int> support() const;
  ExactRational mean() const;
  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

struct OracleBudget {
  std::uint64_t max_members = 10000;
  std::uint64_t max_pairs = 100000000;
  EnumerationLimits limits{};
};

// Law of FS(u,v) for u, v independent from the class's natural law (uniform, or 𝔾_n for
// grassmannian-modified). Counts are pair weights; total = (Σ weights)^2.
ExactDistribution exact_fs_distribution(const ClassSpec& spec, int n, const OracleBudget& budget = {});
// Law of BS(u,v) + n over the same pairs.
ExactDistribution exact_bs_shifted_distribution(const ClassSpec& spec, int n, const OracleBudget& budget = {});

using RecordFibers = std::map<std::vector<int>, ExactInt>;
RecordFibers record_fibers(const ClassSpec& spec, int n, const OracleBudget& budget = {});

struct XiAudit {
  int n = 0;
  ExactRational p_nonzero;   // P(Ξ ≠ 0) under 𝔾_n ⊗ 𝔾_n
  ExactRational mean_abs;    // E|Ξ|
  std::uint64_t hypothesis_pairs = 0;       // both non-identity and k_max < min(M_u, M_v)
  std::uint64_t hypothesis_violations = 0;  // such pairs with Ξ ≠ 0
  std::uint64_t identity_pairs = 0;         // pairs involving the identity
};
XiAudit grassmannian_xi_audit(int n);

bool bs_equidistribution_audit(const ClassSpec& spec, int n, const OracleBudget& budget = {});

// TV(𝔾_n, Unif(G_n)) from the enumerated weights.
ExactRational grassmannian_tv_by_enumeration(int n);

// Joint law of (rec_1, ..., rec_n) over S_n equals the product of Bernoulli(1/j).
bool uniform_record_independence(int n);

}  // namespace permstab
