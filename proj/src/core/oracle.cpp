#include "core/oracle.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/stability.hpp"

namespace permstab {

std::vector<int> ExactDistribution::support() const {
  std::vector<int> s;
  for (const auto& [v, c] : counts) s.push_back(v);
  return s;
}

ExactRational ExactDistribution::mean() const {
  if (total == 0) return 0;
  ExactInt acc = 0;
  for (const auto& [v, c] : counts) acc += c * v;
  ExactRational r(acc, total);
  r.canonicalize();
  return r;
}

namespace {

struct Member {
  std::vector<std::uint8_t> chi;
  int fs;
  std::uint64_t weight;
};

std::vector<Member> collect(const ClassSpec& spec, int n, const OracleBudget& budget, bool conjugate) {
  std::vector<Member> out;
  for_each_weighted_member(
      spec, n,
      [&](const Permutation& w, std::uint64_t weight) {
        if (out.size() >= budget.max_members)
          fail(ErrorCode::BudgetExceeded, "class " + spec.name() + " exceeds the member budget");
        Permutation x = conjugate ? conjugate_by_w0(w) : w;
        out.push_back({chi_vector(x), fs_of(x), weight});
      },
      budget.limits);
  std::uint64_t m = out.size();
  if (m * m > budget.max_pairs) fail(ErrorCode::BudgetExceeded, "pair count exceeds the budget");
  return out;
}

ExactDistribution pair_distribution(const std::vector<Member>& members, int shift) {
  std::map<int, std::uint64_t> hist;
  for (size_t a = 0; a < members.size(); ++a) {
    const auto& u = members[a];
    hist[fs_from_chi(u.chi, u.fs, u.chi, u.fs) + shift] += u.weight * u.weight;
    for (size_t b = a + 1; b < members.size(); ++b) {
      const auto& v = members[b];
      hist[fs_from_chi(u.chi, u.fs, v.chi, v.fs) + shift] += 2 * u.weight * v.weight;
    }
  }
  ExactDistribution d;
  for (const auto& [v, c] : hist) {
    ExactInt x(static_cast<unsigned long>(c));
    d.counts[v] = x;
    d.total += x;
  }
  return d;
}

}  // namespace

ExactDistribution exact_fs_distribution(const ClassSpec& spec, int n, const OracleBudget& budget) {
  return pair_distribution(collect(spec, n, budget, false), 0);
}

ExactDistribution exact_bs_shifted_distribution(const ClassSpec& spec, int n, const OracleBudget& budget) {
  // BS(u,v) + n = FS(w0 u w0, w0 v w0).
  return pair_distribution(collect(spec, n, budget, true), 0);
}

RecordFibers record_fibers(const ClassSpec& spec, int n, const OracleBudget& budget) {
  RecordFibers f;
  for_each_weighted_member(
      spec, n, [&](const Permutation& w, std::uint64_t weight) { f[record_set(w)] += static_cast<unsigned long>(weight); },
      budget.limits);
  return f;
}

XiAudit grassmannian_xi_audit(int n) {
  if (n < 1 || n > 12) fail(ErrorCode::OutOfRange, "xi audit supports 1 <= n <= 12");
  struct Draw {
    std::vector<std::uint8_t> chi;
    int fs, k, M;
    bool identity;
  };
  std::vector<Draw> draws;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> V;
    for (int x = 1; x <= n; ++x)
      if (mask >> (x - 1) & 1) V.push_back(x);
    auto w = grassmannian_build(static_cast<int>(V.size()), V, n);
    draws.push_back({chi_vector(w), fs_of(w), static_cast<int>(V.size()), V.empty() ? 0 : V.back(), w.is_identity()});
  }
  XiAudit a;
  a.n = n;
  std::uint64_t nonzero = 0, abs_sum = 0;
  for (const auto& u : draws) {
    for (const auto& v : draws) {
      int fs = fs_from_chi(u.chi, u.fs, v.chi, v.fs);
      int kmax = std::max(u.k, v.k);
      int xi = fs - (u.M + v.M - kmax);
      if (xi != 0) ++nonzero;
      abs_sum += static_cast<std::uint64_t>(xi < 0 ? -xi : xi);
      if (u.identity || v.identity) {
        ++a.identity_pairs;
      } else if (kmax < std::min(u.M, v.M)) {
        ++a.hypothesis_pairs;
        if (xi != 0) ++a.hypothesis_violations;
      }
    }
  }
  ExactInt total = pow2(2 * n);
  a.p_nonzero = ExactRational(ExactInt(static_cast<unsigned long>(nonzero)), total);
  a.mean_abs = ExactRational(ExactInt(static_cast<unsigned long>(abs_sum)), total);
  a.p_nonzero.canonicalize();
  a.mean_abs.canonicalize();
  return a;
}

bool bs_equidistribution_audit(const ClassSpec& spec, int n, const OracleBudget& budget) {
  if (!spec.conjugation_closed()) fail(ErrorCode::Unsupported, "class " + spec.name() + " is not closed under w0-conjugation");
  return exact_bs_shifted_distribution(spec, n, budget) == exact_fs_distribution(spec, n, budget);
}

ExactRational grassmannian_tv_by_enumeration(int n) {
  OracleBudget b;
  b.limits.grassmannian = std::max(b.limits.grassmannian, n);
  ExactInt two_n = pow2(n), size = two_n - n;
  ExactRational tv = 0;
  for_each_weighted_member(
      ClassSpec{ClassId::GrassmannianModified, {}}, n,
      [&](const Permutation&, std::uint64_t weight) {
        ExactRational d = ExactRational(ExactInt(static_cast<unsigned long>(weight)), two_n) - ExactRational(1, size);
        tv += abs(d);
      },
      b.limits);
  tv /= 2;
  return tv;
}

bool uniform_record_independence(int n) {
  if (n < 1 || n > 10) fail(ErrorCode::OutOfRange, "record independence check supports n <= 10");
  std::vector<std::uint64_t> joint(std::size_t{1} << n, 0);
  for_each_permutation(n, [&](const Permutation& w) {
    auto chi = chi_vector(w);
    std::uint32_t mask = 0;
    for (int j = 0; j < n; ++j)
      if (!chi[j]) mask |= 1u << j;
    ++joint[mask];
  });
  ExactInt fact = 1;
  for (int j = 2; j <= n; ++j) fact *= j;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    ExactRational p = 1;
    for (int j = 1; j <= n; ++j) p *= (mask >> (j - 1) & 1) ? ExactRational(1, j) : ExactRational(j - 1, j);
    ExactRational observed(ExactInt(static_cast<unsigned long>(joint[mask])), fact);
    observed.canonicalize();
    if (observed != p) return false;
  }
  return true;
}

}  // namespace permstab
