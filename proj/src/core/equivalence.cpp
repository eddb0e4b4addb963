#include "core/equivalence.hpp"

#include <algorithm>
#include <functional>

#include "core/classes.hpp"
#include "core/error.hpp"

namespace permstab {

PatternFibers avoidance_fibers(const Permutation& pi, int n_max, std::uint64_t node_budget) {
  if (n_max < 1 || n_max > 20) fail(ErrorCode::OutOfRange, "avoidance_fibers supports 1 <= n_max <= 20");
  PatternFibers f;
  f.n_max = n_max;
  f.fibers.resize(n_max + 1);
  f.counts.assign(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) f.fibers[n].assign(std::size_t{1} << n, 0);
  std::vector<int> word;
  word.reserve(n_max);
  std::uint64_t nodes = 0;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t mask) {
    const int m = static_cast<int>(word.size());
    ++f.fibers[m][mask];
    ++f.counts[m];
    if (++nodes > node_budget) fail(ErrorCode::BudgetExceeded, "avoidance_fibers exceeded the node budget");
    if (m == n_max) return;
    for (int v = 1; v <= m + 1; ++v) {
      for (int& x : word)
        if (x >= v) ++x;
      word.push_back(v);
      if (!contains_pattern_ending_at_last(word, pi)) rec(mask | (v == m + 1 ? 1u << m : 0u));
      word.pop_back();
      for (int& x : word)
        if (x > v) --x;
    }
  };
  // Root: the single permutation of size 1 (record at 1).
  word.push_back(1);
  if (pi.size() == 1) {
    // Av_n(1) is empty for n >= 1.
    return f;
  }
  rec(1u);
  return f;
}

Permutation deletion_minor(const Permutation& pi, int i) {
  if (i < 1 || i > pi.size() || pi.size() < 2) fail(ErrorCode::OutOfRange, "deletion index out of range");
  std::vector<int> w;
  for (int j = 1; j <= pi.size(); ++j)
    if (j != i) w.push_back(pi(j));
  return standardize(w);
}

EquivalenceOracle::EquivalenceOracle(int n_max, std::uint64_t node_budget) : n_max_(n_max), node_budget_(node_budget) {}

const PatternFibers& EquivalenceOracle::fibers(const Permutation& pi) {
  std::vector<int> key(pi.values().begin(), pi.values().end());
  auto it = fibers_.find(key);
  if (it == fibers_.end()) it = fibers_.emplace(key, avoidance_fibers(pi, n_max_, node_budget_)).first;
  return it->second;
}

bool EquivalenceOracle::ground_truth(const Permutation& pi, const Permutation& sigma,
                                     std::optional<std::pair<int, std::vector<int>>>* failure) {
  const auto& a = fibers(pi);
  const auto& b = fibers(sigma);
  for (int n = 1; n <= n_max_; ++n) {
    for (std::size_t mask = 0; mask < a.fibers[n].size(); ++mask) {
      if (a.fibers[n][mask] == b.fibers[n][mask]) continue;
      if (failure) {
        std::vector<int> R;
        for (int j = 1; j <= n; ++j)
          if (mask >> (j - 1) & 1) R.push_back(j);
        *failure = std::make_pair(n, R);
      }
      return false;
    }
  }
  return true;
}

bool EquivalenceOracle::wilf(const Permutation& pi, const Permutation& sigma) {
  const auto& a = fibers(pi);
  const auto& b = fibers(sigma);
  for (int n = pi.size(); n <= n_max_; ++n)
    if (a.counts[n] != b.counts[n]) return false;
  return true;
}

bool EquivalenceOracle::predict(const Permutation& pi, const Permutation& sigma, std::array<bool, 4>* clauses) {
  if (pi.size() != sigma.size()) fail(ErrorCode::InvalidArgument, "patterns must have equal size");
  const int k = pi.size();
  std::array<bool, 4> c{true, true, true, true};
  if (pi == sigma || k == 1) {
    if (clauses) *clauses = c;
    return true;
  }
  std::vector<int> ka(pi.values().begin(), pi.values().end()), kb(sigma.values().begin(), sigma.values().end());
  auto key = ka < kb ? std::make_pair(ka, kb) : std::make_pair(kb, ka);
  if (!clauses) {
    auto it = predicted_.find(key);
    if (it != predicted_.end()) return it->second;
  }
  auto rec_pi = record_set(pi), rec_sigma = record_set(sigma);
  c[0] = rec_pi == rec_sigma;
  c[1] = wilf(pi, sigma);
  const int m_pi = pi.inverse()(k), m_sigma = sigma.inverse()(k);
  if (m_pi == m_sigma) {
    for (int i = 1; i <= k && c[2]; ++i)
      if (i != m_pi) c[2] = predict(deletion_minor(pi, i), deletion_minor(sigma, i));
  }
  if (k >= 4) {
    std::vector<int> head(k - 1);
    for (int j = 0; j < k - 1; ++j) head[j] = j + 1;
    if (rec_pi == head && rec_sigma == head && m_pi == k - 1 && m_sigma == k - 1) c[3] = pi(k) == sigma(k);
  }
  bool result = c[0] && c[1] && c[2] && c[3];
  predicted_[key] = result;
  if (clauses) *clauses = c;
  return result;
}

EquivalenceVerdict EquivalenceOracle::verdict(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() != sigma.size()) fail(ErrorCode::InvalidArgument, "patterns must have equal size");
  if (n_max_ < pi.size()) fail(ErrorCode::InvalidArgument, "n_max must be at least the pattern size");
  EquivalenceVerdict v{pi, sigma, n_max_, false, std::nullopt, {}, false};
  v.equivalent = ground_truth(pi, sigma, &v.first_failure);
  v.criterion_prediction = predict(pi, sigma, &v.clauses);
  return v;
}

EquivalenceVerdict record_equivalent(const Permutation& pi, const Permutation& sigma, int n_max) {
  EquivalenceOracle oracle(n_max);
  return oracle.verdict(pi, sigma);
}

ScanReport conjecture_scan(int k, int n_max, EquivalenceOracle* oracle) {
  if (k < 1 || k > 8) fail(ErrorCode::OutOfRange, "conjecture_scan supports 1 <= k <= 8");
  EquivalenceOracle local(n_max);
  EquivalenceOracle& o = oracle ? *oracle : local;
  if (o.n_max() != n_max) fail(ErrorCode::InvalidArgument, "oracle horizon differs from n_max");
  std::vector<Permutation> all;
  for_each_permutation(k, [&](const Permutation& p) { all.push_back(p); });
  ScanReport r;
  r.k = k;
  r.n_max = n_max;
  for (size_t a = 0; a < all.size(); ++a) {
    for (size_t b = a + 1; b < all.size(); ++b) {
      ScanEntry e{all[a], all[b], false, false, {}};
      e.truth = o.ground_truth(all[a], all[b]);
      e.prediction = o.predict(all[a], all[b], &e.clauses);
      (e.truth == e.prediction ? r.agreements : r.disagreements)++;
      if (e.truth) ++r.equivalent_pairs;
      r.pairs.push_back(std::move(e));
    }
  }
  return r;
}

}  // namespace permstab
