#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/perm.hpp"

namespace permstab {

// Record-set fiber counts of Av_n(pi) for every n <= n_max; fibers[n][mask] with bit j-1 set iff j ∈ Rec.
struct PatternFibers {
  int n_max = 0;
  std::vector<std::vector<std::uint64_t>> fibers;
  std::vector<std::uint64_t> counts;
};

// Generating-tree search: every member of Av_{m+1} arises once from its standardized prefix in Av_m.
PatternFibers avoidance_fibers(const Permutation& pi, int n_max, std::uint64_t node_budget = 2000000000ULL);

struct EquivalenceVerdict {
  Permutation pi;
  Permutation sigma;
  int n_max = 0;
  bool equivalent = false;  // fibers agree for all n <= n_max
  std::optional<std::pair<int, std::vector<int>>> first_failure;
  std::array<bool, 4> clauses{};  // (1) Rec agreement, (2) Wilf up to n_max, (3) minors, (4) terminal step
  bool criterion_prediction = false;
};

class EquivalenceOracle {
 public:
  explicit EquivalenceOracle(int n_max, std::uint64_t node_budget = 2000000000ULL);

  const PatternFibers& fibers(const Permutation& pi);
  bool ground_truth(const Permutation& pi, const Permutation& sigma, std::optional<std::pair<int, std::vector<int>>>* failure = nullptr);
  // Recursive criterion; clause (3) recurses on deletion minors with memoization.
  bool predict(const Permutation& pi, const Permutation& sigma, std::array<bool, 4>* clauses = nullptr);
  EquivalenceVerdict verdict(const Permutation& pi, const Permutation& sigma);
  int n_max() const { return n_max_; }

 private:
  bool wilf(const Permutation& pi, const Permutation& sigma);

  int n_max_;
  std::uint64_t node_budget_;
  std::map<std::vector<int>, PatternFibers> fibers_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, bool> predicted_;
};

EquivalenceVerdict record_equivalent(const Permutation& pi, const Permutation& sigma, int n_max);

struct ScanEntry {
  Permutation pi;
  Permutation sigma;
  bool truth;
  bool prediction;
  std::array<bool, 4> clauses;
};

struct ScanReport {
  int k = 0;
  int n_max = 0;
  std::vector<ScanEntry> pairs;
  int agreements = 0;
  int disagreements = 0;
  int equivalent_pairs = 0;
};

// All unordered pairs of distinct patterns in S_k.
ScanReport conjecture_scan(int k, int n_max, EquivalenceOracle* oracle = nullptr);

Permutation deletion_minor(const Permutation& pi, int i);

}  // namespace permstab
