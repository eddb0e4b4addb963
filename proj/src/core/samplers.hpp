#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/classes.hpp"
#include "core/closed_forms.hpp"
#include "core/perm.hpp"
#include "core/rng.hpp"
#include "core/tags.hpp"

namespace permstab {

Permutation sample_uniform(int n, Rng& rng);

struct GrassmannianDraw {
  Permutation w;
  GrassmannianDatum datum;  // the drawn (k, V); k = |V| even when w is the identity
};
GrassmannianDraw sample_grassmannian_modified(int n, Rng& rng);
Permutation sample_grassmannian_uniform(int n, Rng& rng);
Permutation sample_cograssmannian(int n, Rng& rng);

struct BooleanDraw {
  Permutation w;
  TagWord tags;
};
// ops, if given, is incremented by the number of elementary steps (draws, comparisons, swaps).
BooleanDraw sample_boolean(int n, Rng& rng, std::uint64_t* ops = nullptr);

// Exact branch probabilities used by the Boolean sampler at remaining length m.
struct BooleanBranch {
  ExactRational zero;  // next tag 0
  ExactRational s;     // next tag S
  ExactRational c;     // next tag C (0 from state 0)
};
BooleanBranch boolean_branch(int m, int state);

// Uniform on Av_n(231) / Av_n(132), n >= 1.
Permutation sample_av231(int n, Rng& rng);
Permutation sample_av132(int n, Rng& rng);

// Rémy growth of a uniform binary tree with n internal nodes. choose(b) must be uniform on [0, b).
// Returns the internal-node tree as (left, right) child arrays with -1 for empty, root index first.
struct BinaryTree {
  int root = -1;
  std::vector<int> left;
  std::vector<int> right;
};
template <class Choose>
BinaryTree remy_tree(int n, Choose&& choose);
enum class CatalanLabel { Av231, Av132 };
Permutation tree_to_permutation(const BinaryTree& tree, CatalanLabel label);

struct McmcConfig {
  std::int64_t burn_in = -1;   // -1: 50 n^2
  std::int64_t thinning = -1;  // -1: n^2
  std::int64_t resolved_burn_in(int n) const { return burn_in >= 0 ? burn_in : 50LL * n * n; }
  std::int64_t resolved_thinning(int n) const { return thinning >= 1 ? thinning : std::max<std::int64_t>(1, 1LL * n * n); }
};

// Metropolis chain with uniform target: adjacent position or value swaps plus a hold; a swap is
// accepted iff the result stays in the class. Starts at the identity.
class McmcChain {
 public:
  McmcChain(const ClassSpec& spec, int n, const McmcConfig& cfg, SeedSpec seed);
  // First call runs burn_in steps, later calls run thinning steps.
  Permutation next();
  // One proposal (adjacent position swap, adjacent value swap or hold); returns whether a swap was accepted.
  bool step();
  const std::vector<int>& state() const { return w_; }
  std::uint64_t proposals() const { return proposals_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  bool admissible_after_swap(int a, int b);

  ClassSpec spec_;
  std::vector<Permutation> patterns_;
  int n_;
  std::int64_t burn_in_, thinning_;
  Rng rng_;
  std::vector<int> w_, inv_;
  bool started_ = false;
  std::uint64_t proposals_ = 0, accepted_ = 0;
};

Permutation sample_mcmc(const ClassSpec& spec, int n, const McmcConfig& cfg, SeedSpec seed);

class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual Permutation next() = 0;
  virtual bool exact() const = 0;
};

bool has_exact_sampler(const ClassSpec& spec);
std::unique_ptr<Sampler> make_sampler(const ClassSpec& spec, int n, SeedSpec seed, const McmcConfig& cfg,
                                      bool force_mcmc = false);

// SeedSpec conveniences: a fresh generator per call.
inline Permutation sample_uniform(int n, SeedSpec s) { Rng r(s); return sample_uniform(n, r); }
inline GrassmannianDraw sample_grassmannian_modified(int n, SeedSpec s) { Rng r(s); return sample_grassmannian_modified(n, r); }
inline Permutation sample_grassmannian_uniform(int n, SeedSpec s) { Rng r(s); return sample_grassmannian_uniform(n, r); }
inline BooleanDraw sample_boolean(int n, SeedSpec s) { Rng r(s); return sample_boolean(n, r); }
inline Permutation sample_av231(int n, SeedSpec s) { Rng r(s); return sample_av231(n, r); }
inline Permutation sample_av132(int n, SeedSpec s) { Rng r(s); return sample_av132(n, r); }

template <class Choose>
BinaryTree remy_tree(int n, Choose&& choose) {
  // Nodes 0..2n: internal and leaf nodes of the full tree.
  std::vector<int> parent(2 * n + 1, -1), lc(2 * n + 1, -1), rc(2 * n + 1, -1);
  std::vector<char> internal(2 * n + 1, 0);
  int root = 0, count = 1;
  for (int i = 0; i < n; ++i) {
    auto c = static_cast<int>(choose(static_cast<std::uint64_t>(2 * count)));
    int x = c >> 1;
    bool x_left = (c & 1) == 0;
    int y = count, z = count + 1;
    count += 2;
    internal[y] = 1;
    int p = parent[x];
    parent[y] = p;
    if (p < 0) root = y;
    else if (lc[p] == x) lc[p] = y;
    else rc[p] = y;
    parent[x] = y;
    parent[z] = y;
    lc[y] = x_left ? x : z;
    rc[y] = x_left ? z : x;
  }
  BinaryTree t;
  if (n == 0) return t;
  // Compact the internal nodes.
  std::vector<int> id(2 * n + 1, -1);
  int next = 0;
  for (int v = 0; v < count; ++v)
    if (internal[v]) id[v] = next++;
  t.left.assign(n, -1);
  t.right.assign(n, -1);
  for (int v = 0; v < count; ++v) {
    if (!internal[v]) continue;
    if (internal[lc[v]]) t.left[id[v]] = id[lc[v]];
    if (internal[rc[v]]) t.right[id[v]] = id[rc[v]];
  }
  t.root = id[root];
  return t;
}

}  // namespace permstab
