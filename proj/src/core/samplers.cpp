#include "core/samplers.hpp"

#include <algorithm>
#include <numeric>

#include "core/error.hpp"

namespace permstab {

namespace {

void check_n(int n, int min = 1) {
  if (n < min) fail(ErrorCode::InvalidArgument, "sampler needs n >= " + std::to_string(min));
}

}  // namespace

Permutation sample_uniform(int n, Rng& rng) {
  check_n(n);
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  for (int i = n - 1; i > 0; --i) std::swap(v[i], v[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return from_trusted(std::move(v));
}

GrassmannianDraw sample_grassmannian_modified(int n, Rng& rng) {
  check_n(n);
  std::vector<char> in(n + 1, 0);
  GrassmannianDatum d;
  for (int x = 1; x <= n; ++x) {
    if (rng.bit()) {
      in[x] = 1;
      d.V.push_back(x);
    }
  }
  d.k = static_cast<int>(d.V.size());
  d.M = d.V.empty() ? 0 : d.V.back();
  std::vector<int> out;
  out.reserve(n);
  for (int x = 1; x <= n; ++x)
    if (in[x]) out.push_back(x);
  for (int x = 1; x <= n; ++x)
    if (!in[x]) out.push_back(x);
  return {from_trusted(std::move(out)), std::move(d)};
}

Permutation sample_grassmannian_uniform(int n, Rng& rng) {
  check_n(n);
  while (true) {
    auto draw = sample_grassmannian_modified(n, rng);
    if (!draw.w.is_identity()) return draw.w;
    if (rng.below(static_cast<std::uint64_t>(n) + 1) == 0) return draw.w;
  }
}

Permutation sample_cograssmannian(int n, Rng& rng) { return sample_grassmannian_uniform(n, rng).inverse(); }

Permutation tree_to_permutation(const BinaryTree& tree, CatalanLabel label) {
  const int n = static_cast<int>(tree.left.size());
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty tree has no permutation");
  std::vector<int> size(n, 1);
  // Post-order sizes via an explicit stack.
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{tree.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    if (tree.left[v] >= 0) stack.push_back(tree.left[v]);
    if (tree.right[v] >= 0) stack.push_back(tree.right[v]);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (tree.left[v] >= 0) size[v] += size[tree.left[v]];
    if (tree.right[v] >= 0) size[v] += size[tree.right[v]];
  }
  std::vector<int> out(n);
  struct Frame {
    int node, pos, lo;
  };
  std::vector<Frame> frames{{tree.root, 0, 1}};
  while (!frames.empty()) {
    auto [v, pos, lo] = frames.back();
    frames.pop_back();
    int s = size[v];
    int a = tree.left[v] >= 0 ? size[tree.left[v]] : 0;
    int b = s - 1 - a;
    out[pos + a] = lo + s - 1;
    int left_lo = label == CatalanLabel::Av231 ? lo : lo + b;
    int right_lo = label == CatalanLabel::Av231 ? lo + a : lo;
    if (a) frames.push_back({tree.left[v], pos, left_lo});
    if (b) frames.push_back({tree.right[v], pos + a + 1, right_lo});
  }
  return from_trusted(std::move(out));
}

Permutation sample_av231(int n, Rng& rng) {
  check_n(n);
  return tree_to_permutation(remy_tree(n, [&](std::uint64_t b) { return rng.below(b); }), CatalanLabel::Av231);
}

Permutation sample_av132(int n, Rng& rng) {
  check_n(n);
  return tree_to_permutation(remy_tree(n, [&](std::uint64_t b) { return rng.below(b); }), CatalanLabel::Av132);
}

McmcChain::McmcChain(const ClassSpec& spec, int n, const McmcConfig& cfg, SeedSpec seed)
    : spec_(spec), n_(n), burn_in_(cfg.resolved_burn_in(n)), thinning_(cfg.resolved_thinning(n)), rng_(seed) {
  check_n(n);
  if (cfg.burn_in < -1 || cfg.thinning < -1 || cfg.thinning == 0)
    fail(ErrorCode::InvalidArgument, "mcmc needs burn_in >= 0 and thinning >= 1");
  if (auto p = spec.avoided_patterns()) patterns_ = *p;
  w_.resize(n);
  std::iota(w_.begin(), w_.end(), 1);
  inv_.resize(n + 1);
  std::iota(inv_.begin(), inv_.end(), -1);
  if (!is_class_member(spec_, Permutation::identity(n)))
    fail(ErrorCode::InvalidArgument, "class " + spec.name() + " does not contain the identity");
}

bool McmcChain::admissible_after_swap(int a, int b) {
  if (!patterns_.empty()) {
    for (const auto& pi : patterns_)
      if (contains_pattern_through_positions(std::span<const int>(w_), pi, a, b)) return false;
    return true;
  }
  return is_class_member(spec_, from_trusted(w_));
}

bool McmcChain::step() {
  ++proposals_;
  if (n_ < 2) return false;
  // r in [0, n-1): position swap; [n-1, 2n-2): value swap; 2n-2: hold.
  auto r = static_cast<int>(rng_.below(2 * (static_cast<std::uint64_t>(n_) - 1) + 1));
  if (r == 2 * (n_ - 1)) return false;
  int a, b;
  if (r < n_ - 1) {
    a = r + 1;
    b = r + 2;
  } else {
    int v = r - (n_ - 1) + 1;
    a = inv_[v] + 1;
    b = inv_[v + 1] + 1;
    if (a > b) std::swap(a, b);
  }
  std::swap(w_[a - 1], w_[b - 1]);
  if (admissible_after_swap(a, b)) {
    inv_[w_[a - 1]] = a - 1;
    inv_[w_[b - 1]] = b - 1;
    ++accepted_;
    return true;
  }
  std::swap(w_[a - 1], w_[b - 1]);
  return false;
}

Permutation McmcChain::next() {
  std::int64_t steps = started_ ? thinning_ : burn_in_;
  started_ = true;
  for (std::int64_t s = 0; s < steps; ++s) step();
  return from_trusted(w_);
}

Permutation sample_mcmc(const ClassSpec& spec, int n, const McmcConfig& cfg, SeedSpec seed) {
  McmcChain chain(spec, n, cfg, seed);
  chain.next();
  return chain.next();
}

bool has_exact_sampler(const ClassSpec& spec) {
  switch (spec.id) {
    case ClassId::Uniform:
    case ClassId::Grassmannian:
    case ClassId::GrassmannianModified:
    case ClassId::Boolean:
    case ClassId::CoGrassmannian:
      return true;
    case ClassId::Avoidance:
      return spec.patterns.size() == 1 && (spec.patterns[0] == Permutation::parse("231") ||
                                           spec.patterns[0] == Permutation::parse("132"));
    default:
      return false;
  }
}

namespace {

class ExactSampler final : public Sampler {
 public:
  ExactSampler(const ClassSpec& spec, int n, SeedSpec seed) : spec_(spec), n_(n), rng_(seed) {
    if (spec.id == ClassId::Avoidance) av132_ = spec.patterns[0] == Permutation::parse("132");
  }
  Permutation next() override {
    switch (spec_.id) {
      case ClassId::Uniform: return sample_uniform(n_, rng_);
      case ClassId::Grassmannian: return sample_grassmannian_uniform(n_, rng_);
      case ClassId::GrassmannianModified: return sample_grassmannian_modified(n_, rng_).w;
      case ClassId::Boolean: return sample_boolean(n_, rng_).w;
      case ClassId::CoGrassmannian: return sample_cograssmannian(n_, rng_);
      default: return av132_ ? sample_av132(n_, rng_) : sample_av231(n_, rng_);
    }
  }
  bool exact() const override { return true; }

 private:
  ClassSpec spec_;
  int n_;
  Rng rng_;
  bool av132_ = false;
};

class ChainSampler final : public Sampler {
 public:
  ChainSampler(const ClassSpec& spec, int n, const McmcConfig& cfg, SeedSpec seed) : chain_(spec, n, cfg, seed) {}
  Permutation next() override { return chain_.next(); }
  bool exact() const override { return false; }

 private:
  McmcChain chain_;
};

}  // namespace

std::unique_ptr<Sampler> make_sampler(const ClassSpec& spec, int n, SeedSpec seed, const McmcConfig& cfg,
                                      bool force_mcmc) {
  check_n(n);
  if (!force_mcmc && has_exact_sampler(spec)) return std::make_unique<ExactSampler>(spec, n, seed);
  if (spec.id == ClassId::GrassmannianModified)
    fail(ErrorCode::Unsupported, "the modified Grassmannian law has no Metropolis sampler");
  return std::make_unique<ChainSampler>(spec, n, cfg, seed);
}

}  // namespace permstab
