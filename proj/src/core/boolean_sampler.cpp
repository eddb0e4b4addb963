#include <vector>

#include "core/error.hpp"
#include "core/samplers.hpp"

namespace permstab {

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");

namespace {

// Decides U < F_k / F_{k+d} for U uniform on [0,1), reading U 64 bits at a time.
// Thresholds t_k = floor(2^64 F_k / F_{k+d}) are exact; the ratios alternate around
// their limit with shrinking error, so once t_k = t_{k+1} every later threshold is equal.
class RatioThresholds {
 public:
  explicit RatioThresholds(int d) : d_(d) {
    ExactInt two64 = pow2(64);
    std::uint64_t prev = 0;
    for (long k = 1;; ++k) {
      std::uint64_t t = threshold(k, two64);
      if (k > 1 && t == prev) {
        stable_from_ = k - 1;
        stable_ = t;
        table_.pop_back();
        break;
      }
      table_.push_back(t);
      prev = t;
    }
  }

  bool below(long k, Rng& rng, std::uint64_t& ops) const {
    std::uint64_t t = k >= stable_from_ ? stable_ : table_[k - 1];
    std::uint64_t x = rng.next();
    ops += 2;
    if (x != t) return x < t;
    return refine(k, rng, ops);
  }

 private:
  std::uint64_t threshold(long k, const ExactInt& two64) const {
    ExactInt q = two64 * fib(k) / fib(k + d_);
    return q.get_ui();
  }

  // The leading word tied with the threshold; compare the remaining bits exactly.
  bool refine(long k, Rng& rng, std::uint64_t& ops) const {
    ExactRational r(fib(k), fib(k + d_));
    ExactRational two64(pow2(64));
    r *= two64;
    r -= ExactRational(ExactInt(r.get_num() / r.get_den()));
    while (true) {
      if (r == 0) return false;
      r *= two64;
      ExactInt whole = r.get_num() / r.get_den();
      r -= ExactRational(whole);
      std::uint64_t x = rng.next();
      ops += 2;
      ExactInt xx(static_cast<unsigned long>(x));
      if (xx != whole) return xx < whole;
    }
  }

  int d_;
  std::vector<std::uint64_t> table_;
  long stable_from_ = 0;
  std::uint64_t stable_ = 0;
};

const RatioThresholds& thresholds(int d) {
  static const RatioThresholds two(2), three(3);
  return d == 2 ? two : three;
}

}  // namespace

BooleanBranch boolean_branch(int m, int state) {
  auto u = extension_counts(m);
  BooleanBranch b;
  if (state == 0) {
    ExactInt total = u.u0 + u.u1;
    b.zero = ExactRational(u.u0, total);
    b.s = ExactRational(u.u1, total);
    b.c = 0;
  } else {
    ExactInt total = u.u0 + 2 * u.u1;
    b.zero = ExactRational(u.u0, total);
    b.s = ExactRational(u.u1, total);
    b.c = ExactRational(u.u1, total);
  }
  b.zero.canonicalize();
  b.s.canonicalize();
  b.c.canonicalize();
  return b;
}

BooleanDraw sample_boolean(int n, Rng& rng, std::uint64_t* ops_out) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "sampler needs n >= 1");
  std::uint64_t ops = 0;
  TagWord t;
  t.tags.resize(n - 1);
  int state = 0;
  for (int pos = 0; pos + 1 < n; ++pos) {
    const long m = n - pos - 2;
    // P(0) = U0/(U0+U1) = F_{2m+1}/F_{2m+3} from state 0, U0/(U0+2U1) = F_{2m+1}/F_{2m+4} from state 1.
    Tag tag;
    if (thresholds(state == 0 ? 2 : 3).below(2 * m + 1, rng, ops)) {
      tag = Tag::Zero;
    } else if (state == 0) {
      tag = Tag::S;
    } else {
      tag = rng.bit() ? Tag::C : Tag::S;
      ++ops;
    }
    t.tags[pos] = tag;
    state = tag != Tag::Zero;
  }
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = j + 1;
  for (const auto& b : blocks_of_tags(t).blocks) {
    for (int a = b.top; a >= b.bottom; --a) {
      std::swap(v[a - 1], v[a]);
      ++ops;
    }
  }
  ops += n;
  if (ops_out) *ops_out += ops;
  return {from_trusted(std::move(v)), std::move(t)};
}

}  // namespace permstab
