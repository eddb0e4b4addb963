#include "core/rng.hpp"

namespace permstab {

namespace {

constexpr unsigned __int128 kMultiplier =
    (static_cast<unsigned __int128>(2549297995355413924ULL) << 64) | 4865540595714422341ULL;

std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(SeedSpec seed) {
  std::uint64_t sm = seed.base_seed;
  unsigned __int128 init = (static_cast<unsigned __int128>(splitmix(sm)) << 64) | splitmix(sm);
  inc_ = (static_cast<unsigned __int128>(seed.stream_index) << 1) | 1u;
  state_ = 0;
  next();
  state_ += init;
  next();
}

std::uint64_t Rng::next() {
  state_ = state_ * kMultiplier + inc_;
  std::uint64_t hi = static_cast<std::uint64_t>(state_ >> 64), lo = static_cast<std::uint64_t>(state_);
  std::uint64_t x = hi ^ lo;
  unsigned rot = static_cast<unsigned>(state_ >> 122);
  return (x >> rot) | (x << ((64 - rot) & 63));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool Rng::bit() {
  if (bits_left_ == 0) {
    bits_ = next();
    bits_left_ = 64;
  }
  bool b = bits_ & 1;
  bits_ >>= 1;
  --bits_left_;
  return b;
}

}  // namespace permstab
