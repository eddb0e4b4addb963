#pragma once

#include <cstdint>

namespace permstab {

struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;
};

// PCG XSL-RR 128/64. State is seeded from base_seed; the increment is
// 2*stream_index + 1, so distinct (base_seed, stream_index) give distinct generators.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(SeedSpec seed);
  Rng(std::uint64_t base_seed, std::uint64_t stream) : Rng(SeedSpec{base_seed, stream}) {}

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  // Uniform on [0, bound), exact (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound);
  bool bit();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

 private:
  unsigned __int128 state_;
  unsigned __int128 inc_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace permstab
