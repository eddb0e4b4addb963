#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permstab {

// A permutation in one-line notation, values 1..n. Immutable.
class Permutation {
 public:
  explicit Permutation(std::vector<int> values);
  static Permutation identity(int n);
  // Accepts "3142" (single digits) or "3,1,4,2" / "3 1 4 2".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(values_.size()); }
  // w(j) for 1-based j; positions past n are fixed points.
  int operator()(int j) const { return j <= size() ? values_[j - 1] : j; }
  std::span<const int> values() const { return values_; }

  bool is_identity() const;
  Permutation inverse() const;
  // (this ∘ other)(j) = this(other(j)); sizes are padded with fixed points.
  Permutation compose(const Permutation& other) const;
  Permutation embed(int m) const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Trusted {};
  Permutation(std::vector<int> values, Trusted) : values_(std::move(values)) {}
  friend Permutation from_trusted(std::vector<int> values);

  std::vector<int> values_;
};

// Skips validation; callers guarantee a bijection on 1..n.
Permutation from_trusted(std::vector<int> values);

struct RecordProfile {
  std::vector<std::uint8_t> rec;
  std::vector<std::uint8_t> chi;
  std::vector<int> record_set;
};

int left_inversion_count(const Permutation& w, int j);
RecordProfile record_profile(const Permutation& w);
std::vector<std::uint8_t> chi_vector(const Permutation& w);
std::vector<int> record_set(const Permutation& w);
int fs_of(const Permutation& w);
int lambda(const Permutation& w, int i);

Permutation standardize(std::span<const int> word);
Permutation conjugate_by_w0(const Permutation& w);
std::int64_t inversion_count(const Permutation& w);

bool contains_pattern(const Permutation& w, const Permutation& pi);
bool avoids(const Permutation& w, std::span<const Permutation> patterns);
// Occurrences of pi that use both positions p and p+1 (1-based).
bool contains_pattern_through(const Permutation& w, const Permutation& pi, int p);
bool contains_pattern_through(std::span<const int> w, const Permutation& pi, int p);
// Occurrences of pi that use both positions a and b (1-based).
bool contains_pattern_through_positions(std::span<const int> w, const Permutation& pi, int a, int b);
// Occurrences of pi that use the last position of w.
bool contains_pattern_ending_at_last(std::span<const int> w, const Permutation& pi);

}  // namespace permstab
