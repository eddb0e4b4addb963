#include "core/perm.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "core/error.hpp"

namespace permstab {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const int n = size();
  if (n < 1) fail(ErrorCode::NotAPermutation, "permutation must have n >= 1");
  std::vector<char> seen(n + 1, 0);
  for (int v : values_) {
    if (v < 1 || v > n || seen[v]) fail(ErrorCode::NotAPermutation, "values are not a bijection on 1..n");
    seen[v] = 1;
  }
}

Permutation from_trusted(std::vector<int> values) { return Permutation(std::move(values), Permutation::Trusted{}); }

Permutation Permutation::identity(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "identity needs n >= 1");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return from_trusted(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> vals;
  bool separated = text.find_first_of(", ") != std::string_view::npos;
  if (!separated) {
    for (char c : text) {
      if (c < '1' || c > '9') fail(ErrorCode::InvalidArgument, "bad permutation literal: " + std::string(text));
      vals.push_back(c - '0');
    }
  } else {
    size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ',' || text[i] == ' ')) ++i;
      if (i == text.size()) break;
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc()) fail(ErrorCode::InvalidArgument, "bad permutation literal: " + std::string(text));
      i = static_cast<size_t>(ptr - text.data());
      vals.push_back(v);
    }
  }
  return Permutation(std::move(vals));
}

bool Permutation::is_identity() const {
  for (int j = 0; j < size(); ++j)
    if (values_[j] != j + 1) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (int j = 0; j < size(); ++j) inv[values_[j] - 1] = j + 1;
  return from_trusted(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  int m = std::max(size(), other.size());
  std::vector<int> out(m);
  for (int j = 1; j <= m; ++j) out[j - 1] = (*this)(other(j));
  return from_trusted(std::move(out));
}

Permutation Permutation::embed(int m) const {
  if (m < size()) fail(ErrorCode::OutOfRange, "cannot embed into a smaller symmetric group");
  std::vector<int> out(values_);
  for (int j = size() + 1; j <= m; ++j) out.push_back(j);
  return from_trusted(std::move(out));
}

std::string Permutation::to_string() const {
  std::string s;
  bool digits = size() <= 9;
  for (int j = 0; j < size(); ++j) {
    if (!digits && j) s += ',';
    s += std::to_string(values_[j]);
  }
  return s;
}

int left_inversion_count(const Permutation& w, int j) {
  if (j < 1 || j > w.size()) fail(ErrorCode::OutOfRange, "index out of range");
  int d = 0;
  for (int k = 1; k < j; ++k)
    if (w(k) > w(j)) ++d;
  return d;
}

std::vector<std::uint8_t> chi_vector(const Permutation& w) {
  std::vector<std::uint8_t> chi(w.size());
  int best = 0;
  for (int j = 0; j < w.size(); ++j) {
    int v = w.values()[j];
    chi[j] = v < best;
    best = std::max(best, v);
  }
  return chi;
}

RecordProfile record_profile(const Permutation& w) {
  RecordProfile p;
  p.chi = chi_vector(w);
  p.rec.resize(p.chi.size());
  for (size_t j = 0; j < p.chi.size(); ++j) {
    p.rec[j] = 1 - p.chi[j];
    if (p.rec[j]) p.record_set.push_back(static_cast<int>(j) + 1);
  }
  return p;
}

std::vector<int> record_set(const Permutation& w) { return record_profile(w).record_set; }

int fs_of(const Permutation& w) {
  for (int j = w.size(); j >= 1; --j)
    if (w(j) != j) return j;
  return 1;
}

int lambda(const Permutation& w, int i) {
  if (i < 1) fail(ErrorCode::OutOfRange, "lambda index must be >= 1");
  auto chi = chi_vector(w);
  int s = 0;
  for (int j = i; j <= w.size(); ++j) s += chi[j - 1];
  return s;
}

Permutation standardize(std::span<const int> word) {
  std::vector<int> order(word.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return word[a] < word[b]; });
  std::vector<int> out(word.size());
  for (size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && word[order[r]] == word[order[r - 1]]) fail(ErrorCode::InvalidArgument, "standardize: duplicate entries");
    out[order[r]] = static_cast<int>(r) + 1;
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "standardize: empty word");
  return from_trusted(std::move(out));
}

Permutation conjugate_by_w0(const Permutation& w) {
  const int n = w.size();
  std::vector<int> out(n);
  for (int i = 1; i <= n; ++i) out[i - 1] = n + 1 - w(n + 1 - i);
  return from_trusted(std::move(out));
}

std::int64_t inversion_count(const Permutation& w) {
  // Fenwick tree over values.
  const int n = w.size();
  std::vector<int> tree(n + 1, 0);
  std::int64_t inv = 0;
  for (int j = n; j >= 1; --j) {
    for (int x = w(j) - 1; x > 0; x -= x & -x) inv += tree[x];
    for (int x = w(j); x <= n; x += x & -x) ++tree[x];
  }
  return inv;
}

namespace {

// Backtracking matcher. fixed[t] >= 0 pins pattern index t to that (0-based) position.
class Matcher {
 public:
  Matcher(std::span<const int> w, std::span<const int> pi) : w_(w), pi_(pi), k_(static_cast<int>(pi.size())) {
    lower_.assign(k_, -1);
    upper_.assign(k_, -1);
    for (int t = 0; t < k_; ++t) {
      for (int s = 0; s < t; ++s) {
        if (pi_[s] < pi_[t] && (lower_[t] < 0 || pi_[s] > pi_[lower_[t]])) lower_[t] = s;
        if (pi_[s] > pi_[t] && (upper_[t] < 0 || pi_[s] < pi_[upper_[t]])) upper_[t] = s;
      }
    }
    pos_.assign(k_, -1);
    fixed_.assign(k_, -1);
  }

  void pin(int t, int position) { fixed_[t] = position; }
  void clear_pins() { std::fill(fixed_.begin(), fixed_.end(), -1); }

  bool run() { return k_ == 0 || step(0, -1); }

 private:
  bool fits(int t, int p) const {
    int v = w_[p];
    if (lower_[t] >= 0 && w_[pos_[lower_[t]]] > v) return false;
    if (upper_[t] >= 0 && w_[pos_[upper_[t]]] < v) return false;
    return true;
  }

  bool step(int t, int prev) {
    if (t == k_) return true;
    const int n = static_cast<int>(w_.size());
    if (fixed_[t] >= 0) {
      int p = fixed_[t];
      if (p <= prev || !fits(t, p)) return false;
      pos_[t] = p;
      return step(t + 1, p);
    }
    int hi = n - (k_ - t);
    for (int u = t + 1; u < k_; ++u) {
      if (fixed_[u] >= 0) {
        hi = std::min(hi, fixed_[u] - (u - t));
        break;
      }
    }
    for (int p = prev + 1; p <= hi; ++p) {
      if (!fits(t, p)) continue;
      pos_[t] = p;
      if (step(t + 1, p)) return true;
    }
    return false;
  }

  std::span<const int> w_;
  std::span<const int> pi_;
  int k_;
  std::vector<int> lower_, upper_, pos_, fixed_;
};

}  // namespace

bool contains_pattern(const Permutation& w, const Permutation& pi) {
  if (pi.size() > w.size()) return false;
  Matcher m(w.values(), pi.values());
  return m.run();
}

bool avoids(const Permutation& w, std::span<const Permutation> patterns) {
  for (const auto& p : patterns)
    if (contains_pattern(w, p)) return false;
  return true;
}

bool contains_pattern_through(const Permutation& w, const Permutation& pi, int p) {
  return contains_pattern_through(w.values(), pi, p);
}

bool contains_pattern_through(std::span<const int> w, const Permutation& pi, int p) {
  if (p < 1 || p >= static_cast<int>(w.size())) return false;
  return contains_pattern_through_positions(w, pi, p, p + 1);
}

bool contains_pattern_through_positions(std::span<const int> w, const Permutation& pi, int a, int b) {
  const int n = static_cast<int>(w.size()), k = pi.size();
  if (a > b) std::swap(a, b);
  if (k > n || k < 2 || a < 1 || b > n || a == b) return false;
  bool ascent = w[a - 1] < w[b - 1];
  auto pv = pi.values();
  Matcher m(w, pv);
  for (int r = 0; r + 1 < k; ++r) {
    if (r > a - 1) break;
    for (int s = r + 1; s < k; ++s) {
      if (s - r - 1 > b - a - 1) break;
      if (k - s - 1 > n - b) continue;
      if ((pv[r] < pv[s]) != ascent) continue;
      m.clear_pins();
      m.pin(r, a - 1);
      m.pin(s, b - 1);
      if (m.run()) return true;
    }
  }
  return false;
}

bool contains_pattern_ending_at_last(std::span<const int> w, const Permutation& pi) {
  const int n = static_cast<int>(w.size()), k = pi.size();
  if (k > n) return false;
  Matcher m(w, pi.values());
  m.pin(k - 1, n - 1);
  return m.run();
}

}  // namespace permstab
