#include "core/classes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "core/error.hpp"

namespace permstab {

namespace {

std::vector<Permutation> parse_pattern_list(std::string_view list) {
  std::vector<Permutation> out;
  size_t i = 0;
  while (i <= list.size()) {
    size_t j = list.find_first_of(",;", i);
    if (j == std::string_view::npos) j = list.size();
    auto token = list.substr(i, j - i);
    if (!token.empty()) out.push_back(Permutation::parse(token));
    i = j + 1;
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "avoidance class needs at least one pattern");
  return out;
}

std::vector<Permutation> pats(std::initializer_list<const char*> names) {
  std::vector<Permutation> out;
  for (auto* s : names) out.push_back(Permutation::parse(s));
  return out;
}

}  // namespace

ClassSpec ClassSpec::parse(std::string_view name) {
  ClassSpec s;
  if (name == "uniform") s.id = ClassId::Uniform;
  else if (name == "grassmannian") s.id = ClassId::Grassmannian;
  else if (name == "grassmannian-modified") s.id = ClassId::GrassmannianModified;
  else if (name == "boolean") s.id = ClassId::Boolean;
  else if (name == "cograssmannian") s.id = ClassId::CoGrassmannian;
  else if (name == "fireworks") s.id = ClassId::Fireworks;
  else if (name == "smooth") s.id = ClassId::Smooth;
  else if (name == "vexillary") s.id = ClassId::Vexillary;
  else if (name == "covexillary") s.id = ClassId::CoVexillary;
  else if (name == "levi-spherical") s.id = ClassId::LeviSpherical;
  else if (name.rfind("av:", 0) == 0) {
    s.id = ClassId::Avoidance;
    s.patterns = parse_pattern_list(name.substr(3));
  } else {
    fail(ErrorCode::InvalidArgument, "unknown class: " + std::string(name));
  }
  return s;
}

ClassSpec ClassSpec::avoidance(std::vector<Permutation> patterns) {
  ClassSpec s;
  s.id = ClassId::Avoidance;
  s.patterns = std::move(patterns);
  return s;
}

std::string ClassSpec::name() const {
  switch (id) {
    case ClassId::Uniform: return "uniform";
    case ClassId::Grassmannian: return "grassmannian";
    case ClassId::GrassmannianModified: return "grassmannian-modified";
    case ClassId::Boolean: return "boolean";
    case ClassId::CoGrassmannian: return "cograssmannian";
    case ClassId::Fireworks: return "fireworks";
    case ClassId::Smooth: return "smooth";
    case ClassId::Vexillary: return "vexillary";
    case ClassId::CoVexillary: return "covexillary";
    case ClassId::LeviSpherical: return "levi-spherical";
    case ClassId::Avoidance: {
      std::string s = "av:";
      for (size_t i = 0; i < patterns.size(); ++i) {
        if (i) s += ',';
        s += patterns[i].to_string();
      }
      return s;
    }
  }
  return "?";
}

bool ClassSpec::conjugation_closed() const {
  switch (id) {
    case ClassId::Uniform:
    case ClassId::Grassmannian:
    case ClassId::GrassmannianModified:
    case ClassId::Boolean:
    case ClassId::CoGrassmannian:
      return true;
    case ClassId::Fireworks:
    case ClassId::LeviSpherical:
      return false;
    default: {
      // w avoids pi iff w0 w w0 avoids w0 pi w0, so a pattern set closed under conjugation suffices.
      auto p = *avoided_patterns();
      std::set<Permutation> set(p.begin(), p.end());
      for (const auto& pi : p)
        if (!set.count(conjugate_by_w0(pi))) return false;
      return true;
    }
  }
}

std::optional<std::vector<Permutation>> ClassSpec::avoided_patterns() const {
  switch (id) {
    case ClassId::Avoidance: return patterns;
    case ClassId::Smooth: return pats({"3412", "4231"});
    case ClassId::Vexillary: return pats({"2143"});
    case ClassId::CoVexillary: return pats({"3412"});
    default: return std::nullopt;
  }
}

Permutation grassmannian_build(int k, const std::vector<int>& V, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "grassmannian_build needs n >= 1");
  if (static_cast<int>(V.size()) != k) fail(ErrorCode::InvalidArgument, "grassmannian_build: |V| != k");
  std::vector<char> in(n + 1, 0);
  for (int x : V) {
    if (x < 1 || x > n || in[x]) fail(ErrorCode::InvalidArgument, "grassmannian_build: V is not a subset of [n]");
    in[x] = 1;
  }
  std::vector<int> out;
  out.reserve(n);
  for (int x = 1; x <= n; ++x)
    if (in[x]) out.push_back(x);
  for (int x = 1; x <= n; ++x)
    if (!in[x]) out.push_back(x);
  return from_trusted(std::move(out));
}

std::optional<GrassmannianDatum> grassmannian_datum(const Permutation& w) {
  const int n = w.size();
  int k = 0;
  for (int j = 1; j < n; ++j) {
    if (w(j) > w(j + 1)) {
      if (k) return std::nullopt;
      k = j;
    }
  }
  GrassmannianDatum d;
  d.k = k;
  for (int j = 1; j <= k; ++j) d.V.push_back(w(j));
  d.M = k ? w(k) : 0;
  return d;
}

int grassmannian_lambda(const GrassmannianDatum& d, int i) {
  if (i <= d.k) return d.M - d.k;
  if (i <= d.M) return d.M - i + 1;
  return 0;
}

bool is_grassmannian(const Permutation& w) { return grassmannian_datum(w).has_value(); }

bool is_boolean(const Permutation& w) { return lex_first_boolean_word(w).has_value(); }

bool is_fireworks(const Permutation& w) {
  int last_head = 0;
  for (int j = 1; j <= w.size(); ++j) {
    if (j == 1 || w(j) > w(j - 1)) {
      if (w(j) < last_head) return false;
      last_head = w(j);
    }
  }
  return true;
}

Permutation levi_w0_of_inverse_descents(const Permutation& w) {
  const int n = w.size();
  auto inv = w.inverse();
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 1);
  for (int a = 1; a < n;) {
    if (inv(a) > inv(a + 1)) {
      int b = a;
      while (b + 1 < n && inv(b + 1) > inv(b + 2)) ++b;
      std::reverse(out.begin() + (a - 1), out.begin() + b + 1);
      a = b + 1;
    } else {
      ++a;
    }
  }
  return from_trusted(std::move(out));
}

bool is_levi_spherical(const Permutation& w) { return is_boolean(levi_w0_of_inverse_descents(w).compose(w)); }

bool is_class_member(const ClassSpec& spec, const Permutation& w) {
  switch (spec.id) {
    case ClassId::Uniform: return true;
    case ClassId::Grassmannian:
    case ClassId::GrassmannianModified: return is_grassmannian(w);
    case ClassId::Boolean: return is_boolean(w);
    case ClassId::CoGrassmannian: return is_grassmannian(w.inverse());
    case ClassId::Fireworks: return is_fireworks(w);
    case ClassId::LeviSpherical: return is_levi_spherical(w);
    case ClassId::Avoidance:
    case ClassId::Smooth:
    case ClassId::Vexillary:
    case ClassId::CoVexillary: return avoids(w, *spec.avoided_patterns());
  }
  return false;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(from_trusted(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

void for_each_avoider(int n, const std::vector<Permutation>& patterns, const std::function<void(const Permutation&)>& fn) {
  std::vector<int> word;
  std::vector<char> used(n + 1, 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(word.size()) == n) {
      fn(from_trusted(word));
      return;
    }
    for (int x = 1; x <= n; ++x) {
      if (used[x]) continue;
      word.push_back(x);
      bool ok = true;
      for (const auto& p : patterns)
        if (contains_pattern_ending_at_last(word, p)) {
          ok = false;
          break;
        }
      if (ok) {
        used[x] = 1;
        rec();
        used[x] = 0;
      }
      word.pop_back();
    }
  };
  rec();
}

namespace {

void check_limit(int n, int limit, const ClassSpec& spec) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "enumeration needs n >= 1");
  if (n > limit)
    fail(ErrorCode::BudgetExceeded, "enumeration of " + spec.name() + " at n=" + std::to_string(n) +
                                        " exceeds the exhaustive limit " + std::to_string(limit));
}

// All subsets V of [n] with callback (k, V).
void for_each_subset(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> V;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    V.clear();
    for (int x = 1; x <= n; ++x)
      if (mask >> (x - 1) & 1) V.push_back(x);
    fn(V);
  }
}

bool is_initial_segment(const std::vector<int>& V) {
  for (size_t i = 0; i < V.size(); ++i)
    if (V[i] != static_cast<int>(i) + 1) return false;
  return true;
}

}  // namespace

void for_each_member(const ClassSpec& spec, int n, const std::function<void(const Permutation&)>& fn,
                     const EnumerationLimits& limits) {
  switch (spec.id) {
    case ClassId::Uniform:
      check_limit(n, limits.generic, spec);
      for_each_permutation(n, fn);
      return;
    case ClassId::Grassmannian:
    case ClassId::GrassmannianModified:
    case ClassId::CoGrassmannian: {
      check_limit(n, limits.grassmannian, spec);
      bool co = spec.id == ClassId::CoGrassmannian;
      fn(Permutation::identity(n));
      for_each_subset(n, [&](const std::vector<int>& V) {
        if (is_initial_segment(V)) return;
        auto w = grassmannian_build(static_cast<int>(V.size()), V, n);
        fn(co ? w.inverse() : w);
      });
      return;
    }
    case ClassId::Boolean:
      check_limit(n, limits.boolean, spec);
      for_each_tag_word(n - 1, [&](const TagWord& t) { fn(tag_decode(t)); });
      return;
    case ClassId::Avoidance:
    case ClassId::Smooth:
    case ClassId::Vexillary:
    case ClassId::CoVexillary:
      check_limit(n, limits.generic, spec);
      for_each_avoider(n, *spec.avoided_patterns(), fn);
      return;
    case ClassId::Fireworks:
    case ClassId::LeviSpherical:
      check_limit(n, limits.generic, spec);
      for_each_permutation(n, [&](const Permutation& w) {
        if (is_class_member(spec, w)) fn(w);
      });
      return;
  }
}

void for_each_weighted_member(const ClassSpec& spec, int n,
                              const std::function<void(const Permutation&, std::uint64_t)>& fn,
                              const EnumerationLimits& limits) {
  if (spec.id == ClassId::GrassmannianModified) {
    check_limit(n, limits.grassmannian, spec);
    fn(Permutation::identity(n), static_cast<std::uint64_t>(n) + 1);
    for_each_subset(n, [&](const std::vector<int>& V) {
      if (is_initial_segment(V)) return;
      fn(grassmannian_build(static_cast<int>(V.size()), V, n), 1);
    });
    return;
  }
  for_each_member(spec, n, [&](const Permutation& w) { fn(w, 1); }, limits);
}

std::vector<Permutation> enumerate_class(const ClassSpec& spec, int n, const EnumerationLimits& limits) {
  std::vector<Permutation> out;
  for_each_member(spec, n, [&](const Permutation& w) { out.push_back(w); }, limits);
  return out;
}

std::uint64_t count_class(const ClassSpec& spec, int n, const EnumerationLimits& limits) {
  std::uint64_t c = 0;
  for_each_member(spec, n, [&](const Permutation&) { ++c; }, limits);
  return c;
}

}  // namespace permstab
