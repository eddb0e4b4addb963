#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "core/classes.hpp"
#include "core/closed_forms.hpp"
#include "core/equivalence.hpp"
#include "core/error.hpp"
#include "core/oracle.hpp"
#include "core/samplers.hpp"
#include "core/stability.hpp"
#include "core/tags.hpp"
#include "experiments/runner.hpp"

namespace permstab::experiments {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}
  void check(const std::string& what, bool ok, const std::string& detail = "") {
    results_.push_back({name_, what, ok, ok ? "" : detail});
  }
  // Runs fn and records a failure with the exception text instead of aborting the suite.
  void guarded(const std::string& what, const std::function<std::string()>& fn) {
    try {
      std::string detail = fn();
      check(what, detail.empty(), detail);
    } catch (const std::exception& e) {
      check(what, false, std::string("exception: ") + e.what());
    }
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string name_;
  std::vector<CheckResult> results_;
};

std::string at(int n) { return "n=" + std::to_string(n); }

ClassSpec cls(const char* name) { return ClassSpec::parse(name); }

// ---- core ----

std::vector<CheckResult> core_suite(bool expensive) {
  Suite s("core");
  const int nmax = expensive ? 8 : 7;
  s.guarded("record profile, fs_of and lambda invariants", [&]() -> std::string {
    for (int n = 1; n <= nmax; ++n) {
      std::string err;
      for_each_permutation(n, [&](const Permutation& w) {
        if (!err.empty()) return;
        auto p = record_profile(w);
        if (p.rec[0] != 1 || p.record_set.empty() || p.record_set[0] != 1) err = "rec_1 != 1 for " + w.to_string();
        for (int j = 1; j <= n; ++j) {
          if (p.rec[j - 1] + p.chi[j - 1] != 1) err = "rec+chi != 1";
          if ((left_inversion_count(w, j) == 0) != (p.rec[j - 1] == 1)) err = "rec disagrees with d_j";
          if (lambda(w, j) - lambda(w, j + 1) != p.chi[j - 1]) err = "lambda difference != chi";
        }
        int fs = fs_of(w);
        if (!w.is_identity()) {
          if (p.chi[fs - 1] != 1) err = "chi at fs_of is 0 for " + w.to_string();
          for (int j = fs + 1; j <= n; ++j)
            if (p.chi[j - 1]) err = "chi beyond fs_of for " + w.to_string();
        }
        auto c = conjugate_by_w0(w);
        if (conjugate_by_w0(c) != w || inversion_count(c) != inversion_count(w)) err = "conjugation for " + w.to_string();
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  s.guarded("contains_pattern agrees with all-subsequence scan", [&]() -> std::string {
    std::vector<Permutation> patterns;
    for (int k = 1; k <= 4; ++k) for_each_permutation(k, [&](const Permutation& p) { patterns.push_back(p); });
    for (int n = 1; n <= (expensive ? 8 : 6); ++n) {
      std::string err;
      for_each_permutation(n, [&](const Permutation& w) {
        if (!err.empty()) return;
        for (const auto& pi : patterns) {
          const int k = pi.size();
          bool brute = false;
          if (k <= n) {
            std::vector<int> idx(k);
            std::vector<char> sel(n, 0);
            std::fill(sel.begin(), sel.begin() + k, 1);
            do {
              std::vector<int> sub;
              for (int j = 0; j < n; ++j)
                if (sel[j]) sub.push_back(w.values()[j]);
              if (standardize(sub) == pi) brute = true;
            } while (!brute && std::prev_permutation(sel.begin(), sel.end()));
          }
          if (brute != contains_pattern(w, pi)) err = w.to_string() + " vs " + pi.to_string();
        }
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  s.guarded("standardize idempotent", [&]() -> std::string {
    std::vector<int> word{9, 2, 40, 7, 13};
    auto a = standardize(word);
    return standardize(a.values()) == a && a == Permutation::parse("31524") ? "" : "standardize(95,2,40,7,13)";
  });
  s.guarded("walk invariants over all pairs", [&]() -> std::string {
    const int n = expensive ? 6 : 5;
    auto all = enumerate_class(cls("uniform"), n);
    for (const auto& u : all)
      for (const auto& v : all) {
        auto t = walk(u, v);
        auto d = increments(t);
        int m = std::max(fs_of(u), fs_of(v));
        if (t.m != m || static_cast<int>(t.y.size()) != m + 1) return "trace length for " + u.to_string() + "," + v.to_string();
        for (int i = 1; i <= m + 1; ++i)
          if (t.y[i - 1] != lambda(u, i) + lambda(v, i) + i - 1) return "Y_i formula";
        for (int x : d)
          if (x < -1 || x > 1) return "increment outside {-1,0,1}";
        if (d.empty() || d[0] != 1) return "delta_1 != 1";
        if (!increments_match_records(t, u, v)) return "delta != 1 - chi(u) - chi(v)";
        if (t.fs < m || t.fs > 2 * m || t.fs != fs_pair(v, u)) return "fs bounds or symmetry";
      }
    return "";
  });
  s.guarded("frozen walk values", [&]() -> std::string {
    auto P = [](const char* x) { return Permutation::parse(x); };
    if (walk(P("213"), P("213")).y != std::vector<int>{2, 3, 2}) return "213,213";
    if (walk(P("12"), P("21")).y != std::vector<int>{1, 2, 2}) return "12,21";
    if (fs_pair(P("132"), P("132")) != 4 || fs_pair(P("21"), P("21")) != 3) return "fs_pair";
    if (bs_pair(P("213"), P("213"), 3) != 1 || bs_pair(P("21"), P("21"), 2) != 1) return "bs_pair";
    if (bs_pair(P("1"), P("1"), 1) != 0 || bs_pair(P("123"), P("123"), 3) != -2) return "bs identity";
    return "";
  });
  return s.take();
}

// ---- classes ----

std::vector<CheckResult> classes_suite(bool expensive) {
  Suite s("classes");
  s.guarded("tag bijection round trip", [&]() -> std::string {
    for (int n = 1; n <= 12; ++n) {
      std::set<Permutation> images;
      std::string err;
      for_each_tag_word(n - 1, [&](const TagWord& t) {
        auto w = tag_decode(t);
        if (!(tag_encode(w) == t)) err = "encode(decode(" + t.to_string() + "))";
        images.insert(w);
      });
      if (!err.empty()) return at(n) + ": " + err;
      if (images.size() != fib(2L * n - 1).get_ui()) return at(n) + ": decode not injective";
      if (n <= (expensive ? 9 : 8)) {
        std::uint64_t boolean = 0;
        for_each_permutation(n, [&](const Permutation& w) {
          if (auto t = try_tag_encode(w)) {
            ++boolean;
            if (tag_decode(*t) != w) err = "decode(encode(" + w.to_string() + "))";
          }
        });
        if (!err.empty()) return at(n) + ": " + err;
        if (boolean != images.size()) return at(n) + ": Boolean filter count differs";
      }
    }
    return "";
  });
  s.guarded("tag word count = F_{2n-1}", [&]() -> std::string {
    for (int n = 1; n <= 14; ++n) {
      std::uint64_t c = 0;
      for_each_tag_word(n - 1, [&](const TagWord&) { ++c; });
      if (c != fib(2L * n - 1).get_ui()) return at(n);
    }
    return "";
  });
  s.guarded("chi locality", [&]() -> std::string {
    for (int n = 1; n <= 10; ++n) {
      std::string err;
      for_each_tag_word(n - 1, [&](const TagWord& t) {
        auto chi = chi_vector(tag_decode(t));
        for (int j = 1; j <= n; ++j)
          if (chi_from_tags(t, j) != chi[j - 1]) err = t.to_string() + " j=" + std::to_string(j);
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  s.guarded("Grassmannian fs_of = M and lambda formula", [&]() -> std::string {
    for (int n = 1; n <= 9; ++n) {
      std::string err;
      for_each_member(cls("grassmannian"), n, [&](const Permutation& w) {
        auto d = *grassmannian_datum(w);
        if (!w.is_identity()) {
          if (fs_of(w) != d.M || d.M <= d.k) err = "fs_of != M for " + w.to_string();
          for (int j = d.M + 1; j <= n; ++j)
            if (w(j) != j) err = "moved beyond M";
        }
        for (int i = 1; i <= n + 1; ++i)
          if (grassmannian_lambda(d, i) != lambda(w, i)) err = "lambda for " + w.to_string();
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  s.guarded("Boolean iff avoids 321 and 3412", [&]() -> std::string {
    std::vector<Permutation> p{Permutation::parse("321"), Permutation::parse("3412")};
    for (int n = 1; n <= 8; ++n) {
      std::string err;
      for_each_permutation(n, [&](const Permutation& w) {
        if (is_boolean(w) != avoids(w, p)) err = w.to_string();
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  s.guarded("class counts", [&]() -> std::string {
    for (int n = 1; n <= 15; ++n)
      if (count_class(cls("grassmannian"), n) != (std::uint64_t{1} << n) - n) return "grassmannian " + at(n);
    for (int n = 1; n <= 12; ++n)
      if (count_class(cls("boolean"), n) != fib(2L * n - 1).get_ui()) return "boolean " + at(n);
    for (int n = 1; n <= 10; ++n) {
      auto cat = catalan(n).get_ui();
      if (count_class(cls("av:132"), n) != cat || count_class(cls("av:231"), n) != cat) return "catalan " + at(n);
    }
    return "";
  });
  s.guarded("Levi-spherical predicate via w0(I(w)) w", [&]() -> std::string {
    for (int n = 1; n <= 6; ++n) {
      std::string err;
      for_each_permutation(n, [&](const Permutation& w) {
        auto inv = w.inverse();
        std::vector<int> I;
        for (int i = 1; i < n; ++i)
          if (inv(i) > inv(i + 1)) I.push_back(i);
        // Longest element of the parabolic subgroup, built from its reduced word.
        std::vector<int> word;
        for (size_t a = 0; a < I.size();) {
          size_t b = a;
          while (b + 1 < I.size() && I[b + 1] == I[b] + 1) ++b;
          for (int top = I[b]; top >= I[a]; --top)
            for (int g = I[a]; g <= top; ++g) word.push_back(g);
          a = b + 1;
        }
        auto w0I = apply_word(word, n);
        if (w0I != levi_w0_of_inverse_descents(w)) err = "w0(I) for " + w.to_string();
        if (is_levi_spherical(w) != is_boolean(w0I.compose(w))) err = "predicate for " + w.to_string();
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  return s.take();
}

// ---- formulas ----

std::vector<CheckResult> formulas_suite(bool expensive) {
  Suite s("formulas");
  s.guarded("Fibonacci addition and Tagiuri-Vajda identities", [&]() -> std::string {
    for (long m = -30; m <= 30; ++m)
      for (long k = -30; k <= 30; ++k)
        if (fib(m + k + 1) != fib(m + 1) * fib(k + 1) + fib(m) * fib(k)) return "addition m=" + std::to_string(m);
    for (long r = -15; r <= 15; ++r)
      for (long a = -15; a <= 15; ++a)
        for (long b = -15; b <= 15; ++b) {
          ExactInt sign = (r % 2 == 0) ? 1 : -1;
          if (fib(r + a) * fib(r + b) - fib(r) * fib(r + a + b) != sign * fib(a) * fib(b)) return "Tagiuri-Vajda";
        }
    return "";
  });
  s.guarded("two expressions for N(n,j), n <= 60", [&]() -> std::string {
    for (int n = 1; n <= 60; ++n)
      for (int j = 1; j <= n; ++j)
        if (boolean_record_count(n, j) != boolean_record_count_product(n, j)) return at(n) + " j=" + std::to_string(j);
    return "";
  });
  s.guarded("golden-ratio form of the Boolean record probability", [&]() -> std::string {
    for (int n = 1; n <= 40; ++n)
      for (int j = 1; j <= n; ++j) {
        double exact = record_prob(Family::Boolean, n, j).get_d();
        if (std::abs(exact - boolean_record_prob_phi(n, j)) > 1e-12) return at(n) + " j=" + std::to_string(j);
      }
    return "";
  });
  s.guarded("Catalan fibers sum to Cat_n", [&]() -> std::string {
    for (int n = 1; n <= 12; ++n) {
      ExactInt sum = 0;
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> R{1};
        for (int j = 2; j <= n; ++j)
          if (mask >> (j - 2) & 1) R.push_back(j);
        sum += catalan_fiber(R, n);
      }
      if (sum != catalan(n)) return at(n);
    }
    return "";
  });
  s.guarded("extension counts, kernels and Dobrushin bound", [&]() -> std::string {
    for (int m = 0; m <= 60; ++m) {
      auto a = extension_counts(m), b = extension_counts_by_matrix(m);
      if (a.u0 != b.u0 || a.u1 != b.u1) return "extension counts m=" + std::to_string(m);
    }
    const ExactRational sixth(1, 6);
    for (int n = 2; n <= 200; ++n) {
      for (int t = 0; t <= n - 2; ++t)
        for (int st = 0; st <= 1; ++st) {
          auto row = kernel(n, t, st);
          if (row.p0 + row.p1 != 1 || row.p0 < 0 || row.p1 < 0) return "kernel row " + at(n);
        }
      if (dobrushin_delta(n) > sixth) return "dobrushin " + at(n);
    }
    return "";
  });
  s.guarded("record probabilities against enumeration", [&]() -> std::string {
    const int nmax = expensive ? 9 : 8;
    for (int n = 1; n <= nmax; ++n) {
      for (auto [name, fam] : {std::pair{"uniform", Family::Uniform}, std::pair{"grassmannian", Family::Grassmannian},
                               std::pair{"boolean", Family::Boolean}}) {
        std::vector<std::uint64_t> rec(n + 1, 0);
        std::uint64_t total = 0;
        for_each_member(cls(name), n, [&](const Permutation& w) {
          ++total;
          auto chi = chi_vector(w);
          for (int j = 1; j <= n; ++j) rec[j] += 1 - chi[j - 1];
        });
        for (int j = 1; j <= n; ++j) {
          ExactRational f(ExactInt(static_cast<unsigned long>(rec[j])), ExactInt(static_cast<unsigned long>(total)));
          f.canonicalize();
          if (f != record_prob(fam, n, j)) return std::string(name) + " " + at(n) + " j=" + std::to_string(j);
        }
      }
    }
    return "";
  });
  s.guarded("expectation formulas against enumeration", [&]() -> std::string {
    for (int n = 2; n <= 7; ++n) {
      // Uniform E[Y_i] over S_n x S_n; Y_i only needs Λ, defined for every i.
      auto all = enumerate_class(cls("uniform"), n);
      for (int i = 1; i <= n; ++i) {
        ExactInt acc = 0;
        for (const auto& w : all) acc += 2 * lambda(w, i);
        ExactRational e(acc, ExactInt(static_cast<unsigned long>(all.size())));
        e.canonicalize();
        if (e + (i - 1) != uniform_expected_y(n, i)) return "uniform E[Y_i] " + at(n);
      }
      auto boolean = enumerate_class(cls("boolean"), n);
      ExactInt chi_n = 0;
      for (const auto& w : boolean) chi_n += chi_vector(w)[n - 1];
      ExactRational ey = ExactRational(n - 1) + 2 * ExactRational(chi_n, ExactInt(static_cast<unsigned long>(boolean.size())));
      if (ey != boolean_terminal_mean(n)) return "Boolean E[Y_n] " + at(n);
    }
    for (int n = 1; n <= 10; ++n) {
      ExactInt sm = 0, sk = 0;
      for (std::uint32_t a = 0; a < (1u << n); ++a) {
        int ma = 0, ka = __builtin_popcount(a);
        for (int x = 1; x <= n; ++x)
          if (a >> (x - 1) & 1) ma = x;
        sm += ma;
        for (std::uint32_t b = 0; b < (1u << n); ++b) sk += std::max(ka, __builtin_popcount(b));
      }
      ExactRational em(sm, pow2(n)), ek(sk, pow2(2 * n));
      em.canonicalize();
      ek.canonicalize();
      if (em != grassmannian_expected_max_value(n)) return "E[M] " + at(n);
      if (ek != grassmannian_expected_max_descent(n)) return "E[k_max] " + at(n);
    }
    return "";
  });
  s.guarded("closed-form spot values", [&]() -> std::string {
    if (fib(5) != 5 || fib(-2) != -1 || fib(0) != 0) return "fib";
    if (boolean_record_count(5, 3) != 19) return "N(5,3)";
    if (record_prob(Family::Grassmannian, 3, 2) != ExactRational(3, 5)) return "Grassmannian 3/5";
    if (dobrushin_term(3, 0) != ExactRational(3, 20)) return "dobrushin term";
    if (boolean_terminal_mean(3) != ExactRational(16, 5)) return "terminal mean";
    if (std::abs(limit_cdf_grassmannian(0) - 0.75) > 1e-15) return "limit cdf";
    return "";
  });
  return s.take();
}

// ---- samplers ----

std::vector<CheckResult> samplers_suite(bool expensive) {
  Suite s("samplers");
  s.guarded("Boolean path-probability audit", [&]() -> std::string {
    for (int n = 1; n <= 6; ++n) {
      std::string err;
      ExactRational target(1, fib(2L * n - 1));
      for_each_tag_word(n - 1, [&](const TagWord& t) {
        ExactRational p = 1;
        int state = 0;
        for (int pos = 0; pos < t.length(); ++pos) {
          auto b = boolean_branch(n - pos - 2, state);
          p *= t.tags[pos] == Tag::Zero ? b.zero : t.tags[pos] == Tag::S ? b.s : b.c;
          state = t.tags[pos] != Tag::Zero;
        }
        if (p != target) err = t.to_string();
      });
      if (!err.empty()) return at(n) + ": " + err;
    }
    return "";
  });
  s.guarded("Catalan sampler audit over all growth paths", [&]() -> std::string {
    for (int n = 1; n <= 6; ++n) {
      for (auto label : {CatalanLabel::Av231, CatalanLabel::Av132}) {
        std::map<Permutation, std::uint64_t> hits;
        std::vector<std::uint64_t> bounds;
        for (int i = 0; i < n; ++i) bounds.push_back(2 * (2 * i + 1));
        std::vector<std::uint64_t> digits(n, 0);
        std::uint64_t paths = 0;
        while (true) {
          int idx = 0;
          auto tree = remy_tree(n, [&](std::uint64_t) { return digits[idx++]; });
          ++hits[tree_to_permutation(tree, label)];
          ++paths;
          int d = 0;
          while (d < n && ++digits[d] == bounds[d]) digits[d++] = 0;
          if (d == n) break;
        }
        auto cat = catalan(n).get_ui();
        if (hits.size() != cat) return at(n) + ": support size";
        auto pattern = Permutation::parse(label == CatalanLabel::Av231 ? "231" : "132");
        std::vector<std::uint64_t> root(n + 1, 0);
        for (const auto& [w, c] : hits) {
          if (c * cat != paths) return at(n) + ": non-uniform at " + w.to_string();
          if (contains_pattern(w, pattern)) return at(n) + ": pattern present";
          root[w.inverse()(n)] += c;
        }
        for (int p = 1; p <= n; ++p) {
          ExactRational got(ExactInt(static_cast<unsigned long>(root[p])), ExactInt(static_cast<unsigned long>(paths)));
          got.canonicalize();
          ExactRational want(catalan(p - 1) * catalan(n - p), catalan(n));
          want.canonicalize();
          if (got != want) return at(n) + ": root split";
        }
      }
    }
    return "";
  });
  s.guarded("Grassmannian rejection algebra", [&]() -> std::string {
    for (int n = 1; n <= 6; ++n) {
      // One round: identity with mass (n+1)/2^n, accepted with probability 1/(n+1).
      ExactRational accept_id = ExactRational(n + 1, pow2(n)) * ExactRational(1, n + 1);
      ExactRational accept_other(1, pow2(n));
      ExactRational round = accept_id + accept_other * (pow2(n) - n - 1);
      ExactRational uniform(1, pow2(n) - n);
      if (accept_id / round != uniform || accept_other / round != uniform) return at(n);
    }
    return "";
  });
  s.guarded("sample closure and determinism", [&]() -> std::string {
    for (const char* name : {"uniform", "grassmannian", "grassmannian-modified", "boolean", "cograssmannian", "av:231", "av:132"}) {
      auto spec = cls(name);
      for (int n : {1, 2, 5, 9}) {
        auto a = make_sampler(spec, n, SeedSpec{7, 3}, {});
        auto b = make_sampler(spec, n, SeedSpec{7, 3}, {});
        for (int i = 0; i < 300; ++i) {
          auto w = a->next();
          if (!is_class_member(spec, w)) return std::string(name) + " produced " + w.to_string();
          if (b->next() != w) return std::string(name) + " not deterministic";
        }
      }
    }
    for (const char* name : {"smooth", "fireworks", "levi-spherical", "vexillary", "covexillary", "av:321", "boolean"}) {
      auto spec = cls(name);
      McmcChain chain(spec, 7, McmcConfig{100, 5}, SeedSpec{11, 0});
      for (int i = 0; i < 200; ++i)
        if (!is_class_member(spec, chain.next())) return std::string(name) + " chain left the class";
    }
    return "";
  });
  s.guarded("Boolean sampler operation count is linear", [&]() -> std::string {
    Rng rng(SeedSpec{5, 0});
    double first = 0;
    for (int n = 10; n <= (expensive ? 10000000 : 1000000); n *= 10) {
      std::uint64_t ops = 0;
      sample_boolean(n, rng, &ops);
      double per = static_cast<double>(ops) / n;
      if (first == 0) first = per;
      if (per > 8.0) return at(n) + ": " + std::to_string(per) + " ops per position";
    }
    return "";
  });
  s.guarded("adjacent position and value swaps connect each class", [&]() -> std::string {
    for (const char* name : {"uniform", "grassmannian", "boolean", "av:231", "av:132", "av:321", "cograssmannian",
                             "fireworks", "smooth", "vexillary", "covexillary", "levi-spherical"}) {
      auto spec = cls(name);
      for (int n = 1; n <= 7; ++n) {
        auto members = enumerate_class(spec, n);
        std::set<Permutation> in(members.begin(), members.end()), seen{Permutation::identity(n)};
        std::vector<Permutation> todo{Permutation::identity(n)};
        while (!todo.empty()) {
          auto w = todo.back();
          todo.pop_back();
          for (int p = 1; p < n; ++p) {
            std::vector<int> v(w.values().begin(), w.values().end());
            std::swap(v[p - 1], v[p]);
            Permutation x = from_trusted(v);
            if (in.count(x) && seen.insert(x).second) todo.push_back(x);
            v.assign(w.values().begin(), w.values().end());
            for (auto& e : v) e = e == p ? p + 1 : e == p + 1 ? p : e;
            Permutation y = from_trusted(v);
            if (in.count(y) && seen.insert(y).second) todo.push_back(y);
          }
        }
        if (seen.size() != in.size()) return std::string(name) + " " + at(n);
      }
    }
    return "";
  });
  return s.take();
}

// ---- oracle ----

std::vector<CheckResult> oracle_suite(bool expensive) {
  Suite s("oracle");
  s.guarded("Av(132), Av(231) fibers are Catalan products", [&]() -> std::string {
    for (int n = 1; n <= 10; ++n)
      for (const char* name : {"av:132", "av:231"}) {
        auto f = record_fibers(cls(name), n);
        ExactInt total = 0;
        for (const auto& [R, c] : f) {
          if (c != catalan_fiber(R, n)) return std::string(name) + " " + at(n);
          total += c;
        }
        if (total != catalan(n)) return std::string(name) + " fiber total " + at(n);
      }
    return "";
  });
  s.guarded("FS laws over Av(132) and Av(231) coincide", [&]() -> std::string {
    for (int n = 1; n <= 7; ++n)
      if (!(exact_fs_distribution(cls("av:132"), n) == exact_fs_distribution(cls("av:231"), n))) return at(n);
    return "";
  });
  s.guarded("BS + n has the law of FS", [&]() -> std::string {
    for (int n = 1; n <= (expensive ? 7 : 6); ++n)
      for (const char* name : {"uniform", "grassmannian", "boolean"})
        if (!bs_equidistribution_audit(cls(name), n)) return std::string(name) + " " + at(n);
    return "";
  });
  s.guarded("Grassmannian TV distance", [&]() -> std::string {
    for (int n = 1; n <= 12; ++n)
      if (grassmannian_tv_by_enumeration(n) != grassmannian_tv(n)) return at(n);
    return "";
  });
  s.guarded("Grassmannian Xi audit", [&]() -> std::string {
    ExactRational prev = 2;
    for (int n = 4; n <= 10; ++n) {
      auto a = grassmannian_xi_audit(n);
      if (a.hypothesis_violations) return at(n) + ": Xi != 0 under the hypothesis";
      if (!(a.p_nonzero < prev)) return at(n) + ": P(Xi != 0) not decreasing";
      prev = a.p_nonzero;
    }
    return "";
  });
  s.guarded("uniform record indicators independent", [&]() -> std::string {
    for (int n = 1; n <= 8; ++n)
      if (!uniform_record_independence(n)) return at(n);
    return "";
  });
  s.guarded("Boolean fiber marginals equal N(n,j)", [&]() -> std::string {
    for (int n = 1; n <= 10; ++n) {
      auto f = record_fibers(cls("boolean"), n);
      for (int j = 1; j <= n; ++j) {
        ExactInt m = 0;
        for (const auto& [R, c] : f)
          if (std::binary_search(R.begin(), R.end(), j)) m += c;
        if (m != boolean_record_count(n, j)) return at(n) + " j=" + std::to_string(j);
      }
    }
    return "";
  });
  s.guarded("record equivalence verdicts", [&]() -> std::string {
    auto v = record_equivalent(Permutation::parse("132"), Permutation::parse("231"), 9);
    if (!v.equivalent || !v.criterion_prediction) return "132 vs 231";
    auto w = record_equivalent(Permutation::parse("123"), Permutation::parse("321"), 5);
    if (w.equivalent || w.criterion_prediction || w.clauses[0]) return "123 vs 321";
    return "";
  });
  s.guarded("criterion agrees with ground truth", [&]() -> std::string {
    int n_max = expensive ? 10 : 8;
    EquivalenceOracle oracle(n_max);
    for (int k = 2; k <= (expensive ? 4 : 3); ++k) {
      auto r = conjecture_scan(k, n_max, &oracle);
      if (r.disagreements) return "k=" + std::to_string(k) + ": " + std::to_string(r.disagreements) + " disagreements";
    }
    return "";
  });
  return s.take();
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"core", "classes", "formulas", "samplers", "oracle"};
  return s;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, bool expensive) {
  if (suite == "core") return core_suite(expensive);
  if (suite == "classes") return classes_suite(expensive);
  if (suite == "formulas") return formulas_suite(expensive);
  if (suite == "samplers") return samplers_suite(expensive);
  if (suite == "oracle") return oracle_suite(expensive);
  fail(ErrorCode::InvalidArgument, "unknown suite: " + suite);
}

}  // namespace permstab::experiments
