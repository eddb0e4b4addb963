// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "core/classes.hpp"
#include "core/closed_forms.hpp"
#include "core/equivalence.hpp"
#include "core/oracle.hpp"
#include "core/samplers.hpp"
#include "core/stability.hpp"
#include "core/tags.hpp"
#include "experiments/runner.hpp"
#include "experiments/stats.hpp"

using namespace permstab;
using namespace permstab::experiments;

namespace {

// Tolerances and sizes, fixed.
constexpr int kSeed = 1;
constexpr std::uint64_t kMeanPairs = 100000;
constexpr double kUniformLo = 986.9, kUniformHi = 988.6;
constexpr double kGrassCenter = 741.69, kGrassTol = 1.0;
constexpr double kBooleanLo = 499, kBooleanHi = 508;
constexpr double kAv231Tol = 0.5;
constexpr std::uint64_t kAv231Pairs = 100000;

ClassSpec cls(const char* name) { return ClassSpec::parse(name); }

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.ok) ++failures;
  std::printf("%s criterion %2d: %s [%.1fs]%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs,
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

std::string at(int n) { return "n=" + std::to_string(n); }

bool record_at(const Permutation& w, int j) {
  for (int i = 1; i < j; ++i)
    if (w(i) > w(j)) return false;
  return true;
}

ExactRational frac(const ExactInt& a, const ExactInt& b) {
  ExactRational q(a, b);
  q.canonicalize();
  return q;
}

std::vector<int> word_of(const std::string& s) {
  std::vector<int> w;
  for (char c : s) w.push_back(c - '0');
  return w;
}

Outcome mean_in(const ClassSpec& spec, int n, std::uint64_t pairs, double lo, double hi) {
  PairRun r;
  r.spec = spec;
  r.n = n;
  r.samples = pairs;
  r.seed = kSeed;
  auto h = run_pairs(r, 0);
  auto m = moments(h);
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean %.4f (stderr %.4f) in [%.2f, %.2f]", m.mean, m.stderr_mean, lo, hi);
  return {m.mean >= lo && m.mean <= hi, buf};
}

}  // namespace

int main() {
  criterion(1, "exact class counts", []() -> Outcome {
    for (int n = 1; n <= 15; ++n)
      if (ExactInt(count_class(cls("grassmannian"), n)) != pow2(n) - n) return {false, "|G_n| " + at(n)};
    for (int n = 1; n <= 12; ++n)
      if (ExactInt(count_class(cls("boolean"), n)) != fib(2L * n - 1)) return {false, "|B_n| tags " + at(n)};
    for (int n = 1; n <= 10; ++n) {
      std::uint64_t c = 0;
      for_each_permutation(n, [&](const Permutation& w) { c += is_boolean(w); });
      if (ExactInt(c) != fib(2L * n - 1)) return {false, "|B_n| filter " + at(n)};
      if (ExactInt(count_class(cls("av:132"), n)) != catalan(n)) return {false, "|Av(132)| " + at(n)};
      if (ExactInt(count_class(cls("av:231"), n)) != catalan(n)) return {false, "|Av(231)| " + at(n)};
    }
    return {true, "G n<=15, B n<=12 (tags) and n<=10 (filter), Catalan n<=10"};
  });

  criterion(2, "record probabilities over S_n, G_n, B_n", []() -> Outcome {
    for (int n = 1; n <= 9; ++n) {
      std::vector<ExactInt> s(n + 1, 0), g(n + 1, 0), b(n + 1, 0);
      ExactInt ns = 0, ng = 0, nb = 0;
      for_each_permutation(n, [&](const Permutation& w) {
        bool gr = is_grassmannian(w), bo = is_boolean(w);
        ++ns;
        ng += gr;
        nb += bo;
        for (int j = 1; j <= n; ++j)
          if (record_at(w, j)) {
            ++s[j];
            if (gr) ++g[j];
            if (bo) ++b[j];
          }
      });
      for (int j = 1; j <= n; ++j) {
        if (frac(s[j], ns) != ExactRational(1, j)) return {false, "uniform " + at(n)};
        ExactInt bin = 0;
        for (int k = j; k <= n; ++k) bin += binomial(n, k);
        if (frac(g[j], ng) != frac(bin + pow2(j - 1) - n, pow2(n) - n)) return {false, "grassmannian " + at(n)};
        ExactInt num = fib(2L * n - 2) - fib(2L * j - 4) * fib(2L * (n - j) - 1);
        if (frac(b[j], nb) != frac(num, fib(2L * n - 1))) return {false, "boolean " + at(n)};
        if (record_prob(Family::Boolean, n, j) != frac(num, fib(2L * n - 1))) return {false, "library boolean " + at(n)};
        if (record_prob(Family::Grassmannian, n, j) != frac(g[j], ng)) return {false, "library grassmannian " + at(n)};
      }
    }
    return {true, "all j, n<=9, exact rationals"};
  });

  criterion(3, "N(5,3) = 19 = |C_{1,3}| + |C_{2,3}|", []() -> Outcome {
    const std::set<std::vector<int>> c1_listed = {
        {}, {3}, {4}, {3, 4}, {4, 3}, {1}, {1, 3}, {1, 4}, {1, 3, 4}, {1, 4, 3}};
    const std::set<std::vector<int>> c2_listed = {
        word_of("23"), word_of("234"), word_of("243"), word_of("123"), word_of("1234"),
        word_of("1243"), word_of("213"), word_of("2134"), word_of("2143")};
    const int n = 5, j = 3;
    std::set<std::vector<int>> c1, c2;
    std::set<std::pair<Permutation, Permutation>> f1, f2;
    for_each_member(cls("boolean"), n, [&](const Permutation& w) {
      if (!record_at(w, j)) return;
      auto word = lex_first_reduced_word(w);
      std::vector<int> small, large;
      for (int s : word) (s < j ? small : large).push_back(s);
      auto w1 = apply_word(small, n), w2 = apply_word(large, n);
      if (w1.compose(w2) != w) return;
      if (tag_encode(w).tags[j - 2] == Tag::Zero) {
        c1.insert(word);
        f1.insert({w1, w2});
      } else {
        c2.insert(word);
        f2.insert({w1, w2});
      }
    });
    if (c1 != c1_listed) return {false, "C_{1,3} differs"};
    if (c2 != c2_listed) return {false, "C_{2,3} differs"};
    // Factor sets: B_[2] x B_[3,5] (2 x 5) and (B_[3] \ B_[2]) x (B_[3,5] \ B_[4,5]) (3 x 3).
    std::set<Permutation> a1, b1, a2, b2;
    for (auto& [x, y] : f1) a1.insert(x), b1.insert(y);
    for (auto& [x, y] : f2) a2.insert(x), b2.insert(y);
    if (a1.size() != 2 || b1.size() != 5 || f1.size() != 10) return {false, "C_{1,3} factor sets"};
    if (a2.size() != 3 || b2.size() != 3 || f2.size() != 9) return {false, "C_{2,3} factor sets"};
    if (boolean_record_count(5, 3) != 19 || boolean_record_count_product(5, 3) != 19) return {false, "N(5,3)"};
    return {true, "10 + 9, word lists and factorizations reconstructed"};
  });

  criterion(4, "tag bijection and chi locality", []() -> Outcome {
    for (int n = 1; n <= 12; ++n) {
      std::uint64_t words = 0;
      bool ok = true;
      for_each_tag_word(n - 1, [&](const TagWord& t) {
        ++words;
        auto w = tag_decode(t);
        if (!(tag_encode(w) == t)) ok = false;
        if (n <= 10)
          for (int j = 1; j <= n; ++j)
            if (chi_from_tags(t, j) != chi_vector(w)[j - 1]) ok = false;
      });
      if (!ok) return {false, "tag words " + at(n)};
      std::uint64_t members = 0;
      for_each_avoider(n, {Permutation::parse("321"), Permutation::parse("3412")}, [&](const Permutation& w) {
        ++members;
        if (tag_decode(tag_encode(w)) != w) ok = false;
      });
      if (!ok) return {false, "Boolean permutations " + at(n)};
      if (members != words) return {false, "sizes differ " + at(n)};
    }
    return {true, "n<=12 both directions; chi locality n<=10"};
  });

  criterion(5, "Boolean sampler exactness and linear cost", []() -> Outcome {
    for (int n = 1; n <= 6; ++n) {
      bool ok = true;
      for_each_tag_word(n - 1, [&](const TagWord& t) {
        ExactRational p = 1;
        int state = 0;
        for (int pos = 0; pos < t.length(); ++pos) {
          auto b = boolean_branch(n - pos - 2, state);
          p *= t.tags[pos] == Tag::Zero ? b.zero : t.tags[pos] == Tag::S ? b.s : b.c;
          state = t.tags[pos] != Tag::Zero;
        }
        if (p != ExactRational(1, fib(2L * n - 1))) ok = false;
      });
      if (!ok) return {false, "path probability " + at(n)};
    }
    Rng rng(SeedSpec{kSeed, 0});
    double worst = 0;
    for (int n = 10; n <= 1000000; n *= 10) {
      std::uint64_t ops = 0;
      sample_boolean(n, rng, &ops);
      worst = std::max(worst, static_cast<double>(ops) / n);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "paths n<=6 exact; max ops/n = %.2f (bound 8) up to n=1e6", worst);
    return {worst <= 8.0, buf};
  });

  criterion(6, "Dobrushin coefficient <= 1/6", []() -> Outcome {
    for (int n = 2; n <= 200; ++n)
      if (dobrushin_delta(n) > ExactRational(1, 6)) return {false, at(n)};
    return {true, "2<=n<=200, exact"};
  });

  criterion(7, "Grassmannian structure", []() -> Outcome {
    for (int n = 1; n <= 9; ++n) {
      bool ok = true;
      for_each_member(cls("grassmannian"), n, [&](const Permutation& w) {
        if (!w.is_identity() && fs_of(w) != grassmannian_datum(w)->M) ok = false;
      });
      if (!ok) return {false, "fs_of " + at(n)};
    }
    std::uint64_t checked = 0;
    for (int n = 1; n <= 8; ++n) {
      auto members = enumerate_class(cls("grassmannian"), n);
      for (const auto& u : members)
        for (const auto& v : members) {
          if (u.is_identity() || v.is_identity()) continue;
          auto du = *grassmannian_datum(u), dv = *grassmannian_datum(v);
          int kmax = std::max(du.k, dv.k);
          if (kmax >= std::min(du.M, dv.M)) continue;
          ++checked;
          if (fs_pair(u, v) != du.M + dv.M - kmax) return {false, "pair formula " + at(n)};
        }
    }
    for (int n = 1; n <= 12; ++n) {
      ExactInt p = pow2(n);
      if (grassmannian_tv_by_enumeration(n) != frac(ExactInt(n) * (p - n - 1), p * (p - n))) return {false, "TV " + at(n)};
    }
    return {true, std::to_string(checked) + " hypothesis pairs; TV n<=12"};
  });

  criterion(8, "record equidistribution on Av(132) and Av(231)", []() -> Outcome {
    for (int n = 1; n <= 10; ++n) {
      auto a = record_fibers(cls("av:132"), n), b = record_fibers(cls("av:231"), n);
      if (a != b) return {false, "fibers differ " + at(n)};
      for (const auto& [R, c] : a)
        if (c != catalan_fiber(R, n)) return {false, "Catalan product " + at(n)};
    }
    for (int n = 1; n <= 7; ++n)
      if (!(exact_fs_distribution(cls("av:132"), n) == exact_fs_distribution(cls("av:231"), n)))
        return {false, "FS law " + at(n)};
    return {true, "fibers n<=10, FS laws n<=7"};
  });

  criterion(9, "BS(u,v)+n has the law of FS(u,v)", []() -> Outcome {
    for (const char* name : {"uniform", "grassmannian", "boolean"})
      for (int n = 1; n <= 7; ++n)
        if (!(exact_bs_shifted_distribution(cls(name), n) == exact_fs_distribution(cls(name), n)))
          return {false, std::string(name) + " " + at(n)};
    return {true, "S_n, G_n, B_n, n<=7"};
  });

  criterion(10, "Monte Carlo means at n=500", []() -> Outcome {
    auto u = mean_in(cls("uniform"), 500, kMeanPairs, kUniformLo, kUniformHi);
    auto g = mean_in(cls("grassmannian"), 500, kMeanPairs, kGrassCenter - kGrassTol, kGrassCenter + kGrassTol);
    auto b = mean_in(cls("boolean"), 500, kMeanPairs, kBooleanLo, kBooleanHi);
    return {u.ok && g.ok && b.ok, "uniform " + u.detail + "; grassmannian " + g.detail + "; boolean " + b.detail};
  });

  criterion(11, "KS distance to the limit laws at n=2000", []() -> Outcome {
    std::string detail;
    bool ok = true;
    for (const char* name : {"uniform", "grassmannian"}) {
      Json cfg{{"command", "clt-check"}, {"class", name}, {"n", 2000}, {"samples", 100000}, {"seed", kSeed}};
      auto rep = run(cfg, 0);
      const auto& r = rep.json["result"];
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s%s KS %.4f < %.3f", detail.empty() ? "" : "; ", name,
                    r["ks_distance"].get<double>(), r["ks_threshold"].get<double>());
      detail += buf;
      ok = ok && r["ks_pass"].get<bool>();
    }
    return {ok, detail};
  });

  criterion(12, "Av(231) mean at n=200 and record-equivalence criterion", []() -> Outcome {
    auto m = mean_in(cls("av:231"), 200, kAv231Pairs, 2 * 200 - 5 - kAv231Tol, 2 * 200 - 5 + kAv231Tol);
    EquivalenceOracle oracle(10);
    int pairs = 0, disagreements = 0;
    for (int k = 2; k <= 4; ++k) {
      auto s = conjecture_scan(k, 10, &oracle);
      pairs += static_cast<int>(s.pairs.size());
      disagreements += s.disagreements;
    }
    bool ok = m.ok && disagreements == 0 && pairs == 1 + 15 + 276;
    return {ok, "av:231 " + m.detail + "; scan k<=4, n<=10: " + std::to_string(pairs) + " pairs, " +
                    std::to_string(disagreements) + " disagreements"};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
