#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "core/classes.hpp"
#include "core/closed_forms.hpp"
#include "core/error.hpp"
#include "core/samplers.hpp"
#include "support.hpp"

using namespace permstab;
using testing::P;

namespace {

// |count/N - p| within z standard deviations.
bool within(std::uint64_t count, std::uint64_t N, double p, double z = 4.5) {
  double sd = std::sqrt(p * (1 - p) / N);
  return std::abs(static_cast<double>(count) / N - p) <= z * sd + 1e-12;
}

bool is_record(const Permutation& w, int j) {
  for (int i = 1; i < j; ++i)
    if (w(i) > w(j)) return false;
  return true;
}

}  // namespace

TEST_CASE("generator") {
  Rng a(SeedSpec{42, 3}), b(SeedSpec{42, 3}), c(SeedSpec{42, 4}), d(SeedSpec{43, 3});
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a.next();
    CHECK(x == b.next());
    differ_c |= x != c.next();
    differ_d |= x != d.next();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  Rng r(7, 0);
  std::uint64_t hist[7] = {};
  const std::uint64_t N = 700000;
  for (std::uint64_t i = 0; i < N; ++i) ++hist[r.below(7)];
  for (auto h : hist) CHECK(within(h, N, 1.0 / 7));
  CHECK(r.below(1) == 0);
  std::uint64_t ones = 0;
  for (int i = 0; i < 100000; ++i) ones += r.bit();
  CHECK(within(ones, 100000, 0.5));
}

TEST_CASE("uniform sampler") {
  Rng r(1, 0);
  CHECK(sample_uniform(1, r) == Permutation::identity(1));
  CHECK(sample_uniform(8, SeedSpec{5, 1}) == sample_uniform(8, SeedSpec{5, 1}));
  const int n = 10;
  const std::uint64_t N = 1000000;
  std::vector<std::uint64_t> rec(n + 1, 0);
  for (std::uint64_t s = 0; s < N; ++s) {
    auto w = sample_uniform(n, r);
    for (int j = 1; j <= n; ++j) rec[j] += is_record(w, j);
  }
  for (int j = 1; j <= n; ++j) CHECK(within(rec[j], N, 1.0 / j, 4.0));
}

TEST_CASE("modified Grassmannian sampler") {
  Rng r(2, 0);
  const std::uint64_t N = 200000;
  std::uint64_t ids = 0;
  for (std::uint64_t s = 0; s < N; ++s) ids += sample_grassmannian_modified(3, r).w.is_identity();
  CHECK(within(ids, N, 4.0 / 8));

  std::uint64_t hit = 0;
  std::vector<std::uint64_t> k_hist(7, 0);
  for (std::uint64_t s = 0; s < N; ++s) {
    auto d = sample_grassmannian_modified(5, r);
    hit += d.w == P("25134");
    CHECK(d.datum.k == static_cast<int>(d.datum.V.size()));
    REQUIRE(grassmannian_build(d.datum.k, d.datum.V, 5) == d.w);
    auto d6 = sample_grassmannian_modified(6, r);
    ++k_hist[d6.datum.k];
  }
  CHECK(within(hit, N, 1.0 / 32));
  for (int k = 0; k <= 6; ++k) CHECK(within(k_hist[k], N, binomial(6, k).get_d() / 64));
}

TEST_CASE("uniform Grassmannian sampler") {
  // Identity rejection: accepted output is the identity with probability 1/(2^n - n).
  for (int n = 1; n <= 6; ++n) {
    ExactRational p_id(n + 1, pow2(n)), accept(1, n + 1);
    ExactRational out_id = p_id * accept / (1 - p_id * (1 - accept));
    ExactRational out_other = ExactRational(1, pow2(n)) / (1 - p_id * (1 - accept));
    CHECK(out_id == ExactRational(1, pow2(n) - n));
    CHECK(out_other == ExactRational(1, pow2(n) - n));
  }
  Rng r(3, 0);
  CHECK(sample_grassmannian_uniform(1, r).is_identity());
  const std::uint64_t N = 500000;
  std::map<Permutation, std::uint64_t> h;
  for (std::uint64_t s = 0; s < N; ++s) {
    auto w = sample_grassmannian_uniform(3, r);
    REQUIRE(is_grassmannian(w));
    ++h[w];
  }
  CHECK(h.size() == 5);
  for (const auto& [w, c] : h) CHECK(within(c, N, 0.2));
  for (int s = 0; s < 2000; ++s) CHECK(is_grassmannian(sample_cograssmannian(7, r).inverse()));
}

TEST_CASE("Boolean sampler: exact path probabilities") {
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t words = 0;
    for_each_tag_word(n - 1, [&](const TagWord& t) {
      ++words;
      ExactRational p = 1;
      int state = 0;
      for (int pos = 0; pos < t.length(); ++pos) {
        auto b = boolean_branch(n - pos - 2, state);
        CHECK(b.zero + b.s + b.c == 1);
        p *= t.tags[pos] == Tag::Zero ? b.zero : t.tags[pos] == Tag::S ? b.s : b.c;
        state = t.tags[pos] != Tag::Zero;
      }
      CHECK(p == ExactRational(1, fib(2L * n - 1)));
    });
    CHECK(ExactInt(words) == fib(2L * n - 1));
  }
  auto b = boolean_branch(1, 0);
  CHECK(b.zero == ExactRational(2, 5));
  CHECK(b.s * boolean_branch(0, 1).zero == ExactRational(1, 5));
}

TEST_CASE("Boolean sampler: draws") {
  Rng r(4, 0);
  auto one = sample_boolean(1, r);
  CHECK(one.w.is_identity());
  CHECK(one.tags.length() == 0);
  const std::uint64_t N = 260000;
  std::map<Permutation, std::uint64_t> h;
  for (std::uint64_t s = 0; s < N; ++s) {
    auto d = sample_boolean(4, r);
    REQUIRE(is_boolean(d.w));
    REQUIRE(tag_decode(d.tags) == d.w);
    ++h[d.w];
  }
  CHECK(h.size() == 13);
  for (const auto& [w, c] : h) CHECK(within(c, N, 1.0 / 13));
  for (int s = 0; s < 200; ++s) CHECK(is_boolean(sample_boolean(40, r).w));
}

TEST_CASE("Boolean sampler: linear operation count") {
  Rng r(5, 0);
  for (int n : {10, 100, 1000, 10000, 100000, 1000000}) {
    std::uint64_t ops = 0;
    auto d = sample_boolean(n, r, &ops);
    CHECK(d.w.size() == n);
    CHECK(ops <= 8ull * n);
    CHECK(ops >= static_cast<std::uint64_t>(n));
  }
}

TEST_CASE("Catalan samplers: exact growth-path audit") {
  for (int n = 1; n <= 6; ++n)
    for (auto label : {CatalanLabel::Av231, CatalanLabel::Av132}) {
      std::vector<std::uint64_t> digits(n, 0), bounds(n);
      for (int i = 0; i < n; ++i) bounds[i] = 2 * (2 * i + 1);
      std::map<Permutation, std::uint64_t> hits;
      while (true) {
        int idx = 0;
        auto tree = remy_tree(n, [&](std::uint64_t b) {
          REQUIRE(b == bounds[idx]);
          return digits[idx++];
        });
        REQUIRE(idx == n);
        ++hits[tree_to_permutation(tree, label)];
        int i = n - 1;
        while (i >= 0 && ++digits[i] == bounds[i]) digits[i--] = 0;
        if (i < 0) break;
      }
      CHECK(ExactInt(hits.size()) == catalan(n));
      auto pattern = label == CatalanLabel::Av231 ? P("231") : P("132");
      for (const auto& [w, c] : hits) {
        CHECK(c == hits.begin()->second);
        CHECK(!contains_pattern(w, pattern));
      }
    }
}

TEST_CASE("Catalan samplers: draws and record fibers") {
  Rng r(6, 0);
  const std::uint64_t N = 200000;
  std::map<Permutation, std::uint64_t> h;
  for (std::uint64_t s = 0; s < N; ++s) ++h[sample_av231(3, r)];
  CHECK(h.count(P("231")) == 0);
  CHECK(h.size() == 5);
  for (const auto& [w, c] : h) CHECK(within(c, N, 0.2));

  for (int n = 1; n <= 7; ++n)
    for (bool is132 : {false, true}) {
      std::map<std::vector<int>, std::uint64_t> fib_h;
      for (std::uint64_t s = 0; s < 50000; ++s) {
        auto w = is132 ? sample_av132(n, r) : sample_av231(n, r);
        REQUIRE_FALSE(contains_pattern(w, is132 ? P("132") : P("231")));
        ++fib_h[testing::brute_records(w)];
      }
      for (const auto& [R, c] : fib_h) {
        ExactRational p(catalan_fiber(R, n), catalan(n));
        CHECK(within(c, 50000, p.get_d()));
      }
    }
  CHECK_THROWS_AS(sample_av231(0, r), Error);
}

TEST_CASE("Metropolis chain") {
  McmcConfig cfg{0, 1};
  McmcChain smooth(ClassSpec::parse("smooth"), 4, cfg, SeedSpec{9, 0});
  for (int s = 0; s < 100000; ++s) {
    auto before = smooth.state();
    bool moved = smooth.step();
    auto w = from_trusted(smooth.state());
    REQUIRE(w != P("3412"));
    REQUIRE(w != P("4231"));
    if (!moved) REQUIRE(smooth.state() == before);
  }
  CHECK(smooth.accepted() < smooth.proposals());

  CHECK_THROWS_AS(McmcChain(ClassSpec::parse("av:12"), 3, cfg, SeedSpec{1, 0}), Error);
  CHECK_THROWS_AS(McmcChain(ClassSpec::parse("boolean"), 3, McmcConfig{0, 0}, SeedSpec{1, 0}), Error);
  CHECK(sample_mcmc(ClassSpec::parse("vexillary"), 9, {}, SeedSpec{3, 1}) ==
        sample_mcmc(ClassSpec::parse("vexillary"), 9, {}, SeedSpec{3, 1}));
}

TEST_CASE("Metropolis chain mixes over S_n even with even thinning") {
  McmcChain chain(ClassSpec::parse("uniform"), 3, McmcConfig{1000, 10}, SeedSpec{12, 0});
  std::map<Permutation, std::uint64_t> h;
  const std::uint64_t N = 60000;
  for (std::uint64_t s = 0; s < N; ++s) ++h[chain.next()];
  CHECK(h.size() == 6);
  for (const auto& [w, c] : h) CHECK(within(c, N, 1.0 / 6, 6.0));
}

TEST_CASE("Metropolis chain on Boolean permutations is close to uniform") {
  for (int n = 2; n <= 6; ++n) {
    auto members = enumerate_class(ClassSpec::parse("boolean"), n);
    McmcChain chain(ClassSpec::parse("boolean"), n, McmcConfig{10000, 20}, SeedSpec{11, static_cast<std::uint64_t>(n)});
    const std::uint64_t N = 200000;
    std::map<Permutation, std::uint64_t> h;
    for (std::uint64_t s = 0; s < N; ++s) ++h[chain.next()];
    double tv = 0;
    for (const auto& w : members) tv += std::abs(static_cast<double>(h[w]) / N - 1.0 / members.size());
    tv /= 2;
    CHECK(h.size() == members.size());
    CHECK(tv < 0.02);
  }
}

TEST_CASE("sampler selection") {
  McmcConfig cfg;
  CHECK(make_sampler(ClassSpec::parse("boolean"), 5, SeedSpec{1, 0}, cfg)->exact());
  CHECK(make_sampler(ClassSpec::parse("av:132"), 5, SeedSpec{1, 0}, cfg)->exact());
  CHECK_FALSE(make_sampler(ClassSpec::parse("av:321"), 5, SeedSpec{1, 0}, cfg)->exact());
  CHECK_FALSE(make_sampler(ClassSpec::parse("boolean"), 5, SeedSpec{1, 0}, cfg, true)->exact());
  CHECK_THROWS_AS(make_sampler(ClassSpec::parse("grassmannian-modified"), 5, SeedSpec{1, 0}, cfg, true), Error);
  for (const char* name : {"uniform", "grassmannian", "boolean", "av:231", "av:132", "cograssmannian", "fireworks",
                           "smooth", "vexillary", "covexillary", "levi-spherical", "av:321"}) {
    auto spec = ClassSpec::parse(name);
    auto s = make_sampler(spec, 8, SeedSpec{21, 0}, McmcConfig{200, 10});
    auto t = make_sampler(spec, 8, SeedSpec{21, 0}, McmcConfig{200, 10});
    for (int i = 0; i < 50; ++i) {
      auto w = s->next();
      REQUIRE(is_class_member(spec, w));
      REQUIRE(w == t->next());
    }
  }
}
