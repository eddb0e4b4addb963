#include <doctest.h>

#include "core/classes.hpp"
#include "core/closed_forms.hpp"
#include "core/error.hpp"
#include "core/oracle.hpp"
#include "core/stability.hpp"
#include "support.hpp"

using namespace permstab;
using testing::P;

namespace {

ClassSpec cls(const char* name) { return ClassSpec::parse(name); }

ExactDistribution brute(const std::vector<Permutation>& members, bool backward, int n) {
  ExactDistribution d;
  for (const auto& u : members)
    for (const auto& v : members) {
      d.counts[backward ? bs_pair(u, v, n) + n : fs_pair(u, v)] += 1;
      d.total += 1;
    }
  return d;
}

}  // namespace

TEST_CASE("exact FS laws: small cases") {
  auto d = exact_fs_distribution(cls("uniform"), 2);
  CHECK(d.total == 4);
  CHECK(d.counts == std::map<int, ExactInt>{{1, 1}, {2, 2}, {3, 1}});
  CHECK(d.support() == std::vector<int>{1, 2, 3});
  CHECK(d.mean() == 2);
  auto id = exact_fs_distribution(cls("uniform"), 1);
  CHECK(id.counts == std::map<int, ExactInt>{{1, 1}});
  auto trivial = exact_fs_distribution(cls("av:21"), 4);
  CHECK(trivial.counts == std::map<int, ExactInt>{{1, 1}});
}

TEST_CASE("exact FS laws match pairwise enumeration") {
  for (const char* name : {"uniform", "grassmannian", "boolean", "av:231", "smooth", "fireworks"})
    for (int n = 1; n <= 5; ++n) {
      auto members = enumerate_class(cls(name), n);
      CHECK(exact_fs_distribution(cls(name), n) == brute(members, false, n));
      CHECK(exact_bs_shifted_distribution(cls(name), n) == brute(members, true, n));
    }
}

TEST_CASE("modified Grassmannian weights") {
  for (int n = 1; n <= 6; ++n) {
    auto d = exact_fs_distribution(cls("grassmannian-modified"), n);
    CHECK(d.total == pow2(n) * pow2(n));
    ExactDistribution by_subsets;
    unsigned subsets = 1u << n;
    auto build = [&](unsigned mask) {
      std::vector<int> V;
      for (int b = 0; b < n; ++b)
        if (mask >> b & 1) V.push_back(b + 1);
      return grassmannian_build(static_cast<int>(V.size()), V, n);
    };
    for (unsigned a = 0; a < subsets; ++a)
      for (unsigned b = 0; b < subsets; ++b) {
        by_subsets.counts[fs_pair(build(a), build(b))] += 1;
        by_subsets.total += 1;
      }
    CHECK(d == by_subsets);
    CHECK(grassmannian_tv_by_enumeration(n) == grassmannian_tv(n));
  }
}

TEST_CASE("record fibers of the Catalan classes") {
  auto f = record_fibers(cls("av:231"), 3);
  CHECK(f[{1}] == 2);
  CHECK(f[{1, 2, 3}] == 1);
  for (int n = 1; n <= 9; ++n) {
    auto a = record_fibers(cls("av:231"), n), b = record_fibers(cls("av:132"), n);
    CHECK(a == b);
    for (const auto& [R, c] : a) CHECK(c == catalan_fiber(R, n));
  }
  for (int n = 1; n <= 6; ++n)
    CHECK(exact_fs_distribution(cls("av:132"), n) == exact_fs_distribution(cls("av:231"), n));
}

TEST_CASE("Grassmannian exception audit") {
  for (int n = 2; n <= 8; ++n) {
    auto a = grassmannian_xi_audit(n);
    CHECK(a.hypothesis_violations == 0);
    CHECK(a.hypothesis_pairs > 0);
    CHECK(a.identity_pairs == 2 * (n + 1) * (1u << n) - (n + 1) * (n + 1));
    CHECK(a.p_nonzero >= 0);
    CHECK(a.p_nonzero <= 1);
  }
  CHECK_THROWS_AS(grassmannian_xi_audit(13), Error);
}

TEST_CASE("backward stability equidistribution") {
  CHECK(bs_equidistribution_audit(cls("boolean"), 5));
  CHECK(bs_equidistribution_audit(cls("uniform"), 4));
  CHECK(bs_equidistribution_audit(cls("grassmannian"), 6));
  CHECK(bs_equidistribution_audit(cls("av:21"), 4));
  CHECK(bs_equidistribution_audit(cls("smooth"), 5));
  CHECK(bs_equidistribution_audit(cls("av:321"), 5));
  CHECK_THROWS_AS(bs_equidistribution_audit(cls("av:231"), 4), Error);
}

TEST_CASE("uniform records are independent") {
  for (int n = 1; n <= 7; ++n) CHECK(uniform_record_independence(n));
}

TEST_CASE("budgets") {
  OracleBudget tight;
  tight.max_pairs = 10;
  CHECK_THROWS_AS(exact_fs_distribution(cls("uniform"), 4, tight), Error);
}
