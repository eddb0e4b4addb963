#include <doctest.h>

#include <set>

#include "core/closed_forms.hpp"
#include "core/error.hpp"
#include "core/tags.hpp"
#include "support.hpp"

using namespace permstab;
using testing::P;

namespace {

bool boolean_by_patterns(const Permutation& w) {
  return !testing::brute_contains(w, P("321")) && !testing::brute_contains(w, P("3412"));
}

}  // namespace

TEST_CASE("tag_encode examples") {
  CHECK(tag_encode(P("312")).to_string() == "SC");
  CHECK(tag_encode(P("231")).to_string() == "SS");
  CHECK(tag_encode(Permutation::identity(3)).to_string() == "00");
  CHECK(tag_encode(Permutation::identity(1)).length() == 0);
  CHECK_FALSE(try_tag_encode(P("321")).has_value());
  CHECK_THROWS_AS(tag_encode(P("321")), Error);
  try {
    tag_encode(P("3412"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonBoolean);
  }
}

TEST_CASE("tag_decode examples") {
  CHECK(tag_decode(TagWord::parse("SC")) == P("312"));
  CHECK(tag_decode(TagWord::parse("0S")) == P("132"));
  CHECK(tag_decode(TagWord::parse("0000")) == Permutation::identity(5));
  CHECK_THROWS_AS(TagWord::parse("0C"), Error);
  CHECK_THROWS_AS(TagWord::parse("CS"), Error);
  CHECK_THROWS_AS(TagWord::parse("0X"), Error);
  CHECK_FALSE(TagWord{{Tag::Zero, Tag::C}}.valid());
  CHECK_FALSE(TagWord{{Tag::C}}.valid());
  CHECK(TagWord::parse("SCCS0S").valid());
}

TEST_CASE("chi_from_tags examples") {
  CHECK(chi_from_tags(TagWord::parse("SC"), 2) == 1);
  CHECK(chi_from_tags(TagWord::parse("SS"), 2) == 0);
  CHECK(chi_from_tags(TagWord::parse("SC"), 1) == 0);
  CHECK(chi_from_tags(TagWord::parse("0S0"), 1) == 0);
}

TEST_CASE("reduced words") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& w : testing::all_perms(n)) {
      auto word = lex_first_reduced_word(w);
      CHECK(static_cast<std::int64_t>(word.size()) == inversion_count(w));
      CHECK(apply_word(word, n) == w);
      auto b = lex_first_boolean_word(w);
      std::set<int> distinct(word.begin(), word.end());
      CHECK(b.has_value() == (distinct.size() == word.size()));
      if (b) CHECK(*b == word);
    }
  CHECK(lex_first_reduced_word(P("312")) == std::vector<int>{2, 1});
  CHECK(lex_first_reduced_word(P("231")) == std::vector<int>{1, 2});
}

TEST_CASE("blocks") {
  auto bw = blocks_of_word({2, 1, 4, 5});
  REQUIRE(bw.blocks.size() == 3);
  CHECK(bw.blocks[0] == Block{2, 1});
  CHECK(bw.blocks[1] == Block{4, 4});
  CHECK(bw.blocks[2] == Block{5, 5});
  CHECK(bw.valid());
  CHECK(bw.letters() == std::vector<int>{2, 1, 4, 5});
  auto t = tags_of_blocks(bw, 6);
  CHECK(t.to_string() == "SC0SS");
  auto back = blocks_of_tags(t);
  CHECK(back.letters() == bw.letters());
}

TEST_CASE("tag bijection is exhaustive and inverse, n <= 10") {
  for (int n = 1; n <= 10; ++n) {
    std::set<Permutation> images;
    std::uint64_t words = 0;
    for_each_tag_word(n - 1, [&](const TagWord& t) {
      ++words;
      REQUIRE(t.valid());
      auto w = tag_decode(t);
      REQUIRE(w.size() == n);
      REQUIRE(tag_encode(w) == t);
      images.insert(w);
      for (int j = 1; j <= n; ++j) REQUIRE(chi_from_tags(t, j) == chi_vector(w)[j - 1]);
    });
    CHECK(ExactInt(words) == fib(2L * n - 1));
    CHECK(images.size() == words);
  }
}

TEST_CASE("encode is defined exactly on Boolean permutations, n <= 7") {
  for (int n = 1; n <= 7; ++n)
    for (const auto& w : testing::all_perms(n)) {
      auto t = try_tag_encode(w);
      REQUIRE(t.has_value() == boolean_by_patterns(w));
      if (t) CHECK(tag_decode(*t) == w);
    }
}
