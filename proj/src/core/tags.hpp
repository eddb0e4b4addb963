#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/perm.hpp"

namespace permstab {

enum class Tag : std::uint8_t { Zero = 0, S = 1, C = 2 };

struct TagWord {
  std::vector<Tag> tags;  // tags[t-1] = Tag_t, t = 1..n-1

  int length() const { return static_cast<int>(tags.size()); }
  bool valid() const;
  std::string to_string() const;
  static TagWord parse(const std::string& text);
  friend bool operator==(const TagWord&, const TagWord&) = default;
};

// s_{top↓bottom} = s_top s_{top-1} ... s_bottom
struct Block {
  int top;
  int bottom;
  friend bool operator==(const Block&, const Block&) = default;
};

struct BlockWord {
  std::vector<Block> blocks;
  std::vector<int> letters() const;
  bool valid() const;
};

// Lex-first reduced word; stops early and returns nullopt once a generator repeats.
std::optional<std::vector<int>> lex_first_boolean_word(const Permutation& w);
std::vector<int> lex_first_reduced_word(const Permutation& w);

BlockWord blocks_of_word(const std::vector<int>& word);
TagWord tags_of_blocks(const BlockWord& blocks, int n);
BlockWord blocks_of_tags(const TagWord& t);

std::optional<TagWord> try_tag_encode(const Permutation& w);
TagWord tag_encode(const Permutation& w);
Permutation tag_decode(const TagWord& t);
Permutation apply_word(const std::vector<int>& word, int n);

int chi_from_tags(const TagWord& t, int j);

// Every valid tag word of the given length, in lexicographic order (0 < S < C).
void for_each_tag_word(int length, const std::function<void(const TagWord&)>& fn);

}  // namespace permstab
