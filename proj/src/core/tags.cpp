#include "core/tags.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace permstab {

bool TagWord::valid() const {
  for (size_t r = 0; r < tags.size(); ++r) {
    if (tags[r] == Tag::C && (r == 0 || tags[r - 1] == Tag::Zero)) return false;
  }
  return true;
}

std::string TagWord::to_string() const {
  std::string s;
  for (Tag t : tags) s += t == Tag::Zero ? '0' : t == Tag::S ? 'S' : 'C';
  return s;
}

TagWord TagWord::parse(const std::string& text) {
  TagWord t;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c == '0') t.tags.push_back(Tag::Zero);
    else if (c == 'S' || c == 's') t.tags.push_back(Tag::S);
    else if (c == 'C' || c == 'c') t.tags.push_back(Tag::C);
    else fail(ErrorCode::InvalidArgument, "bad tag character");
  }
  if (!t.valid()) fail(ErrorCode::InvalidArgument, "malformed tag word");
  return t;
}

std::vector<int> BlockWord::letters() const {
  std::vector<int> out;
  for (const auto& b : blocks)
    for (int a = b.top; a >= b.bottom; --a) out.push_back(a);
  return out;
}

bool BlockWord::valid() const {
  for (size_t r = 0; r < blocks.size(); ++r) {
    if (blocks[r].bottom < 1 || blocks[r].bottom > blocks[r].top) return false;
    if (r > 0 && blocks[r - 1].top >= blocks[r].bottom) return false;
  }
  return true;
}

namespace {

// Greedy smallest left descent, peeled off one letter at a time. Descent a means
// value a+1 sits left of value a; peeling swaps those two values.
std::vector<int> greedy_word(const Permutation& w, bool stop_on_repeat, bool& repeated) {
  const int n = w.size();
  std::vector<int> val(w.values().begin(), w.values().end());
  std::vector<int> pos(n + 2);
  for (int j = 0; j < n; ++j) pos[val[j]] = j;
  auto is_desc = [&](int a) { return a >= 1 && a < n && pos[a] > pos[a + 1]; };
  std::vector<char> used(n + 1, 0);
  std::vector<int> word;
  repeated = false;
  int a = 1;
  while (true) {
    while (a < n && !is_desc(a)) ++a;
    if (a >= n) break;
    if (used[a]) {
      repeated = true;
      if (stop_on_repeat) return word;
    }
    used[a] = 1;
    word.push_back(a);
    std::swap(pos[a], pos[a + 1]);
    a = std::max(1, a - 1);
  }
  return word;
}

}  // namespace

std::optional<std::vector<int>> lex_first_boolean_word(const Permutation& w) {
  bool repeated = false;
  auto word = greedy_word(w, true, repeated);
  if (repeated) return std::nullopt;
  return word;
}

std::vector<int> lex_first_reduced_word(const Permutation& w) {
  bool repeated = false;
  return greedy_word(w, false, repeated);
}

BlockWord blocks_of_word(const std::vector<int>& word) {
  BlockWord bw;
  for (size_t i = 0; i < word.size();) {
    size_t j = i;
    while (j + 1 < word.size() && word[j + 1] == word[j] - 1) ++j;
    bw.blocks.push_back({word[i], word[j]});
    i = j + 1;
  }
  return bw;
}

TagWord tags_of_blocks(const BlockWord& bw, int n) {
  TagWord t;
  t.tags.assign(std::max(0, n - 1), Tag::Zero);
  for (const auto& b : bw.blocks) {
    if (b.top > n - 1) fail(ErrorCode::OutOfRange, "block exceeds permutation size");
    t.tags[b.bottom - 1] = Tag::S;
    for (int a = b.bottom + 1; a <= b.top; ++a) t.tags[a - 1] = Tag::C;
  }
  return t;
}

BlockWord blocks_of_tags(const TagWord& t) {
  if (!t.valid()) fail(ErrorCode::InvalidArgument, "malformed tag word");
  BlockWord bw;
  const int m = t.length();
  for (int a = 1; a <= m;) {
    if (t.tags[a - 1] != Tag::S) {
      ++a;
      continue;
    }
    int top = a;
    while (top + 1 <= m && t.tags[top] == Tag::C) ++top;
    bw.blocks.push_back({top, a});
    a = top + 1;
  }
  return bw;
}

std::optional<TagWord> try_tag_encode(const Permutation& w) {
  auto word = lex_first_boolean_word(w);
  if (!word) return std::nullopt;
  return tags_of_blocks(blocks_of_word(*word), w.size());
}

TagWord tag_encode(const Permutation& w) {
  auto t = try_tag_encode(w);
  if (!t) fail(ErrorCode::NonBoolean, "permutation " + w.to_string() + " is not Boolean");
  return *t;
}

Permutation apply_word(const std::vector<int>& word, int n) {
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = j + 1;
  for (int a : word) {
    if (a < 1 || a >= n) fail(ErrorCode::OutOfRange, "generator out of range");
    std::swap(v[a - 1], v[a]);
  }
  return from_trusted(std::move(v));
}

Permutation tag_decode(const TagWord& t) {
  const int n = t.length() + 1;
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = j + 1;
  for (const auto& b : blocks_of_tags(t).blocks)
    for (int a = b.top; a >= b.bottom; --a) std::swap(v[a - 1], v[a]);
  return from_trusted(std::move(v));
}

int chi_from_tags(const TagWord& t, int j) {
  const int n = t.length() + 1;
  if (j < 1 || j > n) fail(ErrorCode::OutOfRange, "chi_from_tags index out of range");
  auto tag_at = [&](int r) { return (r < 1 || r > n - 1) ? Tag::Zero : t.tags[r - 1]; };
  return tag_at(j - 1) != Tag::Zero && tag_at(j) != Tag::S;
}

void for_each_tag_word(int length, const std::function<void(const TagWord&)>& fn) {
  TagWord t;
  t.tags.assign(length, Tag::Zero);
  std::function<void(int)> rec = [&](int r) {
    if (r == length) {
      fn(t);
      return;
    }
    bool present_before = r > 0 && t.tags[r - 1] != Tag::Zero;
    for (Tag x : {Tag::Zero, Tag::S, Tag::C}) {
      if (x == Tag::C && !present_before) continue;
      t.tags[r] = x;
      rec(r + 1);
    }
  };
  rec(0);
}

}  // namespace permstab
