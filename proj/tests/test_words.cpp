#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "sbm/rng.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/word.hpp"

using namespace sbm;

namespace {

Word random_canonical_word(Philox& rng, int len) {
  // Uniform restricted-growth sequence (not uniform over partitions; fine
  // for property tests).
  Word w;
  int h = 0;
  for (int i = 0; i < len; ++i) {
    int lab = 1 + static_cast<int>(rng.next_u32() % static_cast<unsigned>(h + 1));
    if (lab == h + 1) ++h;
    w.push_back(lab);
  }
  return w;
}

// Independent membership test for the walk set: every label count is even
// and, between consecutive occurrences of any label, every other label
// occurs an even number of times.
bool in_even_interleave_class(const Word& w) {
  const int n = static_cast<int>(w.size());
  const int h = label_count(w);
  std::vector<int> counts(static_cast<std::size_t>(h) + 1, 0);
  for (int x : w) ++counts[static_cast<std::size_t>(x)];
  for (int lab = 1; lab <= h; ++lab)
    if (counts[static_cast<std::size_t>(lab)] % 2 != 0) return false;
  std::vector<int> inner(static_cast<std::size_t>(h) + 1, 0);
  for (int lab = 1; lab <= h; ++lab) {
    int prev = -1;
    for (int t = 0; t < n; ++t) {
      if (w[static_cast<std::size_t>(t)] != lab) continue;
      if (prev >= 0) {
        bool ok = true;
        for (int s = prev + 1; s < t; ++s) ++inner[static_cast<std::size_t>(w[static_cast<std::size_t>(s)])];
        for (int other = 1; other <= h && ok; ++other)
          if (other != lab && inner[static_cast<std::size_t>(other)] % 2 != 0) ok = false;
        for (int s = prev + 1; s < t; ++s) --inner[static_cast<std::size_t>(w[static_cast<std::size_t>(s)])];
        if (!ok) return false;
      }
      prev = t;
    }
  }
  return true;
}

template <class Visit>
void for_each_canonical_word(int len, Visit&& visit) {
  Word w(static_cast<std::size_t>(len));
  auto rec = [&](auto&& self, int pos, int h) -> void {
    if (pos == len) {
      visit(w);
      return;
    }
    for (int lab = 1; lab <= h + 1; ++lab) {
      w[static_cast<std::size_t>(pos)] = lab;
      self(self, pos + 1, std::max(h, lab));
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

TEST_CASE("canonicalize relabels by first appearance") {
  CHECK(canonicalize(Word{7, 7, 7, 4, 9, 9, 4, 7}) == Word{1, 1, 1, 2, 3, 3, 2, 1});
  CHECK(canonicalize(Word{5, 5}) == Word{1, 1});
  CHECK(canonicalize(Word{2, 1, 1, 2}) == Word{1, 2, 2, 1});
  CHECK(canonicalize(Word{}) == Word{});
}

TEST_CASE("canonicalize is idempotent") {
  Philox rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Word raw;
    int len = static_cast<int>(rng.next_u32() % 12);
    for (int i = 0; i < len; ++i) raw.push_back(1 + static_cast<int>(rng.next_u32() % 6));
    Word once = canonicalize(raw);
    CHECK(is_canonical(once));
    CHECK(canonicalize(once) == once);
  }
}

TEST_CASE("cyclic orbit sizes from the reference examples") {
  Word w1;  // X1^8 X2^2 X3^2
  w1.insert(w1.end(), 8, 1);
  w1.insert(w1.end(), {2, 2, 3, 3});
  CHECK(cyclic_orbit(w1).size == 12);

  Word w2;  // X1^4 X2^4 X1^4 X3^4
  w2.insert(w2.end(), 4, 1);
  w2.insert(w2.end(), 4, 2);
  w2.insert(w2.end(), 4, 1);
  w2.insert(w2.end(), 4, 3);
  CHECK(cyclic_orbit(w2).size == 8);

  CHECK(cyclic_orbit(Word(12, 1)).size == 1);
  CHECK(cyclic_orbit(Word{1, 1, 2, 2}).size == 2);
  CHECK(cyclic_orbit(Word{1, 1, 2, 2}).representative == Word{1, 1, 2, 2});
  CHECK(cyclic_orbit(Word{}).size == 1);
}

TEST_CASE("orbit size divides the word length") {
  Philox rng(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_canonical_word(rng, 1 + static_cast<int>(rng.next_u32() % 12));
    Orbit o = cyclic_orbit(w);
    CHECK(static_cast<int>(w.size()) % o.size == 0);
    CHECK(is_canonical(o.representative));
  }
}

TEST_CASE("tree-walk membership basics") {
  CHECK(is_tree_walk(Word{1, 1, 2, 2}));
  CHECK_FALSE(is_tree_walk(Word{1, 2, 1, 2}));
  CHECK_FALSE(is_tree_walk(Word{1, 1, 2}));
  CHECK(is_tree_walk(Word{}));
}

TEST_CASE("tree-walk set equals the even-interleave partition class up to length 12") {
  for (int len = 1; len <= 12; ++len) {
    long long walks = 0, mismatches = 0;
    for_each_canonical_word(len, [&](const Word& w) {
      bool a = is_tree_walk(w);
      if (a != in_even_interleave_class(w)) ++mismatches;
      walks += a;
    });
    CHECK(mismatches == 0);
    if (len == 12) CHECK(walks == 1747);  // consistency with the order-12 walk count
  }
}

TEST_CASE("irreducibility from the reference examples") {
  CHECK(is_irreducible(Word{1, 1, 2, 2, 1, 1, 2, 2}));
  CHECK_FALSE(is_irreducible(Word{1, 1, 2, 2}));
  CHECK(is_irreducible(Word{1, 1}));
  CHECK_FALSE(is_irreducible(Word{1, 2, 2, 1}));  // X2^2 factors out
  CHECK(is_irreducible(Word{1, 2, 2, 1, 1, 2, 2, 1}));
}

TEST_CASE("factorization of the two reference products") {
  // X1^2 X2^2 X1^2 X3 X4^4 X3 X2^2
  Word w1{1, 1, 2, 2, 1, 1, 3, 4, 4, 4, 4, 3, 2, 2};
  auto f1 = factorize(w1);
  std::vector<Word> expected1{{1, 1}, {1, 1, 1, 1}, {1, 1, 2, 2, 1, 1, 2, 2}};
  std::sort(expected1.begin(), expected1.end());
  CHECK(f1.irreducible_factors() == expected1);
  CHECK(f1.reassemble() == w1);

  // X1 X2^2 X1^2 X3^2 X4^2 X3^2 X4^2 X2^2 X1
  Word w2{1, 2, 2, 1, 1, 3, 3, 4, 4, 3, 3, 4, 4, 2, 2, 1};
  auto f2 = factorize(w2);
  std::vector<Word> expected2{{1, 1, 2, 2, 1, 1, 2, 2}, {1, 2, 2, 1, 1, 2, 2, 1}};
  std::sort(expected2.begin(), expected2.end());
  CHECK(f2.irreducible_factors() == expected2);
  CHECK(f2.reassemble() == w2);

  auto f3 = factorize(Word{1, 1});
  CHECK(f3.irreducible_factors() == std::vector<Word>{{1, 1}});
  CHECK(f3.insertions.empty());
}

TEST_CASE("factorize then reassemble is the identity") {
  Philox rng(13, 0);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_canonical_word(rng, 2 + static_cast<int>(rng.next_u32() % 11));
    auto f = factorize(w);
    CHECK(f.reassemble() == w);
    for (const auto& factor : f.irreducible_factors()) CHECK(is_irreducible(factor));
  }
  for_each_tree_walk(10, [&](const Word& w) {
    auto f = factorize(w);
    REQUIRE(f.reassemble() == w);
  });
}

TEST_CASE("insertion operator reference examples") {
  Word host{1, 2, 2, 1, 1, 2, 2, 1};  // X1 X2^2 X1^2 X2^2 X1
  CHECK(insert(host, 1, Word{1, 1}) == Word{1, 2, 2, 3, 3, 1, 1, 3, 3, 1});
  CHECK(insert(host, 5, Word{1, 1}) == Word{1, 2, 2, 1, 1, 3, 3, 2, 2, 1});
  CHECK(insert(host, 5, Word{1, 1, 2, 2, 1, 1, 2, 2}) ==
        Word{1, 2, 2, 1, 1, 3, 3, 4, 4, 3, 3, 4, 4, 2, 2, 1});
  CHECK(insert(Word{}, 0, Word{1, 1}) == Word{1, 1});
  CHECK(insert(host, 0, Word{}) == host);
}

TEST_CASE("word-level fixed point at low orders") {
  std::map<int, std::vector<std::pair<Word, Int>>> irr;
  irr[2] = {{Word{1, 1}, Int(1)}};

  auto f2 = expand_f(irr, 2);
  CHECK(f2.size() == 1);
  CHECK(f2.at(Word{1, 1}) == 1);

  auto f4 = expand_f(irr, 4);
  // Order-4 part: X1^2 X2^2 + X1 X2^2 X1.
  CHECK(f4.at(Word{1, 1, 2, 2}) == 1);
  CHECK(f4.at(Word{1, 2, 2, 1}) == 1);
  CHECK(f4.size() == 3);
}

TEST_CASE("word-level fixed point reproduces the order-6 trace expansion") {
  std::map<int, std::vector<std::pair<Word, Int>>> irr;
  irr[2] = {{Word{1, 1}, Int(1)}};
  irr[4] = {{Word{1, 1, 1, 1}, Int(1)}};
  irr[6] = {{Word(6, 1), Int(1)}};

  auto all = expand_f(irr, 6);
  std::map<Word, Int> order6;
  Int order6_total = 0;
  for (const auto& [w, c] : all) {
    if (w.size() == 6) {
      order6[w] = c;
      order6_total += c;
    }
  }
  CHECK(order6_total == 12);

  auto grouped = group_by_orbit(order6);
  CHECK(grouped.at(Word(6, 1)) == 1);
  CHECK(grouped.at(cyclic_orbit(Word{1, 1, 1, 1, 2, 2}).representative) == 6);
  CHECK(grouped.at(cyclic_orbit(Word{1, 1, 2, 2, 3, 3}).representative) == 2);
  CHECK(grouped.at(cyclic_orbit(Word{1, 1, 2, 3, 3, 2}).representative) == 3);
  CHECK(grouped.size() == 4);
}

TEST_CASE("word text round trip") {
  Word w{1, 1, 2, 2, 1, 1, 2, 2};
  CHECK(to_string(w) == "1 1 2 2 1 1 2 2");
  CHECK(parse_word("1 1 2 2 1 1 2 2") == w);
  CHECK(parse_word("") == Word{});
  CHECK_THROWS(parse_word("1 x 2"));
  CHECK_THROWS(parse_word("0 1"));
}
