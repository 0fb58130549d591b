#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbm/poly.hpp"

namespace sbm {

// A word records which blocks in a product are equal: label k stands for the
// k-th distinct block in order of first appearance, so canonical words are
// exactly the restricted-growth sequences over 1..h.
using Word = std::vector<int>;

Word canonicalize(std::span<const int> raw);
inline Word canonicalize(const Word& raw) { return canonicalize(std::span<const int>(raw)); }
bool is_canonical(const Word& w);

// Number of distinct labels (h). Assumes canonical input.
int label_count(const Word& w);

struct Orbit {
  Word representative;  // lexicographically least canonical rotation
  int size = 1;         // number of distinct canonical rotations
};

Orbit cyclic_orbit(const Word& w);
Word rotate(const Word& w, int r);

// True iff w is the edge-label sequence of a closed walk from the root of
// some tree in which distinct edges carry distinct labels.
bool is_tree_walk(const Word& w);

// True iff no proper nonempty contiguous subword has a label set disjoint
// from the labels of the remainder.
bool is_irreducible(const Word& w);

struct Factorization {
  Word core;  // irreducible remainder after all extractions
  // Application order for reassembly: host starts as the reassembled core,
  // then each recorded piece is inserted back at its gap.
  std::vector<std::pair<int, Factorization>> insertions;

  std::vector<Word> irreducible_factors() const;  // multiset: core + nested pieces
  Word reassemble() const;
};

Factorization factorize(const Word& w);

// Splices `piece` into the gap `position` (0..host length) of `host`,
// giving the inserted blocks labels distinct from every host block.
Word insert(const Word& host, int position, const Word& piece);

// Word-level fixed point F = 1 + A(I(F)X): every symbol of an irreducible
// word gets an arbitrary F-word (possibly empty) spliced in front of it.
// `irreducibles` maps even order -> words of that order with coefficients;
// returns all assembled words of order 2..max_order with coefficients.
std::map<Word, Int> expand_f(const std::map<int, std::vector<std::pair<Word, Int>>>& irreducibles,
                             int max_order);

// Groups word coefficients by trace-cyclic equivalence (orbit representative).
std::map<Word, Int> group_by_orbit(const std::map<Word, Int>& terms);

std::string to_string(const Word& w);
Word parse_word(std::string_view text);

}  // namespace sbm
