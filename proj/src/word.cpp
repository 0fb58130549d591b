#include "sbm/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sbm {

Word canonicalize(std::span<const int> raw) {
  Word out;
  out.reserve(raw.size());
  std::map<int, int> relabel;
  for (int x : raw) {
    auto [it, fresh] = relabel.try_emplace(x, static_cast<int>(relabel.size()) + 1);
    out.push_back(it->second);
  }
  return out;
}

bool is_canonical(const Word& w) {
  int h = 0;
  for (int x : w) {
    if (x < 1 || x > h + 1) return false;
    if (x == h + 1) ++h;
  }
  return true;
}

int label_count(const Word& w) {
  int h = 0;
  for (int x : w) h = std::max(h, x);
  return h;
}

Word rotate(const Word& w, int r) {
  if (w.empty()) return w;
  r = ((r % static_cast<int>(w.size())) + static_cast<int>(w.size())) % static_cast<int>(w.size());
  Word out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + r, w.end());
  out.insert(out.end(), w.begin(), w.begin() + r);
  return out;
}

Orbit cyclic_orbit(const Word& w) {
  if (w.empty()) return {Word{}, 1};
  std::vector<Word> rots;
  rots.reserve(w.size());
  for (int r = 0; r < static_cast<int>(w.size()); ++r) rots.push_back(canonicalize(rotate(w, r)));
  std::sort(rots.begin(), rots.end());
  rots.erase(std::unique(rots.begin(), rots.end()), rots.end());
  return {rots.front(), static_cast<int>(rots.size())};
}

bool is_tree_walk(const Word& w) {
  // Walk simulation: vertices get ids in creation order, 0 is the root.
  // Each symbol must be the parent edge (move up), an existing child edge of
  // the current vertex (move down), or the next unused label (fresh edge).
  std::vector<int> parent_label{0};
  std::vector<std::vector<std::pair<int, int>>> children{{}};  // (label, vertex)
  std::vector<int> path{0};
  int used = 0;
  for (int s : w) {
    int v = path.back();
    if (path.size() > 1 && s == parent_label[v]) {
      path.pop_back();
      continue;
    }
    bool moved = false;
    for (auto [lab, child] : children[v]) {
      if (lab == s) {
        path.push_back(child);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    if (s == used + 1) {
      ++used;
      int child = static_cast<int>(parent_label.size());
      parent_label.push_back(s);
      children.emplace_back();
      children[v].emplace_back(s, child);
      path.push_back(child);
      continue;
    }
    return false;
  }
  return path.size() == 1;
}

namespace {

// A subword [i, j] is self-contained when every occurrence of each of its
// labels lies inside it; those are exactly the subwords whose label set is
// disjoint from the rest.  Returns the minimal self-contained j >= i, or -1
// when some label of the closure already occurs before i.
int closure_end(const Word& w, const std::vector<int>& first, const std::vector<int>& last, int i) {
  int r = last[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])];
  if (first[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])] < i) return -1;
  for (int j = i; j <= r; ++j) {
    int lab = w[static_cast<std::size_t>(j)];
    if (first[static_cast<std::size_t>(lab)] < i) return -1;
    r = std::max(r, last[static_cast<std::size_t>(lab)]);
  }
  return r;
}

void occurrence_bounds(const Word& w, std::vector<int>& first, std::vector<int>& last) {
  int h = label_count(w);
  first.assign(static_cast<std::size_t>(h) + 1, -1);
  last.assign(static_cast<std::size_t>(h) + 1, -1);
  for (int t = 0; t < static_cast<int>(w.size()); ++t) {
    int lab = w[static_cast<std::size_t>(t)];
    if (first[static_cast<std::size_t>(lab)] < 0) first[static_cast<std::size_t>(lab)] = t;
    last[static_cast<std::size_t>(lab)] = t;
  }
}

}  // namespace

bool is_irreducible(const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return true;
  std::vector<int> first, last;
  occurrence_bounds(w, first, last);
  for (int i = 0; i < n; ++i) {
    int r = closure_end(w, first, last, i);
    if (r >= 0 && r - i + 1 < n) return false;
  }
  return true;
}

Factorization factorize(const Word& w) {
  Factorization f;
  const int n = static_cast<int>(w.size());
  if (n == 0) return f;
  std::vector<int> first, last;
  occurrence_bounds(w, first, last);

  int i = -1, r = -1;
  for (int s = 0; s < n; ++s) {
    int e = closure_end(w, first, last, s);
    if (e < 0) continue;
    if (e - s + 1 == n) continue;  // whole word
    i = s;
    r = e;
    break;
  }
  if (i < 0) {
    f.core = w;
    return f;
  }
  // Extend to the maximal proper self-contained run starting at i.
  while (r + 1 < n) {
    int e = closure_end(w, first, last, r + 1);
    if (e < 0) break;
    if (i == 0 && e == n - 1) break;  // union would be the whole word
    r = e;
  }

  Word piece(w.begin() + i, w.begin() + r + 1);
  Word rest;
  rest.reserve(w.size() - piece.size());
  rest.insert(rest.end(), w.begin(), w.begin() + i);
  rest.insert(rest.end(), w.begin() + r + 1, w.end());

  f = factorize(canonicalize(rest));
  f.insertions.emplace_back(i, factorize(canonicalize(piece)));
  return f;
}

std::vector<Word> Factorization::irreducible_factors() const {
  std::vector<Word> out;
  if (!core.empty()) out.push_back(core);
  for (const auto& [gap, piece] : insertions) {
    auto sub = piece.irreducible_factors();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Word Factorization::reassemble() const {
  Word w = core;
  for (const auto& [gap, piece] : insertions) w = insert(w, gap, piece.reassemble());
  return w;
}

Word insert(const Word& host, int position, const Word& piece) {
  if (position < 0 || position > static_cast<int>(host.size()))
    throw std::invalid_argument("insert: gap out of range");
  std::vector<int> raw;
  raw.reserve(host.size() + piece.size());
  const int offset = label_count(host) + label_count(piece) + 1;
  raw.insert(raw.end(), host.begin(), host.begin() + position);
  for (int x : piece) raw.push_back(x + offset);
  raw.insert(raw.end(), host.begin() + position, host.end());
  return canonicalize(raw);
}

std::map<Word, Int> expand_f(const std::map<int, std::vector<std::pair<Word, Int>>>& irreducibles,
                             int max_order) {
  if (max_order < 0 || max_order % 2 != 0)
    throw std::invalid_argument("expand_f: truncation order must be a nonnegative even integer");

  // parts[n] = all F-words of order n with coefficients; parts[0] = {1}.
  std::vector<std::map<Word, Int>> parts(static_cast<std::size_t>(max_order) + 1);
  parts[0][Word{}] = 1;

  for (int n = 2; n <= max_order; n += 2) {
    auto& out = parts[static_cast<std::size_t>(n)];
    for (const auto& [order, words] : irreducibles) {
      if (order > n) continue;
      for (const auto& [m, coeff] : words) {
        if (static_cast<int>(m.size()) != order)
          throw std::invalid_argument("expand_f: word length disagrees with its declared order");
        // Distribute the remaining order over the gaps before each symbol.
        const int slots = order;
        auto recurse = [&](auto&& self, int slot, int budget, std::vector<int>& raw, int fresh,
                           Int weight) -> void {
          if (slot == slots) {
            if (budget != 0) return;
            out[canonicalize(raw)] += weight;
            return;
          }
          for (int u = 0; u <= budget; u += 2) {
            if (u == 0) {
              raw.push_back(m[static_cast<std::size_t>(slot)] + 1000000);
              self(self, slot + 1, budget, raw, fresh, weight);
              raw.pop_back();
              continue;
            }
            for (const auto& [piece, pc] : parts[static_cast<std::size_t>(u)]) {
              std::size_t mark = raw.size();
              for (int x : piece) raw.push_back(x + fresh);
              raw.push_back(m[static_cast<std::size_t>(slot)] + 1000000);
              self(self, slot + 1, budget - u, raw, fresh + label_count(piece), weight * pc);
              raw.resize(mark);
            }
          }
        };
        std::vector<int> raw;
        raw.reserve(static_cast<std::size_t>(n));
        recurse(recurse, 0, n - order, raw, 0, coeff);
      }
    }
  }

  std::map<Word, Int> all;
  for (int n = 2; n <= max_order; n += 2)
    for (const auto& [w, c] : parts[static_cast<std::size_t>(n)]) all[w] += c;
  return all;
}

std::map<Word, Int> group_by_orbit(const std::map<Word, Int>& terms) {
  std::map<Word, Int> out;
  for (const auto& [w, c] : terms) out[cyclic_orbit(w).representative] += c;
  return out;
}

std::string to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i];
  }
  return os.str();
}

Word parse_word(std::string_view text) {
  Word w;
  std::istringstream is{std::string(text)};
  int x = 0;
  while (is >> x) {
    if (x < 1) throw std::invalid_argument("parse_word: labels must be positive");
    w.push_back(x);
  }
  if (!is.eof()) throw std::invalid_argument("parse_word: malformed word text");
  return w;
}

}  // namespace sbm
