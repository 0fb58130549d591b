#include "sbm/walk_enum.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sbm {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : w) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

using OrbitCounts = std::unordered_map<Word, long long, WordHash>;

// Mutable walk state; vertices are numbered in creation order, 0 is the root.
struct WalkState {
  Word word;
  std::vector<int> path{0};                              // vertex stack
  std::vector<int> parent_label{0};                      // per vertex
  std::vector<std::vector<std::pair<int, int>>> children{{}};  // per vertex: (label, child)
  int used = 0;

  void reset() {
    word.clear();
    path.assign(1, 0);
    parent_label.assign(1, 0);
    children.assign(1, {});
    used = 0;
  }

  // Applies one symbol of a valid walk word (used to replay prefixes).
  void step(int s) {
    int v = path.back();
    if (path.size() > 1 && s == parent_label[static_cast<std::size_t>(v)]) {
      word.push_back(s);
      path.pop_back();
      return;
    }
    for (auto [lab, child] : children[static_cast<std::size_t>(v)]) {
      if (lab == s) {
        word.push_back(s);
        path.push_back(child);
        return;
      }
    }
    if (s != used + 1) throw std::logic_error("WalkState::step: invalid walk symbol");
    ++used;
    int child = static_cast<int>(parent_label.size());
    parent_label.push_back(s);
    children.emplace_back();
    children[static_cast<std::size_t>(v)].emplace_back(s, child);
    word.push_back(s);
    path.push_back(child);
  }
};

// Depth-first generation of walk words up to `stop` symbols, pruned so that
// the walk can still return to the root within `len` symbols in total.
template <class Emit>
void walk_dfs(WalkState& st, int len, int stop, Emit&& emit) {
  if (static_cast<int>(st.word.size()) == stop) {
    emit(st);
    return;
  }
  const int remaining = len - static_cast<int>(st.word.size());
  const int depth = static_cast<int>(st.path.size()) - 1;
  const int v = st.path.back();

  if (depth >= 1) {  // up
    st.word.push_back(st.parent_label[static_cast<std::size_t>(v)]);
    st.path.pop_back();
    walk_dfs(st, len, stop, emit);
    st.path.push_back(v);
    st.word.pop_back();
  }
  if (depth + 2 <= remaining) {
    // Index loop: deeper recursion may append to children[v] (and restore it
    // on unwind), which would invalidate range-for iterators.
    const std::size_t nchildren = st.children[static_cast<std::size_t>(v)].size();
    for (std::size_t ci = 0; ci < nchildren; ++ci) {  // down existing
      auto [lab, child] = st.children[static_cast<std::size_t>(v)][ci];
      st.word.push_back(lab);
      st.path.push_back(child);
      walk_dfs(st, len, stop, emit);
      st.path.pop_back();
      st.word.pop_back();
    }
    if (st.used < len / 2) {  // fresh edge
      ++st.used;
      int child = static_cast<int>(st.parent_label.size());
      st.parent_label.push_back(st.used);
      st.children.emplace_back();
      st.children[static_cast<std::size_t>(v)].emplace_back(st.used, child);
      st.word.push_back(st.used);
      st.path.push_back(child);
      walk_dfs(st, len, stop, emit);
      st.path.pop_back();
      st.word.pop_back();
      st.children[static_cast<std::size_t>(v)].pop_back();
      st.children.pop_back();
      st.parent_label.pop_back();
      --st.used;
    }
  }
}

void canonical_rotation(const Word& w, int r, Word& out, std::vector<int>& relabel) {
  const int n = static_cast<int>(w.size());
  relabel.assign(static_cast<std::size_t>(n) + 2, 0);
  out.resize(static_cast<std::size_t>(n));
  int next = 0;
  for (int t = 0; t < n; ++t) {
    int lab = w[static_cast<std::size_t>((t + r) % n)];
    if (relabel[static_cast<std::size_t>(lab)] == 0) relabel[static_cast<std::size_t>(lab)] = ++next;
    out[static_cast<std::size_t>(t)] = relabel[static_cast<std::size_t>(lab)];
  }
}

Word orbit_rep_fast(const Word& w, Word& scratch, std::vector<int>& relabel) {
  Word best;
  const int n = static_cast<int>(w.size());
  for (int r = 0; r < n; ++r) {
    canonical_rotation(w, r, scratch, relabel);
    if (best.empty() || scratch < best) best = scratch;
  }
  return best;
}

// Cheap necessary condition: a label that occurs exactly twice, adjacently,
// is a proper self-contained subword whenever the word is longer than 2.
bool survives_bounce_filter(const Word& w, std::vector<int>& counts) {
  const int n = static_cast<int>(w.size());
  if (n <= 2) return true;
  counts.assign(static_cast<std::size_t>(n) / 2 + 2, 0);
  for (int x : w) ++counts[static_cast<std::size_t>(x)];
  for (int t = 0; t + 1 < n; ++t)
    if (w[static_cast<std::size_t>(t)] == w[static_cast<std::size_t>(t) + 1] &&
        counts[static_cast<std::size_t>(w[static_cast<std::size_t>(t)])] == 2)
      return false;
  return true;
}

std::vector<Word> collect_prefixes(int len, int prefix_len) {
  std::vector<Word> prefixes;
  WalkState st;
  walk_dfs(st, len, prefix_len, [&](WalkState& s) { prefixes.push_back(s.word); });
  return prefixes;
}

OrbitCounts accumulate_orbits(int len, bool irreducible_only, int threads) {
  OrbitCounts counts;
  auto leaf = [&](OrbitCounts& into, const Word& w, Word& scratch, std::vector<int>& relabel,
                  std::vector<int>& cbuf) {
    if (irreducible_only) {
      if (!survives_bounce_filter(w, cbuf)) return;
      if (!is_irreducible(w)) return;
    }
    ++into[orbit_rep_fast(w, scratch, relabel)];
  };

  const int prefix_len = std::min(len - 2, 7);
  if (threads == 1 || prefix_len < 2) {
    WalkState st;
    Word scratch;
    std::vector<int> relabel, cbuf;
    walk_dfs(st, len, len, [&](WalkState& s) { leaf(counts, s.word, scratch, relabel, cbuf); });
    return counts;
  }

  auto prefixes = collect_prefixes(len, prefix_len);
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::vector<OrbitCounts> partial(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
  {
    OrbitCounts& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
    WalkState st;
    Word scratch;
    std::vector<int> relabel, cbuf;
#pragma omp for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(prefixes.size()); ++i) {
      st.reset();
      for (int s : prefixes[static_cast<std::size_t>(i)]) st.step(s);
      walk_dfs(st, len, len, [&](WalkState& s) { leaf(mine, s.word, scratch, relabel, cbuf); });
    }
  }
  for (auto& part : partial)
    for (auto& [rep, c] : part) counts[rep] += c;
  return counts;
}

MomentExpansion finish(int p, OrbitCounts&& counts, bool irreducible_only) {
  MomentExpansion e;
  e.order = 2 * p;
  e.terms.reserve(counts.size());
  for (auto& [rep, c] : counts) {
    if (irreducible_only && !is_irreducible(rep)) continue;
    OrbitTerm t;
    t.representative = rep;
    t.multiplicity = irreducible_only ? cyclic_orbit(rep).size : c;
    t.labels = label_count(rep);
    e.terms.push_back(std::move(t));
  }
  std::sort(e.terms.begin(), e.terms.end(), [](const OrbitTerm& a, const OrbitTerm& b) {
    if (a.labels != b.labels) return a.labels < b.labels;
    return a.representative < b.representative;
  });
  return e;
}

}  // namespace

void for_each_tree_walk(int len, const std::function<void(const Word&)>& visit) {
  if (len < 0 || len % 2 != 0) throw std::invalid_argument("for_each_tree_walk: length must be even");
  if (len == 0) {
    visit(Word{});
    return;
  }
  WalkState st;
  walk_dfs(st, len, len, [&](WalkState& s) { visit(s.word); });
}

MomentExpansion enumerate_tree_walks(int p, int threads) {
  if (p < 1) throw std::invalid_argument("enumerate_tree_walks: p must be positive");
  return finish(p, accumulate_orbits(2 * p, false, threads), false);
}

MomentExpansion enumerate_tree_walks_serial(int p) { return enumerate_tree_walks(p, 1); }

MomentExpansion irreducible_expansion(int p, int threads) {
  if (p < 1) throw std::invalid_argument("irreducible_expansion: p must be positive");
  return finish(p, accumulate_orbits(2 * p, true, threads), true);
}

Poly regular_graph_weight(const Word& w) {
  if (!is_tree_walk(w)) throw std::invalid_argument("regular_graph_weight: not a tree-walk word");
  // Rebuild the tree and count children per vertex.
  std::vector<int> parent_label{0};
  std::vector<std::vector<std::pair<int, int>>> children{{}};
  std::vector<int> path{0};
  for (int s : w) {
    int v = path.back();
    if (path.size() > 1 && s == parent_label[static_cast<std::size_t>(v)]) {
      path.pop_back();
      continue;
    }
    bool moved = false;
    for (auto [lab, child] : children[static_cast<std::size_t>(v)]) {
      if (lab == s) {
        path.push_back(child);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    int child = static_cast<int>(parent_label.size());
    parent_label.push_back(s);
    children.emplace_back();
    children[static_cast<std::size_t>(v)].emplace_back(s, child);
    path.push_back(child);
  }

  Poly weight{Int(1)};
  for (std::size_t v = 0; v < children.size(); ++v) {
    const int c = static_cast<int>(children[v].size());
    if (v == 0) {
      for (int k = 0; k < c; ++k) weight *= Poly::monomial(Int(1), 1) - Poly(Int(k));
    } else {
      for (int k = 1; k <= c; ++k) weight *= Poly::monomial(Int(1), 1) - Poly(Int(k));
    }
  }
  return weight;
}

Poly scalar_er_moment(const MomentExpansion& e) {
  Poly out;
  for (const auto& t : e.terms) out += Poly::monomial(Int(t.multiplicity), t.labels);
  return out;
}

}  // namespace sbm
