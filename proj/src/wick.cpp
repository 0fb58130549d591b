#include "sbm/wick.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sbm {

namespace {

bool label_counts(const Word& w, std::vector<int>& counts) {
  counts.assign(static_cast<std::size_t>(label_count(w)) + 1, 0);
  for (int x : w) ++counts[static_cast<std::size_t>(x)];
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] % 2 != 0) return false;
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  void reset(int n) {
    parent.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
};

// One matching evaluated over all 2^{pairs} propagator-term choices.
// Index variable a_t enters position t as the row index and position t-1 as
// the column index; the straight term identifies (a_s,a_t) and
// (a_{s+1},a_{t+1}), the twisted term (a_s,a_{t+1}) and (a_{s+1},a_t).
void accumulate_matching(const std::vector<std::pair<int, int>>& pairs, int len, UnionFind& uf,
                         std::vector<long long>& loop_counts) {
  const int npairs = static_cast<int>(pairs.size());
  for (unsigned long long mask = 0; mask < (1ull << npairs); ++mask) {
    uf.reset(len);
    for (int q = 0; q < npairs; ++q) {
      auto [s, t] = pairs[static_cast<std::size_t>(q)];
      int s1 = (s + 1) % len;
      int t1 = (t + 1) % len;
      if (mask >> q & 1ull) {
        uf.unite(s, t1);
        uf.unite(s1, t);
      } else {
        uf.unite(s, t);
        uf.unite(s1, t1);
      }
    }
    int comps = 0;
    for (int i = 0; i < len; ++i)
      if (uf.find(i) == i) ++comps;
    ++loop_counts[static_cast<std::size_t>(comps)];
  }
}

long long matchings_of_counts(const std::vector<int>& counts) {
  long long m = 1;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    for (int c = counts[i] - 1; c >= 3; c -= 2) {
      if (m > (1LL << 62) / c) throw std::runtime_error("wick_trace: matching count overflow");
      m *= c;
    }
  }
  return m;
}

// Decodes matching #idx (0-based) into pairs.  At every step the lowest
// unmatched position is paired with one of the remaining equal-label
// positions; sibling subtrees all have equal size, so mixed-radix decoding
// is exact.
void decode_matching(const Word& w, long long idx, long long total,
                     std::vector<std::pair<int, int>>& pairs) {
  const int len = static_cast<int>(w.size());
  pairs.clear();
  std::vector<char> taken(static_cast<std::size_t>(len), 0);
  long long size = total;
  int start = 0;
  while (true) {
    while (start < len && taken[static_cast<std::size_t>(start)]) ++start;
    if (start >= len) break;
    int lab = w[static_cast<std::size_t>(start)];
    int r = 0;
    for (int t = start + 1; t < len; ++t)
      if (!taken[static_cast<std::size_t>(t)] && w[static_cast<std::size_t>(t)] == lab) ++r;
    long long sub = size / r;
    int k = static_cast<int>(idx / sub);
    idx %= sub;
    size = sub;
    int partner = -1;
    for (int t = start + 1; t < len; ++t) {
      if (!taken[static_cast<std::size_t>(t)] && w[static_cast<std::size_t>(t)] == lab && k-- == 0) {
        partner = t;
        break;
      }
    }
    taken[static_cast<std::size_t>(start)] = taken[static_cast<std::size_t>(partner)] = 1;
    pairs.emplace_back(start, partner);
  }
}

DPoly finish_counts(const std::vector<long long>& loop_counts, int len) {
  DPoly out;
  out.sigma_power = len;
  Poly p;
  for (int k = static_cast<int>(loop_counts.size()) - 1; k >= 0; --k)
    if (loop_counts[static_cast<std::size_t>(k)] != 0)
      p += Poly::monomial(Int(loop_counts[static_cast<std::size_t>(k)]), k);
  out.d_poly = p;
  return out;
}

void check_budget(const Word& w, long long matchings, long long budget) {
  const int npairs = static_cast<int>(w.size()) / 2;
  if (npairs >= 62) throw std::runtime_error("wick_trace: word too long");
  long long terms;
  if (__builtin_mul_overflow(matchings, 1LL << npairs, &terms) || terms > budget) {
    std::ostringstream os;
    os << "wick_trace: word [" << to_string(w) << "] needs more than " << budget
       << " elementary terms; raise the budget to evaluate it";
    throw std::runtime_error(os.str());
  }
}

}  // namespace

Int wick_matching_count(const Word& w) {
  std::vector<int> counts;
  if (!label_counts(w, counts)) return 0;
  Int m = 1;
  for (std::size_t i = 1; i < counts.size(); ++i) m *= double_factorial_odd(counts[i] / 2);
  return m;
}

DPoly wick_trace_serial(const Word& w, long long budget) {
  std::vector<int> counts;
  if (!label_counts(w, counts)) return DPoly{Poly{}, static_cast<int>(w.size()), true};
  const int len = static_cast<int>(w.size());
  if (len == 0) return DPoly{Poly::monomial(Int(1), 1), 0, false};  // tr of the identity
  check_budget(w, matchings_of_counts(counts), budget);

  std::vector<long long> loop_counts(static_cast<std::size_t>(len) + 1, 0);
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> taken(static_cast<std::size_t>(len), 0);
  UnionFind uf;
  auto recurse = [&](auto&& self, int start) -> void {
    while (start < len && taken[static_cast<std::size_t>(start)]) ++start;
    if (start >= len) {
      accumulate_matching(pairs, len, uf, loop_counts);
      return;
    }
    taken[static_cast<std::size_t>(start)] = 1;
    for (int t = start + 1; t < len; ++t) {
      if (taken[static_cast<std::size_t>(t)] || w[static_cast<std::size_t>(t)] != w[static_cast<std::size_t>(start)])
        continue;
      taken[static_cast<std::size_t>(t)] = 1;
      pairs.emplace_back(start, t);
      self(self, start + 1);
      pairs.pop_back();
      taken[static_cast<std::size_t>(t)] = 0;
    }
    taken[static_cast<std::size_t>(start)] = 0;
  };
  recurse(recurse, 0);
  return finish_counts(loop_counts, len);
}

DPoly wick_trace(const Word& w, long long budget, int threads) {
  std::vector<int> counts;
  if (!label_counts(w, counts)) return DPoly{Poly{}, static_cast<int>(w.size()), true};
  const int len = static_cast<int>(w.size());
  if (len == 0) return DPoly{Poly::monomial(Int(1), 1), 0, false};
  const long long total = matchings_of_counts(counts);
  check_budget(w, total, budget);

  int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::vector<std::vector<long long>> partial(
      static_cast<std::size_t>(nthreads),
      std::vector<long long>(static_cast<std::size_t>(len) + 1, 0));
#pragma omp parallel num_threads(nthreads)
  {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
    std::vector<std::pair<int, int>> pairs;
    UnionFind uf;
#pragma omp for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
      decode_matching(w, idx, total, pairs);
      accumulate_matching(pairs, len, uf, mine);
    }
  }
  std::vector<long long> loop_counts(static_cast<std::size_t>(len) + 1, 0);
  for (const auto& part : partial)
    for (std::size_t k = 0; k < part.size(); ++k) loop_counts[k] += part[k];
  return finish_counts(loop_counts, len);
}

FiniteDMoment moment_finite_d(int p, long long budget, int threads) {
  if (p < 1) throw std::invalid_argument("moment_finite_d: p must be positive");
  auto walks = enumerate_tree_walks(p, threads);
  FiniteDMoment out;
  out.order = 2 * p;
  out.z_coeffs.assign(static_cast<std::size_t>(p) + 1, Poly{});
  for (const auto& term : walks.terms) {
    DPoly w = wick_trace(term.representative, budget, threads);
    if (w.vanished) throw std::logic_error("moment_finite_d: tree walk with odd label count");
    // <tr W> is divisible by d (at least one index loop); divide once for
    // the 1/(Nd) normalization.
    Poly per_d;
    for (int k = 1; k <= w.d_poly.degree(); ++k) per_d += Poly::monomial(w.d_poly.coeff(k), k - 1);
    if (w.d_poly.coeff(0) != 0) throw std::logic_error("moment_finite_d: trace not divisible by d");
    out.z_coeffs[static_cast<std::size_t>(term.labels)] += Int(term.multiplicity) * per_d;
  }
  return out;
}

SumRuleReport sum_rule_check(int k, int n, long long budget, int threads) {
  if (k < 1 || n < 1) throw std::invalid_argument("sum_rule_check: k and n must be positive");
  // Expand <tr (X_1+..+X_k)^{2n}> into canonical words with multiplicities.
  std::map<Word, long long> words;
  std::vector<int> seq(static_cast<std::size_t>(2 * n), 1);
  while (true) {
    words[canonicalize(seq)] += 1;
    int i = 2 * n - 1;
    while (i >= 0 && seq[static_cast<std::size_t>(i)] == k) {
      seq[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++seq[static_cast<std::size_t>(i)];
  }

  Poly lhs;
  for (const auto& [w, c] : words) {
    DPoly t = wick_trace(w, budget, threads);
    if (t.vanished) continue;
    lhs += Int(c) * t.d_poly;
  }
  Poly rhs;
  {
    Word monomial(static_cast<std::size_t>(2 * n), 1);
    Int scale = 1;
    for (int i = 0; i < n; ++i) scale *= k;
    rhs = scale * wick_trace(monomial, budget, threads).d_poly;
  }

  SumRuleReport rep;
  rep.ok = lhs == rhs;
  if (!rep.ok) {
    std::ostringstream os;
    os << "lhs = " << lhs.to_text("d") << " ; rhs = " << rhs.to_text("d");
    rep.diff = os.str();
  }
  return rep;
}

namespace {

// Polynomial in the auxiliary variable y whose coefficients are exact
// polynomials in Z.
using YPoly = std::vector<Poly>;

void yadd(YPoly& a, const YPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

}  // namespace

std::vector<Poly> d1_moments(int j_max) {
  if (j_max < 1) throw std::invalid_argument("d1_moments: j_max must be positive");
  // h[j] is the y-resolved generating polynomial for closed walks of length
  // 2j; the y-power tracks how often the first edge is traversed up-down.
  std::vector<YPoly> h(static_cast<std::size_t>(j_max) + 1);
  h[0] = YPoly{Poly(Int(1))};

  auto reweighted = [&](int j, int mbar) -> YPoly {
    if (j == 0) return YPoly{Poly(Int(1))};
    YPoly r(h[static_cast<std::size_t>(j)].size());
    for (std::size_t m = 0; m < r.size(); ++m)
      r[m] = binomial(static_cast<long long>(m) + mbar - 1, mbar - 1) * h[static_cast<std::size_t>(j)][m];
    return r;
  };
  auto at_one = [](const YPoly& yp) {
    Poly s;
    for (const auto& c : yp) s += c;
    return s;
  };

  for (int j = 1; j <= j_max; ++j) {
    YPoly acc;
    for (int mbar = 1; mbar <= j; ++mbar) {
      // <X^{2 mbar}> at d = 1, sigma = 1.
      Int gauss = double_factorial_odd(mbar);
      for (int i = 0; i < mbar; ++i) gauss *= 2;
      YPoly inner;
      for (int j1 = 0; j1 <= j - mbar; ++j1) {
        int j2 = j - mbar - j1;
        YPoly left = reweighted(j1, mbar);
        Poly right = at_one(reweighted(j2, mbar));
        YPoly prod(left.size());
        for (std::size_t m = 0; m < left.size(); ++m) prod[m] = left[m] * right;
        yadd(inner, prod);
      }
      YPoly term(static_cast<std::size_t>(mbar) + inner.size());
      for (std::size_t m = 0; m < inner.size(); ++m)
        term[m + static_cast<std::size_t>(mbar)] = gauss * (Poly::monomial(Int(1), 1) * inner[m]);
      yadd(acc, term);
    }
    h[static_cast<std::size_t>(j)] = acc;
  }

  std::vector<Poly> mu;
  mu.reserve(static_cast<std::size_t>(j_max));
  for (int j = 1; j <= j_max; ++j) mu.push_back(at_one(h[static_cast<std::size_t>(j)]));
  return mu;
}

}  // namespace sbm
