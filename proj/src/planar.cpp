#include "sbm/planar.hpp"

#include <omp.h>

#include <stdexcept>
#include <vector>

#include "sbm/nc_transform.hpp"

namespace sbm {

namespace {

// Non-crossing matchings of w[i..j] with position i matched inside the
// interval; standard interval split, memoized on (i, j).
std::int64_t count_interval(const Word& w, int i, int j, std::vector<std::int64_t>& memo, int n) {
  if (i > j) return 1;
  if ((j - i + 1) % 2 != 0) return 0;
  std::int64_t& m = memo[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  if (m >= 0) return m;
  std::int64_t total = 0;
  for (int k = i + 1; k <= j; k += 2) {
    if (w[static_cast<std::size_t>(k)] != w[static_cast<std::size_t>(i)]) continue;
    std::int64_t left = count_interval(w, i + 1, k - 1, memo, n);
    if (left == 0) continue;
    total += left * count_interval(w, k + 1, j, memo, n);
  }
  m = total;
  return total;
}

}  // namespace

std::int64_t planar_value(const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return 1;
  if (n % 2 != 0) return 0;
  std::vector<int> counts(static_cast<std::size_t>(label_count(w)) + 1, 0);
  for (int x : w) ++counts[static_cast<std::size_t>(x)];
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] % 2 != 0) return 0;
  // A chord diagram on the circle is non-crossing iff its linearization at
  // any fixed cut is, so the cyclic count equals the interval count.
  std::vector<std::int64_t> memo(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  return count_interval(w, 0, n - 1, memo, n);
}

namespace {

Poly planar_sum(const MomentExpansion& e, int threads) {
  std::vector<std::int64_t> values(e.terms.size());
  int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long long i = 0; i < static_cast<long long>(e.terms.size()); ++i)
    values[static_cast<std::size_t>(i)] = planar_value(e.terms[static_cast<std::size_t>(i)].representative);
  Poly out;
  for (std::size_t i = 0; i < e.terms.size(); ++i)
    out += Poly::monomial(Int(e.terms[i].multiplicity) * Int(values[i]), e.terms[i].labels);
  return out;
}

}  // namespace

Poly moment_large_d(int p, int threads) {
  if (p < 1) throw std::invalid_argument("moment_large_d: p must be positive");
  return planar_sum(enumerate_tree_walks(p, threads), threads);
}

Series irreducible_series(int p_max, int threads) {
  if (p_max < 1) throw std::invalid_argument("irreducible_series: p_max must be positive");
  Series a(2 * p_max);
  for (int l = 1; l <= p_max; ++l) a.set(2 * l, planar_sum(irreducible_expansion(l, threads), threads));
  return a;
}

std::vector<Poly> planar_moment_table(int p_max, int enum_budget, int threads) {
  if (p_max < 1) throw std::invalid_argument("planar_moment_table: p_max must be positive");
  std::vector<Poly> mu(static_cast<std::size_t>(p_max));
  const int direct = std::min(p_max, enum_budget);
  for (int p = 1; p <= direct; ++p) mu[static_cast<std::size_t>(p - 1)] = moment_large_d(p, threads);
  if (p_max > direct) {
    Series f = compose_f_from_a(irreducible_series(p_max, threads));
    for (int p = direct + 1; p <= p_max; ++p) mu[static_cast<std::size_t>(p - 1)] = f.coeff(2 * p);
  }
  return mu;
}

}  // namespace sbm
