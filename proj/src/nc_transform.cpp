#include "sbm/nc_transform.hpp"

#include <stdexcept>

namespace sbm {

Series compose_f_from_a(const Series& a) {
  if (!a.coeff(0).is_zero())
    throw std::invalid_argument("compose_f_from_a: cumulant series needs zero constant term");
  Series f(a.max_order);
  f.set(0, Poly(Int(1)));
  // Each pass fixes at least one further order.
  for (int pass = 0; pass <= a.max_order; ++pass) {
    Series next = compose(a, f.times_x());
    next.c[0] += Poly(Int(1));
    if (next == f) break;
    f = next;
  }
  return f;
}

namespace {

Poly divided_exact(Poly p, long long k) { return p.divided_exact(Int(k)); }

// All truncated powers A^1..A^{n_max} of the series with coefficients
// seq[0..] placed at x^1.. .
std::vector<Series> series_powers(const std::vector<Poly>& seq) {
  const int n = static_cast<int>(seq.size());
  Series base(n);
  for (int i = 0; i < n; ++i) base.set(i + 1, seq[static_cast<std::size_t>(i)]);
  std::vector<Series> pw;
  pw.reserve(static_cast<std::size_t>(n));
  pw.push_back(base);
  for (int k = 2; k <= n; ++k) pw.push_back(pw.back() * base);
  return pw;
}

}  // namespace

std::vector<Poly> moments_from_cumulants(const std::vector<Poly>& a) {
  const int n_max = static_cast<int>(a.size());
  auto pw = series_powers(a);
  std::vector<Poly> f(a.size());
  for (int n = 1; n <= n_max; ++n) {
    Poly fn = a[static_cast<std::size_t>(n - 1)];
    for (int k = 2; k <= n; ++k)
      fn += divided_exact(binomial(n, k - 1) * pw[static_cast<std::size_t>(k - 1)].coeff(n), k);
    f[static_cast<std::size_t>(n - 1)] = fn;
  }
  return f;
}

std::vector<Poly> cumulants_from_moments(const std::vector<Poly>& f) {
  const int n_max = static_cast<int>(f.size());
  auto pw = series_powers(f);
  std::vector<Poly> a(f.size());
  for (int n = 1; n <= n_max; ++n) {
    Poly an = f[static_cast<std::size_t>(n - 1)];
    for (int k = 2; k <= n; ++k) {
      Poly term = divided_exact(binomial(n + k - 2, k - 1) * pw[static_cast<std::size_t>(k - 1)].coeff(n), k);
      if (k % 2 == 0)
        an -= term;
      else
        an += term;
    }
    a[static_cast<std::size_t>(n - 1)] = an;
  }
  return a;
}

std::vector<Poly> rank1_moments(int n_max) {
  if (n_max < 1) throw std::invalid_argument("rank1_moments: n_max must be positive");
  std::vector<Poly> mu;
  mu.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    Poly m;
    for (int b = 1; b <= n; ++b) {
      Int c = binomial(n - 1, b - 1) * binomial(2 * n, b - 1);
      if (c % b != 0) throw std::logic_error("rank1_moments: non-integer coefficient");
      m += Poly::monomial(c / b, b);
    }
    mu.push_back(std::move(m));
  }
  return mu;
}

std::vector<Poly> semicircle_nc_moments(int k_max) {
  if (k_max < 2) throw std::invalid_argument("semicircle_nc_moments: k_max must be at least 2");
  std::vector<Poly> beta;
  for (int k = 2; k <= k_max; k += 2) {
    Poly b;
    for (int j = 1; j <= k / 2; ++j) {
      Int c = 2 * binomial(k, j - 1) * binomial(k, k / 2 - j);
      if (c % k != 0) throw std::logic_error("semicircle_nc_moments: non-integer coefficient");
      b += Poly::monomial(c / k, j - 1);
    }
    beta.push_back(std::move(b));
  }
  return beta;
}

Series even_moment_series(const std::vector<Poly>& mu, int max_order) {
  Series f(max_order);
  f.set(0, Poly(Int(1)));
  for (std::size_t n = 0; n < mu.size(); ++n) {
    int power = 2 * (static_cast<int>(n) + 1);
    if (power > max_order) break;
    f.set(power, mu[n]);
  }
  return f;
}

Series rank1_cubic_residual(int max_order) {
  auto mu = rank1_moments(max_order / 2);
  Series f = even_moment_series(mu, max_order);
  Series x2f2 = (f * f).times_x().times_x();
  Series one(max_order);
  one.set(0, Poly(Int(1)));
  // (f - 1)(1 - x^2 f^2) - p x^2 f^2
  return (f - one) * (one - x2f2) - Poly::variable() * x2f2;
}

Series semicircle_quartic_residual(int max_order) {
  auto beta = semicircle_nc_moments(max_order);
  // f = 1 + p * sum_n beta_{2n}(y = p) x^{2n}
  Series f(max_order);
  f.set(0, Poly(Int(1)));
  for (std::size_t n = 0; n < beta.size(); ++n) {
    int power = 2 * (static_cast<int>(n) + 1);
    if (power > max_order) break;
    f.set(power, Poly::variable() * beta[n]);
  }
  Series one(max_order);
  one.set(0, Poly(Int(1)));
  Series fp1 = f + (Poly::variable() - Poly(Int(1))) * one;  // f + p - 1
  Series res = (f * f).times_x().times_x() * (fp1 * fp1);
  res = res - Poly::variable() * f;
  res.c[0] += Poly::variable();
  return res;
}

}  // namespace sbm
