#pragma once

#include <vector>

#include "sbm/series.hpp"

namespace sbm {

// Solves f = 1 + a(x f) order by order; a must have zero constant term.
Series compose_f_from_a(const Series& a);

// Moment / free-cumulant conversion by explicit composition sums.  Vector
// index i holds the order-(i+1) coefficient; both directions are exact and
// mutually inverse to the given order.
std::vector<Poly> moments_from_cumulants(const std::vector<Poly>& a);
std::vector<Poly> cumulants_from_moments(const std::vector<Poly>& f);

// Rank-one projector blocks in the joint large-d limit: mu_{2n} are the
// Fuss-Narayana polynomials in p = Z/d.
std::vector<Poly> rank1_moments(int n_max);

// Moments beta_k of the product of a Wishart factor and a Wigner matrix;
// equals the non-crossing-walk approximation of the block model at Z = y.
std::vector<Poly> semicircle_nc_moments(int k_max);  // entries beta_2, beta_4, ...

// Series residual of the cubic f = 1 + p x^2 f^2 / (1 - x^2 f^2) on the
// rank-one moment series; identically zero through max_order when correct.
Series rank1_cubic_residual(int max_order);

// Series residual of the quartic x^2 f^2 (f + p - 1)^2 - p f + p = 0 on the
// semicircle-cumulant moment series.
Series semicircle_quartic_residual(int max_order);

// Builds the moment generating series 1 + sum mu[n] x^{2n} (even grading).
Series even_moment_series(const std::vector<Poly>& mu, int max_order);

}  // namespace sbm
