#pragma once

#include <string>
#include <vector>

#include "sbm/poly.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/word.hpp"

namespace sbm {

// <tr W> for a word of independent GOE blocks, as an exact polynomial in the
// block dimension d.  The value carries sigma^{sigma_power} with
// sigma_power = word length; `vanished` marks words with an odd label count,
// whose expectation is identically zero.
struct DPoly {
  Poly d_poly;
  int sigma_power = 0;
  bool vanished = false;
};

inline constexpr long long kDefaultWickBudget = 1000000000LL;

// Sums d^{#index loops} over all equal-label pair matchings and over both
// propagator terms per pair.  Throws std::runtime_error when the term count
// matchings * 2^{pairs} exceeds `budget`.
DPoly wick_trace(const Word& w, long long budget = kDefaultWickBudget, int threads = 0);
DPoly wick_trace_serial(const Word& w, long long budget = kDefaultWickBudget);

// Number of equal-label perfect matchings of w (the Wick sum size).
Int wick_matching_count(const Word& w);

// lim_{N->inf} (1/(Nd)) <tr A^{2p}>: z_coeffs[k] is the d-polynomial that
// multiplies Z^k sigma^{2p}.
struct FiniteDMoment {
  int order = 0;
  std::vector<Poly> z_coeffs;  // index = power of Z, entry 0 unused
};

FiniteDMoment moment_finite_d(int p, long long budget = kDefaultWickBudget, int threads = 0);

struct SumRuleReport {
  bool ok = false;
  std::string diff;  // human-readable mismatch description, empty when ok
};

// Verifies <tr (X_1+..+X_k)^{2n}> = k^n <tr X^{2n}> at symbolic d by brute
// multinomial expansion into words.
SumRuleReport sum_rule_check(int k, int n, long long budget = kDefaultWickBudget, int threads = 0);

// d = 1, sigma = 1 moments mu_2..mu_{2 j_max} as exact polynomials in Z,
// from the degree-resolved recursion on closed-walk generating functions.
std::vector<Poly> d1_moments(int j_max);

}  // namespace sbm
