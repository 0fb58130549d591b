#pragma once

#include <cstdint>

#include "sbm/series.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/word.hpp"

namespace sbm {

// Number of non-crossing perfect matchings of the cyclic word in which
// matched positions carry equal labels; this is lim_{d->inf} (1/d) <tr W>
// at sigma^2 = 1/d.  Returns 0 for words with an odd label count.
std::int64_t planar_value(const Word& w);

// mu_{2p} in the joint limit N -> inf then d -> inf: a polynomial in Z of
// degree p, assembled by direct walk enumeration.
Poly moment_large_d(int p, int threads = 0);

// Generating series of irreducible orbits weighted by their planar values:
// the x^{2l} coefficient is a polynomial in Z.
Series irreducible_series(int p_max, int threads = 0);

// Moment polynomials mu_2..mu_{2 p_max} with direct enumeration up to
// 2 enum_budget and the cumulant-series + transform route beyond it.
std::vector<Poly> planar_moment_table(int p_max, int enum_budget = 8, int threads = 0);

}  // namespace sbm
