#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sbm/poly.hpp"
#include "sbm/series.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/wick.hpp"

namespace sbm {

// Directory holding the reference tables; compiled-in default, overridable
// with the SBM_DATA_DIR environment variable.
std::string data_dir();

std::vector<MomentExpansion> load_orbit_table(const std::string& path);
std::vector<std::pair<int, Poly>> load_moment_table(const std::string& path);  // order -> Z-poly

struct RegularTerm {
  Word word;
  long long multiplicity = 0;
  Poly weight;
};
std::vector<RegularTerm> load_regular_table(const std::string& path);

// Finite-d reference moments for orders 2..8 (exact polynomials in Z and d,
// z_coeffs[k] multiplies Z^k sigma^{2p}).
std::vector<FiniteDMoment> finite_d_reference();

// Reference rows beta_2..beta_12 for the product-of-two-matrices moments.
std::vector<Poly> product_moment_reference();

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Cross-module verification battery behind the `check` subcommand.
std::vector<CheckItem> run_self_checks(int threads = 0, long long budget = kDefaultWickBudget);

}  // namespace sbm
