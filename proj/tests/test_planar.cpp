#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbm/nc_transform.hpp"
#include "sbm/planar.hpp"
#include "sbm/wick.hpp"
#include "sbm/word.hpp"

using namespace sbm;

namespace {

Poly zpoly(std::initializer_list<long long> coeffs_from_z1) {
  Poly p;
  int k = 1;
  for (long long c : coeffs_from_z1) p.set_coeff(k++, Int(c));
  return p;
}

}  // namespace

TEST_CASE("monomial planar values are Catalan numbers") {
  for (int p = 1; p <= 9; ++p) CHECK(planar_value(Word(static_cast<std::size_t>(2 * p), 1)) == static_cast<std::int64_t>(catalan(p)));
}

TEST_CASE("the mixed two-block example counts 19 planar matchings") {
  Word w;
  w.insert(w.end(), 6, 1);
  w.insert(w.end(), {2, 2, 1, 1, 2, 2});
  CHECK(planar_value(w) == 19);
}

TEST_CASE("planar value basics") {
  CHECK(planar_value(Word{1, 1, 2, 2}) == 1);
  CHECK(planar_value(Word{1, 2, 1, 2}) == 0);  // only the crossing matching exists
  CHECK(planar_value(Word{1, 1, 2}) == 0);
  CHECK(planar_value(Word{}) == 1);
}

TEST_CASE("planar value is the leading Wick coefficient at sigma^2 = 1/d") {
  for (int p = 1; p <= 5; ++p) {
    for (const auto& t : enumerate_tree_walks(p).terms) {
      DPoly w = wick_trace(t.representative);
      const int len = 2 * p;
      CHECK(w.d_poly.degree() == len / 2 + 1);
      CHECK(w.d_poly.coeff(len / 2 + 1) == Int(planar_value(t.representative)));
    }
  }
}

TEST_CASE("planar value multiplies over irreducible factors") {
  for (int p = 2; p <= 6; ++p) {
    for (const auto& t : enumerate_tree_walks(p).terms) {
      auto factors = factorize(t.representative).irreducible_factors();
      if (factors.size() < 2) continue;
      std::int64_t prod = 1;
      for (const auto& f : factors) prod *= planar_value(f);
      CHECK(planar_value(t.representative) == prod);
    }
  }
}

TEST_CASE("large-d moments at low orders") {
  CHECK(moment_large_d(1) == zpoly({1}));
  CHECK(moment_large_d(2) == zpoly({2, 2}));
  CHECK(moment_large_d(3) == zpoly({5, 12, 5}));
  CHECK(moment_large_d(4) == zpoly({14, 62, 56, 14}));
  CHECK(moment_large_d(6) == zpoly({132, 1542, 3454, 2816, 990, 132}));
}

TEST_CASE("irreducible planar series at low orders") {
  Series a = irreducible_series(6);
  CHECK(a.coeff(2) == zpoly({1}));
  CHECK(a.coeff(4) == zpoly({2}));
  CHECK(a.coeff(6) == zpoly({5}));
  CHECK(a.coeff(8) == zpoly({14, 6}));
  CHECK(a.coeff(10) == zpoly({42, 70}));
  CHECK(a.coeff(12) == zpoly({132, 552, 50}));
}

TEST_CASE("transform of the irreducible series reproduces the direct moments") {
  const int p_max = 6;
  Series f = compose_f_from_a(irreducible_series(p_max));
  for (int p = 1; p <= p_max; ++p) CHECK(f.coeff(2 * p) == moment_large_d(p));
  for (int k = 1; k <= f.max_order; k += 2) CHECK(f.coeff(k).is_zero());
}

TEST_CASE("moment table switches to the transform route beyond the budget") {
  auto table = planar_moment_table(6, 3);
  CHECK(table.size() == 6);
  for (int p = 1; p <= 6; ++p) CHECK(table[static_cast<std::size_t>(p - 1)] == moment_large_d(p));
}
