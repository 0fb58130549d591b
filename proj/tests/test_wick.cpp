#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "sbm/rng.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/wick.hpp"
#include "sbm/word.hpp"

using namespace sbm;

namespace {

Poly dp(std::initializer_list<long long> high_first) {
  Poly p;
  for (long long c : high_first) p = p * Poly::variable() + Poly(Int(c));
  return p;
}

Word repeat(int lab, int times) { return Word(static_cast<std::size_t>(times), lab); }

}  // namespace

TEST_CASE("monomial traces for X^2..X^12") {
  // <tr X^{2m}> = d * (reference d-polynomial) * sigma^{2m}
  const Poly d = Poly::variable();
  CHECK(wick_trace(repeat(1, 2)).d_poly == d * dp({1, 1}));
  CHECK(wick_trace(repeat(1, 4)).d_poly == d * dp({2, 5, 5}));
  CHECK(wick_trace(repeat(1, 6)).d_poly == d * dp({5, 22, 52, 41}));
  CHECK(wick_trace(repeat(1, 8)).d_poly == d * dp({14, 93, 374, 690, 509}));
  CHECK(wick_trace(repeat(1, 10)).d_poly == d * dp({42, 386, 2290, 7150, 12143, 8229}));
  CHECK(wick_trace(repeat(1, 12)).d_poly == d * dp({132, 1586, 12798, 58760, 167148, 258479, 166377}));
  CHECK(wick_trace(repeat(1, 4)).sigma_power == 4);
}

TEST_CASE("two-block traces") {
  const Poly d = Poly::variable();
  CHECK(wick_trace(Word{1, 1, 2, 2}).d_poly == d * dp({1, 2, 1}));  // d (d+1)^2

  // <tr X1^{2n} X2^2 X1^2 X2^2> =
  //   sigma^4 [ (d^2+3d+5) <tr X^{2n+2}> + sigma^2 (d+2)(d^2+d+4n) <tr X^{2n}> ]
  for (int n = 1; n <= 2; ++n) {
    Word w = repeat(1, 2 * n);
    w.insert(w.end(), {2, 2, 1, 1, 2, 2});
    Poly lhs = wick_trace(w).d_poly;
    Poly rhs = dp({1, 3, 5}) * wick_trace(repeat(1, 2 * n + 2)).d_poly +
               dp({1, 2}) * dp({1, 1, 4 * n}) * wick_trace(repeat(1, 2 * n)).d_poly;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("odd label counts vanish") {
  auto v = wick_trace(Word{1});
  CHECK(v.vanished);
  CHECK(v.d_poly.is_zero());
  CHECK(wick_trace(Word{1, 2, 2}).vanished);
  CHECK_FALSE(wick_trace(Word{1, 1}).vanished);
}

TEST_CASE("cyclic invariance of the trace") {
  Philox rng(21, 0);
  int checked = 0;
  while (checked < 40) {
    int len = 2 + 2 * static_cast<int>(rng.next_u32() % 5);  // up to 10
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(1 + static_cast<int>(rng.next_u32() % 3));
    w = canonicalize(w);
    DPoly base = wick_trace(w);
    if (base.vanished) continue;
    for (int r = 1; r < len; ++r) {
      DPoly rot = wick_trace(canonicalize(rotate(w, r)));
      CHECK(rot.d_poly == base.d_poly);
    }
    ++checked;
  }
}

TEST_CASE("matching count is a product of double factorials") {
  CHECK(wick_matching_count(repeat(1, 12)) == 10395);
  CHECK(wick_matching_count(Word{1, 1, 2, 2, 1, 1, 2, 2}) == 9);
  CHECK(wick_matching_count(Word{1, 2, 1, 2}) == 1);
  CHECK(wick_matching_count(Word{1}) == 0);
}

TEST_CASE("d=1 reduction of monomials") {
  for (int m = 1; m <= 6; ++m) {
    Int expected = double_factorial_odd(m);
    for (int i = 0; i < m; ++i) expected *= 2;
    CHECK(wick_trace(repeat(1, 2 * m)).d_poly.eval<Int>(Int(1)) == expected);
  }
}

TEST_CASE("trace factorizes over irreducible factors") {
  for (int p = 2; p <= 6; ++p) {
    for (const auto& t : enumerate_tree_walks(p).terms) {
      const Word& w = t.representative;
      auto f = factorize(w);
      if (f.insertions.empty()) continue;
      auto factors = f.irreducible_factors();
      Poly rhs{Int(1)};
      for (const auto& factor : factors) rhs *= wick_trace(factor).d_poly;
      Poly lhs = wick_trace(w).d_poly;
      for (std::size_t i = 1; i < factors.size(); ++i) lhs *= Poly::variable();
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("assembled finite-d moments match the reference table") {
  const Poly d = Poly::variable();
  auto m2 = dp({1, 1});
  auto m4 = dp({2, 5, 5});
  auto m6 = dp({5, 22, 52, 41});

  auto got2 = moment_finite_d(1);
  CHECK(got2.z_coeffs[1] == m2);

  auto got4 = moment_finite_d(2);
  CHECK(got4.z_coeffs[1] == m4);
  CHECK(got4.z_coeffs[2] == Int(2) * (m2 * m2));

  auto got6 = moment_finite_d(3);
  CHECK(got6.z_coeffs[1] == m6);
  CHECK(got6.z_coeffs[2] == Int(6) * (m2 * m4));
  CHECK(got6.z_coeffs[3] == Int(5) * (m2 * m2 * m2));

  auto got8 = moment_finite_d(4);
  CHECK(got8.z_coeffs[1] == dp({14, 93, 374, 690, 509}));
  CHECK(got8.z_coeffs[2] ==
        Int(8) * (m2 * m6) + Int(4) * (m4 * m4) + Int(6) * dp({1, 5, 13, 18, 11}));
  CHECK(got8.z_coeffs[3] == Int(28) * (m2 * m2 * m4));
  CHECK(got8.z_coeffs[4] == Int(14) * (m2 * m2 * m2 * m2));
}

TEST_CASE("sum rules for averaged blocks") {
  CHECK(sum_rule_check(1, 3).ok);
  CHECK(sum_rule_check(2, 2).ok);
  auto rep = sum_rule_check(3, 3);
  CHECK(rep.ok);
  CHECK(rep.diff.empty());
}

TEST_CASE("degree-resolved recursion gives the d=1 moments") {
  auto mu = d1_moments(6);
  CHECK(mu[0] == Poly::monomial(Int(2), 1));
  CHECK(mu[1] == Poly::monomial(Int(12), 1) + Poly::monomial(Int(8), 2));
  CHECK(mu[2] == Poly::monomial(Int(120), 1) + Poly::monomial(Int(144), 2) + Poly::monomial(Int(40), 3));

  // Agreement with the Wick route at d = 1, sigma = 1.
  for (int p = 1; p <= 6; ++p) {
    auto m = moment_finite_d(p);
    Poly at_d1;
    for (int k = 1; k <= p; ++k)
      at_d1 += Poly::monomial(m.z_coeffs[static_cast<std::size_t>(k)].eval<Int>(Int(1)), k);
    CHECK(at_d1 == mu[static_cast<std::size_t>(p - 1)]);
  }
}

TEST_CASE("budget guard refuses oversized words") {
  CHECK_THROWS_AS(wick_trace(repeat(1, 12), 1000), std::runtime_error);
  CHECK_NOTHROW(wick_trace(repeat(1, 12)));
}

TEST_CASE("parallel kernel equals the serial reference") {
  std::vector<Word> words{repeat(1, 10), Word{1, 1, 2, 2, 1, 1, 2, 2}, Word{1, 2, 1, 2, 3, 3},
                          Word{1, 1, 2, 3, 3, 2, 2, 2}};
  for (const auto& w : words) {
    auto a = wick_trace_serial(w);
    auto b = wick_trace(w, kDefaultWickBudget, 4);
    CHECK(a.d_poly == b.d_poly);
    CHECK(a.sigma_power == b.sigma_power);
  }
}
