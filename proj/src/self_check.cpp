#include "sbm/self_check.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sbm/json_io.hpp"
#include "sbm/nc_transform.hpp"
#include "sbm/planar.hpp"
#include "sbm/rng.hpp"
#include "sbm/word.hpp"

namespace sbm {

std::string data_dir() {
  if (const char* env = std::getenv("SBM_DATA_DIR")) return env;
  return SBM_DATA_DIR;
}

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

Poly poly_from_z_coeffs(const nlohmann::json& arr) {
  Poly p;
  int power = 1;
  for (const auto& c : arr) p.set_coeff(power++, int_from_json(c));
  return p;
}

}  // namespace

std::vector<MomentExpansion> load_orbit_table(const std::string& path) {
  auto j = load_json(path);
  std::vector<MomentExpansion> out;
  for (const auto& entry : j.at("orders")) {
    MomentExpansion e;
    e.order = entry.at("order").get<int>();
    for (const auto& t : entry.at("terms")) {
      OrbitTerm term;
      term.representative = parse_word(t.at("word").get<std::string>());
      term.multiplicity = t.at("multiplicity").get<long long>();
      term.labels = label_count(term.representative);
      e.terms.push_back(std::move(term));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::pair<int, Poly>> load_moment_table(const std::string& path) {
  auto j = load_json(path);
  std::vector<std::pair<int, Poly>> out;
  for (const auto& entry : j.at("orders"))
    out.emplace_back(entry.at("order").get<int>(), poly_from_z_coeffs(entry.at("z_coeffs")));
  return out;
}

std::vector<RegularTerm> load_regular_table(const std::string& path) {
  auto j = load_json(path);
  std::vector<RegularTerm> out;
  for (const auto& t : j.at("terms")) {
    RegularTerm term;
    term.word = parse_word(t.at("word").get<std::string>());
    term.multiplicity = t.at("multiplicity").get<long long>();
    term.weight = Poly(Int(1));
    for (const auto& f : t.at("factors"))
      term.weight *= Poly::monomial(Int(1), 1) - Poly(Int(f.get<long long>()));
    out.push_back(std::move(term));
  }
  return out;
}

std::vector<FiniteDMoment> finite_d_reference() {
  const Poly d = Poly::variable();
  const Poly one{Int(1)};
  auto dp = [&](std::initializer_list<long long> coeffs) {
    // High power first, e.g. {2, 5, 5} is 2 d^2 + 5 d + 5.
    Poly p;
    for (long long c : coeffs) p = p * d + Poly(Int(c));
    return p;
  };
  const Poly m2 = d + one;                      // <tr X^2>/d
  const Poly m4 = dp({2, 5, 5});                // <tr X^4>/d
  const Poly m6 = dp({5, 22, 52, 41});          // <tr X^6>/d
  const Poly m8 = dp({14, 93, 374, 690, 509});  // <tr X^8>/d

  std::vector<FiniteDMoment> out(4);
  out[0].order = 2;
  out[0].z_coeffs = {Poly{}, m2};
  out[1].order = 4;
  out[1].z_coeffs = {Poly{}, m4, Int(2) * (m2 * m2)};
  out[2].order = 6;
  out[2].z_coeffs = {Poly{}, m6, Int(6) * (m2 * m4), Int(5) * (m2 * m2 * m2)};
  out[3].order = 8;
  out[3].z_coeffs = {Poly{}, m8,
                     Int(8) * (m2 * m6) + Int(4) * (m4 * m4) + Int(6) * dp({1, 5, 13, 18, 11}),
                     Int(28) * (m2 * m2 * m4), Int(14) * (m2 * m2 * m2 * m2)};
  return out;
}

std::vector<Poly> product_moment_reference() {
  auto row = [](std::initializer_list<long long> cs) {
    Poly p;
    int k = 0;
    for (long long c : cs) p.set_coeff(k++, Int(c));
    return p;
  };
  return {row({1}),
          row({2, 2}),
          row({5, 12, 5}),
          row({14, 56, 56, 14}),
          row({42, 240, 405, 240, 42}),
          row({132, 990, 2420, 2420, 990, 132})};
}

namespace {

std::string describe_expansion_diff(const MomentExpansion& got, const MomentExpansion& want) {
  std::map<Word, std::pair<long long, long long>> merged;
  for (const auto& t : got.terms) merged[cyclic_orbit(t.representative).representative].first = t.multiplicity;
  for (const auto& t : want.terms) merged[cyclic_orbit(t.representative).representative].second = t.multiplicity;
  std::ostringstream os;
  for (const auto& [rep, pair] : merged)
    if (pair.first != pair.second)
      os << "[" << to_string(rep) << "] computed " << pair.first << " expected " << pair.second << "; ";
  return os.str();
}

bool same_expansion(const MomentExpansion& got, const MomentExpansion& want) {
  return describe_expansion_diff(got, want).empty();
}

}  // namespace

std::vector<CheckItem> run_self_checks(int threads, long long budget) {
  std::vector<CheckItem> items;
  auto record = [&](std::string name, bool pass, std::string detail = {}) {
    items.push_back({std::move(name), pass, std::move(detail)});
  };

  // Walk enumeration against the reference orbit table, orders 2..12.
  try {
    auto golden = load_orbit_table(data_dir() + "/tree_walk_orbits.json");
    for (const auto& want : golden) {
      auto got = enumerate_tree_walks(want.order / 2, threads);
      record("walk orbits order " + std::to_string(want.order), same_expansion(got, want),
             describe_expansion_diff(got, want));
    }
  } catch (const std::exception& e) {
    record("walk orbit table", false, e.what());
  }

  // Finite-d moments against the reference polynomials, orders 2..8.
  try {
    for (const auto& want : finite_d_reference()) {
      auto got = moment_finite_d(want.order / 2, budget, threads);
      bool ok = got.z_coeffs.size() == want.z_coeffs.size();
      std::string detail;
      for (std::size_t k = 1; ok && k < want.z_coeffs.size(); ++k) {
        if (!(got.z_coeffs[k] == want.z_coeffs[k])) {
          ok = false;
          detail = "Z^" + std::to_string(k) + ": computed " + got.z_coeffs[k].to_text("d") +
                   " expected " + want.z_coeffs[k].to_text("d");
        }
      }
      record("finite-d moments order " + std::to_string(want.order), ok, detail);
    }
  } catch (const std::exception& e) {
    record("finite-d moments", false, e.what());
  }

  // Large-d moments against the reference table by direct enumeration.
  try {
    auto golden = load_moment_table(data_dir() + "/planar_moments.json");
    for (const auto& [order, want] : golden) {
      if (order > 16) continue;
      Poly got = moment_large_d(order / 2, threads);
      record("planar moments order " + std::to_string(order), got == want,
             got == want ? "" : "computed " + got.to_text("Z") + " expected " + want.to_text("Z"));
    }
  } catch (const std::exception& e) {
    record("planar moments", false, e.what());
  }

  // Transform round trips on deterministic pseudo-random integer sequences.
  {
    Philox rng(2024, 0);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      std::vector<Poly> a(12);
      for (auto& p : a) p = Poly(Int(static_cast<long long>(rng.next_u32() % 19) - 9));
      auto back = cumulants_from_moments(moments_from_cumulants(a));
      if (back != a) {
        ok = false;
        detail = "round trip failed on trial " + std::to_string(trial);
      }
    }
    std::vector<Poly> ones(12, Poly(Int(1)));
    auto f = moments_from_cumulants(ones);
    for (int n = 1; n <= 12 && ok; ++n) {
      if (!(f[static_cast<std::size_t>(n - 1)] == Poly(catalan(n)))) {
        ok = false;
        detail = "all-ones cumulants did not give Catalan moments";
      }
    }
    record("transform round trips", ok, detail);
  }

  // Series residuals of the two closed-form models.
  record("rank-one cubic residual", rank1_cubic_residual(24).is_zero());
  record("product-moment quartic residual", semicircle_quartic_residual(24).is_zero());

  // GOE stability under averaging three blocks, symbolic d.
  {
    auto rep = sum_rule_check(3, 3, budget, threads);
    record("sum rule k=3 n=3", rep.ok, rep.diff);
  }

  // Random-regular-graph weights for the order-8 expansion.
  try {
    auto golden = load_regular_table(data_dir() + "/regular_graph_order8.json");
    auto walks = enumerate_tree_walks(4, threads);
    bool ok = golden.size() == walks.terms.size();
    std::string detail = ok ? "" : "orbit count mismatch";
    for (const auto& want : golden) {
      Word rep = cyclic_orbit(want.word).representative;
      Poly got = regular_graph_weight(rep);
      bool found = false;
      for (const auto& t : walks.terms)
        if (t.representative == rep && t.multiplicity == want.multiplicity) found = true;
      if (!found || !(got == want.weight)) {
        ok = false;
        detail += "[" + to_string(want.word) + "] weight/multiplicity mismatch; ";
      }
    }
    record("regular-graph weights order 8", ok, detail);
  } catch (const std::exception& e) {
    record("regular-graph weights order 8", false, e.what());
  }

  return items;
}

}  // namespace sbm
