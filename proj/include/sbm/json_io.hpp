#pragma once

#include <json.hpp>

#include <string>

#include "sbm/poly.hpp"
#include "sbm/series.hpp"

namespace sbm {

inline constexpr const char* kToolVersion = "0.1.0";

// Big integers are emitted as JSON numbers while they fit in 64 bits and as
// decimal strings beyond that; both forms are accepted on input.
inline nlohmann::json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

inline nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(int_to_json(p.coeff(k)));
  return arr;
}

inline Poly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a coefficient array");
  Poly p;
  int k = 0;
  for (const auto& c : j) p.set_coeff(k++, int_from_json(c));
  return p;
}

inline nlohmann::json series_to_json(const Series& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int k = 0; k <= s.max_order; ++k) {
    if (s.coeff(k).is_zero()) continue;
    coeffs.push_back({{"power", k}, {"poly", poly_to_json(s.coeff(k))}});
  }
  return {{"version", kToolVersion}, {"coeffs", coeffs}};
}

inline Series series_from_json(const nlohmann::json& j, int max_order = -1) {
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("series file needs a 'coeffs' array");
  int top = max_order;
  if (top < 0) {
    top = 0;
    for (const auto& e : j["coeffs"]) top = std::max(top, e.at("power").get<int>());
  }
  Series s(top);
  for (const auto& e : j["coeffs"]) {
    int k = e.at("power").get<int>();
    if (k < 0) throw std::invalid_argument("series power must be nonnegative");
    if (k <= top) s.set(k, poly_from_json(e.at("poly")));
  }
  return s;
}

}  // namespace sbm
