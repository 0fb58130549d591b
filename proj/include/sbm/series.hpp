#pragma once

#include <stdexcept>
#include <vector>

#include "sbm/poly.hpp"

namespace sbm {

// Power series in x truncated at max_order; coefficients are exact
// polynomials in one parameter (Z, p or y depending on the model).
struct Series {
  int max_order = 0;
  std::vector<Poly> c;  // c[k] multiplies x^k; size max_order + 1

  Series() = default;
  explicit Series(int order) : max_order(order), c(static_cast<std::size_t>(order) + 1) {}

  const Poly& coeff(int k) const {
    static const Poly zero;
    if (k < 0 || k > max_order) return zero;
    return c[static_cast<std::size_t>(k)];
  }
  void set(int k, Poly p) {
    if (k < 0 || k > max_order) throw std::out_of_range("Series::set: power out of range");
    c[static_cast<std::size_t>(k)] = std::move(p);
  }
  bool is_zero() const {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(std::max(a.max_order, b.max_order));
    for (int k = 0; k <= r.max_order; ++k) r.c[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r(std::max(a.max_order, b.max_order));
    for (int k = 0; k <= r.max_order; ++k) r.c[static_cast<std::size_t>(k)] = a.coeff(k) - b.coeff(k);
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r(std::max(a.max_order, b.max_order));
    for (int i = 0; i <= a.max_order; ++i) {
      if (a.coeff(i).is_zero()) continue;
      for (int j = 0; j + i <= r.max_order && j <= b.max_order; ++j)
        r.c[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    }
    return r;
  }
  friend Series operator*(const Poly& s, Series a) {
    for (auto& p : a.c) p = s * p;
    return a;
  }
  friend bool operator==(const Series& a, const Series& b) {
    for (int k = 0; k <= std::max(a.max_order, b.max_order); ++k)
      if (!(a.coeff(k) == b.coeff(k))) return false;
    return true;
  }

  // Multiply by x: shifts coefficients up, dropping the top one.
  Series times_x() const {
    Series r(max_order);
    for (int k = 1; k <= max_order; ++k) r.c[static_cast<std::size_t>(k)] = coeff(k - 1);
    return r;
  }
};

// a(g) for a series g with zero constant term, truncated at g.max_order.
inline Series compose(const Series& a, const Series& g) {
  if (!g.coeff(0).is_zero()) throw std::invalid_argument("compose: inner series needs zero constant term");
  Series acc(g.max_order);
  for (int k = a.max_order; k >= 1; --k) {
    acc = acc * g;
    acc.c[0] += a.coeff(k);
  }
  acc = acc * g;
  acc.c[0] = a.coeff(0);
  return acc;
}

}  // namespace sbm
