#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sbm {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense univariate polynomial with arbitrary-precision integer coefficients.
// All engine arithmetic is exact; floating point appears only on the Monte
// Carlo side when exact predictions are compared with sample estimates.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Int constant) {
    if (constant != 0) c_.push_back(std::move(constant));
  }
  explicit Poly(long long constant) : Poly(Int(constant)) {}

  static Poly monomial(Int coeff, int power) {
    Poly p;
    if (coeff != 0) {
      p.c_.assign(static_cast<std::size_t>(power) + 1, Int(0));
      p.c_.back() = std::move(coeff);
    }
    return p;
  }
  static Poly variable() { return monomial(Int(1), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& coeff(int k) const {
    static const Int zero{0};
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(k)];
  }
  void set_coeff(int k, Int v) {
    if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(k) + 1, Int(0));
    c_[static_cast<std::size_t>(k)] = std::move(v);
    trim();
  }
  const std::vector<Int>& coeffs() const { return c_; }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Int& s, Poly p) {
    if (s == 0) return Poly{};
    for (auto& c : p.c_) c *= s;
    return p;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  // Multiply by x^k.
  Poly shifted(int k) const {
    if (is_zero()) return {};
    Poly r;
    r.c_.assign(c_.size() + static_cast<std::size_t>(k), Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<std::size_t>(k)] = c_[i];
    return r;
  }

  // Division by an integer that must divide every coefficient.
  Poly divided_exact(const Int& k) const {
    if (k == 0) throw std::invalid_argument("Poly: division by zero");
    Poly r = *this;
    for (auto& c : r.c_) {
      if (c % k != 0) throw std::logic_error("Poly: inexact integer division");
      c /= k;
    }
    return r;
  }

  template <class T>
  T eval(const T& x) const {
    T acc{0};
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x + static_cast<T>(c_[i]);
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Renders like "14 Z + 62 Z^2 + 56 Z^3 + 14 Z^4".
  std::string to_text(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const Int& c = c_[i];
      if (c == 0) continue;
      Int mag = c < 0 ? Int(-c) : c;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (i == 0) {
        os << mag;
      } else {
        if (mag != 1) os << mag << " ";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;  // c_[k] multiplies x^k; invariant: no trailing zeros
};

inline Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Int factorial(long long n) {
  Int r = 1;
  for (long long i = 2; i <= n; ++i) r *= i;
  return r;
}

// (2m-1)!! with the empty-product convention for m = 0.
inline Int double_factorial_odd(long long m) {
  Int r = 1;
  for (long long i = 3; i <= 2 * m - 1; i += 2) r *= i;
  return r;
}

inline Int catalan(long long n) { return binomial(2 * n, n) / Int(n + 1); }

}  // namespace sbm
