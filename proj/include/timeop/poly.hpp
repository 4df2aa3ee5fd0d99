#pragma once

// Dense univariate polynomials over the Gaussian rationals.  Coefficients are
// exact; the coefficient vector never carries trailing zeros, so degree and
// equality are well defined.  This is the base layer for rational functions
// in the formal parameter (the Gaussian width line).

#include "timeop/rational.hpp"

#include <vector>

namespace timeop {

class Poly {
 public:
  Poly() = default;
  explicit Poly(ExactScalar c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  static Poly variable() { return Poly(std::vector<ExactScalar>{0, 1}); }
  explicit Poly(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const ExactScalar& operator[](size_t k) const { return c_[k]; }
  const std::vector<ExactScalar>& coeffs() const { return c_; }
  const ExactScalar& leading() const { return c_.back(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<ExactScalar> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < r.size(); ++k) {
      if (k < a.c_.size()) r[k] += a.c_[k];
      if (k < b.c_.size()) r[k] += b.c_[k];
    }
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator-(const Poly& a) {
    std::vector<ExactScalar> r = a.c_;
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<ExactScalar> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const ExactScalar& s, const Poly& a) {
    return Poly(s) * a;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<ExactScalar> r(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
      r[k - 1] = ExactScalar(BigRat(static_cast<long>(k))) * c_[k];
    return Poly(std::move(r));
  }

  // Horner evaluation; Scalar is ExactScalar or any complex float type.
  template <class Scalar>
  Scalar eval(const Scalar& x) const {
    Scalar acc{};
    for (size_t k = c_.size(); k-- > 0;) {
      if constexpr (std::is_same_v<Scalar, ExactScalar>) {
        acc = acc * x + c_[k];
      } else {
        acc = acc * x + c_[k].template to<Scalar>();
      }
    }
    return acc;
  }

  // substitute x -> s*x (used to move between the real and complex engines,
  // where the parameter lines differ by a factor of i)
  Poly scale_argument(const ExactScalar& s) const {
    std::vector<ExactScalar> r = c_;
    ExactScalar p{1};
    for (size_t k = 0; k < r.size(); ++k) {
      r[k] *= p;
      p *= s;
    }
    return Poly(std::move(r));
  }

  // Euclidean division: returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<ExactScalar> c_;
};

Poly poly_gcd(Poly a, Poly b);

}  // namespace timeop
