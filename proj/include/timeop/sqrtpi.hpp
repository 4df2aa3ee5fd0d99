#pragma once

// Exact values of Gaussian moment integrals.  Every inner product of the
// function space evaluates to sqrt(pi) times a Z-linear combination of square
// roots of squarefree integers with Gaussian-rational coefficients:
//
//     value = sqrt(pi) * sum_d  c_d * sqrt(d),   d squarefree positive.
//
// Keeping the sum symbolic removes the only irrational constants from the
// exact pipelines; floats appear only in value_as().

#include "timeop/rational.hpp"

#include <map>

namespace timeop {

// sqrt(r) = factor * sqrt(root) with root squarefree, for positive rational r.
struct SqrtSplit {
  BigRat factor;
  BigInt root;
};
SqrtSplit squarefree_split(const BigRat& r);

class SqrtPiSum {
 public:
  SqrtPiSum() = default;
  // c * sqrt(d) * sqrt(pi), d squarefree
  SqrtPiSum(ExactScalar c, BigInt d) {
    if (!c.is_zero()) terms_[std::move(d)] = std::move(c);
  }
  static SqrtPiSum rational_multiple(ExactScalar c) {
    return SqrtPiSum(std::move(c), BigInt(1));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<BigInt, ExactScalar>& terms() const { return terms_; }

  // coefficient of sqrt(d)*sqrt(pi); zero when absent
  ExactScalar coeff(const BigInt& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? ExactScalar{} : it->second;
  }

  friend SqrtPiSum operator+(const SqrtPiSum& a, const SqrtPiSum& b) {
    SqrtPiSum r = a;
    for (const auto& [d, c] : b.terms_) r.add_term(c, d);
    return r;
  }
  friend SqrtPiSum operator-(const SqrtPiSum& a, const SqrtPiSum& b) {
    SqrtPiSum r = a;
    for (const auto& [d, c] : b.terms_) r.add_term(-c, d);
    return r;
  }
  friend SqrtPiSum operator-(const SqrtPiSum& a) {
    SqrtPiSum r;
    for (const auto& [d, c] : a.terms_) r.terms_[d] = -c;
    return r;
  }
  friend SqrtPiSum operator*(const ExactScalar& s, const SqrtPiSum& a) {
    SqrtPiSum r;
    if (s.is_zero()) return r;
    for (const auto& [d, c] : a.terms_) r.terms_[d] = s * c;
    return r;
  }
  SqrtPiSum& operator+=(const SqrtPiSum& o) { return *this = *this + o; }
  SqrtPiSum& operator-=(const SqrtPiSum& o) { return *this = *this - o; }

  // multiply by sqrt(r) for positive rational r
  SqrtPiSum times_sqrt(const BigRat& r) const;

  SqrtPiSum conj() const {
    SqrtPiSum out;
    for (const auto& [d, c] : terms_) out.terms_[d] = c.conj();
    return out;
  }

  friend bool operator==(const SqrtPiSum& a, const SqrtPiSum& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SqrtPiSum& a, const SqrtPiSum& b) {
    return !(a == b);
  }

  template <class Complex>
  Complex value_as() const;
  std::complex<double> value() const {
    return value_as<std::complex<double>>();
  }

 private:
  void add_term(const ExactScalar& c, const BigInt& d) {
    auto it = terms_.find(d);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[d] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  std::map<BigInt, ExactScalar> terms_;
};

}  // namespace timeop

#include <boost/math/constants/constants.hpp>

namespace timeop {

template <class Complex>
Complex SqrtPiSum::value_as() const {
  using Real = typename Complex::value_type;
  using std::sqrt;
  Real sqrt_pi = sqrt(boost::math::constants::pi<Real>());
  Complex acc{};
  for (const auto& [d, c] : terms_) {
    Real rd = sqrt(Real(d));
    acc += c.template to<Complex>() * Complex(rd * sqrt_pi);
  }
  return acc;
}

}  // namespace timeop
