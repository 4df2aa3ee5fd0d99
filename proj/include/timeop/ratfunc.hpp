#pragma once

// Rational functions in one formal parameter, kept in a canonical form:
// numerator and denominator coprime, denominator monic.  Canonical form makes
// equality decidable, which is what the symbolic operator identities are
// checked against.

#include "timeop/errors.hpp"
#include "timeop/poly.hpp"

namespace timeop {

class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly(ExactScalar{1})) {}
  RatFunc(ExactScalar c) : num_(Poly(std::move(c))), den_(Poly(ExactScalar{1})) {}
  RatFunc(long c) : RatFunc(ExactScalar(c)) {}
  RatFunc(Poly num, Poly den) { assign(std::move(num), std::move(den)); }
  static RatFunc variable() {
    return RatFunc(Poly::variable(), Poly(ExactScalar{1}));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  // canonical forms are unique, so component equality is value equality
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) {
    return !(a == b);
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(),
                   den_ * den_);
  }

  // Throws PoleError when the denominator vanishes at x.  The exact overload
  // is total on non-poles; the float overloads inherit its contract.
  template <class Scalar>
  Scalar eval(const Scalar& x) const {
    Scalar d = den_.eval(x);
    bool zero;
    if constexpr (std::is_same_v<Scalar, ExactScalar>) {
      zero = d.is_zero();
    } else {
      zero = (d == Scalar{});
    }
    if (zero) throw PoleError("RatFunc: evaluation at a pole");
    return num_.eval(x) / d;
  }

  RatFunc scale_argument(const ExactScalar& s) const {
    return RatFunc(num_.scale_argument(s), den_.scale_argument(s));
  }

 private:
  void assign(Poly num, Poly den);
  Poly num_, den_;
};

}  // namespace timeop
