#pragma once

// The log-extended coefficient ring: values r0(p) + r1(p)*L where r0, r1 are
// rational functions of one formal parameter p and L is a formal logarithm
// whose derivative is again rational.  Two engines exist:
//
//   real engine    p = a on (0,1),  L(a) = log((1+a)/(1-a)),   L' = 2/(1-a^2)
//   complex engine p = z in the upper half-plane,
//                  L(z) = log(-(z-i)/(z+i)),                   L' = 2i/(1+z^2)
//
// L is never expanded during symbolic work; it only becomes a number at
// evaluation time, with the branch log w = log|w| + i arg w, arg in [-pi,pi).
// The real-engine L has branch cuts on (-inf,-1] u [1,inf) of the parameter
// line; the complex-engine L on {iy : y >= 1} u {iy : y <= -1}.

#include "timeop/errors.hpp"
#include "timeop/ratfunc.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>

namespace timeop {

// 50-significant-digit types for the high-precision evaluation path.
using BigFloat = boost::multiprecision::cpp_bin_float_50;
using BigComplex = boost::multiprecision::cpp_complex_50;

enum class Engine { Real, Complex };

inline const char* engine_name(Engine e) {
  return e == Engine::Real ? "real" : "complex";
}

// Default half-width of the exclusion tube around branch cuts.
inline constexpr double kDefaultCutTube = 1e-6;

// Euclidean distance from a point to the branch cut of the given engine.
double cut_distance(Engine eng, std::complex<double> p);

class LogExt {
 public:
  LogExt() : engine_(Engine::Real) {}
  explicit LogExt(Engine eng) : engine_(eng) {}
  LogExt(Engine eng, RatFunc r0, RatFunc r1)
      : engine_(eng), r0_(std::move(r0)), r1_(std::move(r1)) {}

  static LogExt constant(Engine eng, RatFunc r0) {
    return LogExt(eng, std::move(r0), RatFunc());
  }
  // The bare formal logarithm L.
  static LogExt log_symbol(Engine eng) {
    return LogExt(eng, RatFunc(), RatFunc(1));
  }

  Engine engine() const { return engine_; }
  const RatFunc& r0() const { return r0_; }
  const RatFunc& r1() const { return r1_; }
  bool is_zero() const { return r0_.is_zero() && r1_.is_zero(); }

  // The derivative of L with respect to the parameter, as a rational function.
  static RatFunc log_derivative(Engine eng);

  LogExt derivative() const {
    return LogExt(engine_, r0_.derivative() + r1_ * log_derivative(engine_),
                  r1_.derivative());
  }

  friend LogExt operator+(const LogExt& a, const LogExt& b) {
    a.require_same_engine(b);
    return LogExt(a.engine_, a.r0_ + b.r0_, a.r1_ + b.r1_);
  }
  friend LogExt operator-(const LogExt& a, const LogExt& b) {
    a.require_same_engine(b);
    return LogExt(a.engine_, a.r0_ - b.r0_, a.r1_ - b.r1_);
  }
  friend LogExt operator-(const LogExt& a) {
    return LogExt(a.engine_, -a.r0_, -a.r1_);
  }
  // Multiplication by a log-free value keeps degree <= 1 in L; a product of
  // two genuine log terms would need L^2 and is rejected.
  friend LogExt operator*(const LogExt& a, const LogExt& b) {
    a.require_same_engine(b);
    if (!a.r1_.is_zero() && !b.r1_.is_zero())
      throw std::logic_error("LogExt: product of two log terms leaves the ring");
    if (a.r1_.is_zero())
      return LogExt(b.engine_, a.r0_ * b.r0_, a.r0_ * b.r1_);
    return LogExt(a.engine_, a.r0_ * b.r0_, b.r0_ * a.r1_);
  }
  friend LogExt operator*(const RatFunc& r, const LogExt& a) {
    return LogExt(a.engine_, r * a.r0_, r * a.r1_);
  }
  friend LogExt operator*(const ExactScalar& s, const LogExt& a) {
    return RatFunc(s) * a;
  }
  LogExt& operator+=(const LogExt& o) { return *this = *this + o; }
  LogExt& operator-=(const LogExt& o) { return *this = *this - o; }

  friend bool operator==(const LogExt& a, const LogExt& b) {
    return a.engine_ == b.engine_ && a.r0_ == b.r0_ && a.r1_ == b.r1_;
  }
  friend bool operator!=(const LogExt& a, const LogExt& b) { return !(a == b); }

  // Exact substitution p -> i*p trading the complex engine for the real one
  // (the imaginary parameter axis), under which L_complex = -L_real.
  LogExt restricted_to_imaginary_axis() const;
  // Inverse substitution p -> -i*p, L_real = -L_complex.
  LogExt continued_to_complex_engine() const;

  // Numeric value of r0(p) + r1(p) L(p).  Complex is std::complex<double> or
  // a higher-precision complex type.  Throws PoleError at denominator zeros
  // and BranchCutError when a genuine log term is evaluated inside the
  // exclusion tube around the cut.
  template <class Complex>
  Complex eval_as(const Complex& p, double cut_tube = kDefaultCutTube) const {
    Complex v = r0_.eval(p);
    if (r1_.is_zero()) return v;
    std::complex<double> pd(static_cast<double>(p.real()),
                            static_cast<double>(p.imag()));
    if (cut_distance(engine_, pd) <= cut_tube)
      throw BranchCutError("LogExt: evaluation point inside the branch-cut tube");
    using std::log;
    Complex one{1};
    Complex iu{typename Complex::value_type(0), typename Complex::value_type(1)};
    Complex arg;
    if (engine_ == Engine::Real) {
      arg = (one + p) / (one - p);
    } else {
      arg = -(p - iu) / (p + iu);
    }
    return v + r1_.eval(p) * log(arg);
  }

 private:
  void require_same_engine(const LogExt& o) const {
    if (engine_ != o.engine_)
      throw EngineMismatch("LogExt: mixed real/complex engine arithmetic");
  }
  Engine engine_;
  RatFunc r0_, r1_;
};

// Convenience evaluator used throughout the float pipelines (16-digit path).
std::complex<double> logext_eval(const LogExt& e, std::complex<double> p,
                                 double cut_tube = kDefaultCutTube);

// Deterministic human-readable rendering (used by the pretty-printer and the
// JSON fixture export).
std::string poly_to_string(const Poly& p, const std::string& var);
std::string ratfunc_to_string(const RatFunc& r, const std::string& var);
std::string logext_to_string(const LogExt& e);

}  // namespace timeop
