#pragma once

// Symbolic images of the angle operators on monomial-Gaussian vectors.  An
// XPolyLog is a finite sum  sum_k  x^k * c_k(p)  with LogExt coefficients in
// the engine parameter p, standing for the function (sum_k x^k c_k(p)) xi_p
// without the Gaussian factor spelled out.  On this grading the parameter
// operator
//
//   t = x^2 - c d/dp,   c = 2 sqrt(eps) (real engine),  c = 2i (complex)
//
// acts exactly, which is all the closed forms need: the even image of the
// angle operator is a prefactor times t^m applied to the formal logarithm.

#include "timeop/gauss.hpp"
#include "timeop/logext.hpp"

#include <map>
#include <string>

namespace timeop {

class XPolyLog {
 public:
  XPolyLog() : engine_(Engine::Real), eps_(BigRat(1)) {}
  explicit XPolyLog(Engine eng, EpsParam eps = EpsParam(BigRat(1)))
      : engine_(eng), eps_(std::move(eps)) {}

  Engine engine() const { return engine_; }
  const EpsParam& eps() const { return eps_; }
  const std::map<long, LogExt>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  // zero of the container's engine when the power is absent
  LogExt coefficient(long power) const {
    auto it = c_.find(power);
    return it == c_.end() ? LogExt(engine_) : it->second;
  }

  void add_to_coefficient(long power, const LogExt& v);

  XPolyLog& operator+=(const XPolyLog& o);
  XPolyLog& operator-=(const XPolyLog& o);
  friend XPolyLog operator+(XPolyLog a, const XPolyLog& b) { return a += b; }
  friend XPolyLog operator-(XPolyLog a, const XPolyLog& b) { return a -= b; }
  friend XPolyLog operator*(const ExactScalar& s, const XPolyLog& a);

  // coefficient-wise multiplication by a scalar function of the parameter
  XPolyLog times(const LogExt& s) const;
  XPolyLog times(const RatFunc& s) const;
  // multiplication by x^shift
  XPolyLog times_x_power(long shift) const;

  friend bool operator==(const XPolyLog& a, const XPolyLog& b) {
    return a.engine_ == b.engine_ && a.c_ == b.c_;
  }
  friend bool operator!=(const XPolyLog& a, const XPolyLog& b) {
    return !(a == b);
  }

  // Exact substitution p -> i p between the engines (complex restricted to
  // the imaginary parameter axis, and its inverse), coefficient-wise.  The
  // restriction lands in the real engine at eps = 1, matching the section of
  // the theory where the complex parameter lives.
  XPolyLog restricted_to_imaginary_axis() const;
  XPolyLog continued_to_complex_engine() const;

  // numeric value of every coefficient at a parameter point
  template <class Complex>
  std::map<long, Complex> evaluate_as(const Complex& p,
                                      double cut_tube = kDefaultCutTube) const {
    std::map<long, Complex> out;
    for (const auto& [k, v] : c_) out[k] = v.template eval_as<Complex>(p, cut_tube);
    return out;
  }
  std::map<long, std::complex<double>> evaluate(
      std::complex<double> p, double cut_tube = kDefaultCutTube) const;

 private:
  Engine engine_;
  EpsParam eps_;
  std::map<long, LogExt> c_;
};

// the formal logarithm as an x^0 value
XPolyLog log_seed(Engine eng, EpsParam eps = EpsParam(BigRat(1)));

// one and n-fold applications of t = x^2 - c d/dp
XPolyLog apply_t_param(const XPolyLog& v);
XPolyLog apply_t_param(const XPolyLog& v, long n);

// h = (1/2)(-d^2/dx^2 + x^2) on  (sum_k x^k c_k(z)) xi_z, complex engine:
// x^k xi_z picks up (1/2)[(1+z^2) x^{k+2} - i(2k+1) z x^k - k(k-1) x^{k-2}].
XPolyLog apply_h_symbolic(const XPolyLog& v);

// Angle-operator images.  s_closed returns Phi with S(x^{2m} xi) = Phi xi
// (even) or S*(x^{2m+1} xi) = Phi x xi (odd); Phi is the same object in both
// chains, so the parity argument only documents the caller's intent.
XPolyLog s_closed(long m, Parity parity, const EpsParam& eps);
// independent binomial route: Phi = -(i/(2 sqrt(eps))) sum_k C(m,k)
//                                   (-2 sqrt(eps))^k L^{(k)} x^{2m-2k}
XPolyLog s_closed_binomial(long m, const EpsParam& eps);
// linear extension over an even polynomial rho given in the u = x^2 variable
XPolyLog s_closed_poly(const Poly& rho, Parity parity, const EpsParam& eps);
// complex-engine analogue (eps = 1): S^ x^{2m} xi_z = (i/2)(t_z^m L_c) xi_z
XPolyLog s_hat_closed(long m, Parity parity);

// the complex differential operator Q_n; satisfies Q_n e = t^n((1+z^2) e)
XPolyLog qn_apply(long n, const LogExt& e);

// the two halves of the commutator [h, S^] on x^{2n} xi_z, complex engine,
// as explicit coefficient formulas and as assembled compositions
XPolyLog k1_explicit(long n);
XPolyLog k2_explicit(long n);
XPolyLog k1_assembled(long n, Parity parity);
XPolyLog k2_assembled(long n, Parity parity);
// [h, S^#] x^{2n (+1)} xi_z; canonicalizes to -i x^{2n (+1)}
XPolyLog commutator_symbolic(long n, Parity parity);

// assemble the float-mode Gaussian vector  (sum_k x^{k+x_shift} c_k(p)) xi_w
GaussVectorF to_gauss_vector(const XPolyLog& v, std::complex<double> p,
                             std::complex<double> width, long x_shift = 0,
                             double cut_tube = kDefaultCutTube);

// deterministic rendering and JSON fixture export
std::string xpolylog_to_string(const XPolyLog& v);
std::string xpolylog_to_json_string(const XPolyLog& v);

}  // namespace timeop
