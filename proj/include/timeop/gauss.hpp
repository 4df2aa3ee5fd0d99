#pragma once

// The concrete function space: finite sums  sum_k  c_k x^{n_k} exp(i z_k x^2/2)
// with Im z_k > 0.  The operators
//
//   t   = (1/x)(-i d/dx)          (differentiate, then divide by x)
//   t*  = (-i d/dx)(1/x)
//   h_e = (1/2)(-e d^2/dx^2 + x^2)
//
// act term-exactly on this space, and inner products reduce to Gaussian
// moments:  integral x^{2n} e^{-s x^2} dx = (2n-1)!! (2s)^{-n} sqrt(pi/s),
// Re s > 0.  The pairing is conjugate-linear in its FIRST slot.
//
// Two coefficient modes share one implementation: ExactScalar (exact mode,
// available whenever the widths are Gaussian rationals) and
// std::complex<double> (float mode, for irrational sqrt(eps)).

#include "timeop/errors.hpp"
#include "timeop/logext.hpp"
#include "timeop/rational.hpp"
#include "timeop/sqrtpi.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace timeop {

// Oscillator parameter; exact pipelines additionally need sqrt(eps) rational.
class EpsParam {
 public:
  explicit EpsParam(BigRat eps) : eps_(std::move(eps)) {
    if (eps_ <= 0 || eps_ > 1)
      throw std::domain_error("EpsParam: eps must lie in (0, 1]");
    BigInt pr, qr;
    BigInt ps = sqrt(numerator(eps_), pr);
    BigInt qs = sqrt(denominator(eps_), qr);
    if (pr == 0 && qr == 0) sqrt_ = BigRat(ps, qs);
  }

  const BigRat& value() const { return eps_; }
  bool sqrt_is_rational() const { return sqrt_ != 0; }
  const BigRat& sqrt_rational() const {
    if (!sqrt_is_rational())
      throw std::domain_error("EpsParam: sqrt(eps) is irrational; use float mode");
    return sqrt_;
  }
  double sqrt_double() const { return std::sqrt(to_double(eps_)); }

 private:
  BigRat eps_;
  BigRat sqrt_{0};
};

template <class Coeff>
struct CoeffOps;

template <>
struct CoeffOps<ExactScalar> {
  static ExactScalar imag_unit() { return ExactScalar::i(); }
  static ExactScalar from_long(long v) { return ExactScalar(v); }
  static bool is_zero(const ExactScalar& c) { return c.is_zero(); }
  static ExactScalar conj(const ExactScalar& c) { return c.conj(); }
  static bool valid_width(const ExactScalar& z) { return z.im > 0; }
  static std::complex<double> to_cd(const ExactScalar& c) {
    return c.to_complex();
  }
  static bool less(const ExactScalar& a, const ExactScalar& b) { return a < b; }
};

template <>
struct CoeffOps<std::complex<double>> {
  static std::complex<double> imag_unit() { return {0.0, 1.0}; }
  static std::complex<double> from_long(long v) {
    return {static_cast<double>(v), 0.0};
  }
  static bool is_zero(const std::complex<double>& c) {
    return c == std::complex<double>{};
  }
  static std::complex<double> conj(const std::complex<double>& c) {
    return std::conj(c);
  }
  static bool valid_width(const std::complex<double>& z) {
    return z.imag() > 0;
  }
  static std::complex<double> to_cd(const std::complex<double>& c) { return c; }
  static bool less(const std::complex<double>& a,
                   const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  }
};

enum class Parity { Empty, Even, Odd, Mixed };

template <class Coeff>
class BasicGaussVector {
 public:
  using Ops = CoeffOps<Coeff>;
  struct Key {
    long power;
    Coeff width;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.power != b.power) return a.power < b.power;
      return Ops::less(a.width, b.width);
    }
    friend bool operator==(const Key& a, const Key& b) {
      return a.power == b.power && !Ops::less(a.width, b.width) &&
             !Ops::less(b.width, a.width);
    }
  };
  using TermMap = std::map<Key, Coeff>;

  BasicGaussVector() = default;

  static BasicGaussVector monomial(Coeff coeff, long power, Coeff width) {
    BasicGaussVector v;
    v.add_term(std::move(coeff), power, std::move(width));
    return v;
  }

  void add_term(Coeff coeff, long power, Coeff width) {
    if (power < 0) throw std::domain_error("GaussVector: negative power");
    if (!Ops::valid_width(width))
      throw std::domain_error("GaussVector: width must have Im z > 0");
    if (Ops::is_zero(coeff)) return;
    Key key{power, std::move(width)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), std::move(coeff));
      return;
    }
    it->second += coeff;
    if (Ops::is_zero(it->second)) terms_.erase(it);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Parity parity() const {
    if (terms_.empty()) return Parity::Empty;
    bool even = true, odd = true;
    for (const auto& [k, c] : terms_) {
      if (k.power % 2 == 0) odd = false;
      else even = false;
    }
    if (even) return Parity::Even;
    if (odd) return Parity::Odd;
    return Parity::Mixed;
  }

  BasicGaussVector even_part() const { return parity_part(0); }
  BasicGaussVector odd_part() const { return parity_part(1); }

  friend BasicGaussVector operator+(const BasicGaussVector& a,
                                    const BasicGaussVector& b) {
    BasicGaussVector r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(c, k.power, k.width);
    return r;
  }
  friend BasicGaussVector operator-(const BasicGaussVector& a,
                                    const BasicGaussVector& b) {
    BasicGaussVector r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(-c, k.power, k.width);
    return r;
  }
  friend BasicGaussVector operator*(const Coeff& s, const BasicGaussVector& a) {
    BasicGaussVector r;
    if (Ops::is_zero(s)) return r;
    for (const auto& [k, c] : a.terms_) r.terms_[k] = s * c;
    return r;
  }
  BasicGaussVector& operator+=(const BasicGaussVector& o) {
    return *this = *this + o;
  }
  BasicGaussVector& operator-=(const BasicGaussVector& o) {
    return *this = *this - o;
  }

  friend bool operator==(const BasicGaussVector& a, const BasicGaussVector& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicGaussVector& a, const BasicGaussVector& b) {
    return !(a == b);
  }

  BasicGaussVector times_x_power(long k) const {
    BasicGaussVector r;
    for (const auto& [key, c] : terms_) r.add_term(c, key.power + k, key.width);
    return r;
  }

 private:
  BasicGaussVector parity_part(long rem) const {
    BasicGaussVector r;
    for (const auto& [k, c] : terms_)
      if (k.power % 2 == rem) r.add_term(c, k.power, k.width);
    return r;
  }
  TermMap terms_;
};

using GaussVector = BasicGaussVector<ExactScalar>;
using GaussVectorF = BasicGaussVector<std::complex<double>>;

// t x^n xi_z = -i n x^{n-2} xi_z + z x^n xi_z  (n = 0: just z xi_z).
// Power-1 terms are outside the domain: differentiating x^1 xi_z leaves a
// constant term that dividing by x cannot absorb.
template <class Coeff>
BasicGaussVector<Coeff> apply_t(const BasicGaussVector<Coeff>& f) {
  using Ops = CoeffOps<Coeff>;
  BasicGaussVector<Coeff> r;
  const Coeff mi = -Ops::imag_unit();
  for (const auto& [k, c] : f.terms()) {
    if (k.power == 1)
      throw DomainError("t: power-1 term has no image in the space");
    if (k.power >= 2)
      r.add_term(c * mi * Ops::from_long(k.power), k.power - 2, k.width);
    r.add_term(c * k.width, k.power, k.width);
  }
  return r;
}

// t* x^n xi_z = -i (n-1) x^{n-2} xi_z + z x^n xi_z, defined for n >= 1.
template <class Coeff>
BasicGaussVector<Coeff> apply_t_star(const BasicGaussVector<Coeff>& f) {
  using Ops = CoeffOps<Coeff>;
  BasicGaussVector<Coeff> r;
  const Coeff mi = -Ops::imag_unit();
  for (const auto& [k, c] : f.terms()) {
    if (k.power == 0)
      throw DomainError("t*: power-0 term cannot be divided by x");
    if (k.power >= 2)
      r.add_term(c * mi * Ops::from_long(k.power - 1), k.power - 2, k.width);
    r.add_term(c * k.width, k.power, k.width);
  }
  return r;
}

// h_e x^n xi_z = (1/2)[(e z^2 + 1) x^{n+2} - i e (2n+1) z x^n
//                      - e n(n-1) x^{n-2}] xi_z
template <class Coeff>
BasicGaussVector<Coeff> apply_h(const BasicGaussVector<Coeff>& f,
                                const Coeff& eps) {
  using Ops = CoeffOps<Coeff>;
  BasicGaussVector<Coeff> r;
  const Coeff i = Ops::imag_unit();
  const Coeff half = Coeff(Ops::from_long(1)) / Ops::from_long(2);
  for (const auto& [k, c] : f.terms()) {
    const long n = k.power;
    const Coeff z = k.width;
    r.add_term(c * half * (eps * z * z + Ops::from_long(1)), n + 2, z);
    r.add_term(-(c * half * i * eps * Ops::from_long(2 * n + 1) * z), n, z);
    if (n >= 2)
      r.add_term(-(c * half * eps * Ops::from_long(n * (n - 1))), n - 2, z);
  }
  return r;
}

inline GaussVector apply_h(const GaussVector& f, const EpsParam& eps) {
  return apply_h(f, ExactScalar(eps.value()));
}

// ---- inner products --------------------------------------------------------

// Exact path: available when every width is purely imaginary (z = i w with
// rational w > 0), which covers the spaces all exact identities live on.
SqrtPiSum inner_product_exact(const GaussVector& f, const GaussVector& g);

// Numeric path at any precision; Complex = std::complex<double> or BigComplex.
template <class Complex, class Coeff>
Complex inner_product_as(const BasicGaussVector<Coeff>& f,
                         const BasicGaussVector<Coeff>& g) {
  using Real = typename Complex::value_type;
  using std::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  Complex acc{};
  for (const auto& [kf, cf] : f.terms()) {
    for (const auto& [kg, cg] : g.terms()) {
      long total = kf.power + kg.power;
      if (total % 2 != 0) continue;
      long n = total / 2;
      Complex zf, zg, a, b;
      if constexpr (std::is_same_v<Coeff, ExactScalar>) {
        zf = kf.width.template to<Complex>();
        zg = kg.width.template to<Complex>();
        a = cf.template to<Complex>();
        b = cg.template to<Complex>();
      } else {
        zf = Complex(Real(kf.width.real()), Real(kf.width.imag()));
        zg = Complex(Real(kg.width.real()), Real(kg.width.imag()));
        a = Complex(Real(cf.real()), Real(cf.imag()));
        b = Complex(Real(cg.real()), Real(cg.imag()));
      }
      // s = -i (z_g - conj(z_f)) / 2 has Re s > 0
      Complex iu(Real(0), Real(1));
      Complex s = -iu * (zg - conj(zf)) / Real(2);
      Complex moment(bigint_as<Real>(double_factorial_odd(n)));
      Complex two_s = Real(2) * s;
      for (long j = 0; j < n; ++j) moment /= two_s;
      moment *= sqrt(pi / s);
      acc += conj(a) * b * moment;
    }
  }
  return acc;
}

template <class Coeff>
std::complex<double> inner_product(const BasicGaussVector<Coeff>& f,
                                   const BasicGaussVector<Coeff>& g) {
  return inner_product_as<std::complex<double>>(f, g);
}

template <class Coeff>
double norm(const BasicGaussVector<Coeff>& f) {
  return std::sqrt(std::abs(inner_product(f, f).real()));
}

// ---- widths and frames -----------------------------------------------------

// width of  exp(-w x^2 / (2 sqrt(eps)))  as a GaussTerm:  z = i w / sqrt(eps)
ExactScalar imaginary_width(const BigRat& w, const EpsParam& eps);

// the Gaussian  x^{power} exp(-alpha x^2/(2 sqrt(eps)))  in exact mode
GaussVector monomial_gaussian(const BigRat& alpha, long power,
                              const EpsParam& eps);

// exact vector lowered to the float engine, term by term
GaussVectorF to_float(const GaussVector& v);

// ---- truncated arctan series ----------------------------------------------

template <class Coeff>
struct ArctanSeries {
  BasicGaussVector<Coeff> sum;  // -(1/sqrt(eps)) sum_{n<=M} (-1)^n/(2n+1) (sqrt(eps) t^#)^{2n+1} f
  std::vector<double> increment_norms;  // norms of the weighted series terms
  std::vector<double> power_norms;      // norms of (sqrt(eps) t^#)^{2n+1} f
  bool divergent = false;
};

// Flagging rule: the run is declared divergent when over 10 consecutive steps
// either the weighted increments or the raw operator-power norms fail to
// decrease.  (On the convergence boundary the weighted increments can still
// shrink harmonically while the powers stop decaying; watching both catches
// that case.)
template <class Coeff, class SqrtEps>
ArctanSeries<Coeff> arctan_partial_sum(const BasicGaussVector<Coeff>& f,
                                       const SqrtEps& sqrt_eps, long M,
                                       bool star) {
  using Ops = CoeffOps<Coeff>;
  Coeff se;
  if constexpr (std::is_same_v<Coeff, ExactScalar>) {
    se = ExactScalar(BigRat(sqrt_eps));
  } else {
    se = Coeff(static_cast<double>(sqrt_eps), 0.0);
  }
  auto step = [&](const BasicGaussVector<Coeff>& v) {
    return se * (star ? apply_t_star(v) : apply_t(v));
  };
  ArctanSeries<Coeff> out;
  BasicGaussVector<Coeff> v = step(f);  // (sqrt(eps) t^#)^{2n+1} f, n = 0
  const Coeff prefactor = -(Coeff(Ops::from_long(1)) / se);
  long nondecreasing = 0;
  double prev_inc = -1.0, prev_pow = -1.0;
  for (long n = 0; n <= M; ++n) {
    Coeff w = Coeff(Ops::from_long(n % 2 == 0 ? 1 : -1)) /
              Ops::from_long(2 * n + 1);
    BasicGaussVector<Coeff> term = w * v;
    out.sum += term;
    double pw = norm(v);
    double inc = pw / static_cast<double>(2 * n + 1);
    out.increment_norms.push_back(inc);
    out.power_norms.push_back(pw);
    // a plateau of underflowed (zero) norms is full convergence, not stalling
    if (prev_inc >= 0 && pw > 0 && (inc >= prev_inc || pw >= prev_pow))
      ++nondecreasing;
    else
      nondecreasing = 0;
    if (nondecreasing >= 10) out.divergent = true;
    prev_inc = inc;
    prev_pow = pw;
    if (n < M) v = step(step(v));
  }
  out.sum = prefactor * out.sum;
  return out;
}

// ---- closed form for operator powers ----------------------------------------
// (sqrt(eps) t)^n x^{2m} xi = sum_k C(n,k) C(m,k) k! 2^k (alpha i)^{n-k}
//                                   (-i sqrt(eps))^k x^{2m-2k} xi
// as an exact coefficient table keyed by the x-power.
std::map<long, ExactScalar> power_t_closed(long n, long m, const BigRat& alpha,
                                           const EpsParam& eps);

// ---- serialization ----------------------------------------------------------
// Line format: "coeff_re coeff_im power z_re z_im", rationals as p/q.
std::string to_text(const GaussVector& v);
GaussVector gauss_from_text(const std::string& text);
std::string to_json(const GaussVector& v);
GaussVector gauss_from_json(const std::string& json_text);

}  // namespace timeop
