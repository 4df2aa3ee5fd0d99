#pragma once

// Sesquilinear time forms over the Gaussian family, with exact and float
// evaluation paths.  Values live in a small exact algebra: a sqrt(pi)-sum
// plus sqrt(pi)-sum multiples of band logarithms log((1+g)/(1-g)).  The float
// paths mirror the same formulas in double precision and are the only route
// when sqrt(eps) is irrational.

#include "timeop/gauss.hpp"
#include "timeop/hermite.hpp"
#include "timeop/xpolylog.hpp"

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace timeop {

// c0 + sum_g c_g * log((1+g)/(1-g)), coefficients exact sqrt(pi)-sums
class LogCombo {
 public:
  LogCombo() = default;
  explicit LogCombo(SqrtPiSum c0) : c0_(std::move(c0)) {}

  void add_const(const SqrtPiSum& c) { c0_ += c; }
  void add_log(const BigRat& g, const SqrtPiSum& c) {
    if (c.is_zero()) return;
    auto it = logs_.find(g);
    if (it == logs_.end()) {
      logs_[g] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) logs_.erase(it);
  }

  const SqrtPiSum& constant() const { return c0_; }
  SqrtPiSum log_coeff(const BigRat& g) const {
    auto it = logs_.find(g);
    return it == logs_.end() ? SqrtPiSum{} : it->second;
  }
  const std::map<BigRat, SqrtPiSum>& log_terms() const { return logs_; }
  bool is_zero() const { return c0_.is_zero() && logs_.empty(); }

  friend LogCombo operator+(const LogCombo& a, const LogCombo& b) {
    LogCombo r = a;
    r.c0_ += b.c0_;
    for (const auto& [g, c] : b.logs_) r.add_log(g, c);
    return r;
  }
  friend LogCombo operator-(const LogCombo& a, const LogCombo& b) {
    return a + (ExactScalar(-1) * b);
  }
  friend LogCombo operator*(const ExactScalar& s, const LogCombo& a) {
    LogCombo r;
    if (s.is_zero()) return r;
    r.c0_ = s * a.c0_;
    for (const auto& [g, c] : a.logs_) r.logs_[g] = s * c;
    return r;
  }
  LogCombo& operator+=(const LogCombo& o) { return *this = *this + o; }
  LogCombo& operator-=(const LogCombo& o) { return *this = *this - o; }

  LogCombo conj() const {
    LogCombo r;
    r.c0_ = c0_.conj();
    for (const auto& [g, c] : logs_) r.logs_[g] = c.conj();
    return r;
  }

  friend bool operator==(const LogCombo& a, const LogCombo& b) {
    return a.c0_ == b.c0_ && a.logs_ == b.logs_;
  }
  friend bool operator!=(const LogCombo& a, const LogCombo& b) {
    return !(a == b);
  }

  template <class Complex>
  Complex value_as() const {
    using Real = typename Complex::value_type;
    Complex acc = c0_.value_as<Complex>();
    for (const auto& [g, c] : logs_) {
      using std::log;
      Real lg = log(rat_as<Real>((1 + g) / (1 - g)));
      acc += c.template value_as<Complex>() * Complex(lg);
    }
    return acc;
  }
  std::complex<double> value() const {
    return value_as<std::complex<double>>();
  }

 private:
  SqrtPiSum c0_;
  std::map<BigRat, SqrtPiSum> logs_;
};

struct FormValue {
  std::optional<LogCombo> exact;  // set when every input is exact
  std::complex<double> numeric{};
};

// ---- Gaussian moments -------------------------------------------------------
// int x^p exp(-s x^2) dx; zero for odd p, (p-1)!! (2s)^{-p/2} sqrt(pi/s) even
SqrtPiSum gauss_moment(long p, const BigRat& s);
std::complex<double> gauss_moment_num(long p, std::complex<double> s);

// ---- matrix elements on the monomial Gaussian family ------------------------
// symmetrized form on (x^a xi_{a1 i, eps}, x^b xi_{a2 i, eps}) with band
// parameters alpha, beta in (0,1); zero when a+b is odd
FormValue k_matrix_element(long a, long b, const BigRat& alpha,
                           const BigRat& beta, const EpsParam& eps);

// ---- the form on arbitrary members of the Gaussian family -------------------
// inputs must have purely imaginary widths i*w with w*sqrt(eps) in (0,1);
// exact path requires rational sqrt(eps)
FormValue t_eps_form(const GaussVector& psi, const GaussVector& phi,
                     const EpsParam& eps);
std::complex<double> t_eps_form_numeric(const GaussVectorF& psi,
                                        const GaussVectorF& phi, double eps);

// scale-free symmetrized derivative form -1/2 {(psi, t# phi) + (t# psi, phi)}
FormValue t_ab_form(const GaussVector& psi, const GaussVector& phi);
std::complex<double> t_ab_form_numeric(const GaussVectorF& psi,
                                       const GaussVectorF& phi);

// ---- analytic continuation off the imaginary axis ---------------------------
// holomorphic pairing int x^p e^{izx^2} dx against the complex-engine tables;
// defined on Im z > 0 away from the cut i[1,inf) and the point z = i
std::complex<double> t_hat_form(long a, long b, std::complex<double> z,
                                double cut_tube = kDefaultCutTube);
// true sesquilinear value 1/2 {(S# psi, phi) + (psi, S# phi)} on float vectors
std::complex<double> t_hat_sesquilinear(const GaussVectorF& psi,
                                        const GaussVectorF& phi,
                                        double cut_tube = kDefaultCutTube);

// closed-loop integral of z -> t_hat_form(a, b, z) along a polygon; the loop
// must stay in the upper half plane and keep cut_tube clearance from the cut
// i[1,inf) (which covers the singular point z = i); crossing the axis below
// i is fine.  Throws BranchCutError when the loop violates the clearance and
// DomainError when it leaves the upper half plane.
std::complex<double> analyticity_check(long a, long b,
                                       const std::vector<std::complex<double>>& polygon,
                                       int points_per_edge = 32,
                                       double cut_tube = kDefaultCutTube);

// ---- Hermite-polynomial matrix elements --------------------------------------
// value on the pair (H_a(x) xi_{a1 i, eps}, H_b(x) xi_{a2 i, eps}) with plain
// Hermite polynomials; evaluated through the generic form machinery, so it
// doubles as an independent check of the per-monomial entries
FormValue l_matrix_element(long a, long b, const BigRat& alpha,
                           const BigRat& beta, const EpsParam& eps);

// ---- unboundedness witness ---------------------------------------------------
// |form| on the normalized adjacent even pair (x^{2k} xi_{a i}, x^{2k+2}
// xi_{a i}) at eps = 1; grows without bound as the band parameter approaches
// 1 (the diagonal pair itself cancels to zero, so the witness uses the
// nearest off-diagonal one)
double unbounded_witness(long k, const BigRat& alpha);

// ---- canonical commutation residual -----------------------------------------
enum class CcrForm { TEps, TAb, THat };

struct CcrReport {
  std::complex<double> residual{};
  double scale = 1.0;  // 1 + |<phi, psi>|
  bool pass = false;
};

// residual t[H phi, psi] - conj(t[H psi, phi]) + i <phi, psi>, H the hamilton
// operator matching the form (eps-oscillator, x^2/2, unit oscillator);
// s_scale multiplies the form values (a deliberate defect injector for the
// cli self-check)
CcrReport ccr_residual(CcrForm kind, const GaussVector& psi,
                       const GaussVector& phi, const EpsParam& eps,
                       double tol = 1e-10, double s_scale = 1.0);
CcrReport ccr_residual_continued(const GaussVectorF& psi,
                                 const GaussVectorF& phi, double tol = 1e-10,
                                 double s_scale = 1.0);

// ---- limit of the regularized form toward the scale-free one ----------------
struct SweepRow {
  double eps = 0;
  double diff = 0;  // |t_eps - t_ab| on the pair
};
struct SweepResult {
  std::vector<SweepRow> rows;
  std::complex<double> t_ab{};  // the scale-free value the rows approach
  double slope = 0;             // log-log fit, two largest eps dropped
  double endpoint_gap = -1;     // |exact - float| at eps = 1 when present
};
SweepResult continuum_sweep(const GaussVector& psi, const GaussVector& phi,
                            const std::vector<BigRat>& eps_list);

// ---- divergence of the series on the oscillator frame -----------------------
struct DivergenceRow {
  long M = 0;
  double value = 0;
};
struct DivergenceFit {
  double c = 0, d = 0;
  double max_rel_err = 0;
};
// |<frame_p / |frame_p|, partial sum>|; closed form via the digamma function;
// odd p is outside the domain of the chain and throws
std::vector<DivergenceRow> divergence_probe(long p, const EpsParam& eps,
                                            const std::vector<long>& M_list);
double divergence_closed_form(long p, const EpsParam& eps, long M);
// exact partial-sum pairing for small M (unnormalized frame, no 1/sqrt(eps))
SqrtPiSum divergence_exact_partial(long p, const EpsParam& eps, long M);
DivergenceFit divergence_fit(const std::vector<DivergenceRow>& rows);

}  // namespace timeop
