#pragma once

// The bounded phase-time operator of the oscillator, truncated to its first
// N+1 eigenvectors: the matrix  pi*1 + i/(n-m),  the periodic measure it
// integrates, the exact commutator identity  [h, T] = -i(1 - 2pi P0)  at
// every truncation, and the contrast against the unbounded band forms.
//
// Everything in this header lives at eps = 1, where the spectrum n + 1/2 has
// unit spacing and the measure is 2pi-periodic; HermiteFrame itself accepts
// any eps with rational square root.

#include "timeop/forms.hpp"
#include "timeop/gauss.hpp"
#include "timeop/hermite.hpp"
#include "timeop/sqrtpi.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace timeop {

// ---- eigenvector frame with exact bookkeeping --------------------------------

class HermiteFrame {
 public:
  explicit HermiteFrame(long order, EpsParam eps = EpsParam{BigRat(1)});

  long order() const { return static_cast<long>(vecs_.size()) - 1; }
  const EpsParam& eps() const { return eps_; }

  // unnormalized frame vector and its exact squared norm
  const GaussVector& vec(long n) const { return vecs_.at(static_cast<size_t>(n)); }
  const SqrtPiSum& norm2(long n) const { return norm2_.at(static_cast<size_t>(n)); }
  // rational part of the squared norm:  norm2(n) = nu(n) sqrt(sqrt(eps)) sqrt(pi)
  const BigRat& nu(long n) const { return nu_.at(static_cast<size_t>(n)); }
  double norm(long n) const { return norm_.at(static_cast<size_t>(n)); }

  // exact coordinates over the unnormalized frame when f lies in the span
  // (every width equal to the frame width, powers within the order)
  std::optional<std::vector<ExactScalar>> coordinates(const GaussVector& f) const;

  // normalized coefficients <e_n, f> for any purely-imaginary-width vector,
  // computed through exact moment recurrences and converted only at the end
  std::vector<std::complex<double>> coefficients(const GaussVector& f) const;

 private:
  EpsParam eps_;
  std::vector<GaussVector> vecs_;
  std::vector<SqrtPiSum> norm2_;
  std::vector<BigRat> nu_;
  std::vector<double> norm_;
};

// ---- the truncated operator matrix -------------------------------------------

// values a + b*pi with exact complex-rational a and b; closed under addition
// and rational scaling, which is all the commutator bookkeeping needs
struct PiValue {
  ExactScalar plain;
  ExactScalar pi;

  bool is_zero() const { return plain.is_zero() && pi.is_zero(); }
  PiValue conj() const { return {plain.conj(), pi.conj()}; }
  std::complex<double> value() const;

  friend PiValue operator+(const PiValue& a, const PiValue& b) {
    return {a.plain + b.plain, a.pi + b.pi};
  }
  friend PiValue operator-(const PiValue& a, const PiValue& b) {
    return {a.plain - b.plain, a.pi - b.pi};
  }
  friend PiValue operator*(const ExactScalar& s, const PiValue& v) {
    return {s * v.plain, s * v.pi};
  }
  friend bool operator==(const PiValue& a, const PiValue& b) {
    return a.plain == b.plain && a.pi == b.pi;
  }
  friend bool operator!=(const PiValue& a, const PiValue& b) { return !(a == b); }
};

// (order+1) x (order+1) matrix with entries pi on the diagonal and i/(n-m)
// off it; entries are generated from the formula, so storage stays O(1)
class TgMatrix {
 public:
  explicit TgMatrix(long order);

  long order() const { return order_; }
  PiValue at(long n, long m) const;

  bool hermitian() const;  // exact conjugate-transpose identity
  std::vector<std::complex<double>> dense() const;  // row-major floats
  // row-major text export, four rationals per entry (plain re/im, pi re/im)
  std::string export_text() const;

 private:
  long order_;
};

TgMatrix tg_matrix(long order);

// ---- the sesquilinear pairing through the matrix ------------------------------

// exact value  plain + pi * <pi>  with both parts in the moment field
struct PiSqrtSum {
  SqrtPiSum plain;
  SqrtPiSum pi;

  std::complex<double> value() const;
  friend bool operator==(const PiSqrtSum& a, const PiSqrtSum& b) {
    return a.plain == b.plain && a.pi == b.pi;
  }
  friend bool operator!=(const PiSqrtSum& a, const PiSqrtSum& b) {
    return !(a == b);
  }
};

struct TgFormValue {
  std::complex<double> value{};   // pairing at the requested truncation
  double increment = 0;           // |value at 2N - value at N|, the tail probe
  std::optional<PiSqrtSum> exact; // present when both inputs lie in the span
};

// pairing  pi (f, g) + i sum_{n != m} (e_m, g)(f, e_n)/(n - m)  truncated to
// indices <= order, with the order -> 2*order increment reported
TgFormValue tg_form(const GaussVector& f, const GaussVector& g, long order);

// ---- measure weights ----------------------------------------------------------

// interval endpoints in units of pi, inside [0, 2]
struct AngleInterval {
  BigRat lo;
  BigRat hi;
};

// Symbolic skeleton of a weight: total length plus the signed endpoint phases
// of the oscillating integrals, reduced mod the period.  Disjoint unions merge
// ledgers exactly (shared endpoints cancel), which carries additivity of the
// weights at the exact level.
struct WeightLedger {
  BigRat length{0};                  // sum of interval lengths, pi units
  std::map<BigRat, BigRat> endpoints;  // phase q (mod 2) -> +1 per hi, -1 per lo

  friend WeightLedger operator+(const WeightLedger& a, const WeightLedger& b);
  friend bool operator==(const WeightLedger& a, const WeightLedger& b) {
    return a.length == b.length && a.endpoints == b.endpoints;
  }
  friend bool operator!=(const WeightLedger& a, const WeightLedger& b) {
    return !(a == b);
  }
};

struct PovmWeight {
  double value = 0;
  WeightLedger ledger;
  // true when the symbolic layer certifies the weight is exactly one: the
  // input lies in the frame span, the set covers the whole period, and the
  // diagonal mass equals the squared norm in exact arithmetic
  bool exact_one = false;
};

// probability weight (f, P(A) f)/|f|^2 of a finite union of intervals;
// intervals must be disjoint and inside the period
PovmWeight povm_weight(const std::vector<AngleInterval>& set,
                       const GaussVector& f, long order);
PovmWeight povm_weight(const AngleInterval& interval, const GaussVector& f,
                       long order);

// ---- commutator identity at truncation ----------------------------------------

struct CommutatorReport {
  long order = 0;
  bool entries_match = false;            // [h, T] = -i(1 - 2pi P0), entrywise
  bool difference_action_matches = false;  // action on e_n - e_m is -i times it
};

CommutatorReport commutator_check(long order);

// ---- operator norm ------------------------------------------------------------

struct SpectralEstimate {
  double dominant = 0;
  double second = 0;  // after deflating the dominant direction
  long iterations = 0;
};

// power iteration from a fixed deterministic start; tol on Rayleigh quotients
SpectralEstimate spectral_estimate(const TgMatrix& m, double tol = 1e-8);

// largest singular value estimate of the truncated matrix; always <= 2 pi
double norm_bound_check(long order);

// ---- bounded against unbounded -------------------------------------------------

struct ContrastRow {
  double alpha = 0;
  double unbounded_value = 0;   // |band form| on the normalized adjacent pair
  double bounded_value = 0;     // |matrix pairing| on the same pair
  double bounded_increment = 0; // truncation tail probe of the matrix pairing
};

// For f = x^{2k} exp(-alpha x^2/2) and g = x^{2k+2} exp(-alpha x^2/2),
// normalized: the band form grows without bound as alpha -> 1 while the
// matrix pairing never leaves [0, 2 pi].  (The diagonal band value vanishes
// identically at equal widths, so the adjacent pair is the witness.)
std::vector<ContrastRow> contrast_sweep(long k, const std::vector<BigRat>& alpha_list,
                                        long order);

}  // namespace timeop
