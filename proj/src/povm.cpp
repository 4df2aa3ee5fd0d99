#include "timeop/povm.hpp"

#include "timeop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace timeop {

namespace {

const std::complex<double> kI{0.0, 1.0};

// q mod 2 for nonnegative rational q
BigRat mod_period(const BigRat& q) {
  BigInt fl = numerator(q) / (denominator(q) * 2);
  return q - 2 * BigRat(fl);
}

}  // namespace

// ---- frame -------------------------------------------------------------------

HermiteFrame::HermiteFrame(long order, EpsParam eps) : eps_(std::move(eps)) {
  if (order < 0) throw std::invalid_argument("HermiteFrame: order must be >= 0");
  const BigRat se = eps_.sqrt_rational();
  vecs_.reserve(static_cast<size_t>(order) + 1);
  norm2_.reserve(static_cast<size_t>(order) + 1);
  nu_.reserve(static_cast<size_t>(order) + 1);
  norm_.reserve(static_cast<size_t>(order) + 1);
  BigRat nu = 1;  // 2^n n! se^n
  for (long n = 0; n <= order; ++n) {
    if (n > 0) nu *= BigRat(2 * n) * se;
    if (n <= 1) {
      vecs_.push_back(hermite_frame(n, eps_));
    } else {
      // three-term recurrence keeps the build quadratic in the order
      GaussVector next = ExactScalar{2} * vecs_[static_cast<size_t>(n - 1)]
                             .times_x_power(1);
      next -= ExactScalar(2 * (n - 1) * se) * vecs_[static_cast<size_t>(n - 2)];
      vecs_.push_back(std::move(next));
    }
    norm2_.push_back(frame_norm2(n, eps_));
    nu_.push_back(nu);
    norm_.push_back(std::sqrt(norm2_.back().value().real()));
  }
}

std::optional<std::vector<ExactScalar>> HermiteFrame::coordinates(
    const GaussVector& f) const {
  const ExactScalar frame_width = imaginary_width(BigRat(1), eps_);
  for (const auto& [key, c] : f.terms())
    if (!(key.width == frame_width)) return std::nullopt;
  std::vector<ExactScalar> out(static_cast<size_t>(order()) + 1);
  GaussVector rem = f;
  while (!rem.is_zero()) {
    const auto& top = *rem.terms().rbegin();
    const long p = top.first.power;
    if (p > order()) return std::nullopt;
    // leading coefficient of the frame vector at power p is 2^p
    const ExactScalar lead = vec(p).terms().rbegin()->second;
    const ExactScalar r = top.second / lead;
    out[static_cast<size_t>(p)] = r;
    rem -= r * vec(p);
  }
  return out;
}

std::vector<std::complex<double>> HermiteFrame::coefficients(
    const GaussVector& f) const {
  const long M = order();
  std::vector<std::complex<double>> out(static_cast<size_t>(M) + 1);
  const BigRat se = eps_.sqrt_rational();
  const double se_f = rat_as<double>(se);
  for (const auto& [key, c] : f.terms()) {
    if (key.width.re != 0 || key.width.im <= 0)
      throw DomainError("HermiteFrame::coefficients: width must be purely imaginary");
    const BigRat w = key.width.im;
    const BigRat s = (BigRat(1) / se + w) / 2;
    const long p0 = key.power;
    // a(n, p):  <frame_n, x^p xi_{iw}> = a(n, p) sqrt(pi/s), via the frame
    // recurrence  a(n+1, p) = 2 a(n, p+1) - 2 n sqrt(eps) a(n-1, p)
    std::vector<BigRat> moments(static_cast<size_t>(p0 + M) + 2);
    moments[0] = 1;
    for (long p = 2; p <= p0 + M; p += 2)
      moments[static_cast<size_t>(p)] =
          moments[static_cast<size_t>(p - 2)] * BigRat(p - 1) / (2 * s);
    auto emit = [&](long n, const BigRat& a) {
      if (a == 0) return;
      // a sqrt(pi/s) / |frame_n| = sign(a) sqrt(a^2/(s nu_n) * sqrt(pi/eps))
      BigRat rho = a * a / (s * nu(n));
      double mag =
          std::sqrt(rat_as<double>(rho) * std::sqrt(M_PI) / std::sqrt(se_f));
      out[static_cast<size_t>(n)] += c.to_complex() * (a < 0 ? -mag : mag);
    };
    std::vector<BigRat> prev2, prev1(static_cast<size_t>(M) + 1);
    for (long j = 0; j <= M; ++j)
      prev1[static_cast<size_t>(j)] = moments[static_cast<size_t>(p0 + j)];
    emit(0, prev1[0]);
    for (long n = 1; n <= M; ++n) {
      std::vector<BigRat> cur(static_cast<size_t>(M - n) + 1);
      for (long j = 0; j + n <= M; ++j) {
        BigRat v = 2 * prev1[static_cast<size_t>(j + 1)];
        if (n >= 2) v -= 2 * (n - 1) * se * prev2[static_cast<size_t>(j)];
        cur[static_cast<size_t>(j)] = std::move(v);
      }
      emit(n, cur[0]);
      prev2 = std::move(prev1);
      prev1 = std::move(cur);
    }
  }
  return out;
}

// ---- matrix ------------------------------------------------------------------

std::complex<double> PiValue::value() const {
  return plain.to_complex() + M_PI * pi.to_complex();
}

TgMatrix::TgMatrix(long order) : order_(order) {
  if (order < 0) throw std::invalid_argument("TgMatrix: order must be >= 0");
}

PiValue TgMatrix::at(long n, long m) const {
  if (n < 0 || m < 0 || n > order_ || m > order_)
    throw std::out_of_range("TgMatrix::at: index outside the truncation");
  if (n == m) return {ExactScalar{}, ExactScalar{1}};
  return {ExactScalar::i() / ExactScalar(BigRat(n - m)), ExactScalar{}};
}

bool TgMatrix::hermitian() const {
  for (long n = 0; n <= order_; ++n)
    for (long m = n; m <= order_; ++m)
      if (at(n, m) != at(m, n).conj()) return false;
  return true;
}

std::vector<std::complex<double>> TgMatrix::dense() const {
  const size_t n = static_cast<size_t>(order_) + 1;
  std::vector<std::complex<double>> out(n * n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c)
      out[r * n + c] = r == c ? std::complex<double>(M_PI, 0)
                              : kI / static_cast<double>(static_cast<long>(r) -
                                                         static_cast<long>(c));
  return out;
}

std::string TgMatrix::export_text() const {
  std::ostringstream os;
  os << "order " << order_ << "\n";
  for (long n = 0; n <= order_; ++n) {
    for (long m = 0; m <= order_; ++m) {
      const PiValue v = at(n, m);
      if (m > 0) os << "  ";
      os << rat_to_string(v.plain.re) << ' ' << rat_to_string(v.plain.im) << ' '
         << rat_to_string(v.pi.re) << ' ' << rat_to_string(v.pi.im);
    }
    os << "\n";
  }
  return os.str();
}

TgMatrix tg_matrix(long order) { return TgMatrix(order); }

// ---- form --------------------------------------------------------------------

std::complex<double> PiSqrtSum::value() const {
  return plain.value() + M_PI * pi.value();
}

namespace {

// exact pairing over frame coordinates, indices restricted to <= level
PiSqrtSum exact_pairing(const HermiteFrame& frame,
                        const std::vector<ExactScalar>& rf,
                        const std::vector<ExactScalar>& sg, long level) {
  std::vector<long> fi, gi;
  for (long n = 0; n <= level; ++n) {
    if (!rf[static_cast<size_t>(n)].is_zero()) fi.push_back(n);
    if (!sg[static_cast<size_t>(n)].is_zero()) gi.push_back(n);
  }
  PiSqrtSum out;
  const BigRat se = frame.eps().sqrt_rational();
  for (long n : fi) {
    const ExactScalar cf = rf[static_cast<size_t>(n)].conj();
    for (long m : gi) {
      const ExactScalar& cg = sg[static_cast<size_t>(m)];
      if (n == m) {
        out.pi += (cf * cg) * frame.norm2(n);
      } else {
        // sqrt(|frame_n|^2 |frame_m|^2) = sqrt(nu_n nu_m sqrt(eps)^2) sqrt(pi)
        // with the rational parts nu; the scalar weight is i/(n - m)
        const ExactScalar weight =
            cf * cg * (ExactScalar::i() / ExactScalar(BigRat(n - m)));
        SqrtPiSum root = SqrtPiSum::rational_multiple(ExactScalar{1})
                             .times_sqrt(frame.nu(n) * frame.nu(m) * se);
        out.plain += weight * root;
      }
    }
  }
  return out;
}

std::complex<double> float_pairing(const std::vector<std::complex<double>>& cf,
                                   const std::vector<std::complex<double>>& cg,
                                   long level) {
  std::complex<double> acc{};
  for (long n = 0; n <= level; ++n) {
    const std::complex<double> a = std::conj(cf[static_cast<size_t>(n)]);
    if (a == std::complex<double>{}) continue;
    for (long m = 0; m <= level; ++m) {
      const std::complex<double> t =
          n == m ? std::complex<double>(M_PI, 0)
                 : kI / static_cast<double>(n - m);
      acc += a * t * cg[static_cast<size_t>(m)];
    }
  }
  return acc;
}

}  // namespace

TgFormValue tg_form(const GaussVector& f, const GaussVector& g, long order) {
  if (order < 1) throw std::invalid_argument("tg_form: order must be >= 1");
  const EpsParam unit{BigRat(1)};
  TgFormValue out;
  // vectors sitting on the frame widths span exactly the first S + 1 frame
  // vectors, S their top power; a frame of that size is enough for exact
  // coordinates no matter how large the truncation order is
  const ExactScalar frame_width = imaginary_width(BigRat(1), unit);
  bool on_frame = true;
  long support = 0;
  for (const GaussVector* v : {&f, &g})
    for (const auto& [key, c] : v->terms()) {
      if (!(key.width == frame_width)) on_frame = false;
      support = std::max(support, key.power);
    }
  if (on_frame) {
    const HermiteFrame frame(support, unit);
    const auto rf = frame.coordinates(f);
    const auto sg = frame.coordinates(g);
    const PiSqrtSum at_n =
        exact_pairing(frame, *rf, *sg, std::min(order, support));
    const PiSqrtSum at_2n =
        exact_pairing(frame, *rf, *sg, std::min(2 * order, support));
    out.value = at_n.value();
    out.increment = std::abs(at_2n.value() - out.value);
    out.exact = at_n;
    return out;
  }
  const HermiteFrame frame(2 * order, unit);
  const auto cf = frame.coefficients(f);
  const auto cg = frame.coefficients(g);
  out.value = float_pairing(cf, cg, order);
  out.increment = std::abs(float_pairing(cf, cg, 2 * order) - out.value);
  return out;
}

// ---- weights -----------------------------------------------------------------

WeightLedger operator+(const WeightLedger& a, const WeightLedger& b) {
  WeightLedger out = a;
  out.length += b.length;
  for (const auto& [q, mult] : b.endpoints) {
    BigRat& slot = out.endpoints[q];
    slot += mult;
    if (slot == 0) out.endpoints.erase(q);
  }
  return out;
}

PovmWeight povm_weight(const std::vector<AngleInterval>& set,
                       const GaussVector& f, long order) {
  if (f.is_zero()) throw DomainError("povm_weight: the vector must be nonzero");
  std::vector<AngleInterval> sorted = set;
  std::sort(sorted.begin(), sorted.end(),
            [](const AngleInterval& a, const AngleInterval& b) {
              return a.lo < b.lo;
            });
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].lo < 0 || sorted[i].hi > 2 || sorted[i].lo > sorted[i].hi)
      throw DomainError("povm_weight: interval outside the period");
    if (i > 0 && sorted[i].lo < sorted[i - 1].hi)
      throw std::invalid_argument("povm_weight: intervals must be disjoint");
  }

  PovmWeight out;
  for (const auto& iv : sorted) {
    if (iv.lo == iv.hi) continue;
    out.ledger.length += iv.hi - iv.lo;
    for (const auto& [q, mult] :
         {std::pair{iv.lo, BigRat(-1)}, std::pair{iv.hi, BigRat(1)}}) {
      BigRat key = mod_period(q);
      BigRat& slot = out.ledger.endpoints[key];
      slot += mult;
      if (slot == 0) out.ledger.endpoints.erase(key);
    }
  }

  const HermiteFrame frame(order, EpsParam{BigRat(1)});
  const auto coords = frame.coordinates(f);
  const SqrtPiSum f_norm2 = inner_product_exact(f, f);
  const double nf = std::sqrt(f_norm2.value().real());

  std::vector<std::complex<double>> c(static_cast<size_t>(order) + 1);
  if (coords) {
    for (long n = 0; n <= order; ++n)
      c[static_cast<size_t>(n)] =
          (*coords)[static_cast<size_t>(n)].to_complex() * frame.norm(n) / nf;
  } else {
    c = frame.coefficients(f);
    for (auto& v : c) v /= nf;
  }

  double diag = 0;
  for (const auto& v : c) diag += std::norm(v);
  double value = diag * rat_as<double>(out.ledger.length) / 2;
  for (long k = 1; k <= order; ++k) {
    std::complex<double> phase{};
    for (const auto& [q, mult] : out.ledger.endpoints)
      phase += rat_as<double>(mult) *
               std::exp(-kI * (M_PI * rat_as<double>(q) * static_cast<double>(k)));
    if (phase == std::complex<double>{}) continue;
    std::complex<double> corr{};
    for (long n = k; n <= order; ++n)
      corr += std::conj(c[static_cast<size_t>(n)]) * c[static_cast<size_t>(n - k)];
    // the mirrored offset contributes the conjugate term
    value += std::real(kI / static_cast<double>(k) * phase * corr) / M_PI;
  }
  out.value = value;

  if (coords && out.ledger.endpoints.empty() && out.ledger.length == 2) {
    SqrtPiSum mass;
    for (long n = 0; n <= order; ++n) {
      const ExactScalar& r = (*coords)[static_cast<size_t>(n)];
      mass += (r.conj() * r) * frame.norm2(n);
    }
    if (mass == f_norm2) {
      out.exact_one = true;
      out.value = 1.0;
    }
  }
  return out;
}

PovmWeight povm_weight(const AngleInterval& interval, const GaussVector& f,
                       long order) {
  return povm_weight(std::vector<AngleInterval>{interval}, f, order);
}

// ---- commutator --------------------------------------------------------------

CommutatorReport commutator_check(long order) {
  if (order < 1)
    throw std::invalid_argument("commutator_check: order must be >= 1");
  const TgMatrix tg(order);
  CommutatorReport report;
  report.order = order;

  // [h, T]_{nm} = (n - m) T_{nm}; the identity's right side has the 2pi of
  // the projection cancel the 1/(2pi) of its normalization, leaving i at
  // every off-diagonal entry and 0 on the diagonal
  auto lhs = [&](long n, long m) {
    return ExactScalar(BigRat(n - m)) * tg.at(n, m);
  };
  auto rhs = [](long n, long m) {
    return n == m ? PiValue{} : PiValue{ExactScalar::i(), ExactScalar{}};
  };

  report.entries_match = true;
  for (long n = 0; n <= order && report.entries_match; ++n)
    for (long m = 0; m <= order; ++m)
      if (lhs(n, m) != rhs(n, m)) {
        report.entries_match = false;
        break;
      }

  // the commutator sends e_n - e_m to -i (e_n - e_m): check the matrix action
  report.difference_action_matches = true;
  const long span = std::min<long>(order, 25);
  for (long n = 0; n < span && report.difference_action_matches; ++n) {
    for (long m = n + 1; m <= span; ++m) {
      bool ok = true;
      for (long j = 0; j <= order; ++j) {
        PiValue got = lhs(j, n) - lhs(j, m);
        PiValue want;
        if (j == n) want = PiValue{-ExactScalar::i(), ExactScalar{}};
        if (j == m) want = PiValue{ExactScalar::i(), ExactScalar{}};
        if (got != want) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        report.difference_action_matches = false;
        break;
      }
    }
  }
  return report;
}

// ---- norm --------------------------------------------------------------------

SpectralEstimate spectral_estimate(const TgMatrix& m, double tol) {
  const long size = m.order() + 1;
  const std::vector<std::complex<double>> a = m.dense();
  auto matvec = [&](const std::vector<std::complex<double>>& v) {
    std::vector<std::complex<double>> r(static_cast<size_t>(size));
    for (long i = 0; i < size; ++i) {
      std::complex<double> acc{};
      const std::complex<double>* row = &a[static_cast<size_t>(i * size)];
      for (long j = 0; j < size; ++j) acc += row[j] * v[static_cast<size_t>(j)];
      r[static_cast<size_t>(i)] = acc;
    }
    return r;
  };
  auto dot = [&](const std::vector<std::complex<double>>& x,
                 const std::vector<std::complex<double>>& y) {
    std::complex<double> acc{};
    for (long j = 0; j < size; ++j)
      acc += std::conj(x[static_cast<size_t>(j)]) * y[static_cast<size_t>(j)];
    return acc;
  };
  auto nrm = [&](const std::vector<std::complex<double>>& x) {
    return std::sqrt(std::abs(dot(x, x).real()));
  };

  SpectralEstimate est;
  auto run = [&](std::vector<std::complex<double>> u,
                 const std::vector<std::complex<double>>* deflate) {
    double n0 = nrm(u);
    if (n0 == 0) return 0.0;
    for (auto& x : u) x /= n0;
    double lam = std::numeric_limits<double>::infinity();
    for (long it = 0; it < 200000; ++it) {
      if (deflate) {
        const std::complex<double> overlap = dot(*deflate, u);
        for (long j = 0; j < size; ++j)
          u[static_cast<size_t>(j)] -= overlap * (*deflate)[static_cast<size_t>(j)];
        const double nu_ = nrm(u);
        if (nu_ < 1e-300) return 0.0;
        for (auto& x : u) x /= nu_;
      }
      std::vector<std::complex<double>> v = matvec(u);
      const double lam_new = dot(u, v).real();
      ++est.iterations;
      if (std::abs(lam_new - lam) <= tol) {
        u = std::move(v);
        return lam_new;
      }
      lam = lam_new;
      const double nv = nrm(v);
      if (nv == 0) return 0.0;
      for (auto& x : v) x /= nv;
      u = std::move(v);
    }
    return lam;
  };

  std::vector<std::complex<double>> start(static_cast<size_t>(size)),
      start2(static_cast<size_t>(size));
  std::vector<std::complex<double>> dom(static_cast<size_t>(size));
  for (long j = 0; j < size; ++j) {
    start[static_cast<size_t>(j)] = 1.0 / static_cast<double>(j + 1);
    start2[static_cast<size_t>(j)] =
        (j % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(j + 1);
  }
  // rerun to capture the converged direction for deflation
  double lam1 = run(start, nullptr);
  {
    std::vector<std::complex<double>> u = start;
    double n0 = nrm(u);
    for (auto& x : u) x /= n0;
    for (long it = 0; it < 5000; ++it) {
      std::vector<std::complex<double>> v = matvec(u);
      const double nv = nrm(v);
      if (nv == 0) break;
      for (auto& x : v) x /= nv;
      double drift = 0;
      for (long j = 0; j < size; ++j)
        drift = std::max(drift, std::abs(v[static_cast<size_t>(j)] -
                                         u[static_cast<size_t>(j)]));
      u = std::move(v);
      if (drift <= tol) break;
    }
    dom = std::move(u);
  }
  double lam2 = run(start2, &dom);
  est.dominant = std::abs(lam1);
  est.second = std::abs(lam2);
  return est;
}

double norm_bound_check(long order) {
  if (order < 0)
    throw std::invalid_argument("norm_bound_check: order must be >= 0");
  return spectral_estimate(TgMatrix(order)).dominant;
}

// ---- contrast ----------------------------------------------------------------

std::vector<ContrastRow> contrast_sweep(long k,
                                        const std::vector<BigRat>& alpha_list,
                                        long order) {
  if (k < 0) throw std::invalid_argument("contrast_sweep: k must be >= 0");
  if (order < 1) throw std::invalid_argument("contrast_sweep: order must be >= 1");
  const EpsParam unit{BigRat(1)};
  std::vector<ContrastRow> rows;
  rows.reserve(alpha_list.size());
  for (const BigRat& alpha : alpha_list) {
    if (alpha <= 0 || alpha >= 1)
      throw DomainError("contrast_sweep: alpha must lie in (0, 1)");
    const GaussVector f = monomial_gaussian(alpha, 2 * k, unit);
    const GaussVector g = monomial_gaussian(alpha, 2 * k + 2, unit);
    const double nf = std::sqrt(inner_product_exact(f, f).value().real());
    const double ng = std::sqrt(inner_product_exact(g, g).value().real());
    const TgFormValue tg = tg_form(f, g, order);
    ContrastRow row;
    row.alpha = rat_as<double>(alpha);
    row.unbounded_value = unbounded_witness(k, alpha);
    row.bounded_value = std::abs(tg.value) / (nf * ng);
    row.bounded_increment = tg.increment / (nf * ng);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace timeop
