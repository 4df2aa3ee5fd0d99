#include "timeop/forms.hpp"

#include "timeop/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timeop {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// width i*w of a band Gaussian; anything off the imaginary axis is outside
// the family the exact forms are defined on
BigRat band_width(const ExactScalar& width) {
  if (!(width.re == 0))
    throw DomainError("form: width must be purely imaginary i*w");
  return width.im;  // im > 0 guaranteed at term construction
}

BigRat checked_band(const BigRat& w, const BigRat& sqrt_eps) {
  BigRat a = w * sqrt_eps;
  if (!(a > 0) || !(a < 1))
    throw DomainError("form: band parameter w*sqrt(eps) must lie in (0,1)");
  return a;
}

// value of a table coefficient at a rational band parameter g, split as
// v0 + v1 * log((1+g)/(1-g))
struct SplitVal {
  ExactScalar v0, v1;
  SplitVal conj() const { return {v0.conj(), v1.conj()}; }
};

SplitVal eval_split(const LogExt& e, const BigRat& g) {
  ExactScalar x{g};
  return {e.r0().eval(x), e.r1().eval(x)};
}

void accumulate(LogCombo& combo, const SplitVal& v, const BigRat& g,
                const SqrtPiSum& mom) {
  combo.add_const(v.v0 * mom);
  combo.add_log(g, v.v1 * mom);
}

// float-mode table for the angle-operator image of x^{2m}: coefficient of
// x^{2(m-k)} is C(m,k) (-2u)^k L^{(k)}(alpha), all times -i/(2u), where
// L(a) = log((1+a)/(1-a)) and u = sqrt(eps)
std::map<long, std::complex<double>> table_num(long m, double alpha, double u) {
  std::map<long, std::complex<double>> out;
  std::complex<double> pref = -kI / (2.0 * u);
  for (long k = 0; k <= m; ++k) {
    double lk;
    if (k == 0) {
      lk = std::log((1.0 + alpha) / (1.0 - alpha));
    } else {
      double fact = 1.0;
      for (long j = 1; j < k; ++j) fact *= static_cast<double>(j);
      double sgn = (k % 2 == 1) ? 1.0 : -1.0;
      lk = fact * (sgn / std::pow(1.0 + alpha, k) +
                   1.0 / std::pow(1.0 - alpha, k));
    }
    double binom = 1.0;
    for (long j = 0; j < k; ++j)
      binom = binom * static_cast<double>(m - j) / static_cast<double>(j + 1);
    out[2 * (m - k)] += pref * binom * std::pow(-2.0 * u, k) * lk;
  }
  return out;
}

std::complex<double> to_cd(const ExactScalar& s) {
  return {to_double(s.re), to_double(s.im)};
}

// segment-to-segment distance in the plane, for cut clearance checks
double seg_seg_distance(std::complex<double> a, std::complex<double> b,
                        std::complex<double> c, std::complex<double> d) {
  auto cross = [](std::complex<double> u, std::complex<double> v) {
    return u.real() * v.imag() - u.imag() * v.real();
  };
  auto point_seg = [](std::complex<double> p, std::complex<double> u,
                      std::complex<double> v) {
    std::complex<double> uv = v - u, up = p - u;
    double len2 = std::norm(uv);
    double t = len2 == 0 ? 0.0
                         : std::clamp((up.real() * uv.real() +
                                       up.imag() * uv.imag()) / len2,
                                      0.0, 1.0);
    return std::abs(p - (u + t * uv));
  };
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;  // crossing
  return std::min(std::min(point_seg(c, a, b), point_seg(d, a, b)),
                  std::min(point_seg(a, c, d), point_seg(b, c, d)));
}

}  // namespace

SqrtPiSum gauss_moment(long p, const BigRat& s) {
  if (p < 0) throw std::domain_error("gauss_moment: negative power");
  if (p % 2 != 0) return {};
  if (!(s > 0)) throw DomainError("gauss_moment: scale must be positive");
  long n = p / 2;
  BigRat c = BigRat(double_factorial_odd(n)) * pow_rat(1 / (2 * s), n);
  return SqrtPiSum::rational_multiple(ExactScalar(c)).times_sqrt(1 / s);
}

std::complex<double> gauss_moment_num(long p, std::complex<double> s) {
  if (p < 0) throw std::domain_error("gauss_moment_num: negative power");
  if (p % 2 != 0) return {};
  if (s.real() <= 0)
    throw DomainError("gauss_moment_num: Re s must be positive");
  long n = p / 2;
  double dd = 1.0;
  for (long j = 1; j <= n; ++j) dd *= static_cast<double>(2 * j - 1);
  return dd * std::pow(2.0 * s, static_cast<double>(-n)) *
         std::sqrt(M_PI / s);
}

FormValue k_matrix_element(long a, long b, const BigRat& alpha,
                           const BigRat& beta, const EpsParam& eps) {
  if (a < 0 || b < 0) throw std::domain_error("k_matrix_element: negative power");
  for (const BigRat* g : {&alpha, &beta})
    if (!(*g > 0) || !(*g < 1))
      throw DomainError("k_matrix_element: band parameter must lie in (0,1)");
  if ((a + b) % 2 != 0) return {LogCombo{}, {}};

  const BigRat& se = eps.sqrt_rational();
  long odd = a % 2;
  long m = (a - odd) / 2, n = (b - odd) / 2;
  BigRat w1 = alpha / se, w2 = beta / se;
  BigRat s = (w1 + w2) / 2;

  XPolyLog tm = s_closed_binomial(m, eps);
  XPolyLog tn = s_closed_binomial(n, eps);

  ExactScalar half{BigRat(1, 2)};
  LogCombo total;
  // (x^a xi_1, S# x^b xi_2): image coefficients at beta
  for (const auto& [p, e] : tn.coefficients()) {
    SplitVal v = eval_split(e, beta);
    SqrtPiSum mom = half * gauss_moment(a + p + odd, s);
    accumulate(total, v, beta, mom);
  }
  // (S# x^a xi_1, x^b xi_2): conjugated image coefficients at alpha
  for (const auto& [p, e] : tm.coefficients()) {
    SplitVal v = eval_split(e, alpha).conj();
    SqrtPiSum mom = half * gauss_moment(p + odd + b, s);
    accumulate(total, v, alpha, mom);
  }
  return {total, total.value()};
}

FormValue t_eps_form(const GaussVector& psi, const GaussVector& phi,
                     const EpsParam& eps) {
  if (!eps.sqrt_is_rational()) {
    return {std::nullopt,
            t_eps_form_numeric(to_float(psi), to_float(phi),
                               to_double(eps.value()))};
  }
  const BigRat& se = eps.sqrt_rational();
  ExactScalar half{BigRat(1, 2)};

  std::map<std::pair<long, long>, XPolyLog> cache;  // (m, odd) -> table
  auto table = [&](long m, long odd) -> const XPolyLog& {
    auto key = std::make_pair(m, odd);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, s_closed(m, odd ? Parity::Odd : Parity::Even,
                                       eps)).first;
    return it->second;
  };

  LogCombo total;
  for (const auto& [k1, c1] : psi.terms()) {
    BigRat w1 = band_width(k1.width);
    BigRat a1 = checked_band(w1, se);
    for (const auto& [k2, c2] : phi.terms()) {
      BigRat w2 = band_width(k2.width);
      BigRat a2 = checked_band(w2, se);
      if ((k1.power + k2.power) % 2 != 0) continue;  // parity: exact zero
      long odd = k1.power % 2;
      long m = (k1.power - odd) / 2, n = (k2.power - odd) / 2;
      BigRat s = (w1 + w2) / 2;

      LogCombo entry;
      for (const auto& [p, e] : table(n, odd).coefficients()) {
        SplitVal v = eval_split(e, a2);
        accumulate(entry, v, a2, gauss_moment(k1.power + p + odd, s));
      }
      for (const auto& [p, e] : table(m, odd).coefficients()) {
        SplitVal v = eval_split(e, a1).conj();
        accumulate(entry, v, a1, gauss_moment(p + odd + k2.power, s));
      }
      total += (half * c1.conj() * c2) * entry;
    }
  }
  return {total, total.value()};
}

std::complex<double> t_eps_form_numeric(const GaussVectorF& psi,
                                        const GaussVectorF& phi, double eps) {
  if (!(eps > 0)) throw std::domain_error("t_eps_form_numeric: eps must be positive");
  double u = std::sqrt(eps);
  auto band = [&](std::complex<double> z) {
    if (z.real() != 0.0)
      throw DomainError("form: width must be purely imaginary i*w");
    double a = z.imag() * u;
    if (!(a > 0) || !(a < 1))
      throw DomainError("form: band parameter w*sqrt(eps) must lie in (0,1)");
    return z.imag();
  };

  std::complex<double> total{};
  for (const auto& [k1, c1] : psi.terms()) {
    double w1 = band(k1.width);
    for (const auto& [k2, c2] : phi.terms()) {
      double w2 = band(k2.width);
      if ((k1.power + k2.power) % 2 != 0) continue;
      long odd = k1.power % 2;
      long m = (k1.power - odd) / 2, n = (k2.power - odd) / 2;
      std::complex<double> s{(w1 + w2) / 2, 0.0};

      std::complex<double> entry{};
      for (const auto& [p, v] : table_num(n, w2 * u, u))
        entry += v * gauss_moment_num(k1.power + p + odd, s);
      for (const auto& [p, v] : table_num(m, w1 * u, u))
        entry += std::conj(v) * gauss_moment_num(p + odd + k2.power, s);
      total += 0.5 * std::conj(c1) * c2 * entry;
    }
  }
  return total;
}

namespace {

template <class Coeff>
std::pair<BasicGaussVector<Coeff>, BasicGaussVector<Coeff>> split_parity(
    const BasicGaussVector<Coeff>& v) {
  BasicGaussVector<Coeff> even, odd;
  for (const auto& [k, c] : v.terms())
    (k.power % 2 == 0 ? even : odd).add_term(c, k.power, k.width);
  return {even, odd};
}

}  // namespace

FormValue t_ab_form(const GaussVector& psi, const GaussVector& phi) {
  auto [pe, po] = split_parity(psi);
  auto [fe, fo] = split_parity(phi);
  SqrtPiSum acc;
  acc += inner_product_exact(pe, apply_t(fe));
  acc += inner_product_exact(apply_t(pe), fe);
  acc += inner_product_exact(po, apply_t_star(fo));
  acc += inner_product_exact(apply_t_star(po), fo);
  LogCombo total(ExactScalar{BigRat(-1, 2)} * acc);
  return {total, total.value()};
}

std::complex<double> t_ab_form_numeric(const GaussVectorF& psi,
                                       const GaussVectorF& phi) {
  auto [pe, po] = split_parity(psi);
  auto [fe, fo] = split_parity(phi);
  std::complex<double> acc{};
  acc += inner_product(pe, apply_t(fe));
  acc += inner_product(apply_t(pe), fe);
  acc += inner_product(po, apply_t_star(fo));
  acc += inner_product(apply_t_star(po), fo);
  return -0.5 * acc;
}

std::complex<double> t_hat_form(long a, long b, std::complex<double> z,
                                double cut_tube) {
  if (a < 0 || b < 0) throw std::domain_error("t_hat_form: negative power");
  if (std::abs(z - kI) <= cut_tube)
    throw SingularPointError("t_hat_form: z = i is the singular point");
  if (z.imag() <= 0)
    throw DomainError("t_hat_form: defined on the upper half plane");
  if ((a + b) % 2 != 0) return {};

  long odd = a % 2;
  long m = (a - odd) / 2, n = (b - odd) / 2;
  XPolyLog seed = log_seed(Engine::Complex);
  XPolyLog tm = apply_t_param(seed, m);
  XPolyLog tn = apply_t_param(seed, n);
  std::complex<double> s = -kI * z;  // Re s > 0 on the upper half plane

  std::complex<double> first{}, second{};
  for (const auto& [p, e] : tm.coefficients())
    first += e.eval_as<std::complex<double>>(z, cut_tube) *
             gauss_moment_num(p + odd + b, s);
  for (const auto& [p, e] : tn.coefficients())
    second += e.eval_as<std::complex<double>>(z, cut_tube) *
              gauss_moment_num(a + p + odd, s);
  return -kI / 4.0 * (first - second);
}

std::complex<double> t_hat_sesquilinear(const GaussVectorF& psi,
                                        const GaussVectorF& phi,
                                        double cut_tube) {
  auto image = [&](const GaussVectorF& v) {
    GaussVectorF out;
    for (const auto& [k, c] : v.terms()) {
      if (std::abs(k.width - kI) <= cut_tube)
        throw SingularPointError("t_hat: width at the singular point z = i");
      long odd = k.power % 2;
      long m = (k.power - odd) / 2;
      XPolyLog tbl = s_hat_closed(m, odd ? Parity::Odd : Parity::Even);
      GaussVectorF img = to_gauss_vector(tbl, k.width, k.width, odd, cut_tube);
      for (const auto& [ik, ic] : img.terms())
        out.add_term(c * ic, ik.power, ik.width);
    }
    return out;
  };
  GaussVectorF s_phi = image(phi), s_psi = image(psi);
  return 0.5 * (inner_product(psi, s_phi) + inner_product(s_psi, phi));
}

std::complex<double> analyticity_check(long a, long b,
                                       const std::vector<std::complex<double>>& polygon,
                                       int points_per_edge, double cut_tube) {
  if (polygon.size() < 3)
    throw std::invalid_argument("analyticity_check: need at least 3 vertices");
  if (points_per_edge < 1)
    throw std::invalid_argument("analyticity_check: need at least 1 panel point");

  // the cut i[1,inf), truncated far beyond any sensible polygon
  const std::complex<double> cut_lo{0.0, 1.0}, cut_hi{0.0, 1e12};
  double winding = 0;
  for (size_t k = 0; k < polygon.size(); ++k) {
    std::complex<double> p = polygon[k];
    std::complex<double> q = polygon[(k + 1) % polygon.size()];
    if (p.imag() <= 0 || q.imag() <= 0)
      throw DomainError("analyticity_check: loop leaves the upper half plane");
    if (seg_seg_distance(p, q, cut_lo, cut_hi) <= cut_tube)
      throw BranchCutError("analyticity_check: edge inside the cut exclusion tube");
    winding += std::arg((q - cut_lo) / (p - cut_lo));
  }
  if (std::abs(winding) > 1.0)  // any nonzero winding is +-2*pi or more
    throw BranchCutError("analyticity_check: loop encloses the cut endpoint");

  using quad = boost::math::quadrature::gauss<double, 15>;
  std::complex<double> total{};
  int panels = (points_per_edge + 14) / 15;
  for (size_t k = 0; k < polygon.size(); ++k) {
    std::complex<double> p = polygon[k];
    std::complex<double> q = polygon[(k + 1) % polygon.size()];
    std::complex<double> dz = q - p;
    auto f = [&](double t) { return t_hat_form(a, b, p + t * dz, cut_tube); };
    for (int j = 0; j < panels; ++j) {
      double t0 = static_cast<double>(j) / panels;
      double t1 = static_cast<double>(j + 1) / panels;
      total += dz * quad::integrate(f, t0, t1);
    }
  }
  return total;
}

FormValue l_matrix_element(long a, long b, const BigRat& alpha,
                           const BigRat& beta, const EpsParam& eps) {
  if (a < 0 || b < 0) throw std::domain_error("l_matrix_element: negative index");
  const BigRat& se = eps.sqrt_rational();
  auto hermite_vec = [&](long n, const BigRat& band) {
    Poly h = hermite_poly(n);
    GaussVector v;
    ExactScalar width(BigRat(0), band / se);
    for (long j = n % 2; j <= h.degree(); j += 2)
      v.add_term(h[static_cast<size_t>(j)], j, width);
    return v;
  };
  return t_eps_form(hermite_vec(a, alpha), hermite_vec(b, beta), eps);
}

double unbounded_witness(long k, const BigRat& alpha) {
  if (k < 0) throw std::domain_error("unbounded_witness: negative index");
  EpsParam one(BigRat(1));
  FormValue v = k_matrix_element(2 * k, 2 * k + 2, alpha, alpha, one);
  // normalization: the squared norms are the plain Gaussian moments
  double n1 = gauss_moment(4 * k, alpha).value().real();
  double n2 = gauss_moment(4 * k + 4, alpha).value().real();
  return std::abs(v.numeric) / std::sqrt(n1 * n2);
}

CcrReport ccr_residual(CcrForm kind, const GaussVector& psi,
                       const GaussVector& phi, const EpsParam& eps, double tol,
                       double s_scale) {
  GaussVector h_psi, h_phi;
  std::complex<double> t1, t2;
  switch (kind) {
    case CcrForm::TEps:
      h_psi = apply_h(psi, eps);
      h_phi = apply_h(phi, eps);
      t1 = t_eps_form(h_phi, psi, eps).numeric;
      t2 = t_eps_form(h_psi, phi, eps).numeric;
      break;
    case CcrForm::TAb:
      h_psi = ExactScalar{BigRat(1, 2)} * psi.times_x_power(2);
      h_phi = ExactScalar{BigRat(1, 2)} * phi.times_x_power(2);
      t1 = t_ab_form(h_phi, psi).numeric;
      t2 = t_ab_form(h_psi, phi).numeric;
      break;
    case CcrForm::THat:
      throw std::invalid_argument("ccr_residual: use ccr_residual_continued");
  }
  std::complex<double> ip = inner_product_exact(phi, psi).value();
  CcrReport rep;
  rep.residual = s_scale * (t1 - std::conj(t2)) + kI * ip;
  rep.scale = 1.0 + std::abs(ip);
  rep.pass = std::abs(rep.residual) <= tol * rep.scale;
  return rep;
}

CcrReport ccr_residual_continued(const GaussVectorF& psi,
                                 const GaussVectorF& phi, double tol,
                                 double s_scale) {
  std::complex<double> one{1.0, 0.0};
  GaussVectorF h_psi = apply_h(psi, one), h_phi = apply_h(phi, one);
  std::complex<double> t1 = t_hat_sesquilinear(h_phi, psi);
  std::complex<double> t2 = t_hat_sesquilinear(h_psi, phi);
  std::complex<double> ip = inner_product(phi, psi);
  CcrReport rep;
  rep.residual = s_scale * (t1 - std::conj(t2)) + kI * ip;
  rep.scale = 1.0 + std::abs(ip);
  rep.pass = std::abs(rep.residual) <= tol * rep.scale;
  return rep;
}

SweepResult continuum_sweep(const GaussVector& psi, const GaussVector& phi,
                            const std::vector<BigRat>& eps_list) {
  GaussVectorF pf = to_float(psi), ff = to_float(phi);
  std::complex<double> tab = t_ab_form_numeric(pf, ff);

  SweepResult out;
  out.t_ab = tab;
  for (const BigRat& e : eps_list) {
    double ed = to_double(e);
    double diff = std::abs(t_eps_form_numeric(pf, ff, ed) - tab);
    out.rows.push_back({ed, diff});
    if (e == 1) {
      FormValue exact = t_eps_form(psi, phi, EpsParam(BigRat(1)));
      out.endpoint_gap =
          std::abs(exact.exact->value() - t_eps_form_numeric(pf, ff, 1.0));
    }
  }

  // least-squares slope of log(diff) against log(eps).  The two largest eps
  // are dropped as pre-asymptotic: the quadratic term of the eps-expansion
  // still distorts them, while the small-eps rows carry the limiting rate.
  std::vector<SweepRow> fit = out.rows;
  std::sort(fit.begin(), fit.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.eps < b.eps; });
  if (fit.size() > 2) fit.erase(fit.end() - 2, fit.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (const auto& r : fit) {
    if (!(r.diff > 0)) continue;
    double x = std::log(r.eps), y = std::log(r.diff);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  out.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return out;
}

std::vector<DivergenceRow> divergence_probe(long p, const EpsParam& eps,
                                            const std::vector<long>& M_list) {
  std::vector<DivergenceRow> rows;
  rows.reserve(M_list.size());
  for (long M : M_list) rows.push_back({M, divergence_closed_form(p, eps, M)});
  return rows;
}

double divergence_closed_form(long p, const EpsParam& eps, long M) {
  if (p % 2 != 0)
    throw DomainError(
        "divergence probe: the odd chain hits x^1 -> x^{-1} and leaves the family");
  if (M < 0) throw std::domain_error("divergence probe: negative cutoff");
  GaussVector target =
      GaussVector::monomial(ExactScalar{1}, p, imaginary_width(BigRat(1), eps));
  std::complex<double> pair =
      inner_product_exact(hermite_frame(p, eps), target).value();
  double norm = std::sqrt(frame_norm2(p, eps).value().real());
  // sum_{n<=M} 1/(2n+1) = digamma(M + 3/2)/2 + gamma/2 + log 2
  double partial = 0.5 * boost::math::digamma(M + 1.5) +
                   0.5 * boost::math::constants::euler<double>() +
                   std::log(2.0);
  return std::abs(pair) * partial / norm;
}

SqrtPiSum divergence_exact_partial(long p, const EpsParam& eps, long M) {
  if (p % 2 != 0)
    throw DomainError(
        "divergence probe: the odd chain hits x^1 -> x^{-1} and leaves the family");
  GaussVector f =
      GaussVector::monomial(ExactScalar{1}, p, imaginary_width(BigRat(1), eps));
  auto series = arctan_partial_sum(f, eps.sqrt_rational(), M, false);
  // the probe studies the bare series; undo the -1/sqrt(eps) prefactor
  GaussVector bare = ExactScalar(-eps.sqrt_rational()) * series.sum;
  return inner_product_exact(hermite_frame(p, eps), bare);
}

DivergenceFit divergence_fit(const std::vector<DivergenceRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (const auto& r : rows) {
    double x = 0.5 * std::log(static_cast<double>(r.M));
    sx += x;
    sy += r.value;
    sxx += x * x;
    sxy += x * r.value;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("divergence_fit: need at least 2 rows");
  DivergenceFit fit;
  fit.c = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double e = (sy - fit.c * sx) / n;
  fit.d = e / fit.c;
  for (const auto& r : rows) {
    double x = 0.5 * std::log(static_cast<double>(r.M));
    double rel = std::abs(fit.c * (x + fit.d) - r.value) / std::abs(r.value);
    fit.max_rel_err = std::max(fit.max_rel_err, rel);
  }
  return fit;
}

}  // namespace timeop
