#include "timeop/acceptance.hpp"

#include "timeop/errors.hpp"
#include "timeop/forms.hpp"
#include "timeop/gauss.hpp"
#include "timeop/hermite.hpp"
#include "timeop/povm.hpp"
#include "timeop/table.hpp"
#include "timeop/xpolylog.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

namespace timeop {
namespace {

const double kTwoPi = 2 * M_PI;

RatFunc rf(std::vector<ExactScalar> num,
           std::vector<ExactScalar> den = {ExactScalar(1)}) {
  return RatFunc(Poly(std::move(num)), Poly(std::move(den)));
}

LogExt logfree(Engine eng, RatFunc r) {
  return LogExt::constant(eng, std::move(r));
}

LogExt logterm(Engine eng, RatFunc r1) {
  return LogExt(eng, RatFunc(), std::move(r1));
}

template <class Fn>
CriterionResult guarded(int index, std::string name, Fn&& fn) {
  CriterionResult r;
  r.index = index;
  r.name = std::move(name);
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

// ---- 1: eigen-relations, exact coefficients ---------------------------------

CriterionResult c1_eigenrelations() {
  return guarded(1, "eigen-relations of the band generator and its angle function", [](CriterionResult& r) {
    bool ok = true;
    int points = 0;
    double worst = 0;
    for (BigRat e : {BigRat(1), BigRat(1, 4)}) {
      const EpsParam eps(e);
      const BigRat se = eps.sqrt_rational();
      const ExactScalar se_s{se};

      // the closed-form angle image at m = 0 is the pure logarithm symbol
      XPolyLog want(Engine::Real, eps);
      const ExactScalar pref = ExactScalar(BigRat(0), BigRat(-1, 2) / se);
      want.add_to_coefficient(0, logterm(Engine::Real, rf({pref})));
      ok = ok && s_closed(0, Parity::Even, eps) == want;

      for (int k = 1; k <= 9; ++k) {
        const BigRat alpha(k, 10);
        const GaussVector xi = monomial_gaussian(alpha, 0, eps);

        // generator eigen-relation, exact vector equality
        const GaussVector lhs = se_s * apply_t(xi);
        const GaussVector rhs = ExactScalar(BigRat(0), alpha) * xi;
        ok = ok && lhs == rhs;

        // every truncation of the angle series acts by the matching exact
        // scalar partial sum
        const long M = 40;
        const auto series = arctan_partial_sum(xi, se, M, false);
        ExactScalar sum;
        ExactScalar ia_pow = ExactScalar(BigRat(0), alpha);  // (i alpha)^(2n+1)
        const ExactScalar ia2 = ia_pow * ia_pow;
        for (long n = 0; n <= M; ++n) {
          const ExactScalar w =
              ExactScalar(BigRat(n % 2 == 0 ? 1 : -1, 2 * n + 1));
          sum = sum + w * ia_pow;
          ia_pow = ia_pow * ia2;
        }
        const ExactScalar coeff = ExactScalar(-1) / se_s * sum;
        ok = ok && series.sum == coeff * xi;

        // and the numeric eigenvalue of the closed form is the logarithm
        const double a = rat_as<double>(alpha);
        const double sd = eps.sqrt_double();
        const std::complex<double> got =
            s_closed(0, Parity::Even, eps).evaluate({a, 0.0}).at(0);
        const std::complex<double> expect(
            0.0, -std::log((1 + a) / (1 - a)) / (2 * sd));
        worst = std::max(worst, std::abs(got - expect));
        ok = ok && std::abs(got - expect) <= 1e-12 * (1 + std::abs(expect));
        ++points;
      }
    }
    r.pass = ok;
    std::ostringstream d;
    d << points << " (alpha, eps) points exact; closed-form eigenvalue gap "
      << fmt_double(worst, 3);
    r.detail = d.str();
  });
}

// ---- 2: truncated series against the closed forms ----------------------------

CriterionResult c2_series_vs_closed() {
  return guarded(2, "angle series matches the closed forms at depth 400", [](CriterionResult& r) {
    bool ok = true;
    double worst = 0, worst_ratio = 0;
    for (BigRat e : {BigRat(1), BigRat(1, 4)}) {
      const EpsParam eps(e);
      const double se = eps.sqrt_double();
      for (long m = 0; m <= 4; ++m) {
        for (double alpha : {0.25, 0.5, 0.75}) {
          const std::complex<double> width(0.0, alpha / se);
          for (int parity = 0; parity < 2; ++parity) {
            const long p = 2 * m + parity;
            const auto f = GaussVectorF::monomial({1.0, 0.0}, p, width);
            const auto series = arctan_partial_sum(f, se, 400, parity == 1);
            ok = ok && !series.divergent;
            const GaussVectorF closed = to_gauss_vector(
                s_closed(m, parity == 0 ? Parity::Even : Parity::Odd, eps),
                {alpha, 0.0}, width, parity);
            ok = ok && closed.size() == series.sum.size();
            for (const auto& [key, c] : closed.terms()) {
              const auto it = series.sum.terms().find(key);
              if (it == series.sum.terms().end()) {
                ok = false;
                continue;
              }
              const double rel =
                  std::abs(c - it->second) / (1.0 + std::abs(c));
              worst = std::max(worst, rel);
              ok = ok && rel <= 1e-8;
            }
            // geometric decay of the weighted increments, ratio -> alpha^2.
            // the window sits late enough that the polynomial transient
            // (order m/n) has died down; the pure-Gaussian chains are exact
            for (size_t n = 100; n < 103; ++n) {
              const double ratio =
                  series.increment_norms[n + 1] / series.increment_norms[n];
              const double expect =
                  alpha * alpha * (2.0 * n + 1.0) / (2.0 * n + 3.0);
              const double rel = std::abs(ratio - expect) / expect;
              worst_ratio = std::max(worst_ratio, rel);
              ok = ok && rel <= (p <= 1 ? 1e-12 : 0.1);
            }
          }
        }
      }
    }
    r.pass = ok;
    std::ostringstream d;
    d << "worst closed/series gap " << fmt_double(worst, 3)
      << ", worst increment-ratio error " << fmt_double(worst_ratio, 3);
    r.detail = d.str();
  });
}

// ---- 3: commutation residuals across the form family -------------------------

CriterionResult c3_ccr(std::uint64_t seed) {
  return guarded(3, "commutation residual vanishes for all three forms", [seed](CriterionResult& r) {
    std::mt19937_64 rng(seed * 2654435761u + 101);
    bool ok = true;
    double worst = 0;
    auto absorb = [&](const CcrReport& rep) {
      ok = ok && rep.pass;
      worst = std::max(worst, std::abs(rep.residual) / rep.scale);
    };
    for (BigRat e : {BigRat(1), BigRat(1, 4), BigRat(1, 100)}) {
      const EpsParam eps(e);
      for (int i = 0; i < 4; ++i) {
        auto [a, b] = random_overlapping_pair(rng);
        absorb(ccr_residual(CcrForm::TEps, a, b, eps));
      }
    }
    for (int i = 0; i < 4; ++i) {
      auto [a, b] = random_overlapping_pair(rng);
      absorb(ccr_residual(CcrForm::TAb, a, b, EpsParam(BigRat(1))));
    }
    const std::complex<double> zs[] = {{0.4, 0.3}, {-0.2, 0.5}, {0.1, 0.8}};
    for (const auto& z : zs) {
      const auto psi = GaussVectorF::monomial({1.0, 0.0}, 2, z);
      const auto phi = GaussVectorF::monomial({1.0, 0.0}, 0, z);
      absorb(ccr_residual_continued(psi, phi));
    }
    // one mixed-parameter pair off the diagonal
    absorb(ccr_residual_continued(GaussVectorF::monomial({1.0, 0.0}, 2, zs[0]),
                                  GaussVectorF::monomial({1.0, 0.0}, 0, zs[2])));
    r.pass = ok;
    r.detail = "worst |residual|/scale " + fmt_double(worst, 3);
  });
}

// ---- 4: symbolic identities ---------------------------------------------------

CriterionResult c4_symbolic() {
  return guarded(4, "symbolic commutator and parameter-operator identities", [](CriterionResult& r) {
    const ExactScalar I = ExactScalar::i();
    bool ok = true;
    for (long n = 0; n <= 4; ++n) {
      XPolyLog want_even(Engine::Complex);
      want_even.add_to_coefficient(2 * n, logfree(Engine::Complex, rf({ExactScalar(0) - I})));
      ok = ok && commutator_symbolic(n, Parity::Even) == want_even;
      XPolyLog want_odd(Engine::Complex);
      want_odd.add_to_coefficient(2 * n + 1, logfree(Engine::Complex, rf({ExactScalar(0) - I})));
      ok = ok && commutator_symbolic(n, Parity::Odd) == want_odd;
    }
    // the parameter operator against its n-fold composition, log-free and
    // log-bearing arguments
    const RatFunc w2 = rf({1, 0, 1});  // 1 + z^2
    const LogExt args[] = {
        logfree(Engine::Complex, rf({1})),
        logterm(Engine::Complex, rf({1})),
        LogExt(Engine::Complex, rf({1, 2}, {1, 0, 1}), rf({0, 1}, {1, 0, 1}))};
    for (const LogExt& e : args) {
      XPolyLog seeded(Engine::Complex);
      seeded.add_to_coefficient(0, logfree(Engine::Complex, w2) * e);
      for (long n = 0; n <= 6; ++n)
        ok = ok && qn_apply(n, e) == apply_t_param(seeded, n);
    }
    r.pass = ok;
    r.detail = "commutator n <= 4 both parities, composition n <= 6, exact";
  });
}

// ---- 5: divergence growth on the frame ---------------------------------------

CriterionResult c5_divergence() {
  return guarded(5, "frame pairing grows like the half-log of the depth", [](CriterionResult& r) {
    const std::vector<long> M_list = {1000, 10000, 100000, 1000000};
    bool ok = true;
    double worst = 0;
    for (long p : {0L, 2L}) {
      const auto rows = divergence_probe(p, EpsParam(BigRat(1)), M_list);
      const DivergenceFit fit = divergence_fit(rows);
      worst = std::max(worst, fit.max_rel_err);
      ok = ok && fit.max_rel_err <= 0.05;
    }
    r.pass = ok;
    r.detail = "worst fit error " + fmt_double(worst, 3) + " over M up to 1e6";
  });
}

// ---- 6: the small-parameter limit ---------------------------------------------

CriterionResult c6_continuum(std::uint64_t seed) {
  return guarded(6, "regularized forms approach the scale-free one at unit rate", [seed](CriterionResult& r) {
    std::vector<BigRat> eps_list;
    for (int j = 2; j <= 10; ++j) eps_list.emplace_back(1, 1 << j);
    std::mt19937_64 rng(seed * 2654435761u + 606);
    bool ok = true;
    double lo = 10, hi = 0, worst_endpoint = 0;
    for (int i = 0; i < 10; ++i) {
      auto [a, b] = random_sweep_pair(rng);
      const SweepResult sw = continuum_sweep(a, b, eps_list);
      lo = std::min(lo, sw.slope);
      hi = std::max(hi, sw.slope);
      ok = ok && sw.slope >= 0.9 && sw.slope <= 1.1;
      const SweepResult ep = continuum_sweep(a, b, {BigRat(1)});
      worst_endpoint = std::max(worst_endpoint, ep.endpoint_gap);
      ok = ok && ep.endpoint_gap >= 0 &&
           ep.endpoint_gap <= 1e-10 * (1 + std::abs(ep.t_ab));
    }
    r.pass = ok;
    std::ostringstream d;
    d << "10 pairs, slopes in [" << fmt_double(lo, 4) << ", "
      << fmt_double(hi, 4) << "], endpoint gap "
      << fmt_double(worst_endpoint, 3);
    r.detail = d.str();
  });
}

// ---- 7: analytic continuation --------------------------------------------------

CriterionResult c7_continuation() {
  return guarded(7, "continuation restricts, integrates to zero on loops, and flags the pole", [](CriterionResult& r) {
    bool ok = true;
    double worst_restrict = 0, worst_loop = 0;
    const std::pair<long, long> slots[] = {{0, 0}, {2, 0}, {2, 2}, {4, 2}};
    for (const auto& [a, b] : slots) {
      for (BigRat alpha : {BigRat(1, 4), BigRat(1, 2), BigRat(3, 4)}) {
        const double ad = rat_as<double>(alpha);
        const std::complex<double> via_complex =
            t_hat_form(a, b, {0.0, ad});
        const std::complex<double> via_real =
            k_matrix_element(a, b, alpha, alpha, EpsParam(BigRat(1))).numeric;
        const double rel =
            std::abs(via_complex - via_real) / (1 + std::abs(via_real));
        worst_restrict = std::max(worst_restrict, rel);
        ok = ok && rel <= 1e-10;
      }
    }
    const std::vector<std::vector<std::complex<double>>> loops = {
        {{0.2, 0.2}, {0.8, 0.4}, {0.1, 0.7}},
        {{-0.5, 0.1}, {0.5, 0.1}, {0.5, 0.6}, {-0.5, 0.6}},
        {{-0.3, 0.3}, {-0.1, 0.9}, {-0.7, 0.5}}};
    for (const auto& loop : loops) {
      const double mag = std::abs(analyticity_check(2, 0, loop, 64));
      worst_loop = std::max(worst_loop, mag);
      ok = ok && mag <= 1e-8;
    }
    bool flagged = false;
    try {
      (void)t_hat_form(2, 0, {0.0, 1.0});
    } catch (const SingularPointError&) {
      flagged = true;
    }
    ok = ok && flagged;
    r.pass = ok;
    std::ostringstream d;
    d << "restriction gap " << fmt_double(worst_restrict, 3) << ", loop max "
      << fmt_double(worst_loop, 3) << ", pole flagged";
    r.detail = d.str();
  });
}

// ---- 8: the bounded operator ----------------------------------------------------

CriterionResult c8_povm(std::uint64_t seed) {
  return guarded(8, "bounded-operator identities: commutator, norm, pairing, weights", [seed](CriterionResult& r) {
    bool ok = true;
    for (long order : {1L, 50L, 200L}) {
      const CommutatorReport rep = commutator_check(order);
      ok = ok && rep.entries_match && rep.difference_action_matches;
    }
    const double est = norm_bound_check(150);
    ok = ok && est <= kTwoPi;

    std::mt19937_64 rng(seed * 2654435761u + 808);
    const HermiteFrame frame(12, EpsParam{BigRat(1)});
    double worst_ratio = 0;
    for (int i = 0; i < 200; ++i) {
      const GaussVector f = random_frame_vector(frame, 12, rng);
      const GaussVector g = random_frame_vector(frame, 12, rng);
      const TgFormValue v = tg_form(f, g, 400);
      const double bound =
          kTwoPi * std::sqrt(inner_product_exact(f, f).value().real()) *
          std::sqrt(inner_product_exact(g, g).value().real());
      worst_ratio = std::max(worst_ratio, std::abs(v.value) / bound);
      ok = ok && std::abs(v.value) <= bound * (1 + 1e-9);
    }

    const GaussVector h = random_frame_vector(frame, 8, rng);
    const PovmWeight total =
        povm_weight(AngleInterval{BigRat(0), BigRat(2)}, h, 12);
    ok = ok && total.exact_one && total.value == 1.0;

    r.pass = ok;
    std::ostringstream d;
    d << "norm estimate " << fmt_double(est, 6) << " < " << fmt_double(kTwoPi, 6)
      << ", pairing/bound max " << fmt_double(worst_ratio, 4)
      << ", full-period weight exact";
    r.detail = d.str();
  });
}

// ---- 9: the contrast -------------------------------------------------------------

CriterionResult c9_contrast() {
  return guarded(9, "band form escapes the circumference bound, matrix form never does", [](CriterionResult& r) {
    std::vector<BigRat> alphas;
    for (int j = 1; j <= 10; ++j)
      alphas.emplace_back(BigRat((1 << j) - 1, 1 << j));
    bool ok = true;
    double bounded_max = 0;
    for (long k : {0L, 1L}) {
      const auto rows = contrast_sweep(k, alphas, 64);
      for (const auto& row : rows) {
        bounded_max = std::max(bounded_max, row.bounded_value);
        ok = ok && row.bounded_value <= kTwoPi * (1 + 1e-9);
      }
      ok = ok && rows.back().unbounded_value > kTwoPi;
    }
    r.pass = ok;
    std::ostringstream d;
    d << "matrix pairing max " << fmt_double(bounded_max, 6) << " vs "
      << fmt_double(kTwoPi, 6) << "; band value at the edge "
      << "exceeds it";
    r.detail = d.str();
  });
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(c1_eigenrelations());
  out.push_back(c2_series_vs_closed());
  out.push_back(c3_ccr(seed));
  out.push_back(c4_symbolic());
  out.push_back(c5_divergence());
  out.push_back(c6_continuum(seed));
  out.push_back(c7_continuation());
  out.push_back(c8_povm(seed));
  out.push_back(c9_contrast());
  return out;
}

std::string acceptance_report(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.index << "  " << r.name
        << " -- " << r.detail << "\n";
  }
  return out.str();
}

}  // namespace timeop
