#include <doctest.h>

#include <timeop/errors.hpp>
#include <timeop/forms.hpp>
#include <timeop/gauss.hpp>
#include <timeop/hermite.hpp>
#include <timeop/povm.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace timeop;

namespace {

const double kTwoPi = 2 * M_PI;

GaussVector frame_combo(const HermiteFrame& frame,
                        const std::vector<std::pair<long, ExactScalar>>& parts) {
  GaussVector v;
  for (const auto& [n, c] : parts) v += c * frame.vec(n);
  return v;
}

// random vector supported on the frame, coefficients small Gaussian rationals
GaussVector random_frame_vec(const HermiteFrame& frame, long max_index,
                             std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(2, 4);
  std::uniform_int_distribution<long> idx(0, max_index);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  GaussVector v;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    BigRat re(num(rng), den(rng));
    BigRat im(num(rng), den(rng));
    if (re == 0 && im == 0) re = 1;
    v += ExactScalar(re, im) * frame.vec(idx(rng));
  }
  return v;
}

GaussVector random_gauss_vec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(2, 3);
  std::uniform_int_distribution<int> pow_d(0, 6);
  std::uniform_int_distribution<int> wnum(1, 9);
  std::uniform_int_distribution<int> cnum(-2, 2);
  GaussVector v;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    BigRat w(wnum(rng), 5);
    if (w >= 2) w = BigRat(wnum(rng), 10);
    BigRat cr(cnum(rng), 2);
    BigRat ci(cnum(rng), 3);
    if (cr == 0 && ci == 0) cr = 1;
    v.add_term(ExactScalar(cr, ci), pow_d(rng), ExactScalar(0, w));
  }
  return v;
}

double exact_norm(const GaussVector& f) {
  return std::sqrt(inner_product_exact(f, f).value().real());
}

// measure density oracle: (f, P_t f) = |sum_n c_n e^{i t n}|^2 / (2 pi)
double weight_by_quadrature(const std::vector<std::complex<double>>& c,
                            double t0, double t1) {
  auto density = [&](double t) {
    std::complex<double> g{};
    for (size_t n = 0; n < c.size(); ++n)
      g += c[n] * std::exp(std::complex<double>(0, t * static_cast<double>(n)));
    return std::norm(g) / kTwoPi;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      density, t0, t1, 12, 1e-13);
}

}  // namespace

TEST_CASE("frame vectors match the explicit polynomial construction") {
  const EpsParam one{BigRat(1)};
  const EpsParam quarter{BigRat(1, 4)};
  for (const EpsParam& eps : {one, quarter}) {
    const HermiteFrame frame(12, eps);
    for (long n = 0; n <= 12; ++n) {
      CHECK(frame.vec(n) == hermite_frame(n, eps));
      CHECK(frame.norm2(n) == frame_norm2(n, eps));
    }
  }
  // explicit low-order polynomials: 1, 2x, 4x^2 - 2 at unit scale
  const HermiteFrame frame(5, one);
  const ExactScalar w = imaginary_width(BigRat(1), one);
  GaussVector h0 = GaussVector::monomial(ExactScalar{1}, 0, w);
  CHECK(frame.vec(0) == h0);
  GaussVector h1 = GaussVector::monomial(ExactScalar{2}, 1, w);
  CHECK(frame.vec(1) == h1);
  GaussVector h2 = GaussVector::monomial(ExactScalar{4}, 2, w);
  h2.add_term(ExactScalar{-2}, 0, w);
  CHECK(frame.vec(2) == h2);
  // the ground normalization: squared norm sqrt(pi), so c_0^2 = 1/sqrt(pi)
  CHECK(frame.norm2(0) == SqrtPiSum::rational_multiple(ExactScalar{1}));
  // energy eigenrelation at index 5: eigenvalue 11/2
  GaussVector lhs = apply_h(frame.vec(5), one);
  GaussVector rhs = ExactScalar(BigRat(11, 2)) * frame.vec(5);
  CHECK(lhs == rhs);
}

TEST_CASE("frame coordinates peel exactly and reject foreign vectors") {
  const HermiteFrame frame(10, EpsParam{BigRat(1)});
  std::vector<std::pair<long, ExactScalar>> parts = {
      {0, ExactScalar(BigRat(1, 3))},
      {3, ExactScalar(BigRat(-2), BigRat(1, 2))},
      {7, ExactScalar(BigRat(0), BigRat(5, 4))}};
  const GaussVector f = frame_combo(frame, parts);
  const auto coords = frame.coordinates(f);
  REQUIRE(coords.has_value());
  for (long n = 0; n <= 10; ++n) {
    ExactScalar want;
    for (const auto& [idx, c] : parts)
      if (idx == n) want = c;
    CHECK((*coords)[static_cast<size_t>(n)] == want);
  }
  // a width outside the frame family is not in the span
  GaussVector foreign = f;
  foreign.add_term(ExactScalar{1}, 2, ExactScalar(0, BigRat(1, 2)));
  CHECK_FALSE(frame.coordinates(foreign).has_value());
  // support beyond the truncation is not in the span either
  const HermiteFrame small(4, EpsParam{BigRat(1)});
  CHECK_FALSE(small.coordinates(f).has_value());
}

TEST_CASE("frame coefficients agree with direct exact inner products") {
  const HermiteFrame frame(8, EpsParam{BigRat(1)});
  GaussVector f;
  f.add_term(ExactScalar(BigRat(1), BigRat(1, 2)), 3, ExactScalar(0, BigRat(2, 5)));
  f.add_term(ExactScalar(BigRat(-1, 3)), 0, ExactScalar(0, BigRat(3, 2)));
  f.add_term(ExactScalar(BigRat(2, 7)), 4, ExactScalar(0, BigRat(2, 5)));
  const auto c = frame.coefficients(f);
  REQUIRE(c.size() == 9);
  for (long n = 0; n <= 8; ++n) {
    const std::complex<double> want =
        inner_product_exact(frame.vec(n), f).value() / frame.norm(n);
    CHECK(std::abs(c[static_cast<size_t>(n)] - want) <=
          1e-12 * (1 + std::abs(want)));
  }
  // frame vectors themselves: a single entry carrying the norm
  const auto ce = frame.coefficients(frame.vec(5));
  for (long n = 0; n <= 8; ++n) {
    const double want = n == 5 ? frame.norm(5) : 0.0;
    CHECK(std::abs(ce[static_cast<size_t>(n)] - want) <= 1e-12 * frame.norm(5));
  }
  // non-imaginary widths have no moment table
  GaussVector bad;
  bad.add_term(ExactScalar{1}, 0, ExactScalar(BigRat(1, 4), BigRat(1)));
  CHECK_THROWS_AS((void)frame.coefficients(bad), DomainError);
}

TEST_CASE("matrix entries, symmetry, and the text export") {
  const TgMatrix tg = tg_matrix(6);
  CHECK(tg.at(0, 1) == PiValue{-ExactScalar::i(), ExactScalar{}});
  CHECK(tg.at(1, 0) == PiValue{ExactScalar::i(), ExactScalar{}});
  CHECK(tg.at(2, 4) == PiValue{ExactScalar::i() / ExactScalar{-2}, ExactScalar{}});
  for (long n = 0; n <= 6; ++n)
    CHECK(tg.at(n, n) == PiValue{ExactScalar{}, ExactScalar{1}});
  CHECK(tg.hermitian());
  CHECK_THROWS_AS((void)tg.at(0, 7), std::out_of_range);

  const std::string text = tg_matrix(1).export_text();
  CHECK(text == "order 1\n0 0 1 0  0 -1 0 0\n0 1 0 0  0 0 1 0\n");
  // export is deterministic
  CHECK(tg_matrix(3).export_text() == tg_matrix(3).export_text());

  const auto dense = tg.dense();
  CHECK(dense[0] == std::complex<double>(M_PI, 0));
  CHECK(dense[1] == std::complex<double>(0, -1));
}

TEST_CASE("pairing through the matrix: exact values on the frame span") {
  const HermiteFrame frame(8, EpsParam{BigRat(1)});
  // single ground vector: only the diagonal pi survives
  const GaussVector e0 = frame.vec(0);
  const TgFormValue v0 = tg_form(e0, e0, 4);
  REQUIRE(v0.exact.has_value());
  CHECK(v0.exact->plain.is_zero());
  CHECK(v0.exact->pi == frame.norm2(0));
  const double n0 = exact_norm(e0);
  CHECK(std::abs(v0.value / (n0 * n0) - M_PI) <= 1e-12);
  CHECK(v0.increment == 0.0);

  // e_0 - e_1: the two off-diagonal contributions cancel, value again pi
  const GaussVector d = frame.vec(0) - frame.vec(1);
  const TgFormValue vd = tg_form(d, d, 4);
  REQUIRE(vd.exact.has_value());
  CHECK(vd.exact->plain.is_zero());
  CHECK(vd.exact->pi == frame.norm2(0) + frame.norm2(1));
  const double nd = exact_norm(d);
  CHECK(std::abs(vd.value / (nd * nd) - M_PI) <= 1e-12);

  // a pair with a genuine off-diagonal part, checked against the dense matrix
  std::mt19937_64 rng(911u);
  for (int trial = 0; trial < 6; ++trial) {
    const GaussVector f = random_frame_vec(frame, 6, rng);
    const GaussVector g = random_frame_vec(frame, 6, rng);
    if (f.is_zero() || g.is_zero()) continue;
    const long order = 8;
    const TgFormValue v = tg_form(f, g, order);
    REQUIRE(v.exact.has_value());
    const HermiteFrame big(order, EpsParam{BigRat(1)});
    const auto cf = big.coefficients(f);
    const auto cg = big.coefficients(g);
    std::complex<double> oracle{};
    for (long n = 0; n <= order; ++n)
      for (long m = 0; m <= order; ++m) {
        const std::complex<double> t =
            n == m ? std::complex<double>(M_PI, 0)
                   : std::complex<double>(0, 1.0 / static_cast<double>(n - m));
        oracle += std::conj(cf[static_cast<size_t>(n)]) * t *
                  cg[static_cast<size_t>(m)];
      }
    CHECK(std::abs(v.value - oracle) <= 1e-10 * (1 + std::abs(oracle)));
    // support fits inside the truncation, so the tail indicator vanishes
    CHECK(v.increment <= 1e-12 * (1 + std::abs(v.value)));
  }
}

TEST_CASE("pairing through the matrix agrees with the time-integral oracle") {
  // t-weighted measure integral: (1/2pi) integral_0^{2pi} t conj(F(t)) G(t) dt
  const HermiteFrame frame(7, EpsParam{BigRat(1)});
  std::mt19937_64 rng(313u);
  for (int trial = 0; trial < 4; ++trial) {
    const GaussVector f = random_frame_vec(frame, 7, rng);
    const GaussVector g = random_frame_vec(frame, 7, rng);
    const long order = 7;
    const auto cf = frame.coefficients(f);
    const auto cg = frame.coefficients(g);
    auto integrand_re = [&](double t) {
      std::complex<double> fa{}, ga{};
      for (size_t n = 0; n < cf.size(); ++n) {
        const std::complex<double> ph =
            std::exp(std::complex<double>(0, t * static_cast<double>(n)));
        fa += cf[n] * ph;
        ga += cg[n] * ph;
      }
      return t * (std::conj(fa) * ga);
    };
    auto re_part = [&](double t) { return integrand_re(t).real(); };
    auto im_part = [&](double t) { return integrand_re(t).imag(); };
    using quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const std::complex<double> oracle(
        quad::integrate(re_part, 0.0, kTwoPi, 12, 1e-13) / kTwoPi,
        quad::integrate(im_part, 0.0, kTwoPi, 12, 1e-13) / kTwoPi);
    const TgFormValue v = tg_form(f, g, order);
    CHECK(std::abs(v.value - oracle) <= 1e-8 * (1 + std::abs(oracle)));
  }
}

TEST_CASE("the pairing never exceeds the circumference bound") {
  std::mt19937_64 rng(20260813u);
  // vectors supported on the frame: the exact path
  const HermiteFrame frame(12, EpsParam{BigRat(1)});
  for (int trial = 0; trial < 50; ++trial) {
    const GaussVector f = random_frame_vec(frame, 12, rng);
    const GaussVector g = random_frame_vec(frame, 12, rng);
    const TgFormValue v = tg_form(f, g, 80);
    const double bound = kTwoPi * exact_norm(f) * exact_norm(g);
    CHECK(std::abs(v.value) <= bound * (1 + 1e-9));
  }
  // general Gaussian vectors: the moment-recurrence path
  for (int trial = 0; trial < 8; ++trial) {
    const GaussVector f = random_gauss_vec(rng);
    const GaussVector g = random_gauss_vec(rng);
    const TgFormValue v = tg_form(f, g, 40);
    const double bound = kTwoPi * exact_norm(f) * exact_norm(g);
    CHECK(std::abs(v.value) <= bound * (1 + 1e-9));
  }
}

TEST_CASE("measure weights: endpoints, additivity, monotonicity") {
  const HermiteFrame frame(6, EpsParam{BigRat(1)});
  const GaussVector f = frame_combo(
      frame, {{0, ExactScalar{1}},
              {1, ExactScalar(BigRat(-1), BigRat(1, 2))},
              {4, ExactScalar(BigRat(1, 3))}});

  // the full period certifies total weight one at the exact level
  const PovmWeight full = povm_weight(AngleInterval{BigRat(0), BigRat(2)}, f, 6);
  CHECK(full.exact_one);
  CHECK(full.value == 1.0);
  CHECK(full.ledger.endpoints.empty());

  // the empty set carries no weight
  const PovmWeight none = povm_weight(std::vector<AngleInterval>{}, f, 6);
  CHECK(none.value == 0.0);
  CHECK(none.ledger.length == 0);

  // a union passed in pieces collapses to the merged ledger exactly
  const AngleInterval left{BigRat(1, 3), BigRat(3, 4)};
  const AngleInterval right{BigRat(3, 4), BigRat(5, 4)};
  const AngleInterval merged{BigRat(1, 3), BigRat(5, 4)};
  const PovmWeight w_pieces =
      povm_weight(std::vector<AngleInterval>{left, right}, f, 6);
  const PovmWeight w_merged = povm_weight(merged, f, 6);
  CHECK(w_pieces.ledger == w_merged.ledger);
  CHECK(w_pieces.value == w_merged.value);
  // and the two separate weights add to the union numerically
  const PovmWeight w_left = povm_weight(left, f, 6);
  const PovmWeight w_right = povm_weight(right, f, 6);
  CHECK(w_left.ledger + w_right.ledger == w_merged.ledger);
  CHECK(std::abs(w_left.value + w_right.value - w_merged.value) <= 1e-12);

  // complementary halves fill the period
  const PovmWeight lo_half = povm_weight(AngleInterval{BigRat(0), BigRat(1)}, f, 6);
  const PovmWeight hi_half = povm_weight(AngleInterval{BigRat(1), BigRat(2)}, f, 6);
  CHECK(std::abs(lo_half.value + hi_half.value - 1.0) <= 1e-12);

  // the ground vector alone spreads uniformly: half the period, half the mass
  const PovmWeight half0 =
      povm_weight(AngleInterval{BigRat(0), BigRat(1)}, frame.vec(0), 6);
  CHECK(half0.value == doctest::Approx(0.5).epsilon(1e-14));

  // quadrature oracle for a window with live off-diagonal terms
  const double nf = exact_norm(f);
  auto c = frame.coefficients(f);
  for (auto& v : c) v /= nf;
  const PovmWeight window =
      povm_weight(AngleInterval{BigRat(1, 3), BigRat(7, 5)}, f, 6);
  const double oracle =
      weight_by_quadrature(c, M_PI / 3.0, M_PI * 7.0 / 5.0);
  CHECK(std::abs(window.value - oracle) <= 1e-10);

  // random nested pairs stay ordered and inside [0, 1]
  std::mt19937_64 rng(77u);
  std::uniform_int_distribution<int> num(0, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BigRat> qs = {BigRat(num(rng), 20), BigRat(num(rng), 20),
                              BigRat(num(rng), 20), BigRat(num(rng), 20)};
    std::sort(qs.begin(), qs.end());
    const PovmWeight inner = povm_weight(AngleInterval{qs[1], qs[2]}, f, 6);
    const PovmWeight outer = povm_weight(AngleInterval{qs[0], qs[3]}, f, 6);
    CHECK(inner.value >= -1e-12);
    CHECK(outer.value <= 1.0 + 1e-12);
    CHECK(inner.value <= outer.value + 1e-12);
  }

  // malformed inputs
  CHECK_THROWS_AS(
      (void)povm_weight(AngleInterval{BigRat(-1, 2), BigRat(1)}, f, 6),
      DomainError);
  CHECK_THROWS_AS((void)povm_weight(AngleInterval{BigRat(1), BigRat(5, 2)}, f, 6),
                  DomainError);
  CHECK_THROWS_AS(
      (void)povm_weight(
          std::vector<AngleInterval>{{BigRat(0), BigRat(1)},
                                     {BigRat(1, 2), BigRat(3, 2)}},
          f, 6),
      std::invalid_argument);
  CHECK_THROWS_AS((void)povm_weight(AngleInterval{BigRat(0), BigRat(2)},
                                    GaussVector{}, 6),
                  DomainError);
}

TEST_CASE("weights of vectors outside the span approach full mass from below") {
  GaussVector f;
  f.add_term(ExactScalar{1}, 2, ExactScalar(0, BigRat(1, 2)));
  f.add_term(ExactScalar(BigRat(1, 4)), 0, ExactScalar(0, BigRat(1, 2)));
  const AngleInterval period{BigRat(0), BigRat(2)};
  const PovmWeight small = povm_weight(period, f, 8);
  const PovmWeight large = povm_weight(period, f, 24);
  CHECK_FALSE(small.exact_one);
  CHECK(small.value <= 1.0 + 1e-12);
  CHECK(large.value <= 1.0 + 1e-12);
  CHECK(small.value <= large.value + 1e-12);
  CHECK(large.value > 0.99);
}

TEST_CASE("commutator identity holds entrywise at every truncation") {
  for (long order : {1L, 5L, 40L, 200L}) {
    const CommutatorReport report = commutator_check(order);
    CHECK(report.order == order);
    CHECK(report.entries_match);
    CHECK(report.difference_action_matches);
  }
  // spot check the underlying arithmetic: (n - m) i/(n - m) = i
  const TgMatrix tg = tg_matrix(10);
  const PiValue lhs = ExactScalar(BigRat(3 - 7)) * tg.at(3, 7);
  CHECK(lhs == PiValue{ExactScalar::i(), ExactScalar{}});
  CHECK_THROWS_AS((void)commutator_check(0), std::invalid_argument);
}

TEST_CASE("norm estimates stay under the circumference and grow with order") {
  CHECK(norm_bound_check(0) == doctest::Approx(M_PI).epsilon(1e-12));
  double prev = 0;
  for (long order : {10L, 30L, 60L, 120L}) {
    const double est = norm_bound_check(order);
    CHECK(est <= kTwoPi);
    CHECK(est >= prev - 1e-7);
    prev = est;
  }
  // by order 50 the estimate has left the diagonal value but not the bound
  const double mid = norm_bound_check(50);
  CHECK(mid > M_PI);
  CHECK(mid < kTwoPi);
  const SpectralEstimate est = spectral_estimate(tg_matrix(40));
  CHECK(est.second <= est.dominant + 1e-8);
  CHECK(est.iterations > 0);
}

TEST_CASE("bounded pairing against the unbounded band form") {
  std::vector<BigRat> alphas;
  for (int j = 1; j <= 10; ++j)
    alphas.emplace_back(BigRat((1 << j) - 1, 1 << j));
  const auto rows = contrast_sweep(1, alphas, 64);
  REQUIRE(rows.size() == alphas.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].bounded_value <= kTwoPi * (1 + 1e-9));
    CHECK(rows[i].unbounded_value ==
          doctest::Approx(unbounded_witness(1, alphas[i])).epsilon(1e-12));
  }
  // the band form leaves the circumference bound near the boundary
  CHECK(rows.back().unbounded_value > kTwoPi);
  CHECK(rows.front().unbounded_value < rows.back().unbounded_value);

  // the k = 0 instance exercises the same adjacent-pair fallback
  const auto base = contrast_sweep(0, {BigRat(1, 2)}, 32);
  CHECK(base.front().bounded_value <= kTwoPi * (1 + 1e-9));
  CHECK(base.front().unbounded_value > 0);

  CHECK_THROWS_AS((void)contrast_sweep(1, {BigRat(1)}, 16), DomainError);
  CHECK_THROWS_AS((void)contrast_sweep(1, {BigRat(3, 2)}, 16), DomainError);
  CHECK_THROWS_AS((void)contrast_sweep(-1, {BigRat(1, 2)}, 16),
                  std::invalid_argument);
}
