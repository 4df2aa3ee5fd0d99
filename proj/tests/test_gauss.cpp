#include <doctest.h>

#include "timeop/gauss.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <random>

using namespace timeop;

namespace {

const EpsParam kEps1{BigRat(1)};

// pointwise value of a vector; drives the differentiation oracles
template <class Coeff>
std::complex<double> eval_gauss(const BasicGaussVector<Coeff>& v, double x) {
  std::complex<double> acc{};
  for (const auto& [k, c] : v.terms()) {
    std::complex<double> z = CoeffOps<Coeff>::to_cd(k.width);
    std::complex<double> coeff = CoeffOps<Coeff>::to_cd(c);
    acc += coeff * std::pow(x, static_cast<double>(k.power)) *
           std::exp(std::complex<double>(0, 0.5) * z * (x * x));
  }
  return acc;
}

// centered finite-difference image of t = (1/x)(-i d/dx)
std::complex<double> t_by_differences(const GaussVector& f, double x) {
  const double h = 1e-6;
  auto fp = (eval_gauss(f, x + h) - eval_gauss(f, x - h)) / (2 * h);
  return std::complex<double>(0, -1) * fp / x;
}

std::complex<double> h_by_differences(const GaussVector& f, double x,
                                      double eps) {
  const double h = 1e-4;
  auto second = (eval_gauss(f, x + h) - 2.0 * eval_gauss(f, x) +
                 eval_gauss(f, x - h)) /
                (h * h);
  return 0.5 * (-eps * second + x * x * eval_gauss(f, x));
}

GaussVector n_fold_t(GaussVector v, long n, const BigRat& sqrt_eps) {
  ExactScalar se{sqrt_eps};
  for (long k = 0; k < n; ++k) v = se * apply_t(v);
  return v;
}

}  // namespace

TEST_CASE("widths must sit strictly in the upper half-plane") {
  CHECK_THROWS_AS(
      GaussVector::monomial(ExactScalar{1}, 0, ExactScalar{1}),  // Im z = 0
      std::domain_error);
  CHECK_THROWS_AS(GaussVector::monomial(ExactScalar{1}, 0,
                                        ExactScalar(BigRat(0), BigRat(-1))),
                  std::domain_error);
  CHECK_THROWS_AS(EpsParam{BigRat(0)}, std::domain_error);
  CHECK_THROWS_AS(EpsParam{BigRat(3, 2)}, std::domain_error);
}

TEST_CASE("normal form merges equal (power, width) terms") {
  ExactScalar z = ExactScalar(BigRat(0), BigRat(1, 2));
  GaussVector v;
  v.add_term(ExactScalar(BigRat(1, 3)), 2, z);
  v.add_term(ExactScalar(BigRat(2, 3)), 2, z);
  CHECK(v.size() == 1);
  CHECK(v.terms().begin()->second == ExactScalar{1});
  v.add_term(ExactScalar{-1}, 2, z);
  CHECK(v.is_zero());
}

TEST_CASE("parity classification") {
  ExactScalar z = ExactScalar(BigRat(0), BigRat(1));
  GaussVector even = GaussVector::monomial(ExactScalar{1}, 0, z) +
                     GaussVector::monomial(ExactScalar{1}, 4, z);
  GaussVector odd = GaussVector::monomial(ExactScalar{1}, 3, z);
  CHECK(even.parity() == Parity::Even);
  CHECK(odd.parity() == Parity::Odd);
  CHECK((even + odd).parity() == Parity::Mixed);
  CHECK(GaussVector().parity() == Parity::Empty);
  CHECK((even + odd).even_part() == even);
  CHECK((even + odd).odd_part() == odd);
}

TEST_CASE("t has the Gaussians as exact eigenvectors: sqrt(eps) t xi = i alpha xi") {
  for (long k = 1; k <= 9; ++k) {
    BigRat alpha(k, 10);
    for (BigRat eps : {BigRat(1), BigRat(1, 100)}) {
      EpsParam ep{eps};
      GaussVector xi = monomial_gaussian(alpha, 0, ep);
      GaussVector lhs = ExactScalar(ep.sqrt_rational()) * apply_t(xi);
      GaussVector rhs = ExactScalar(BigRat(0), alpha) * xi;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("irrational sqrt(eps) runs in float mode with bitwise eigen equality") {
  EpsParam half{BigRat(1, 2)};
  CHECK(!half.sqrt_is_rational());
  CHECK_THROWS_AS(half.sqrt_rational(), std::domain_error);
  for (long k = 1; k <= 9; ++k) {
    double alpha = k / 10.0;
    std::complex<double> width(0.0, alpha / half.sqrt_double());
    GaussVectorF xi = GaussVectorF::monomial({1.0, 0.0}, 0, width);
    GaussVectorF lhs = apply_t(xi);
    // t xi_z = z xi_z exactly, even in floats: same bits as the stored width
    REQUIRE(lhs.size() == 1);
    CHECK(lhs.terms().begin()->second == width);
  }
}

TEST_CASE("t rejects power-1 terms") {
  GaussVector f = GaussVector::monomial(ExactScalar{1}, 1,
                                        ExactScalar(BigRat(0), BigRat(1)));
  CHECK_THROWS_AS(apply_t(f), DomainError);
}

TEST_CASE("t on x^2 xi_z matches hand differentiation and pointwise oracle") {
  ExactScalar z(BigRat(0), BigRat(1, 2));
  GaussVector f = GaussVector::monomial(ExactScalar{1}, 2, z);
  GaussVector expect = GaussVector::monomial(z, 2, z);
  expect.add_term(ExactScalar(BigRat(0), BigRat(-2)), 0, z);  // -2i
  CHECK(apply_t(f) == expect);
  for (double x : {0.4, 1.1, 2.3}) {
    auto direct = eval_gauss(apply_t(f), x);
    auto fd = t_by_differences(f, x);
    CHECK(std::abs(direct - fd) < 1e-7 * (1 + std::abs(direct)));
  }
}

TEST_CASE("t* fixes odd Gaussians up to the eigenvalue") {
  BigRat alpha(1, 2);
  GaussVector f = monomial_gaussian(alpha, 1, kEps1);
  GaussVector lhs = apply_t_star(f);
  CHECK(lhs == ExactScalar(BigRat(0), alpha) * f);
}

TEST_CASE("t* rejects power-0 terms") {
  GaussVector f = monomial_gaussian(BigRat(1, 2), 0, kEps1);
  CHECK_THROWS_AS(apply_t_star(f), DomainError);
}

TEST_CASE("t* on x^3 xi_z") {
  ExactScalar z(BigRat(0), BigRat(1, 3));
  GaussVector f = GaussVector::monomial(ExactScalar{1}, 3, z);
  GaussVector expect = GaussVector::monomial(z, 3, z);
  expect.add_term(ExactScalar(BigRat(0), BigRat(-2)), 1, z);  // -2i x
  CHECK(apply_t_star(f) == expect);
}

TEST_CASE("h on xi_z at eps=1: (1/2)((1+z^2)x^2 - i z) xi_z") {
  ExactScalar z(BigRat(0), BigRat(1, 2));
  GaussVector f = GaussVector::monomial(ExactScalar{1}, 0, z);
  GaussVector got = apply_h(f, kEps1);
  GaussVector expect;
  // 1 + z^2 = 3/4, -iz = 1/2
  expect.add_term(ExactScalar(BigRat(3, 8)), 2, z);
  expect.add_term(ExactScalar(BigRat(1, 4)), 0, z);
  CHECK(got == expect);
}

TEST_CASE("ground state is an exact h eigenvector with eigenvalue 1/2") {
  GaussVector e0 = monomial_gaussian(BigRat(1), 0, kEps1);
  CHECK(apply_h(e0, kEps1) == ExactScalar(BigRat(1, 2)) * e0);
}

TEST_CASE("h on x^2 xi_{i/2}: full coefficient vector plus pointwise oracle") {
  ExactScalar z(BigRat(0), BigRat(1, 2));
  GaussVector f = GaussVector::monomial(ExactScalar{1}, 2, z);
  GaussVector got = apply_h(f, kEps1);
  GaussVector expect;
  expect.add_term(ExactScalar(BigRat(3, 8)), 4, z);
  expect.add_term(ExactScalar(BigRat(5, 4)), 2, z);
  expect.add_term(ExactScalar{-1}, 0, z);
  CHECK(got == expect);
  for (double x : {0.3, 0.9, 1.7}) {
    auto direct = eval_gauss(got, x);
    auto fd = h_by_differences(f, x, 1.0);
    CHECK(std::abs(direct - fd) < 1e-5 * (1 + std::abs(direct)));
  }
}

TEST_CASE("textbook Gaussian moments") {
  GaussVector g0 = monomial_gaussian(BigRat(1), 0, kEps1);
  GaussVector g1 = monomial_gaussian(BigRat(1), 1, kEps1);
  GaussVector g2 = monomial_gaussian(BigRat(1), 2, kEps1);

  SqrtPiSum n0 = inner_product_exact(g0, g0);
  CHECK(n0 == SqrtPiSum(ExactScalar{1}, BigInt(1)));  // sqrt(pi)
  CHECK(inner_product(g0, g0).real() == doctest::Approx(1.7724538509).epsilon(1e-9));

  CHECK(inner_product_exact(g1, g0).is_zero());  // odd parity
  CHECK(inner_product_exact(g2, g0) ==
        SqrtPiSum(ExactScalar(BigRat(1, 2)), BigInt(1)));  // sqrt(pi)/2
}

TEST_CASE("exact moments agree with adaptive quadrature on random pairs") {
  std::mt19937_64 rng(424242);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  for (int trial = 0; trial < 20; ++trial) {
    long pa = static_cast<long>(rng() % 9);
    long pb = static_cast<long>(rng() % 9);
    std::complex<double> za(uniform(-1.5, 1.5), uniform(0.3, 2.5));
    std::complex<double> zb(uniform(-1.5, 1.5), uniform(0.3, 2.5));
    std::complex<double> ca(uniform(-1, 1), uniform(-1, 1));
    std::complex<double> cb(uniform(-1, 1), uniform(-1, 1));
    GaussVectorF f = GaussVectorF::monomial(ca, pa, za);
    GaussVectorF g = GaussVectorF::monomial(cb, pb, zb);
    std::complex<double> closed = inner_product(f, g);

    // integrand conj(f) g decays like exp(-Re(s) x^2)
    double res = 0.5 * (za.imag() + zb.imag());
    double R = std::sqrt(95.0 / res);
    auto integrand_re = [&](double x) {
      return (std::conj(eval_gauss(f, x)) * eval_gauss(g, x)).real();
    };
    auto integrand_im = [&](double x) {
      return (std::conj(eval_gauss(f, x)) * eval_gauss(g, x)).imag();
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    std::complex<double> quad(GK::integrate(integrand_re, -R, R, 12, 1e-12),
                              GK::integrate(integrand_im, -R, R, 12, 1e-12));
    CHECK(std::abs(closed - quad) <= 1e-9 * (1.0 + std::abs(closed)));
  }
}

TEST_CASE("adjointness of t and t* on safe pairs") {
  // Opposite-parity pairs (the only combinations whose pairings all vanish)
  GaussVector f_even = monomial_gaussian(BigRat(1, 4), 0, kEps1) +
                       monomial_gaussian(BigRat(1, 4), 2, kEps1);
  GaussVector g_odd = monomial_gaussian(BigRat(2, 3), 1, kEps1);
  CHECK(inner_product_exact(apply_t(f_even), g_odd).is_zero());
  CHECK(inner_product_exact(f_even, apply_t_star(g_odd)).is_zero());

  // Same-parity pairs carry the substance: <t f, g> = <f, t* g> exactly
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    auto coef = [&]() {
      return ExactScalar(BigRat(1 + static_cast<long>(rng() % 7), 4),
                         BigRat(static_cast<long>(rng() % 5), 3));
    };
    BigRat wa(1 + static_cast<long>(rng() % 8), 10);
    BigRat wb(1 + static_cast<long>(rng() % 8), 10);
    GaussVector f, g;
    bool odd = trial % 2;
    ExactScalar za = imaginary_width(wa, kEps1);
    ExactScalar zb = imaginary_width(wb, kEps1);
    if (odd) {
      f.add_term(coef(), 3, za);
      f.add_term(coef(), 5, za);
      g.add_term(coef(), 1, zb);
      g.add_term(coef(), 3, zb);
    } else {
      f.add_term(coef(), 0, za);
      f.add_term(coef(), 4, za);
      g.add_term(coef(), 2, zb);
      g.add_term(coef(), 6, zb);
    }
    CHECK(inner_product_exact(apply_t(f), g) ==
          inner_product_exact(f, apply_t_star(g)));
  }
}

TEST_CASE("closed power table equals repeated application of t") {
  for (BigRat eps : {BigRat(1), BigRat(1, 4)}) {
    EpsParam ep{eps};
    for (BigRat alpha : {BigRat(2, 5), BigRat(9, 10)}) {
      for (long m = 0; m <= 4; ++m) {
        GaussVector f = monomial_gaussian(alpha, 2 * m, ep);
        for (long n = 0; n <= 8; ++n) {
          GaussVector byops = n_fold_t(f, n, ep.sqrt_rational());
          auto table = power_t_closed(n, m, alpha, ep);
          GaussVector fromtable;
          for (const auto& [power, c] : table)
            fromtable.add_term(c, power, imaginary_width(alpha, ep));
          CHECK(byops == fromtable);
        }
      }
    }
  }
}

TEST_CASE("closed power table: quoted entries") {
  auto t10 = power_t_closed(1, 0, BigRat(1, 2), kEps1);
  REQUIRE(t10.size() == 1);
  CHECK(t10.at(0) == ExactScalar(BigRat(0), BigRat(1, 2)));  // alpha i

  auto t03 = power_t_closed(0, 3, BigRat(1, 3), kEps1);
  REQUIRE(t03.size() == 1);
  CHECK(t03.at(6) == ExactScalar{1});  // identity on x^6

  EpsParam quarter{BigRat(1, 4)};
  BigRat alpha(1, 2);
  auto t21 = power_t_closed(2, 1, alpha, quarter);
  REQUIRE(t21.size() == 2);
  ExactScalar ai(BigRat(0), alpha);
  ExactScalar mise(BigRat(0), -quarter.sqrt_rational());
  CHECK(t21.at(2) == ai * ai);
  CHECK(t21.at(0) == ExactScalar{4} * ai * mise);
}

TEST_CASE("single-term arctan sum is -t") {
  EpsParam ep{BigRat(1, 4)};
  BigRat alpha(1, 3);
  GaussVector f = monomial_gaussian(alpha, 0, ep);
  auto series = arctan_partial_sum(f, ep.sqrt_rational(), 0, false);
  // -(1/sqrt(eps)) (sqrt(eps) t) f = -t f = -(i alpha / sqrt(eps)) f
  GaussVector expect =
      ExactScalar(BigRat(0), -alpha / ep.sqrt_rational()) * f;
  CHECK(series.sum == expect);
  CHECK(!series.divergent);
}

TEST_CASE("arctan series converges to the log eigenvalue below the boundary") {
  BigRat alpha(1, 2);
  GaussVector f = monomial_gaussian(alpha, 0, kEps1);
  auto series = arctan_partial_sum(f, BigRat(1), 60, false);
  CHECK(!series.divergent);
  // limit: -(i/2) log((1+a)/(1-a)) xi = -(i/2) log 3 xi
  REQUIRE(series.sum.size() == 1);
  std::complex<double> got = series.sum.terms().begin()->second.to_complex();
  std::complex<double> want(0.0, -0.5 * std::log(3.0));
  CHECK(std::abs(got - want) < 1e-12);
  // geometric decay of increments at ratio ~ alpha^2
  size_t n = series.increment_norms.size();
  double ratio = series.increment_norms[n - 1] / series.increment_norms[n - 2];
  CHECK(ratio == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("series on the boundary width is flagged divergent") {
  for (long m : {0L, 1L}) {
    GaussVector f = monomial_gaussian(BigRat(1), 2 * m, kEps1);
    auto series = arctan_partial_sum(f, BigRat(1), 40, false);
    CHECK(series.divergent);
  }
  // odd chain through t*
  GaussVector fo = monomial_gaussian(BigRat(1), 1, kEps1);
  auto series_odd = arctan_partial_sum(fo, BigRat(1), 40, true);
  CHECK(series_odd.divergent);
}

TEST_CASE("parity violations surface as domain errors") {
  GaussVector f = monomial_gaussian(BigRat(1, 2), 1, kEps1);
  CHECK_THROWS_AS(arctan_partial_sum(f, BigRat(1), 5, false), DomainError);
}

TEST_CASE("text serialization round-trips bit-exactly") {
  GaussVector v;
  v.add_term(ExactScalar(BigRat(22, 7), BigRat(-3, 11)), 4,
             ExactScalar(BigRat(1, 3), BigRat(355, 113)));
  v.add_term(ExactScalar(BigRat(-1, 999983), BigRat(0)), 0,
             ExactScalar(BigRat(0), BigRat(2, 3)));
  CHECK(gauss_from_text(to_text(v)) == v);
  CHECK(gauss_from_json(to_json(v)) == v);
}
