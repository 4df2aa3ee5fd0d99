#include "timeop/hermite.hpp"

namespace timeop {

Poly hermite_poly(long n) {
  Poly p(ExactScalar{1});
  const Poly two_x(std::vector<ExactScalar>{0, 2});
  for (long k = 0; k < n; ++k) p = p.derivative() - two_x * p;
  return n % 2 == 0 ? p : -p;
}

Poly hermite_poly_explicit(long n) {
  std::vector<ExactScalar> c(n + 1);
  for (long k = 0; 2 * k <= n; ++k) {
    const long j = n - 2 * k;  // x-power
    BigRat v = BigRat(factorial(n)) / BigRat(factorial(k) * factorial(j));
    v *= pow_rat(BigRat(2), j);
    if (k % 2 != 0) v = -v;
    c[j] = ExactScalar(std::move(v));
  }
  return Poly(std::move(c));
}

GaussVector hermite_frame(long n, const EpsParam& eps) {
  if (!eps.sqrt_is_rational())
    throw std::domain_error("hermite_frame: needs rational sqrt(eps)");
  const BigRat se = eps.sqrt_rational();
  const Poly h = hermite_poly(n);
  GaussVector out;
  const ExactScalar width = imaginary_width(BigRat(1), eps);  // i / sqrt(eps)
  // eps^{n/4} x^{n-2k} eps^{-(n-2k)/4} = (sqrt(eps))^k x^{n-2k}
  for (long j = n % 2; j <= n; j += 2) {
    const ExactScalar& c = h[static_cast<size_t>(j)];
    if (c.is_zero()) continue;
    out.add_term(c * ExactScalar(pow_rat(se, (n - j) / 2)), j, width);
  }
  return out;
}

SqrtPiSum frame_norm2(long n, const EpsParam& eps) {
  BigRat c = BigRat(factorial(n)) * pow_rat(BigRat(2), n) *
             pow_rat(eps.sqrt_rational(), n);
  return SqrtPiSum::rational_multiple(ExactScalar(std::move(c)))
      .times_sqrt(eps.sqrt_rational());
}

}  // namespace timeop
