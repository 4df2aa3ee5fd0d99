#include "timeop/ratfunc.hpp"

namespace timeop {

void RatFunc::assign(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(ExactScalar{1});
    return;
  }
  Poly g = poly_gcd(num, den);
  if (g.degree() > 0) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  ExactScalar inv = ExactScalar{1} / den.leading();
  num_ = inv * num;
  den_ = inv * den;
}

}  // namespace timeop
