#include "timeop/poly.hpp"

namespace timeop {

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
  Poly r = *this;
  if (r.degree() < d.degree()) return {Poly(), r};
  std::vector<ExactScalar> q(r.degree() - d.degree() + 1);
  while (!r.is_zero() && r.degree() >= d.degree()) {
    long shift = r.degree() - d.degree();
    ExactScalar f = r.leading() / d.leading();
    q[shift] = f;
    // r -= f * x^shift * d
    std::vector<ExactScalar> sub(shift + d.c_.size());
    for (size_t k = 0; k < d.c_.size(); ++k) sub[shift + k] = f * d.c_[k];
    r = r - Poly(std::move(sub));
  }
  return {Poly(std::move(q)), r};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    if (b.degree() == 0) return Poly(ExactScalar{1});  // coprime: constant gcd
    Poly r = a.divmod(b).second;
    // keep remainders monic; unnormalized euclidean steps let the rational
    // coefficient sizes grow exponentially with the remainder chain
    if (!r.is_zero()) r = (ExactScalar{1} / r.leading()) * r;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // normalize to a monic representative
  ExactScalar inv = ExactScalar{1} / a.leading();
  return inv * a;
}

}  // namespace timeop
