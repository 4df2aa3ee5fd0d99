#include "timeop/sqrtpi.hpp"

#include <stdexcept>

namespace timeop {

namespace {

// n = square * root with root squarefree (trial division; the integers that
// reach this point come from small width denominators, so this is cheap).
void extract_square(const BigInt& n, BigInt* square, BigInt* root) {
  BigInt rem = n, sq = 1, rt = 1;
  for (BigInt p = 2; p * p <= rem; p == 2 ? p = 3 : p += 2) {
    int mult = 0;
    while (rem % p == 0) {
      rem /= p;
      ++mult;
    }
    for (int k = 0; k + 1 < mult; k += 2) sq *= p;
    if (mult & 1) rt *= p;
  }
  rt *= rem;  // leftover prime
  *square = sq;
  *root = rt;
}

}  // namespace

SqrtSplit squarefree_split(const BigRat& r) {
  if (r <= 0) throw std::domain_error("squarefree_split: argument must be positive");
  // sqrt(p/q) = sqrt(p*q)/q
  BigInt pq = numerator(r) * denominator(r);
  BigInt square, root;
  extract_square(pq, &square, &root);
  return SqrtSplit{BigRat(square, denominator(r)), root};
}

SqrtPiSum SqrtPiSum::times_sqrt(const BigRat& r) const {
  SqrtSplit s = squarefree_split(r);
  SqrtPiSum out;
  for (const auto& [d, c] : terms_) {
    // sqrt(d) * sqrt(root) = g * sqrt(d*root/g^2) with g = gcd (both squarefree)
    BigInt g = gcd(d, s.root);
    BigInt new_d = (d / g) * (s.root / g);
    ExactScalar new_c = ExactScalar(s.factor * BigRat(g)) * c;
    out.add_term(new_c, new_d);
  }
  return out;
}

}  // namespace timeop
