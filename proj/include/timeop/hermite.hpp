#pragma once

// Oscillator eigenvector frame.  The physicists' Hermite polynomials are
// built twice (derivative recurrence and explicit sum) so each construction
// checks the other; the frame vectors carry exact rational coefficients
// whenever sqrt(eps) is rational, which keeps the eigen-relations and the
// orthogonality integrals in the exact layer.

#include "timeop/gauss.hpp"
#include "timeop/sqrtpi.hpp"

namespace timeop {

// H_n via H_0 = 1, P_{n+1} = P_n' - 2x P_n, H_n = (-1)^n P_n
Poly hermite_poly(long n);
// H_n = n! sum_k (-1)^k / k! (2x)^{n-2k} / (n-2k)!
Poly hermite_poly_explicit(long n);

// unnormalized eigenvector of the scaled oscillator:
//   eps^{n/4} H_n(x eps^{-1/4}) exp(-x^2/(2 sqrt(eps)))
// the scaling keeps every coefficient in the Gaussian rationals
GaussVector hermite_frame(long n, const EpsParam& eps);

// squared norm 2^n n! eps^{n/2} * eps^{1/4} sqrt(pi)
SqrtPiSum frame_norm2(long n, const EpsParam& eps);

}  // namespace timeop
