#pragma once

// Exact scalar arithmetic: big rationals and Gaussian rationals (a + bi with
// rational a, b).  Everything downstream of this header is exact; floats only
// appear when a value is finally evaluated for printing or comparison.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>

namespace timeop {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// BigRat -> double that survives numerators/denominators far outside the
// double range (e.g. coefficients of high operator powers): scale to a
// 64-bit mantissa first, then apply the binary exponent.
inline double to_double(const BigRat& r) {
  if (r == 0) return 0.0;
  BigInt num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  const long kBits = 64;
  long e = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
  BigInt m;
  if (kBits >= e) {
    m = (num << (kBits - e)) / den;
  } else {
    m = num / (den << (e - kBits));
  }
  double d = std::ldexp(m.convert_to<double>(), static_cast<int>(e - kBits));
  return neg ? -d : d;
}

template <class Real>
Real rat_as(const BigRat& r) {
  if constexpr (std::is_same_v<Real, double>) {
    return to_double(r);
  } else {
    return Real(numerator(r)) / Real(denominator(r));
  }
}

template <class Real>
Real bigint_as(const BigInt& n) {
  if constexpr (std::is_same_v<Real, double>) {
    return to_double(BigRat(n));
  } else {
    return Real(n);
  }
}

// Complex number with exact rational real and imaginary parts.
struct ExactScalar {
  BigRat re{0};
  BigRat im{0};

  ExactScalar() = default;
  ExactScalar(long v) : re(v) {}  // NOLINT: implicit for literals
  ExactScalar(BigRat r) : re(std::move(r)) {}
  ExactScalar(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}

  static ExactScalar i() { return ExactScalar(BigRat(0), BigRat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  ExactScalar conj() const { return ExactScalar(re, -im); }

  // |v|^2 = re^2 + im^2, a nonnegative rational.
  BigRat norm2() const { return re * re + im * im; }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.re + b.re, a.im + b.im);
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.re - b.re, a.im - b.im);
  }
  friend ExactScalar operator-(const ExactScalar& a) {
    return ExactScalar(-a.re, -a.im);
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    BigRat n2 = b.norm2();
    if (n2 == 0) throw std::domain_error("ExactScalar: division by zero");
    return ExactScalar((a.re * b.re + a.im * b.im) / n2,
                       (a.im * b.re - a.re * b.im) / n2);
  }
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) {
    return !(a == b);
  }
  // Lexicographic order so ExactScalar can key ordered containers.
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  std::complex<double> to_complex() const {
    return {to_double(re), to_double(im)};
  }
  template <class Complex>
  Complex to() const {
    using Real = typename Complex::value_type;
    return Complex(rat_as<Real>(re), rat_as<Real>(im));
  }
};

inline ExactScalar pow_int(const ExactScalar& base, long n) {
  ExactScalar acc{1};
  ExactScalar b = base;
  long e = n;
  if (e < 0) {
    b = ExactScalar{1} / b;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline BigRat pow_rat(const BigRat& base, long n) {
  BigRat acc{1}, b = base;
  long e = n;
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt acc = 1;
  for (long j = 0; j < k; ++j) {
    acc *= (n - j);
    acc /= (j + 1);
  }
  return acc;
}

inline BigInt factorial(long n) {
  BigInt acc = 1;
  for (long j = 2; j <= n; ++j) acc *= j;
  return acc;
}

// (2n-1)!! with the usual convention (-1)!! = 1.
inline BigInt double_factorial_odd(long n) {
  BigInt acc = 1;
  for (long j = 1; j <= n; ++j) acc *= (2 * j - 1);
  return acc;
}

// Parse/print rationals as "p" or "p/q"; used by the text serialization
// formats, which must round-trip bit-exactly.
inline std::string rat_to_string(const BigRat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline BigRat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRat(BigInt(s));
  return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& v) {
  os << rat_to_string(v.re);
  if (v.im != 0) os << (v.im > 0 ? "+" : "-") << rat_to_string(abs(v.im)) << "i";
  return os;
}

}  // namespace timeop
