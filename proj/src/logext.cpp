#include "timeop/logext.hpp"

#include <cmath>
#include <sstream>

namespace timeop {

namespace {

// distance from p to the horizontal ray {x + iy0 : x >= x0}
double dist_to_ray_right(std::complex<double> p, double x0, double y0) {
  if (p.real() >= x0) return std::abs(p.imag() - y0);
  return std::abs(p - std::complex<double>(x0, y0));
}

// distance from p to the vertical ray {x0 + iy : y >= y0}
double dist_to_ray_up(std::complex<double> p, double x0, double y0) {
  if (p.imag() >= y0) return std::abs(p.real() - x0);
  return std::abs(p - std::complex<double>(x0, y0));
}

}  // namespace

double cut_distance(Engine eng, std::complex<double> p) {
  if (eng == Engine::Real) {
    // cuts (-inf,-1] and [1,inf) on the real parameter axis
    double d1 = dist_to_ray_right(p, 1.0, 0.0);
    double d2 = dist_to_ray_right(-p, 1.0, 0.0);
    return std::min(d1, d2);
  }
  // cuts {iy : y >= 1} and {iy : y <= -1}
  double d1 = dist_to_ray_up(p, 0.0, 1.0);
  double d2 = dist_to_ray_up(-p, 0.0, 1.0);
  return std::min(d1, d2);
}

RatFunc LogExt::log_derivative(Engine eng) {
  Poly one(ExactScalar{1});
  Poly p2 = Poly::variable() * Poly::variable();
  if (eng == Engine::Real) {
    // 2 / (1 - a^2)
    return RatFunc(Poly(ExactScalar{2}), one - p2);
  }
  // 2i / (1 + z^2)
  return RatFunc(Poly(ExactScalar(BigRat(0), BigRat(2))), one + p2);
}

LogExt LogExt::restricted_to_imaginary_axis() const {
  if (engine_ != Engine::Complex)
    throw EngineMismatch("restriction to the imaginary axis needs the complex engine");
  return LogExt(Engine::Real, r0_.scale_argument(ExactScalar::i()),
                -r1_.scale_argument(ExactScalar::i()));
}

LogExt LogExt::continued_to_complex_engine() const {
  if (engine_ != Engine::Real)
    throw EngineMismatch("continuation off the axis needs the real engine");
  ExactScalar minus_i = -ExactScalar::i();
  return LogExt(Engine::Complex, r0_.scale_argument(minus_i),
                -r1_.scale_argument(minus_i));
}

std::complex<double> logext_eval(const LogExt& e, std::complex<double> p,
                                 double cut_tube) {
  return e.eval_as<std::complex<double>>(p, cut_tube);
}

std::string poly_to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < p.coeffs().size(); ++k) {
    const ExactScalar& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (k == 1) os << "*" << var;
    if (k > 1) os << "*" << var << "^" << k;
  }
  return os.str();
}

std::string ratfunc_to_string(const RatFunc& r, const std::string& var) {
  if (r.is_zero()) return "0";
  std::string s = "[" + poly_to_string(r.num(), var) + "]";
  if (r.den().degree() > 0 || r.den().leading() != ExactScalar{1})
    s += " / [" + poly_to_string(r.den(), var) + "]";
  return s;
}

std::string logext_to_string(const LogExt& e) {
  const std::string var = e.engine() == Engine::Real ? "a" : "z";
  if (e.is_zero()) return "0";
  std::string s;
  if (!e.r0().is_zero()) s += ratfunc_to_string(e.r0(), var);
  if (!e.r1().is_zero()) {
    if (!s.empty()) s += " + ";
    s += ratfunc_to_string(e.r1(), var) + " * L(" + var + ")";
  }
  return s;
}

}  // namespace timeop
