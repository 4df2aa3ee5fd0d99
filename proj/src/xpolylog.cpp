#include "timeop/xpolylog.hpp"

#include <json.hpp>

#include <sstream>

namespace timeop {

namespace {

ExactScalar half_i() { return ExactScalar(BigRat(0), BigRat(1, 2)); }

// -i/(2 sqrt(eps)); exact symbolic work needs sqrt(eps) rational
ExactScalar s_prefactor(const EpsParam& eps) {
  return ExactScalar(BigRat(0), BigRat(-1, 2) / eps.sqrt_rational());
}

RatFunc var() { return RatFunc::variable(); }

RatFunc one_plus_z2() {
  return RatFunc(Poly(std::vector<ExactScalar>{1, 0, 1}),
                 Poly(ExactScalar{1}));
}

// the derivative constant c in t = x^2 - c d/dp
ExactScalar t_constant(const XPolyLog& v) {
  if (v.engine() == Engine::Complex) return ExactScalar(BigRat(0), BigRat(2));
  return ExactScalar(BigRat(2) * v.eps().sqrt_rational());
}

}  // namespace

void XPolyLog::add_to_coefficient(long power, const LogExt& v) {
  if (v.engine() != engine_)
    throw EngineMismatch("XPolyLog: coefficient engine differs from container");
  if (power < 0) throw std::domain_error("XPolyLog: negative x power");
  auto [it, inserted] = c_.try_emplace(power, v);
  if (!inserted) it->second += v;
  if (it->second.is_zero()) c_.erase(it);
}

XPolyLog& XPolyLog::operator+=(const XPolyLog& o) {
  if (o.engine_ != engine_)
    throw EngineMismatch("XPolyLog: mixed-engine addition");
  for (const auto& [k, v] : o.c_) add_to_coefficient(k, v);
  return *this;
}

XPolyLog& XPolyLog::operator-=(const XPolyLog& o) {
  if (o.engine_ != engine_)
    throw EngineMismatch("XPolyLog: mixed-engine subtraction");
  for (const auto& [k, v] : o.c_) add_to_coefficient(k, -v);
  return *this;
}

XPolyLog operator*(const ExactScalar& s, const XPolyLog& a) {
  XPolyLog r(a.engine_, a.eps_);
  if (s.is_zero()) return r;
  for (const auto& [k, v] : a.c_) r.add_to_coefficient(k, s * v);
  return r;
}

XPolyLog XPolyLog::times(const LogExt& s) const {
  XPolyLog r(engine_, eps_);
  if (s.is_zero()) return r;
  for (const auto& [k, v] : c_) r.add_to_coefficient(k, s * v);
  return r;
}

XPolyLog XPolyLog::times(const RatFunc& s) const {
  XPolyLog r(engine_, eps_);
  if (s.is_zero()) return r;
  for (const auto& [k, v] : c_) r.add_to_coefficient(k, s * v);
  return r;
}

XPolyLog XPolyLog::times_x_power(long shift) const {
  XPolyLog r(engine_, eps_);
  for (const auto& [k, v] : c_) r.add_to_coefficient(k + shift, v);
  return r;
}

XPolyLog XPolyLog::restricted_to_imaginary_axis() const {
  if (engine_ != Engine::Complex)
    throw EngineMismatch("XPolyLog: restriction needs the complex engine");
  XPolyLog r(Engine::Real, EpsParam(BigRat(1)));
  for (const auto& [k, v] : c_)
    r.add_to_coefficient(k, v.restricted_to_imaginary_axis());
  return r;
}

XPolyLog XPolyLog::continued_to_complex_engine() const {
  if (engine_ != Engine::Real)
    throw EngineMismatch("XPolyLog: continuation needs the real engine");
  XPolyLog r(Engine::Complex);
  for (const auto& [k, v] : c_)
    r.add_to_coefficient(k, v.continued_to_complex_engine());
  return r;
}

std::map<long, std::complex<double>> XPolyLog::evaluate(
    std::complex<double> p, double cut_tube) const {
  return evaluate_as<std::complex<double>>(p, cut_tube);
}

XPolyLog log_seed(Engine eng, EpsParam eps) {
  XPolyLog r(eng, std::move(eps));
  r.add_to_coefficient(0, LogExt::log_symbol(eng));
  return r;
}

XPolyLog apply_t_param(const XPolyLog& v) {
  const ExactScalar c = t_constant(v);
  XPolyLog r(v.engine(), v.eps());
  for (const auto& [k, w] : v.coefficients()) {
    r.add_to_coefficient(k + 2, w);
    r.add_to_coefficient(k, -(c * w.derivative()));
  }
  return r;
}

XPolyLog apply_t_param(const XPolyLog& v, long n) {
  XPolyLog r = v;
  for (long j = 0; j < n; ++j) r = apply_t_param(r);
  return r;
}

XPolyLog apply_h_symbolic(const XPolyLog& v) {
  if (v.engine() != Engine::Complex)
    throw EngineMismatch("apply_h_symbolic: complex engine only");
  const RatFunc z = var();
  const RatFunc w2 = one_plus_z2();
  const ExactScalar half(BigRat(1, 2));
  XPolyLog r(Engine::Complex);
  for (const auto& [k, c] : v.coefficients()) {
    r.add_to_coefficient(k + 2, half * (w2 * c));
    r.add_to_coefficient(
        k, -(ExactScalar(BigRat(0), BigRat(2 * k + 1, 2)) * (z * c)));
    if (k >= 2)
      r.add_to_coefficient(k - 2, ExactScalar(BigRat(-k * (k - 1), 2)) * c);
  }
  return r;
}

XPolyLog s_closed(long m, Parity, const EpsParam& eps) {
  return s_prefactor(eps) * apply_t_param(log_seed(Engine::Real, eps), m);
}

XPolyLog s_closed_binomial(long m, const EpsParam& eps) {
  const ExactScalar step(BigRat(-2) * eps.sqrt_rational());
  XPolyLog r(Engine::Real, eps);
  LogExt dk = LogExt::log_symbol(Engine::Real);  // k-th parameter derivative
  for (long k = 0; k <= m; ++k) {
    r.add_to_coefficient(2 * (m - k),
                         (ExactScalar(binomial(m, k)) * pow_int(step, k)) * dk);
    dk = dk.derivative();
  }
  return s_prefactor(eps) * r;
}

XPolyLog s_closed_poly(const Poly& rho, Parity, const EpsParam& eps) {
  XPolyLog acc(Engine::Real, eps);
  XPolyLog tk = log_seed(Engine::Real, eps);  // t^k applied to the logarithm
  for (long k = 0; k <= rho.degree(); ++k) {
    if (!rho[k].is_zero()) acc += rho[k] * tk;
    if (k < rho.degree()) tk = apply_t_param(tk);
  }
  return s_prefactor(eps) * acc;
}

XPolyLog s_hat_closed(long m, Parity) {
  return half_i() * apply_t_param(log_seed(Engine::Complex), m);
}

XPolyLog qn_apply(long n, const LogExt& e) {
  if (e.engine() != Engine::Complex)
    throw EngineMismatch("qn_apply: complex engine only");
  XPolyLog seed(Engine::Complex);
  seed.add_to_coefficient(0, e);
  XPolyLog r = apply_t_param(seed, n).times(one_plus_z2());
  if (n >= 1)
    r -= ExactScalar(BigRat(0), BigRat(4 * n)) *
         apply_t_param(seed, n - 1).times(var());
  if (n >= 2) r -= ExactScalar(BigRat(4 * n * (n - 1))) * apply_t_param(seed, n - 2);
  return r;
}

XPolyLog k1_explicit(long n) {
  const XPolyLog tn = apply_t_param(log_seed(Engine::Complex), n);
  XPolyLog r = tn.times(one_plus_z2()).times_x_power(2);
  r -= ExactScalar::i() * tn.times(var());
  if (n >= 1) {
    const XPolyLog tn1 = apply_t_param(log_seed(Engine::Complex), n - 1);
    r -= ExactScalar(BigRat(2 * n)) * tn1;
    r -= ExactScalar(BigRat(0), BigRat(4 * n)) *
         tn1.times(var()).times_x_power(2);
  }
  if (n >= 2)
    r -= ExactScalar(BigRat(4 * n * (n - 1))) *
         apply_t_param(log_seed(Engine::Complex), n - 2).times_x_power(2);
  return ExactScalar(BigRat(0), BigRat(1, 4)) * r;
}

XPolyLog k2_explicit(long n) {
  XPolyLog r = apply_t_param(log_seed(Engine::Complex), n + 1)
                   .times(one_plus_z2());
  r -= ExactScalar(BigRat(0), BigRat(4 * n + 1)) *
       apply_t_param(log_seed(Engine::Complex), n).times(var());
  if (n >= 1)
    r -= ExactScalar(BigRat(2 * n * (2 * n - 1))) *
         apply_t_param(log_seed(Engine::Complex), n - 1);
  return ExactScalar(BigRat(0), BigRat(1, 4)) * r;
}

XPolyLog k1_assembled(long n, Parity parity) {
  XPolyLog image = s_hat_closed(n, parity);
  if (parity == Parity::Odd) image = image.times_x_power(1);
  return apply_h_symbolic(image);
}

XPolyLog k2_assembled(long n, Parity parity) {
  // h x^p xi_z = (1/2)[(1+z^2) x^{p+2} - i(2p+1) z x^p - p(p-1) x^{p-2}] xi_z,
  // then the angle operator acts through the even grading x^{2k} (x).
  const long p = parity == Parity::Odd ? 2 * n + 1 : 2 * n;
  const ExactScalar half(BigRat(1, 2));
  auto s_hat_term = [&](long even_power, const LogExt& q) {
    XPolyLog img = s_hat_closed(even_power / 2, parity).times(q);
    if (parity == Parity::Odd) img = img.times_x_power(1);
    return img;
  };
  XPolyLog r = s_hat_term(p + 2 - (parity == Parity::Odd ? 1 : 0),
                          LogExt::constant(Engine::Complex, half * one_plus_z2()));
  r += s_hat_term(p - (parity == Parity::Odd ? 1 : 0),
                  LogExt::constant(
                      Engine::Complex,
                      ExactScalar(BigRat(0), BigRat(-(2 * p + 1), 2)) * var()));
  if (p >= 2)
    r += s_hat_term(p - 2 - (parity == Parity::Odd ? 1 : 0),
                    LogExt::constant(Engine::Complex,
                                     RatFunc(ExactScalar(
                                         BigRat(-p * (p - 1), 2)))));
  return r;
}

XPolyLog commutator_symbolic(long n, Parity parity) {
  if (parity == Parity::Even) return k1_explicit(n) - k2_explicit(n);
  return k1_assembled(n, Parity::Odd) - k2_assembled(n, Parity::Odd);
}

GaussVectorF to_gauss_vector(const XPolyLog& v, std::complex<double> p,
                             std::complex<double> width, long x_shift,
                             double cut_tube) {
  GaussVectorF r;
  for (const auto& [k, val] : v.evaluate(p, cut_tube))
    r.add_term(val, k + x_shift, width);
  return r;
}

std::string xpolylog_to_string(const XPolyLog& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v.coefficients()) {
    if (!first) os << " + ";
    first = false;
    os << "x^" << k << "*(" << logext_to_string(c) << ")";
  }
  return os.str();
}

std::string xpolylog_to_json_string(const XPolyLog& v) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [k, c] : v.coefficients())
    coeffs.push_back({{"power", k}, {"value", logext_to_string(c)}});
  nlohmann::json j{{"engine", engine_name(v.engine())},
                   {"coefficients", coeffs}};
  if (v.engine() == Engine::Real) j["eps"] = rat_to_string(v.eps().value());
  return j.dump(2);
}

}  // namespace timeop
