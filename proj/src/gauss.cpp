#include "timeop/gauss.hpp"

#include <json.hpp>

#include <sstream>

namespace timeop {

SqrtPiSum inner_product_exact(const GaussVector& f, const GaussVector& g) {
  SqrtPiSum acc;
  for (const auto& [kf, cf] : f.terms()) {
    for (const auto& [kg, cg] : g.terms()) {
      if (kf.width.re != 0 || kg.width.re != 0)
        throw std::domain_error(
            "inner_product_exact: widths must be purely imaginary");
      long total = kf.power + kg.power;
      if (total % 2 != 0) continue;
      long n = total / 2;
      // s = (w_f + w_g)/2 for widths z = i w
      BigRat s = (kf.width.im + kg.width.im) / 2;
      ExactScalar c = cf.conj() * cg *
                      ExactScalar(BigRat(double_factorial_odd(n)) / pow_rat(2 * s, n));
      acc += SqrtPiSum::rational_multiple(c).times_sqrt(1 / s);
    }
  }
  return acc;
}

ExactScalar imaginary_width(const BigRat& w, const EpsParam& eps) {
  if (w <= 0) throw std::domain_error("imaginary_width: w must be positive");
  return ExactScalar(BigRat(0), w / eps.sqrt_rational());
}

GaussVector monomial_gaussian(const BigRat& alpha, long power,
                              const EpsParam& eps) {
  return GaussVector::monomial(ExactScalar{1}, power,
                               imaginary_width(alpha, eps));
}

GaussVectorF to_float(const GaussVector& v) {
  GaussVectorF out;
  for (const auto& [k, c] : v.terms()) {
    std::complex<double> w(to_double(k.width.re), to_double(k.width.im));
    std::complex<double> a(to_double(c.re), to_double(c.im));
    out.add_term(a, k.power, w);
  }
  return out;
}

std::map<long, ExactScalar> power_t_closed(long n, long m, const BigRat& alpha,
                                           const EpsParam& eps) {
  if (n < 0 || m < 0)
    throw std::domain_error("power_t_closed: n, m must be nonnegative");
  const ExactScalar ai(BigRat(0), alpha);
  const ExactScalar mi_se(BigRat(0), -eps.sqrt_rational());
  std::map<long, ExactScalar> table;
  for (long k = 0; k <= std::min(n, m); ++k) {
    ExactScalar c(BigRat(binomial(n, k) * binomial(m, k) * factorial(k)) *
                  pow_rat(BigRat(2), k));
    c *= pow_int(ai, n - k) * pow_int(mi_se, k);
    if (!c.is_zero()) table[2 * m - 2 * k] = c;
  }
  return table;
}

std::string to_text(const GaussVector& v) {
  std::ostringstream os;
  for (const auto& [k, c] : v.terms()) {
    os << rat_to_string(c.re) << " " << rat_to_string(c.im) << " " << k.power
       << " " << rat_to_string(k.width.re) << " " << rat_to_string(k.width.im)
       << "\n";
  }
  return os.str();
}

GaussVector gauss_from_text(const std::string& text) {
  GaussVector v;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cre, cim, zre, zim;
    long power;
    if (!(ls >> cre >> cim >> power >> zre >> zim))
      throw std::runtime_error("gauss_from_text: malformed line: " + line);
    v.add_term(ExactScalar(rat_from_string(cre), rat_from_string(cim)), power,
               ExactScalar(rat_from_string(zre), rat_from_string(zim)));
  }
  return v;
}

std::string to_json(const GaussVector& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : v.terms()) {
    terms.push_back({{"coeff_re", rat_to_string(c.re)},
                     {"coeff_im", rat_to_string(c.im)},
                     {"power", k.power},
                     {"z_re", rat_to_string(k.width.re)},
                     {"z_im", rat_to_string(k.width.im)}});
  }
  return nlohmann::json{{"terms", terms}}.dump(2);
}

GaussVector gauss_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  GaussVector v;
  for (const auto& t : j.at("terms")) {
    v.add_term(ExactScalar(rat_from_string(t.at("coeff_re")),
                           rat_from_string(t.at("coeff_im"))),
               t.at("power").get<long>(),
               ExactScalar(rat_from_string(t.at("z_re")),
                           rat_from_string(t.at("z_im"))));
  }
  return v;
}

}  // namespace timeop
