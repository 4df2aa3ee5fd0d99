// Batch driver: each experiment family behind one subcommand, emitting
// schema-versioned CSV/JSON tables.  A fixed seed fixes every random draw,
// so identical invocations produce identical bytes.

#include <timeop/acceptance.hpp>
#include <timeop/errors.hpp>
#include <timeop/forms.hpp>
#include <timeop/gauss.hpp>
#include <timeop/hermite.hpp>
#include <timeop/povm.hpp>
#include <timeop/table.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

using namespace timeop;

namespace {

const double kTwoPi = 2 * M_PI;

struct Options {
  std::string out;
  std::string format = "csv";
  std::string form = "t_eps";
  std::string kind = "k";
  int precision = 15;
  std::uint64_t seed = 1;
  long big_n = 100;
  long pairs = 10;
  double tol = 1e-10;
  double perturb = 0.0;
  std::vector<std::string> eps_s, alpha_s, beta_s, z_s;
  std::vector<long> powers, m_list;
  bool eps_given = false, alpha_given = false, powers_given = false;
};

std::vector<BigRat> parse_rats(const std::vector<std::string>& in) {
  std::vector<BigRat> out;
  for (const auto& s : in) {
    if (s == "none") continue;
    try {
      out.push_back(rat_from_string(s));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a rational like 3/4, got '" + s +
                                  "'");
    }
  }
  return out;
}

// tokens like "0.4+0.3i", "-0.2+0.5i", "0.7i", "i", "2"
std::complex<double> parse_complex(const std::string& token) {
  std::string s = token;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  const bool has_i = s.back() == 'i';
  if (has_i) s.pop_back();
  size_t split = std::string::npos;
  for (size_t k = 1; k < s.size(); ++k)
    if (s[k] == '+' || s[k] == '-') split = k;
  auto num = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    size_t used = 0;
    double v = std::stod(part, &used);
    if (used != part.size())
      throw std::invalid_argument("bad complex literal");
    return v;
  };
  if (!has_i) return {num(s), 0.0};
  if (split == std::string::npos) return {0.0, num(s)};
  return {num(s.substr(0, split)), num(s.substr(split))};
}

std::vector<std::complex<double>> parse_complex_list(
    const std::vector<std::string>& in) {
  std::vector<std::complex<double>> out;
  for (const auto& s : in) {
    if (s == "none") continue;
    out.push_back(parse_complex(s));
  }
  return out;
}

int write_text(const std::string& text, const Options& o) {
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "cannot open output path: %s\n", o.out.c_str());
    return 64;
  }
  f << text;
  return 0;
}

int emit(const Table& t, const Options& o) { return write_text(t.render(o.format), o); }

// the config language is strictly flat key=value (plus comments); anything
// else in the file is a usage error, not something to skip silently
bool config_file_well_formed(const std::string& path, std::string& bad_line) {
  std::ifstream f(path);
  if (!f) {
    bad_line = "cannot open " + path;
    return false;
  }
  std::string line;
  while (std::getline(f, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char c = line[first];
    if (c == '#' || c == ';') continue;
    if (line.find('=') == std::string::npos) {
      bad_line = line;
      return false;
    }
  }
  return true;
}

std::string fl(long v) { return std::to_string(v); }

// ---- form-eval ----------------------------------------------------------------

int cmd_form_eval(const Options& o) {
  Table t;
  t.schema = "timeop.form-eval v1";
  t.columns = {"kind", "form",  "eps", "alpha",      "beta",
               "a",    "b",     "re",  "im",         "units",
               "truncation",    "residual"};
  const long a = o.powers.size() > 0 ? o.powers[0] : 2;
  const long b = o.powers.size() > 1 ? o.powers[1] : 0;
  auto fd = [&](double v) { return fmt_double(v, o.precision); };

  if (o.form == "t_hat") {
    const auto zs = parse_complex_list(o.z_s);
    for (const auto& z : zs) {
      const std::complex<double> v = t_hat_form(a, b, z);
      t.add_row({"data", "t_hat", "-", fd(z.real()), fd(z.imag()), fl(a),
                 fl(b), fd(v.real()), fd(v.imag()), "absolute", "-", "-"});
    }
    return emit(t, o);
  }

  const std::vector<BigRat> alphas = parse_rats(o.alpha_s);
  const std::vector<BigRat> betas = parse_rats(o.beta_s);
  const std::vector<BigRat> epses =
      o.form == "t_ab" ? std::vector<BigRat>{BigRat(1)} : parse_rats(o.eps_s);

  struct Point {
    BigRat eps, alpha, beta;
  };
  std::vector<Point> grid;
  for (const BigRat& e : epses)
    for (const BigRat& al : alphas)
      for (const BigRat& be : betas) grid.push_back({e, al, be});

  std::vector<std::vector<std::string>> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    const Point& p = grid[i];
    const EpsParam eps(p.eps);
    const GaussVector psi = monomial_gaussian(p.alpha, a, eps);
    const GaussVector phi = monomial_gaussian(p.beta, b, eps);
    const FormValue v = o.form == "t_ab" ? t_ab_form(psi, phi)
                                         : t_eps_form(psi, phi, eps);
    const std::string residual =
        v.exact ? fmt_double(std::abs(v.exact->value() - v.numeric), 3) : "-";
    rows[i] = {"data",
               o.form,
               o.form == "t_ab" ? "-" : fmt_rat(p.eps),
               fmt_rat(p.alpha),
               fmt_rat(p.beta),
               fl(a),
               fl(b),
               fd(v.numeric.real()),
               fd(v.numeric.imag()),
               "absolute",
               "-",
               residual};
  });
  for (auto& row : rows) t.add_row(std::move(row));
  return emit(t, o);
}

// ---- ccr ------------------------------------------------------------------------

int cmd_ccr(const Options& o) {
  Table t;
  t.schema = "timeop.ccr v1";
  t.columns = {"kind", "form", "eps", "z", "pair", "re", "im", "scale", "pass"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };
  const double s_scale = 1.0 + o.perturb;
  const long a = o.powers.size() > 0 ? o.powers[0] : 2;
  const long b = o.powers.size() > 1 ? o.powers[1] : 0;

  struct Job {
    std::string eps = "-", z = "-";
    long pair = 0;
    GaussVector psi, phi;
    std::complex<double> zval{};
    bool continued = false;
    std::optional<EpsParam> eps_param;
    CcrReport rep;
  };
  std::vector<Job> jobs;
  std::mt19937_64 rng(o.seed);

  if (o.form == "t_eps") {
    for (const BigRat& e : parse_rats(o.eps_s)) {
      for (long i = 0; i < o.pairs; ++i) {
        Job j;
        j.eps = fmt_rat(e);
        j.pair = i;
        j.eps_param = EpsParam(e);
        std::tie(j.psi, j.phi) = random_overlapping_pair(rng);
        jobs.push_back(std::move(j));
      }
    }
  } else if (o.form == "t_ab") {
    for (long i = 0; i < o.pairs; ++i) {
      Job j;
      j.pair = i;
      std::tie(j.psi, j.phi) = random_overlapping_pair(rng);
      jobs.push_back(std::move(j));
    }
  } else if (o.form == "t_hat") {
    long i = 0;
    for (const auto& z : parse_complex_list(o.z_s)) {
      Job j;
      j.z = fd(z.real()) + (z.imag() < 0 ? "" : "+") + fd(z.imag()) + "i";
      j.pair = i++;
      j.zval = z;
      j.continued = true;
      jobs.push_back(std::move(j));
    }
  } else {
    std::fprintf(stderr, "ccr: unknown form %s\n", o.form.c_str());
    return 64;
  }

  parallel_for(jobs.size(), [&](size_t i) {
    Job& j = jobs[i];
    if (j.continued) {
      const auto psi = GaussVectorF::monomial({1.0, 0.0}, a, j.zval);
      const auto phi = GaussVectorF::monomial({1.0, 0.0}, b, j.zval);
      j.rep = ccr_residual_continued(psi, phi, o.tol, s_scale);
    } else if (j.eps_param) {
      j.rep = ccr_residual(CcrForm::TEps, j.psi, j.phi, *j.eps_param, o.tol,
                           s_scale);
    } else {
      j.rep = ccr_residual(CcrForm::TAb, j.psi, j.phi, EpsParam(BigRat(1)),
                           o.tol, s_scale);
    }
  });

  bool all = true;
  for (const Job& j : jobs) {
    all = all && j.rep.pass;
    t.add_row({"data", o.form, j.eps, j.z, fl(j.pair),
               fd(j.rep.residual.real()), fd(j.rep.residual.imag()),
               fd(j.rep.scale), j.rep.pass ? "1" : "0"});
  }
  t.add_row({"verdict", o.form, "-", "-", fl(static_cast<long>(jobs.size())),
             "-", "-", "-", all ? "1" : "0"});
  const int rc = emit(t, o);
  if (rc != 0) return rc;
  return all ? 0 : 3;
}

// ---- matrix ----------------------------------------------------------------------

int cmd_matrix(const Options& o) {
  if (o.kind == "tg") {
    const TgMatrix m = tg_matrix(o.big_n);
    return write_text(m.export_text(), o);
  }
  if (o.kind != "k" && o.kind != "l") {
    std::fprintf(stderr, "matrix: kind must be k, l, or tg\n");
    return 64;
  }
  Table t;
  t.schema = "timeop.matrix v1";
  t.columns = {"kind", "entry", "a",  "b",  "eps",
               "alpha", "beta", "re", "im", "exact"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };
  const std::vector<BigRat> alphas = parse_rats(o.alpha_s);
  const std::vector<BigRat> betas = parse_rats(o.beta_s);
  const std::vector<BigRat> epses = parse_rats(o.eps_s);
  if (alphas.empty() || betas.empty() || epses.empty()) return emit(t, o);
  const BigRat alpha = alphas.front(), beta = betas.front();
  const EpsParam eps(epses.front());

  std::vector<std::pair<long, long>> grid;
  for (long a : o.powers)
    for (long b : o.powers) grid.emplace_back(a, b);
  std::vector<std::vector<std::string>> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    const auto [a, b] = grid[i];
    const FormValue v = o.kind == "k"
                            ? k_matrix_element(a, b, alpha, beta, eps)
                            : l_matrix_element(a, b, alpha, beta, eps);
    rows[i] = {"data",          o.kind,        fl(a),
               fl(b),           fmt_rat(epses.front()), fmt_rat(alpha),
               fmt_rat(beta),   fd(v.numeric.real()),   fd(v.numeric.imag()),
               v.exact ? "1" : "0"};
  });
  for (auto& row : rows) t.add_row(std::move(row));
  return emit(t, o);
}

// ---- continuum -------------------------------------------------------------------

int cmd_continuum(const Options& o) {
  Table t;
  t.schema = "timeop.continuum v1";
  t.columns = {"kind", "pair", "eps", "diff", "slope", "endpoint_gap", "status"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };

  std::vector<BigRat> eps_list = parse_rats(o.eps_s);
  if (!o.eps_given) {
    eps_list.clear();
    for (int j = 2; j <= 10; ++j) eps_list.emplace_back(1, 1 << j);
  }
  std::mt19937_64 rng(o.seed);
  std::vector<std::pair<GaussVector, GaussVector>> prs;
  for (long i = 0; i < o.pairs; ++i) prs.push_back(random_sweep_pair(rng));

  std::vector<SweepResult> sweeps(prs.size());
  std::vector<SweepResult> endpoints(prs.size());
  parallel_for(prs.size(), [&](size_t i) {
    sweeps[i] = continuum_sweep(prs[i].first, prs[i].second, eps_list);
    endpoints[i] = continuum_sweep(prs[i].first, prs[i].second, {BigRat(1)});
  });

  bool all = true;
  double worst_slope = 1.0, worst_gap = 0.0;
  for (size_t i = 0; i < prs.size(); ++i) {
    for (const SweepRow& row : sweeps[i].rows)
      t.add_row({"data", fl(static_cast<long>(i)), fd(row.eps), fd(row.diff),
                 "-", "-", "-"});
    const double gap = endpoints[i].endpoint_gap;
    const bool ok = sweeps[i].slope >= 0.9 && sweeps[i].slope <= 1.1 &&
                    gap >= 0 && gap <= 1e-10 * (1 + std::abs(endpoints[i].t_ab));
    all = all && ok;
    if (std::abs(sweeps[i].slope - 1) > std::abs(worst_slope - 1))
      worst_slope = sweeps[i].slope;
    worst_gap = std::max(worst_gap, gap);
    t.add_row({"fit", fl(static_cast<long>(i)), "-", "-", fd(sweeps[i].slope),
               fd(gap), ok ? "1" : "0"});
  }
  t.add_row({"verdict", fl(o.pairs), "-", "-", fd(worst_slope), fd(worst_gap),
             all ? "1" : "0"});
  const int rc = emit(t, o);
  if (rc != 0) return rc;
  return all ? 0 : 3;
}

// ---- diverge ---------------------------------------------------------------------

int cmd_diverge(const Options& o) {
  Table t;
  t.schema = "timeop.diverge v1";
  t.columns = {"kind", "m", "M", "value", "c", "d", "rel_err", "status"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };
  const std::vector<long> ms = o.powers_given ? o.powers : std::vector<long>{0, 2};
  const std::vector<long> Ms =
      o.m_list.empty() ? std::vector<long>{1000, 10000, 100000, 1000000}
                       : o.m_list;
  const EpsParam eps(parse_rats(o.eps_s).empty() ? BigRat(1)
                                                 : parse_rats(o.eps_s).front());
  bool all = true;
  double worst = 0;
  for (long m : ms) {
    const auto rows = divergence_probe(m, eps, Ms);
    const DivergenceFit fit = divergence_fit(rows);
    for (const auto& row : rows)
      t.add_row({"data", fl(m), fl(row.M), fd(row.value), "-", "-", "-", "-"});
    const bool ok = fit.max_rel_err <= 0.05;
    all = all && ok;
    worst = std::max(worst, fit.max_rel_err);
    t.add_row({"fit", fl(m), "-", "-", fd(fit.c), fd(fit.d),
               fd(fit.max_rel_err), ok ? "1" : "0"});
  }
  t.add_row({"verdict", "-", "-", "-", "-", "-", fd(worst), all ? "1" : "0"});
  const int rc = emit(t, o);
  if (rc != 0) return rc;
  return all ? 0 : 3;
}

// ---- continue --------------------------------------------------------------------

int cmd_continue(const Options& o) {
  Table t;
  t.schema = "timeop.continue v1";
  t.columns = {"kind", "a", "b", "z_re", "z_im", "re", "im", "gap", "status"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };
  const long a = o.powers.size() > 0 ? o.powers[0] : 2;
  const long b = o.powers.size() > 1 ? o.powers[1] : 0;
  bool all = true;
  double worst_gap = 0, worst_loop = 0;

  for (const auto& z : parse_complex_list(o.z_s)) {
    const std::complex<double> v = t_hat_form(a, b, z);
    t.add_row({"data", fl(a), fl(b), fd(z.real()), fd(z.imag()),
               fd(v.real()), fd(v.imag()), "-", "-"});
  }
  for (const BigRat& alpha : parse_rats(o.alpha_s)) {
    const double ad = rat_as<double>(alpha);
    const std::complex<double> via_complex = t_hat_form(a, b, {0.0, ad});
    const std::complex<double> via_real =
        k_matrix_element(a, b, alpha, alpha, EpsParam(BigRat(1))).numeric;
    const double gap =
        std::abs(via_complex - via_real) / (1 + std::abs(via_real));
    const bool ok = gap <= o.tol;
    all = all && ok;
    worst_gap = std::max(worst_gap, gap);
    t.add_row({"restrict", fl(a), fl(b), "0", fd(ad), fd(via_complex.real()),
               fd(via_complex.imag()), fd(gap), ok ? "1" : "0"});
  }
  const std::vector<std::vector<std::complex<double>>> loops = {
      {{0.2, 0.2}, {0.8, 0.4}, {0.1, 0.7}},
      {{-0.5, 0.1}, {0.5, 0.1}, {0.5, 0.6}, {-0.5, 0.6}},
      {{-0.3, 0.3}, {-0.1, 0.9}, {-0.7, 0.5}}};
  long loop_id = 0;
  for (const auto& loop : loops) {
    const double mag = std::abs(analyticity_check(a, b, loop, 64));
    const bool ok = mag <= 1e-8;
    all = all && ok;
    worst_loop = std::max(worst_loop, mag);
    t.add_row({"loop", fl(a), fl(b), fl(loop_id++), "-", fd(mag), "-", "-",
               ok ? "1" : "0"});
  }
  t.add_row({"verdict", fl(a), fl(b), "-", "-", fd(worst_loop), "-",
             fd(worst_gap), all ? "1" : "0"});
  const int rc = emit(t, o);
  if (rc != 0) return rc;
  return all ? 0 : 3;
}

// ---- povm ------------------------------------------------------------------------

int cmd_povm(const Options& o) {
  Table t;
  t.schema = "timeop.povm v1";
  t.columns = {"kind", "quantity", "N", "value", "status"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };
  const long N = o.big_n;
  bool all = true;
  auto row = [&](const std::string& q, long n, const std::string& value,
                 bool ok) {
    all = all && ok;
    t.add_row({"data", q, fl(n), value, ok ? "1" : "0"});
  };

  const CommutatorReport rep = commutator_check(N);
  row("commutator_entries", N, rep.entries_match ? "1" : "0",
      rep.entries_match);
  row("commutator_action", N, rep.difference_action_matches ? "1" : "0",
      rep.difference_action_matches);

  const double est = norm_bound_check(N);
  row("norm_estimate", N, fd(est), est <= kTwoPi);

  std::mt19937_64 rng(o.seed);
  const HermiteFrame frame(12, EpsParam{BigRat(1)});
  double worst_ratio = 0;
  for (long i = 0; i < o.pairs; ++i) {
    const GaussVector f = random_frame_vector(frame, 12, rng);
    const GaussVector g = random_frame_vector(frame, 12, rng);
    const TgFormValue v = tg_form(f, g, N);
    const double bound =
        kTwoPi * std::sqrt(inner_product_exact(f, f).value().real()) *
        std::sqrt(inner_product_exact(g, g).value().real());
    worst_ratio = std::max(worst_ratio, std::abs(v.value) / bound);
  }
  row("pairing_bound_ratio", N, fd(worst_ratio), worst_ratio <= 1 + 1e-9);

  const GaussVector h = random_frame_vector(frame, 8, rng);
  const PovmWeight total =
      povm_weight(AngleInterval{BigRat(0), BigRat(2)}, h, 12);
  row("weight_total", 12, fd(total.value), total.exact_one && total.value == 1.0);
  const PovmWeight lo = povm_weight(AngleInterval{BigRat(0), BigRat(1)}, h, 12);
  const PovmWeight hi = povm_weight(AngleInterval{BigRat(1), BigRat(2)}, h, 12);
  row("weight_halves", 12, fd(lo.value + hi.value),
      std::abs(lo.value + hi.value - 1.0) <= 1e-12);

  t.add_row({"verdict", "all", fl(N), "-", all ? "1" : "0"});
  const int rc = emit(t, o);
  if (rc != 0) return rc;
  return all ? 0 : 3;
}

// ---- contrast --------------------------------------------------------------------

int cmd_contrast(const Options& o) {
  Table t;
  t.schema = "timeop.contrast v1";
  t.columns = {"kind", "k", "alpha", "unbounded", "bounded", "increment",
               "status"};
  auto fd = [&](double v) { return fmt_double(v, o.precision); };
  const long k = o.powers_given && !o.powers.empty() ? o.powers[0] : 0;
  std::vector<BigRat> alphas = parse_rats(o.alpha_s);
  if (!o.alpha_given) {
    alphas.clear();
    for (int j = 1; j <= 10; ++j)
      alphas.emplace_back(BigRat((1 << j) - 1, 1 << j));
  }
  const auto rows = contrast_sweep(k, alphas, o.big_n);
  bool all = true;
  double bounded_max = 0, unbounded_max = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const bool ok = rows[i].bounded_value <= kTwoPi * (1 + 1e-9);
    all = all && ok;
    bounded_max = std::max(bounded_max, rows[i].bounded_value);
    unbounded_max = std::max(unbounded_max, rows[i].unbounded_value);
    t.add_row({"data", fl(k), fmt_rat(alphas[i]), fd(rows[i].unbounded_value),
               fd(rows[i].bounded_value), fd(rows[i].bounded_increment),
               ok ? "1" : "0"});
  }
  // the sweep only shows a contrast once the band value escapes the bound
  const bool escaped = unbounded_max > kTwoPi;
  all = all && escaped;
  t.add_row({"verdict", fl(k), "-", fd(unbounded_max), fd(bounded_max), "-",
             all ? "1" : "0"});
  const int rc = emit(t, o);
  if (rc != 0) return rc;
  return all ? 0 : 3;
}

// ---- acceptance ------------------------------------------------------------------

int cmd_acceptance(const Options& o) {
  const auto results = run_acceptance(o.seed);
  std::fputs(acceptance_report(results).c_str(), stdout);
  bool all = true;
  Table t;
  t.schema = "timeop.acceptance v1";
  t.columns = {"kind", "criterion", "name", "status", "detail"};
  for (const auto& r : results) {
    all = all && r.pass;
    t.add_row({"data", fl(r.index), r.name, r.pass ? "1" : "0", r.detail});
  }
  t.add_row({"verdict", "-", "all", all ? "1" : "0", "-"});
  if (!o.out.empty()) {
    const int rc = write_text(t.render(o.format), o);
    if (rc != 0) return rc;
  }
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-operator batch driver"};
  app.fallthrough();  // global options may follow the subcommand name
  app.set_config("--config", "", "flat key=value configuration file");
  Options o;
  app.add_option("--out", o.out, "output path (default: stdout)");
  app.add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--precision", o.precision, "printed digits (1..17)")
      ->check(CLI::Range(1, 17));
  app.add_option("--seed", o.seed, "random seed; fixes all draws");
  app.add_option("--eps", o.eps_s, "scale parameters, rationals like 1/4")
      ->delimiter(',');
  app.add_option("--alpha", o.alpha_s, "first band parameters")->delimiter(',');
  app.add_option("--beta", o.beta_s, "second band parameters")->delimiter(',');
  app.add_option("--powers", o.powers, "slot powers / indices")->delimiter(',');
  app.add_option("--z", o.z_s, "complex parameters like 0.4+0.3i")
      ->delimiter(',');
  app.add_option("--bigN", o.big_n, "truncation order");
  app.add_option("--M-list", o.m_list, "series depths")->delimiter(',');
  app.add_option("--pairs", o.pairs, "number of random pairs");
  app.add_option("--form", o.form, "t_eps | t_ab | t_hat");
  app.add_option("--kind", o.kind, "matrix flavor: k | l | tg");
  app.add_option("--tol", o.tol, "residual tolerance");
  app.add_option("--perturb-s", o.perturb,
                 "defect injector: scales the angle-operator values by 1+x");

  app.require_subcommand(1);
  CLI::App* sub_form = app.add_subcommand("form-eval", "closed-form values on a grid");
  CLI::App* sub_ccr = app.add_subcommand("ccr", "commutation residual sweep");
  CLI::App* sub_matrix = app.add_subcommand("matrix", "matrix elements and operator export");
  CLI::App* sub_cont = app.add_subcommand("continuum", "small-parameter limit sweep");
  CLI::App* sub_div = app.add_subcommand("diverge", "band-edge divergence probe");
  CLI::App* sub_anal = app.add_subcommand("continue", "analytic continuation checks");
  CLI::App* sub_povm = app.add_subcommand("povm", "bounded-operator identities");
  CLI::App* sub_contrast = app.add_subcommand("contrast", "bounded/unbounded contrast");
  CLI::App* sub_acc = app.add_subcommand("acceptance", "full verification gate");

  app.allow_config_extras(CLI::config_extras_mode::error);

  // reject malformed config files up front; the config reader skips what it
  // cannot parse, which would hide typos
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    if (!path.empty()) {
      std::string bad;
      if (!config_file_well_formed(path, bad)) {
        std::fprintf(stderr, "config parse error: %s\n", bad.c_str());
        return 64;
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }
  o.eps_given = app.count("--eps") > 0;
  o.alpha_given = app.count("--alpha") > 0;
  o.powers_given = app.count("--powers") > 0;
  if (!o.eps_given) o.eps_s = {"1"};
  if (!o.alpha_given) o.alpha_s = {"1/2"};
  if (app.count("--beta") == 0) o.beta_s = {"1/2"};
  if (!o.powers_given) o.powers = {2, 0};
  if (app.count("--z") == 0) o.z_s = {"0.4+0.3i", "-0.2+0.5i", "0.1+0.8i"};

  try {
    if (sub_form->parsed()) return cmd_form_eval(o);
    if (sub_ccr->parsed()) return cmd_ccr(o);
    if (sub_matrix->parsed()) return cmd_matrix(o);
    if (sub_cont->parsed()) return cmd_continuum(o);
    if (sub_div->parsed()) return cmd_diverge(o);
    if (sub_anal->parsed()) return cmd_continue(o);
    if (sub_povm->parsed()) return cmd_povm(o);
    if (sub_contrast->parsed()) return cmd_contrast(o);
    if (sub_acc->parsed()) return cmd_acceptance(o);
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const PoleError& e) {
    std::fprintf(stderr, "domain error (pole): %s\n", e.what());
    return 2;
  } catch (const BranchCutError& e) {
    std::fprintf(stderr, "domain error (branch cut): %s\n", e.what());
    return 2;
  } catch (const SingularPointError& e) {
    std::fprintf(stderr, "domain error (singular point): %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 64;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 70;
  }
  return 64;
}
