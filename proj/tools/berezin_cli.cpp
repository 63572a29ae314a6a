// SPDX-License-Identifier: Apache-2.0
// Command-line front end: verification suites, level densities, Bessel values.
//
// Exit codes: 0 pass, 1 verification failure, 2 configuration error, 3 domain error.

#include "berezin/rmt.hpp"
#include "berezin/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace berezin;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

constexpr const char *kConfigHelp = R"(Config file (--config FILE): plain text, one "key = value" per line,
'#' starts a comment. Shared keys sit at the top; subcommand keys go under
a [density] or [bessel.u22] style section header. Lists use [a, b, c].

  # example
  psi = 1.5707963267949
  tolerance = 1e-9
  seed = 7
  max-L = 2
  [density]
  ensemble = "GOE"
  N = 2
  x = [-1.2, 0.0, 1.3]
)";

struct Output {
  std::ofstream file;
  std::ostream *json = &std::cout;
  std::ostream *table = &std::cerr;

  explicit Output(const std::string &path)
  {
    if (path.empty()) {
      return;
    }
    file.open(path, std::ios::binary);
    if (!file) {
      throw std::invalid_argument("cannot open output file '" + path + "'");
    }
    json = &file;
    table = &std::cout;
  }
};

int cmd_verify(const std::string &suite, const RunConfig &cfg, const std::string &out_path)
{
  const auto reports = run_suite(suite, cfg);
  Output out(out_path);
  for (const auto &r : reports) {
    *out.json << r.to_json().dump() << '\n';
  }
  out.json->flush();
  *out.table << summary_table(reports);
  return summarize(reports).failed ? kExitFail : kExitPass;
}

struct DensityArgs {
  std::string ensemble = "GUE";
  int N = 3;
  std::vector<double> xs = {-1.5, -0.6, 0.0, 0.7, 1.6};
  std::uint64_t samples = 1000000;
  double bin_width = 0.05;
};

int cmd_density(const DensityArgs &a, const RunConfig &cfg, const std::string &out_path)
{
  cfg.validate();
  if (a.ensemble != "GUE" && a.ensemble != "GOE") {
    throw std::invalid_argument("ensemble must be GUE or GOE");
  }
  if (a.N < 1 || a.N > 20) {
    throw std::invalid_argument("N must lie in [1, 20]");
  }
  if (!(a.bin_width > 0.0 && a.bin_width <= 0.5) || a.samples == 0) {
    throw std::invalid_argument("bin-width must lie in (0, 0.5] and samples must be positive");
  }
  const Ensemble ens = a.ensemble == "GUE" ? Ensemble::GUE : Ensemble::GOE;
  const double psi = cfg.psi.value_or(std::numbers::pi / 2);
  const double tol = cfg.tolerance.value_or(ens == Ensemble::GUE ? 1e-3 : 2e-2);
  const double window = generator_window(ens, psi);
  for (double x : a.xs) {
    if (!(std::abs(x) <= window)) {
      throw std::domain_error("x = " + format15(x) + " lies outside the accurate window |x| <= " + format15(window));
    }
  }
  if (ens == Ensemble::GOE && a.N % 2) {
    throw std::domain_error("the orthogonal generator needs even N");
  }
  EnsembleSpec e;
  e.ensemble = ens;
  e.N = a.N;
  e.wick = WickRotation(psi);
  auto zm1 = [&](double x, double J) {
    return ens == Ensemble::GUE ? gue_generating_function_minus_one(e, {x, J})
                                : goe_generating_function_minus_one(e, {x, J}, kGoeDensityScale);
  };
  /* bins centred on multiples of the bin width */
  const double w = a.bin_width;
  const Histogram h = mc_density_oracle(ens, a.N, a.samples, w, cfg.seed, -6.0 - w / 2, 6.0 + w / 2);

  Output out(out_path);
  std::ostream &os = *out.json;
  os << "x,rho_susy,rho_hermite,rho_mc,abs_err,rel_err,status\n";
  bool ok = true;
  for (double x : a.xs) {
    const double rho = density_from_generating_function(zm1, x).rho;
    const double mc = h.density(x);
    const double ref = ens == Ensemble::GUE ? hermite_density_oracle(a.N, x) : mc;
    const double err = std::abs(rho - ref), rel = err / std::abs(ref);
    const bool row_ok = rel <= tol;
    ok = ok && row_ok;
    os << format15(x) << ',' << format15(rho) << ','
       << (ens == Ensemble::GUE ? format15(hermite_density_oracle(a.N, x)) : std::string()) << ',' << format15(mc)
       << ',' << format15(err) << ',' << format15(rel) << ',' << (row_ok ? "ok" : "MISS") << '\n';
  }
  os.flush();
  *out.table << a.ensemble << " N=" << a.N << ": reference " << (ens == Ensemble::GUE ? "Hermite" : "Monte Carlo")
             << ", tolerance " << format15(tol) << (ok ? ", all rows ok\n" : ", rows flagged MISS\n");
  return ok ? kExitPass : kExitFail;
}

nlohmann::json cjson(cplx z) { return number_json(z); }

int cmd_bessel_u22(const std::vector<double> &s1, const std::vector<double> &s2, const std::vector<double> &x1,
                   const std::vector<double> &x2, const RunConfig &cfg, const std::string &out_path)
{
  cfg.validate();
  if (s1.size() != x1.size() || s2.size() != x2.size() || s1.empty()) {
    throw std::invalid_argument("u22 needs |s1| = |x1| >= 1 and |s2| = |x2|");
  }
  const double psi = cfg.psi.value_or(std::numbers::pi / 2);
  BesselArgs a;
  a.s.psi = psi;
  a.s.s1.assign(s1.begin(), s1.end());
  a.s.s2.assign(s2.begin(), s2.end());
  a.x1 = x1;
  a.x2 = x2;
  const cplx v = supermatrix_bessel_22(a);
  nlohmann::json j;
  j["family"] = "u22";
  j["params"] = {{"s1", s1}, {"s2", s2}, {"x1", x1}, {"x2", x2}, {"psi", number_json(psi)}};
  for (auto key : {"s1", "s2", "x1", "x2"}) {
    for (auto &v2 : j["params"][key]) {
      v2 = number_json(v2.get<double>());
    }
  }
  j["value"] = cjson(v);
  Output out(out_path);
  *out.json << j.dump() << '\n';
  return kExitPass;
}

int cmd_bessel_uosp14(const std::vector<double> &s, const std::vector<double> &x, const RunConfig &cfg,
                      const std::string &out_path)
{
  cfg.validate();
  if (s.size() != 3 || x.size() != 3) {
    throw std::invalid_argument("uosp14 needs --s s11 s21 s2 and --x x11 x21 x2");
  }
  const double psi = cfg.psi.value_or(std::numbers::pi / 2);
  const double tol = cfg.tolerance.value_or(1e-8);
  const cplx closed = supermatrix_bessel_14_21(s[0], s[1], s[2], x[0], x[1], x[2], psi);
  const cplx op = supermatrix_bessel_14_21_operator(s[0], s[1], s[2], x[0], x[1], x[2], psi);
  const double dev = std::abs(closed - op) / std::max(1.0, std::abs(closed));
  nlohmann::json j;
  j["family"] = "uosp14";
  j["params"] = {{"s", nlohmann::json::array()}, {"x", nlohmann::json::array()}, {"psi", number_json(psi)}};
  for (int i = 0; i < 3; i++) {
    j["params"]["s"].push_back(number_json(s[i]));
    j["params"]["x"].push_back(number_json(x[i]));
  }
  j["closed_form"] = cjson(closed);
  j["operator"] = cjson(op);
  j["rel_dev"] = number_json(dev);
  j["tolerance"] = number_json(tol);
  j["pass"] = dev <= tol;
  Output out(out_path);
  *out.json << j.dump() << '\n';
  return dev <= tol ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Berezin integral verification toolkit"};
  app.footer(kConfigHelp);
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a plain-text config file");

  RunConfig cfg;
  std::string out_path;
  double psi = 0, tol = 0;
  int quad = 0, max_L = 0;
  auto *o_psi = app.add_option("--psi", psi, "Wick angle in (0, pi)");
  auto *o_tol = app.add_option("--tolerance", tol, "override the suite tolerance");
  auto *o_quad = app.add_option("--quad-points", quad, "quadrature nodes per axis");
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--out", out_path, "write JSON lines (or CSV) to this file; the summary goes to stdout");
  auto *o_maxL = app.add_option("--max-L", max_L, "cap on Grassmann pairs in the theorem grids");
  app.add_option("--alpha", cfg.alphas, "appendix-a alphas (repeatable)");

  auto *verify = app.add_subcommand("verify", "run a verification suite");
  verify->fallthrough();
  std::string suite = "all";
  verify->add_option("suite", suite, "theorem1 | vectors | matrices | appendix-a | operators | all")
      ->check(CLI::IsMember({"theorem1", "vectors", "matrices", "appendix-a", "operators", "all"}))
      ->capture_default_str();

  auto *density = app.add_subcommand("density", "level density from the generating function against oracles");
  density->fallthrough();
  DensityArgs da;
  density->add_option("--ensemble", da.ensemble, "GUE or GOE")->capture_default_str();
  density->add_option("--N", da.N, "level number")->capture_default_str();
  density->add_option("--x", da.xs, "energy points");
  density->add_option("--samples", da.samples, "Monte-Carlo matrices")->capture_default_str();
  density->add_option("--bin-width", da.bin_width, "histogram bin width")->capture_default_str();

  auto *bessel = app.add_subcommand("bessel", "supermatrix Bessel functions");
  bessel->require_subcommand(1);
  auto *u22 = bessel->add_subcommand("u22", "U(k1/k2) closed form");
  u22->fallthrough();
  std::vector<double> s1{0.8}, s2{0.3}, x1{0.6}, x2{-0.3};
  u22->add_option("--s1", s1, "boson eigenvalues");
  u22->add_option("--s2", s2, "fermion eigenvalues (before the Wick factor)");
  u22->add_option("--x1", x1, "boson source");
  u22->add_option("--x2", x2, "fermion source");
  auto *uosp = bessel->add_subcommand("uosp14", "UOSp(2/2) closed form and operator path");
  uosp->fallthrough();
  std::vector<double> us{0.7, -0.4, 0.5}, ux{0.3, -0.2, 0.6};
  uosp->add_option("--s", us, "s11 s21 s2");
  uosp->add_option("--x", ux, "x11 x21 x2");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  if (*o_psi) {
    cfg.psi = psi;
  }
  if (*o_tol) {
    cfg.tolerance = tol;
  }
  if (*o_quad) {
    cfg.quad_points = quad;
  }
  if (*o_maxL) {
    cfg.max_L = max_L;
  }

  try {
    if (*verify) {
      return cmd_verify(suite, cfg, out_path);
    }
    if (*density) {
      return cmd_density(da, cfg, out_path);
    }
    if (*u22) {
      return cmd_bessel_u22(s1, s2, x1, x2, cfg, out_path);
    }
    if (*uosp) {
      return cmd_bessel_uosp14(us, ux, cfg, out_path);
    }
  }
  catch (const std::domain_error &e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  catch (const std::invalid_argument &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitConfig;
}
