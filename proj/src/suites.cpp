// SPDX-License-Identifier: Apache-2.0
#include "berezin/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace berezin {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> psi_sweep(const RunConfig &cfg)
{
  if (cfg.psi) {
    return {*cfg.psi};
  }
  return {kPi / 3, kPi / 2, 2 * kPi / 3};
}

void append(std::vector<VerificationReport> &out, std::vector<VerificationReport> more)
{
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<VerificationReport> theorem1_suite(const RunConfig &cfg)
{
  std::vector<VerificationReport> out = verify_measure();
  Theorem1Config t = default_theorem1_config();
  t.psis = psi_sweep(cfg);
  t.tolerance = cfg.tolerance.value_or(1e-9);
  if (cfg.max_L) {
    t.max_L_real = std::min(t.max_L_real, *cfg.max_L);
    t.max_L_complex = std::min(t.max_L_complex, *cfg.max_L);
    t.max_L_quaternion = std::min(t.max_L_quaternion, *cfg.max_L);
  }
  append(out, verify_theorem1(t));
  return out;
}

std::vector<VerificationReport> vectors_suite(const RunConfig &cfg)
{
  const double tol = cfg.tolerance.value_or(1e-6);
  const int n = cfg.quad_points.value_or(40);
  const auto prof = gaussian_vector_profile(1.0);
  const std::vector<std::tuple<Flavor, int, int>> cases = {
      {Flavor::Real, 2, 1},    {Flavor::Real, 2, 2},    {Flavor::Real, 1, 2},       {Flavor::Real, 3, 1},
      {Flavor::Real, 4, 1},    {Flavor::Complex, 1, 1}, {Flavor::Complex, 2, 2},    {Flavor::Complex, 2, 1},
      {Flavor::Quaternion, 1, 1}};
  std::vector<VerificationReport> out;
  for (auto [f, p, L] : cases) {
    if (cfg.max_L && L > *cfg.max_L) {
      continue;
    }
    out.push_back(verify_vector_theorem(f, p, L, prof, n, tol));
  }
  return out;
}

std::vector<VerificationReport> matrices_suite(const RunConfig &cfg)
{
  const int n = cfg.quad_points.value_or(24);
  const auto prof = standard_matrix_profiles()[0];
  std::vector<VerificationReport> out;
  for (double psi : psi_sweep(cfg)) {
    out.push_back(verify_matrix_theorem(Symmetry::U, 1, 1, psi, prof, n, cfg.tolerance.value_or(1e-6)));
    for (auto [sym, k1, k2] : {std::tuple{Symmetry::U, 2, 2}, std::tuple{Symmetry::U, 1, 2},
                               std::tuple{Symmetry::U, 2, 1}, std::tuple{Symmetry::UOSpPlus, 2, 1},
                               std::tuple{Symmetry::UOSpPlus, 1, 1}}) {
      out.push_back(verify_matrix_theorem(sym, k1, k2, psi, prof, n, cfg.tolerance.value_or(1e-5)));
    }
  }
  return out;
}

std::vector<VerificationReport> appendix_suite(const RunConfig &cfg)
{
  const std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{2.0, 1.0} : cfg.alphas;
  return verify_appendix_a(alphas, cfg.psi.value_or(kPi / 2), cfg.tolerance.value_or(1e-6));
}

std::vector<VerificationReport> operators_suite(const RunConfig &cfg)
{
  std::vector<VerificationReport> out = verify_operator_identities(cfg.seed);
  append(out, verify_closed_forms());
  return out;
}

}  // namespace

void RunConfig::validate() const
{
  if (psi && !(*psi > 0.0 && *psi < kPi)) {
    throw std::invalid_argument("psi must lie in (0, pi)");
  }
  if (tolerance && !(*tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (quad_points && (*quad_points < 8 || *quad_points > 400)) {
    throw std::invalid_argument("quad-points must lie in [8, 400]");
  }
  if (max_L && (*max_L < 1 || *max_L > 6)) {
    throw std::invalid_argument("max-L must lie in [1, 6]");
  }
  for (double a : alphas) {
    if (!std::isfinite(a) || a == 0.0) {
      throw std::invalid_argument("alpha must be finite and nonzero");
    }
  }
}

const std::vector<std::string> &suite_names()
{
  static const std::vector<std::string> names = {"theorem1", "vectors", "matrices", "appendix-a", "operators"};
  return names;
}

std::vector<VerificationReport> run_suite(const std::string &suite, const RunConfig &cfg)
{
  cfg.validate();
  if (suite == "theorem1") {
    return theorem1_suite(cfg);
  }
  if (suite == "vectors") {
    return vectors_suite(cfg);
  }
  if (suite == "matrices") {
    return matrices_suite(cfg);
  }
  if (suite == "appendix-a") {
    return appendix_suite(cfg);
  }
  if (suite == "operators") {
    return operators_suite(cfg);
  }
  if (suite == "all") {
    std::vector<VerificationReport> out;
    for (const auto &s : suite_names()) {
      append(out, run_suite(s, cfg));
    }
    return out;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

SuiteSummary summarize(const std::vector<VerificationReport> &rs)
{
  SuiteSummary s;
  for (const auto &r : rs) {
    s.total++;
    if (!r.asserted) {
      continue;
    }
    s.asserted++;
    s.failed += r.pass ? 0 : 1;
    s.worst_abs = std::max(s.worst_abs, r.abs_dev);
  }
  return s;
}

std::string format15(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string summary_table(const std::vector<VerificationReport> &rs)
{
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-48s %-12s %-12s %s\n", "theorem", "case", "deviation", "tolerance",
                "status");
  os << line;
  for (const auto &r : rs) {
    std::string key;
    for (auto it = r.params.begin(); it != r.params.end(); ++it) {
      if (!key.empty()) {
        key += ' ';
      }
      key += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    if (key.size() > 48) {
      key = key.substr(0, 45) + "...";
    }
    const char *status = !r.asserted ? "report" : (r.pass ? "pass" : "FAIL");
    std::snprintf(line, sizeof line, "%-12s %-48s %-12.3e %-12.3e %s\n", r.theorem.c_str(), key.c_str(),
                  r.relative ? r.rel_dev : r.abs_dev, r.tolerance, status);
    os << line;
  }
  const auto s = summarize(rs);
  os << s.total << " reports, " << s.asserted << " asserted, " << s.failed << " failed\n";
  return os.str();
}

}  // namespace berezin
