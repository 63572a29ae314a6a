// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Verification harness: Berezin oracles, dual-path checks and the integral
 * theorems for supervectors, supermatrices and the UOSp(1/2) counterexample.
 */

#include "berezin/operators.hpp"
#include "berezin/profile.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/superspace.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace berezin {

struct VerificationReport {
  std::string theorem;
  nlohmann::json params = nlohmann::json::object();
  cplx lhs = 0.0;
  cplx rhs = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  double tolerance = 0.0;
  bool relative = true;   ///< pass criterion uses rel_dev (else abs_dev)
  bool asserted = true;   ///< false for report-only cases
  bool pass = false;
  double seconds = 0.0;
  nlohmann::json extra = nlohmann::json::object();

  /** Fills deviations and the pass flag. rel_dev = abs_dev / max(1, |rhs|). */
  void finish();
  /** Timing excluded so that reports are reproducible byte for byte. */
  nlohmann::json to_json(bool with_timing = false) const;
};

/** Complex number to a JSON pair with 15 significant digits. */
nlohmann::json number_json(cplx z);
nlohmann::json number_json(double x);

/** int f d[eta] at the body point (r, 0, ..., 0). */
cplx berezin_oracle_vector(const GaussianPolyProfile &prof, Flavor f, int p, int L, double r);
/** int f d[eta] at the radial point s. */
cplx berezin_oracle_matrix(const GaussianPolyProfile &prof, Symmetry sym, const EigenvaluePoint &s);

/** D f at r, with f(r) = prof(r^2). */
cplx operator_value_vector(const RadialOperator &D, const GaussianPolyProfile &prof, double r);
/** D f at s, with f(s) = prof(Str s, Str s^2, ...). */
cplx operator_value_matrix(const RadialOperator &D,
                           const GaussianPolyProfile &prof,
                           Symmetry sym,
                           const EigenvaluePoint &s);

struct Theorem1Config {
  int max_p_real = 4;
  int max_L_real = 3;
  int max_p_complex = 3;
  int max_L_complex = 3;
  int max_p_quaternion = 2;
  int max_L_quaternion = 2;
  /** (symmetry, k1, k2) cases. */
  std::vector<std::tuple<Symmetry, int, int>> matrices = {
      {Symmetry::U, 1, 1}, {Symmetry::U, 2, 1}, {Symmetry::U, 1, 2},
      {Symmetry::UOSpPlus, 1, 1}, {Symmetry::UOSpPlus, 2, 1}};
  std::vector<double> psis;
  double tolerance = 1e-9;
};

Theorem1Config default_theorem1_config();
std::vector<VerificationReport> verify_theorem1(const Theorem1Config &cfg);

/** Measure conventions: int (1 + eta* eta) d[eta] and the L = 1 dimensional reduction. */
std::vector<VerificationReport> verify_measure();

/**
 * Integral theorem for a supervector flavor at (p, L): quadrature of the
 * Berezin integral over the commuting entries against the printed right side.
 * Real-vector cases with p < 2L also carry the re-derived right side in extra.
 */
VerificationReport verify_vector_theorem(Flavor f, int p, int L, const GaussianPolyProfile &prof, int quad_points,
                                         double tolerance);

/** Matrix integral theorem for (sym, k1, k2) at psi. */
VerificationReport verify_matrix_theorem(Symmetry sym, int k1, int k2, double psi, const GaussianPolyProfile &prof,
                                         int quad_points, double tolerance);

/** I[f, alpha] = int dx dy (x - w y)^-1 (d_x + alpha w^-1 d_y) f. */
using PlaneFunction = std::function<Jet(const Jet &x, const Jet &y)>;
cplx appendix_integral(const PlaneFunction &f, double alpha, double psi, int angle_points = 96);
bool appendix_admissible(double alpha, double psi);

std::vector<VerificationReport> verify_appendix_a(const std::vector<double> &alphas, double psi, double tolerance);

/** Operator identities: IAd vs binomial sum and commutator identities on random jets. */
std::vector<VerificationReport> verify_operator_identities(std::uint64_t seed);

/** Canonical-form identities of the generic construction against the printed closed forms. */
std::vector<VerificationReport> verify_closed_forms();

}  // namespace berezin
