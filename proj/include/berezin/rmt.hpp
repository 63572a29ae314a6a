// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Gaussian ensembles through supermatrix integrals: one-point generating
 * functions, level densities, supermatrix Bessel functions and the ordinary
 * Itzykson-Zuber integral, with independent oracles.
 */

#include "berezin/operators.hpp"
#include "berezin/superspace.hpp"
#include "berezin/theorems.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace berezin {

enum class Ensemble { GUE, GOE };

std::string to_string(Ensemble e);

/**
 * epsilon = 0 selects the limit eps -> 0+, which is exact here because the
 * s1 contour is moved away from the Sdet poles.
 */
struct EnsembleSpec {
  Ensemble ensemble = Ensemble::GUE;
  int N = 1;
  double epsilon = 0.0;
  WickRotation wick{};
};

struct SourcePoint {
  double x1 = 0.0;
  double J1 = 0.0;
};

struct GeneratingQuadrature {
  int angles = 64;      // GUE polar angles around the shifted pole
  int radial = 48;      // GOE radial nodes per quadrant
  int polar = 40;       // GOE angular nodes per quadrant
  int inner = 80;       // GOE Gauss-Hermite nodes along the shifted R line
  double shift = 1.0;   // contour displacement
};

/** Z(x + J) - 1 for the unitary ensemble. */
cplx gue_generating_function_minus_one(const EnsembleSpec &e, const SourcePoint &pt,
                                       const GeneratingQuadrature &q = {});
cplx gue_generating_function(const EnsembleSpec &e, const SourcePoint &pt, const GeneratingQuadrature &q = {});

/**
 * Z(x + J) - 1 for the orthogonal ensemble, C = c_scale / (2 i w). N must be even.
 * With c_scale = 1 the density comes out kGoeDensityScale^-1 times too large;
 * goe_sum_rule measures the factor.
 */
inline constexpr double kGoeDensityScale = 0.125;
cplx goe_generating_function_minus_one(const EnsembleSpec &e, const SourcePoint &pt, double c_scale = 1.0,
                                       const GeneratingQuadrature &q = {});
cplx goe_generating_function(const EnsembleSpec &e, const SourcePoint &pt, double c_scale = 1.0,
                             const GeneratingQuadrature &q = {});

struct DensityEstimate {
  double rho = 0.0;
  /** |rho(step) - rho(2 step)|. */
  double step_sensitivity = 0.0;
};

/**
 * rho(x) = -(1 / 2 pi) Im dZ/dJ by a central difference in J.
 * zm1(x, J) returns Z - 1.
 */
DensityEstimate density_from_generating_function(const std::function<cplx(double, double)> &zm1, double x1,
                                                 double step = 1e-4);

/**
 * Half-width of the x window where the generators keep double precision: the
 * s2 integrand grows like exp(c(psi) x^2) before cancelling down to the density.
 */
double generator_window(Ensemble ens, double psi);

/** N / int rho, trapezoid over the generator window; c_scale = 1 for the orthogonal case. */
struct SumRule {
  double integral = 0.0;
  double scale = 1.0;
  double window = 0.0;
};
SumRule goe_sum_rule(const EnsembleSpec &e, const GeneratingQuadrature &q = {});
SumRule gue_sum_rule(const EnsembleSpec &e, const GeneratingQuadrature &q = {});

/** Density normalized to N for the weight exp(-tr H^2). */
double hermite_density_oracle(int N, double x);

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;
  int N = 0;

  /** Level density (integral N) in the bin containing x. */
  double density(double x) const;
};

/** Eigenvalue histogram of exp(-tr H^2) matrices; deterministic for a seed. */
Histogram mc_density_oracle(Ensemble ens, int N, std::uint64_t samples, double bin_width, std::uint64_t seed,
                            double lo = -6.0, double hi = 6.0);

struct BesselArgs {
  EigenvaluePoint s;
  std::vector<double> x1;
  std::vector<double> x2;
};

/** U(k1/k2) supermatrix Bessel function, closed form. */
cplx supermatrix_bessel_22(const BesselArgs &a);

/** Haar-normalized Itzykson-Zuber integral over U(k). */
cplx hciz_ordinary(std::span<const double> s, std::span<const double> x);

/** Haar Monte-Carlo estimate of the same average. */
struct McEstimate {
  cplx mean = 0.0;
  double std_error = 0.0;
};
McEstimate hciz_monte_carlo(std::span<const double> s, std::span<const double> x, std::uint64_t samples,
                            std::uint64_t seed);

/** UOSp(2/2) supermatrix Bessel function, closed form with J0. */
cplx supermatrix_bessel_14_21(cplx s11, cplx s21, cplx s2, double x11, double x21, double x2, double psi);

/** The same function from the first-order operator pair acting on the SO(2) kernel. */
cplx supermatrix_bessel_14_21_operator(cplx s11, cplx s21, cplx s2, double x11, double x21, double x2, double psi);

/* Verification suites. */
std::vector<VerificationReport> verify_gue_normalization(const std::vector<double> &xs, double psi);
std::vector<VerificationReport> verify_gue_density(const std::vector<int> &Ns, const std::vector<double> &xs,
                                                   double psi, double tolerance);
std::vector<VerificationReport> verify_goe_density(int N, const std::vector<double> &xs, double psi,
                                                   std::uint64_t samples, std::uint64_t seed, double tolerance);
VerificationReport verify_bessel_u11(double psi, double x1, double x2, double tolerance);
VerificationReport verify_bessel_uosp22(std::uint64_t seed, int points, double tolerance);
VerificationReport verify_hciz(std::uint64_t samples, std::uint64_t seed, double tolerance);

}  // namespace berezin
