// SPDX-License-Identifier: Apache-2.0
#include "berezin/rmt.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace berezin;

namespace {

constexpr double kPiD = std::numbers::pi;

EnsembleSpec spec(Ensemble e, int N, double psi = kPiD / 2)
{
  EnsembleSpec s;
  s.ensemble = e;
  s.N = N;
  s.wick = WickRotation(psi);
  return s;
}

double gue_rho(int N, double x, double psi = kPiD / 2)
{
  const auto e = spec(Ensemble::GUE, N, psi);
  return density_from_generating_function(
             [&](double xx, double J) { return gue_generating_function_minus_one(e, {xx, J}); }, x)
      .rho;
}

double goe_rho(int N, double x, double psi = kPiD / 2)
{
  const auto e = spec(Ensemble::GOE, N, psi);
  return density_from_generating_function(
             [&](double xx, double J) { return goe_generating_function_minus_one(e, {xx, J}, kGoeDensityScale); },
             x)
      .rho;
}

}  // namespace

TEST_CASE("Hermite oracle against frozen values")
{
  /* orthonormal Hermite functions summed independently (scipy) */
  CHECK(hermite_density_oracle(1, 0.0) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
  CHECK(hermite_density_oracle(3, 0.7) == doctest::Approx(0.6844312392924744).epsilon(1e-13));
  CHECK(hermite_density_oracle(5, -1.5) == doctest::Approx(0.8264725958157684).epsilon(1e-13));
  CHECK(hermite_density_oracle(4, 2.2) == doctest::Approx(0.5368550162034866).epsilon(1e-13));
  CHECK_THROWS_AS(hermite_density_oracle(0, 0.0), std::domain_error);
}

TEST_CASE("property: Hermite oracle integrates to N")
{
  for (int N : {1, 2, 6, 11}) {
    double s = 0;
    const double h = 0.01;
    for (double x = -12; x <= 12; x += h) {
      s += hermite_density_oracle(N, x) * h;
    }
    CHECK(s == doctest::Approx(double(N)).epsilon(1e-10));
  }
}

TEST_CASE("GUE generating function is 1 at zero source")
{
  for (int N : {1, 4}) {
    for (double x : {-0.8, 0.0, 1.1}) {
      const cplx z = gue_generating_function(spec(Ensemble::GUE, N), {x, 0.0});
      CHECK(std::abs(z - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("GUE density matches the Hermite kernel")
{
  for (int N : {1, 2, 3, 5}) {
    for (double x : {-1.5, 0.0, 0.7, 1.6}) {
      const double ex = hermite_density_oracle(N, x);
      CHECK(std::abs(gue_rho(N, x) - ex) / ex < 1e-5);
    }
  }
}

TEST_CASE("property: GUE density is even and independent of psi")
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> px(-1.0, 1.0), pp(kPiD / 2 - 0.3, kPiD / 2 + 0.3);
  for (int t = 0; t < 6; t++) {
    const double psi = pp(rng);
    const double x = px(rng) * generator_window(Ensemble::GUE, psi);
    const int N = 1 + int(rng() % 4);
    const double a = gue_rho(N, x, psi), b = gue_rho(N, -x, kPiD / 2);
    INFO("N=", N, " x=", x, " psi=", psi);
    CHECK(std::abs(a - b) < 1e-4 * b);
  }
}

TEST_CASE("GOE N = 2 density against the exact two-level density")
{
  /* quad over |x - y| exp(-x^2 - y^2) (scipy) */
  CHECK(goe_rho(2, 0.5) == doctest::Approx(0.7705782931576112).epsilon(1e-6));
  CHECK(goe_rho(2, -1.0) == doctest::Approx(0.5464055276422586).epsilon(1e-6));
}

TEST_CASE("property: GOE density is independent of psi inside the window")
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> px(-1.0, 1.0), pp(kPiD / 2 - 0.3, kPiD / 2 + 0.3);
  for (int t = 0; t < 3; t++) {
    const double psi = pp(rng);
    const double x = px(rng) * generator_window(Ensemble::GOE, psi);
    INFO("x=", x, " psi=", psi);
    CHECK(goe_rho(2, x, psi) == doctest::Approx(goe_rho(2, x)).epsilon(1e-3));
  }
}

TEST_CASE("GOE domain errors")
{
  CHECK_THROWS_AS(goe_generating_function(spec(Ensemble::GOE, 3), {0.1, 1e-3}), std::domain_error);
  CHECK_THROWS_AS(generator_window(Ensemble::GOE, 1.0), std::domain_error);
  CHECK_THROWS_AS(verify_gue_density({1}, {3.0}, kPiD / 2, 1e-3), std::domain_error);
}

TEST_CASE("GOE sum rule sees the factor 1/8")
{
  const SumRule sr = goe_sum_rule(spec(Ensemble::GOE, 2));
  CHECK(sr.window == doctest::Approx(2.45));
  /* the window cuts a tail of about 1.8e-3 of the mass */
  CHECK(std::abs(sr.scale - kGoeDensityScale) < 1e-3);
}

TEST_CASE("Monte-Carlo histogram is deterministic and normalized")
{
  const auto a = mc_density_oracle(Ensemble::GUE, 3, 20000, 0.1, 9);
  const auto b = mc_density_oracle(Ensemble::GUE, 3, 20000, 0.1, 9);
  CHECK(a.counts == b.counts);
  std::uint64_t total = 0;
  for (auto c : a.counts) {
    total += c;
  }
  CHECK(total <= 3u * 20000u);
  CHECK(double(total) > 0.999 * 3 * 20000);
  double mass = 0;
  for (std::size_t i = 0; i < a.counts.size(); i++) {
    mass += a.density(a.lo + (double(i) + 0.5) * a.width) * a.width;
  }
  CHECK(mass == doctest::Approx(double(total) / 20000).epsilon(1e-12));
}

TEST_CASE("Monte-Carlo GUE histogram follows the Hermite density")
{
  const auto h = mc_density_oracle(Ensemble::GUE, 2, 200000, 0.1, 4);
  for (double x : {-1.0, 0.05, 0.95}) {
    const double c = h.lo + (std::floor((x - h.lo) / h.width) + 0.5) * h.width;
    CHECK(h.density(x) == doctest::Approx(hermite_density_oracle(2, c)).epsilon(3e-2));
  }
}

TEST_CASE("ordinary HCIZ against independent values")
{
  {
    const double s[] = {0.9, -0.4}, x[] = {0.7, -0.5};
    /* (e^{s1 x1 + s2 x2} - e^{s1 x2 + s2 x1}) / ((s1 - s2)(x1 - x2)) */
    CHECK(std::abs(hciz_ordinary(s, x) - 1.161160096265372) < 1e-13);
  }
  {
    /* Haar average from 1.2e6 scipy unitary_group samples, std error 2.1e-4 */
    const double s[] = {0.3, -0.2, 1.1}, x[] = {0.4, 0.1, -0.6};
    CHECK(std::abs(hciz_ordinary(s, x) - 0.987819835857378) < 2e-3);
  }
}

TEST_CASE("property: HCIZ is symmetric and permutation invariant")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; t++) {
    std::vector<double> s{u(rng), u(rng), u(rng)}, x{u(rng), u(rng), u(rng)};
    const cplx v = hciz_ordinary(s, x);
    CHECK(std::abs(hciz_ordinary(x, s) - v) < 1e-10 * std::abs(v));
    std::swap(s[0], s[2]);
    CHECK(std::abs(hciz_ordinary(s, x) - v) < 1e-10 * std::abs(v));
  }
}

TEST_CASE("HCIZ Monte Carlo is reproducible and consistent")
{
  const double s[] = {0.3, -0.2, 1.1}, x[] = {0.4, 0.1, -0.6};
  const auto a = hciz_monte_carlo(s, x, 100000, 21), b = hciz_monte_carlo(s, x, 100000, 21);
  CHECK(a.mean == b.mean);
  CHECK(std::abs(a.mean - hciz_ordinary(s, x)) < 4 * a.std_error);
}

TEST_CASE("supermatrix Bessel checks")
{
  CHECK(verify_bessel_u11(kPiD / 2, 0.6, -0.3, 1e-6).pass);
  CHECK(verify_bessel_u11(1.3, -0.4, 0.5, 1e-6).pass);
  const auto r = verify_bessel_uosp22(5, 20, 1e-8);
  INFO(r.to_json().dump());
  CHECK(r.pass);
}

TEST_CASE("supermatrix Bessel rejects coinciding eigenvalues")
{
  /* s1 = w s2 with w = i */
  BesselArgs a{EigenvaluePoint{{cplx(0.5)}, {cplx(0.0, -0.5)}, kPiD / 2}, {0.3}, {0.1}};
  CHECK_THROWS(supermatrix_bessel_22(a));
}
