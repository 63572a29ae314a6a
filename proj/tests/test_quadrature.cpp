// SPDX-License-Identifier: Apache-2.0
#include "berezin/quadrature.hpp"
#include "berezin/simd.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace berezin;

TEST_CASE("Gauss-Hermite integrates the Gaussian")
{
  const auto ax = gauss_hermite(20);
  cplx s = 0;
  for (std::size_t i = 0; i < ax.size(); i++) {
    s += ax.weights[i] * std::exp(-ax.nodes[i] * ax.nodes[i]);
  }
  CHECK(std::abs(s - std::sqrt(std::numbers::pi)) < 1e-12);
}

TEST_CASE("rotated Gauss-Hermite handles a complex rate")
{
  const cplx a = std::polar(1.0, 0.9);
  const auto ax = gauss_hermite(16, a);
  cplx s = 0;
  for (std::size_t i = 0; i < ax.size(); i++) {
    const cplx x = ax.nodes[i];
    s += ax.weights[i] * (1.0 + x * x) * std::exp(-a * x * x);
  }
  const cplx expect = std::sqrt(std::numbers::pi / a) * (1.0 + 1.0 / (2.0 * a));
  CHECK(std::abs(s - expect) < 1e-12);
}

TEST_CASE("two-dimensional Gaussian")
{
  const std::vector<Axis> axes{gauss_hermite(12), gauss_hermite(12)};
  const cplx v = tensor_integrate(axes, [](std::span<const cplx> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
  CHECK(std::abs(v - std::numbers::pi) < 1e-12);
}

TEST_CASE("radial_even and generalized Laguerre")
{
  /* int_0^inf r^3 e^{-2 r^2} dr = 1/8 */
  const auto ax = radial_even(6, 2.0);
  cplx s = 0;
  for (std::size_t i = 0; i < ax.size(); i++) {
    const cplx r = ax.nodes[i];
    s += ax.weights[i] * r * r * r * std::exp(-2.0 * r * r);
  }
  CHECK(std::abs(s - 0.125) < 1e-13);

  /* int_0^inf u^{1/2} e^{-u} du = sqrt(pi)/2 */
  const auto gl = gauss_laguerre(8, 0.5, 1.0);
  cplx t = 0;
  for (std::size_t i = 0; i < gl.size(); i++) {
    t += gl.weights[i] * std::sqrt(gl.nodes[i]) * std::exp(-gl.nodes[i]);
  }
  CHECK(std::abs(t - std::sqrt(std::numbers::pi) / 2.0) < 1e-12);
}

TEST_CASE("tanh-sinh on a half line")
{
  const double v = tanh_sinh([](double x) { return std::exp(-x * x); }, 0.0, std::numeric_limits<double>::infinity());
  CHECK(std::abs(v - std::sqrt(std::numbers::pi) / 2) < 1e-12);
}

TEST_CASE("error estimate flags an under-resolved integrand")
{
  auto f = [](std::span<const cplx> x) { return std::cos(6.0 * x[0]) * std::exp(-x[0] * x[0] / 4.0); };
  auto axes = [](int n) { return std::vector<Axis>{gauss_hermite(n, 0.25)}; };
  const auto coarse = integrate_with_estimate(axes, f, 6, 4, 1e-10);
  CHECK_FALSE(coarse.converged);
  const auto fine = integrate_with_estimate(axes, f, 80, 60, 1e-10);
  CHECK(fine.converged);
  CHECK(std::abs(fine.value - 2 * std::sqrt(std::numbers::pi) * std::exp(-36.0)) < 1e-12);
}

TEST_CASE("SIMD weighted sum matches the scalar kernel")
{
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
    std::vector<cplx> w(n), f(n);
    for (std::size_t i = 0; i < n; i++) {
      w[i] = {g(rng), g(rng)};
      f[i] = {g(rng), g(rng)};
    }
    const cplx a = simd::weighted_sum_scalar(w, f);
    const cplx b = simd::weighted_sum_avx2(w, f);
    CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)) * std::sqrt(double(n) + 1));
  }
}

TEST_CASE("SIMD histogram matches the scalar kernel")
{
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g(0, 2);
  std::vector<double> x(10007);
  for (auto &v : x) {
    v = g(rng);
  }
  x[5] = -3.0;  // exactly on the lower edge
  x[6] = 3.0;   // exactly on the upper edge (outside)
  std::vector<std::uint64_t> a(30, 0), b(30, 0);
  const auto oa = simd::histogram_add_scalar(x, -3.0, 0.2, a);
  const auto ob = simd::histogram_add_avx2(x, -3.0, 0.2, b);
  CHECK(oa == ob);
  CHECK(a == b);
}

TEST_CASE("forcing the scalar path")
{
  simd::force_scalar(true);
  CHECK(std::string(simd::active_path()) == "scalar");
  simd::force_scalar(false);
}
