// SPDX-License-Identifier: Apache-2.0
#include "berezin/quadrature.hpp"

#include "berezin/simd.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gsl/gsl_integration.h>
#include <tbb/parallel_for.h>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace berezin {

namespace {

struct FixedRule {
  std::vector<double> x, w;
};

FixedRule gsl_rule(const gsl_integration_fixed_type *type, int n, double a, double b, double alpha)
{
  if (n < 1) {
    throw std::invalid_argument("quadrature: need at least one node");
  }
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
      gsl_integration_fixed_alloc(type, std::size_t(n), a, b, alpha, 0.0), &gsl_integration_fixed_free);
  if (!ws) {
    throw std::runtime_error("quadrature: GSL rule allocation failed");
  }
  const double *x = gsl_integration_fixed_nodes(ws.get());
  const double *w = gsl_integration_fixed_weights(ws.get());
  return {std::vector<double>(x, x + n), std::vector<double>(w, w + n)};
}

}  // namespace

Axis gauss_hermite(int n, cplx rate)
{
  /* weight exp(-t^2) */
  const auto r = gsl_rule(gsl_integration_fixed_hermite, n, 0.0, 1.0, 0.0);
  const cplx sq = std::sqrt(rate);
  Axis ax;
  for (int i = 0; i < n; i++) {
    ax.nodes.push_back(r.x[i] / sq);
    ax.weights.push_back(r.w[i] * std::exp(r.x[i] * r.x[i]) / sq);
  }
  return ax;
}

Axis gauss_legendre(int n, double a, double b)
{
  const auto r = gsl_rule(gsl_integration_fixed_legendre, n, a, b, 0.0);
  Axis ax;
  for (int i = 0; i < n; i++) {
    ax.nodes.push_back(r.x[i]);
    ax.weights.push_back(r.w[i]);
  }
  return ax;
}

Axis gauss_laguerre(int n, double alpha, double rate)
{
  /* weight u^alpha exp(-rate u) on (0, inf) */
  const auto r = gsl_rule(gsl_integration_fixed_laguerre, n, 0.0, rate, alpha);
  Axis ax;
  for (int i = 0; i < n; i++) {
    ax.nodes.push_back(r.x[i]);
    ax.weights.push_back(r.w[i] * std::exp(rate * r.x[i]) * std::pow(r.x[i], -alpha));
  }
  return ax;
}

Axis radial_even(int n, double rate)
{
  /* int_0^inf g(r) dr = int_0^inf g(sqrt u) / (2 sqrt u) du */
  const auto r = gsl_rule(gsl_integration_fixed_laguerre, n, 0.0, rate, 0.0);
  Axis ax;
  for (int i = 0; i < n; i++) {
    const double rr = std::sqrt(r.x[i]);
    ax.nodes.push_back(rr);
    ax.weights.push_back(r.w[i] * std::exp(rate * r.x[i]) / (2 * rr));
  }
  return ax;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
{
  tbb::parallel_for(std::size_t(0), n, [&](std::size_t i) { body(i); });
}

cplx tensor_integrate(std::span<const Axis> axes, const std::function<cplx(std::span<const cplx>)> &f)
{
  if (axes.empty()) {
    const std::vector<cplx> none;
    return f(none);
  }
  const std::size_t d = axes.size();
  const std::size_t outer = axes[0].size();
  std::size_t inner = 1;
  for (std::size_t k = 1; k < d; k++) {
    inner *= axes[k].size();
  }
  std::vector<cplx> partial(outer);
  parallel_for(outer, [&](std::size_t i0) {
    std::vector<cplx> pt(d), w(inner), v(inner);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t j = 0; j < inner; j++) {
      std::size_t rem = j;
      cplx wt = 1.0;
      pt[0] = axes[0].nodes[i0];
      for (std::size_t k = d - 1; k >= 1; k--) {
        const std::size_t ik = rem % axes[k].size();
        rem /= axes[k].size();
        pt[k] = axes[k].nodes[ik];
        wt *= axes[k].weights[ik];
      }
      w[j] = wt;
      v[j] = f(pt);
    }
    partial[i0] = axes[0].weights[i0] * simd::weighted_sum(w, v);
  });
  cplx total = 0.0;
  for (const auto &p : partial) {
    total += p;
  }
  return total;
}

QuadResult integrate_with_estimate(const std::function<std::vector<Axis>(int)> &make_axes,
                                   const std::function<cplx(std::span<const cplx>)> &f,
                                   int n,
                                   int n_coarse,
                                   double tol)
{
  const auto fine = make_axes(n);
  const auto coarse = make_axes(n_coarse);
  const cplx a = tensor_integrate(fine, f);
  const cplx b = tensor_integrate(coarse, f);
  const double err = std::abs(a - b);
  return {a, err, err <= tol};
}

double tanh_sinh(const std::function<double(double)> &f, double a, double b, double tol)
{
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, tol);
}

cplx tanh_sinh_complex(const std::function<cplx(double)> &f, double a, double b, double tol)
{
  const double re = tanh_sinh([&](double x) { return f(x).real(); }, a, b, tol);
  const double im = tanh_sinh([&](double x) { return f(x).imag(); }, a, b, tol);
  return {re, im};
}

}  // namespace berezin
