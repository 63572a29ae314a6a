// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * One-dimensional rules and tensor-product integration over complex contours.
 */

#include "berezin/jets.hpp"

#include <functional>
#include <span>
#include <vector>

namespace berezin {

/** Rule for int g(s) ds: sum_i weights[i] g(nodes[i]). */
struct Axis {
  std::vector<cplx> nodes;
  std::vector<cplx> weights;

  std::size_t size() const { return nodes.size(); }
};

/**
 * Gauss-Hermite for g(s) ~ exp(-rate s^2) q(s), Re rate > 0 after rotation.
 * The contour is s = t / sqrt(rate); exact for polynomial q of degree < 2n.
 * Weights already contain exp(+rate s^2).
 */
Axis gauss_hermite(int n, cplx rate = 1.0);

/** Gauss-Legendre on [a, b]. */
Axis gauss_legendre(int n, double a, double b);

/**
 * Half line (0, inf) for g(r) = r q(r^2) exp(-rate r^2): Gauss-Laguerre in u = r^2.
 * Exact for polynomial q of degree < 2n.
 */
Axis radial_even(int n, double rate);

/**
 * Generalized Gauss-Laguerre on (0, inf) for g(u) = u^alpha q(u) exp(-rate u).
 */
Axis gauss_laguerre(int n, double alpha, double rate);

/** Tensor-product sum; deterministic for any thread count. */
cplx tensor_integrate(std::span<const Axis> axes, const std::function<cplx(std::span<const cplx>)> &f);

struct QuadResult {
  cplx value;
  double error;     ///< |I(n) - I(n_coarse)|
  bool converged;   ///< error below the requested tolerance
};

/**
 * Integrates with two resolutions built by make_axes(n) and make_axes(n_coarse).
 */
QuadResult integrate_with_estimate(const std::function<std::vector<Axis>(int)> &make_axes,
                                   const std::function<cplx(std::span<const cplx>)> &f,
                                   int n,
                                   int n_coarse,
                                   double tol);

/** Adaptive tanh-sinh on [a, b] (infinite limits allowed). */
double tanh_sinh(const std::function<double(double)> &f, double a, double b, double tol = 1e-12);

/** Complex-valued variant: integrates real and imaginary parts separately. */
cplx tanh_sinh_complex(const std::function<cplx(double)> &f, double a, double b, double tol = 1e-12);

/** Runs body(i) for i in [0, n) on the thread pool. */
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace berezin
