// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Truncated multivariate Taylor series ("jets") with complex coefficients.
 */

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace berezin {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

/** Graded-lex layout of all multi-indices of total degree <= order. */
struct JetLayout {
  int nvars = 0;
  int order = 0;
  std::vector<MultiIndex> index;  // position -> multi-index
  std::vector<int> degree;
  std::map<MultiIndex, int> lookup;
  /* For each output slot k, the (i, j) slot pairs whose product lands on k. */
  std::vector<std::vector<std::pair<int, int>>> products;

  int position(const MultiIndex &a) const;
  static std::shared_ptr<const JetLayout> get(int nvars, int order);
};

class Jet {
 public:
  Jet() = default;
  Jet(int nvars, int order, cplx value = 0.0);

  static Jet constant(int nvars, int order, cplx value) { return Jet(nvars, order, value); }
  /** The coordinate function x_var expanded at x_var = value. */
  static Jet variable(int nvars, int order, int var, cplx value);

  int nvars() const { return layout_->nvars; }
  int order() const { return layout_->order; }
  const JetLayout &layout() const { return *layout_; }

  cplx value() const { return c_[0]; }
  /** Taylor coefficient of the multi-index a (d^a f / a!). */
  cplx coeff(const MultiIndex &a) const;
  /** Partial derivative d^a f at the expansion point. */
  cplx derivative(const MultiIndex &a) const;
  std::span<const cplx> coeffs() const { return c_; }
  std::span<cplx> coeffs() { return c_; }

  Jet &operator+=(const Jet &o);
  Jet &operator-=(const Jet &o);
  Jet &operator*=(const Jet &o);
  Jet &operator*=(cplx s);
  Jet &operator+=(cplx s)
  {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet &b) { return a += b; }
  friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet &b) { return a *= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, cplx s) { return a += s; }
  friend Jet operator+(cplx s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, cplx s) { return a += -s; }
  friend Jet operator-(cplx s, const Jet &a) { return (a * cplx(-1.0)) + s; }
  friend Jet operator-(const Jet &a) { return a * cplx(-1.0); }
  friend Jet operator/(const Jet &a, const Jet &b);

 private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<cplx> c_;
};

enum class Primitive { Exp, Log, Pow, Sin, Cos, BesselJ0 };

/** Univariate Taylor coefficients t_0..t_K of a primitive at u0. */
std::vector<cplx> primitive_taylor(Primitive p, cplx u0, int K, cplx exponent = 1.0);

/** f(u) for a primitive f, by Taylor composition around u's value. */
Jet compose(Primitive p, const Jet &u, cplx exponent = 1.0);
/** sum_k t_k (u - u0)^k for given univariate coefficients. */
Jet compose_taylor(std::span<const cplx> t, const Jet &u);

inline Jet exp(const Jet &u) { return compose(Primitive::Exp, u); }
inline Jet log(const Jet &u) { return compose(Primitive::Log, u); }
inline Jet sqrt(const Jet &u) { return compose(Primitive::Pow, u, 0.5); }
inline Jet pow(const Jet &u, cplx a) { return compose(Primitive::Pow, u, a); }
inline Jet sin(const Jet &u) { return compose(Primitive::Sin, u); }
inline Jet cos(const Jet &u) { return compose(Primitive::Cos, u); }
inline Jet bessel_j0(const Jet &u) { return compose(Primitive::BesselJ0, u); }

/** J0 and J1 for complex argument. */
cplx bessel_j0(cplx z);
cplx bessel_j1(cplx z);

}  // namespace berezin
