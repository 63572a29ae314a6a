// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Exact rational functions in eigenvalue variables s_0..s_{n-1} and the phase
 * w = exp(i psi). Numerators are polynomials in s that are Laurent in w;
 * denominators are products of registered linear factors.
 */

#include "berezin/exact.hpp"

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace berezin {

class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/** Exponents of s_0..s_{n-1} followed by the exponent of w. */
using PolyKey = std::vector<int>;

class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  static Poly constant(int nvars, Rational c, int wpow = 0);
  static Poly variable(int nvars, int var, Rational c = 1, int wpow = 0);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<PolyKey, Rational> &terms() const { return terms_; }
  void add_term(PolyKey k, const Rational &c);

  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  Poly scaled(const Rational &c, int wpow = 0) const;
  Poly derivative(int var) const;
  std::complex<double> eval(std::span<const std::complex<double>> s, std::complex<double> w) const;
  friend bool operator==(const Poly &a, const Poly &b) { return a.terms_ == b.terms_; }

 private:
  int nvars_ = 0;
  std::map<PolyKey, Rational> terms_;
};

/**
 * s_a - sign w^wpow s_b with a < b, or the monomial s_a when b < 0.
 */
struct LinearFactor {
  int a = 0;
  int b = -1;
  int sign = 1;
  int wpow = 0;

  auto operator<=>(const LinearFactor &) const = default;
  Poly as_poly(int nvars) const;
  /** d(factor)/d s_var as (rational, w power); zero rational if independent. */
  std::pair<Rational, int> slope(int var) const;
  std::complex<double> eval(std::span<const std::complex<double>> s, std::complex<double> w) const;
};

/**
 * Canonical factor for c_a s_a - c_b s_b with unit coefficients c = sign w^k.
 * Returns the factor and the unit (sign, wpow) pulled out in front.
 */
struct UnitFactor {
  LinearFactor f;
  int sign = 1;
  int wpow = 0;
};
UnitFactor make_factor(int a, int sa, int wa, int b, int sb, int wb);

class RationalFn {
 public:
  RationalFn() = default;
  explicit RationalFn(int nvars) : num_(nvars) {}
  RationalFn(Poly num, std::map<LinearFactor, int> den);
  static RationalFn constant(int nvars, Rational c, int wpow = 0);
  static RationalFn variable(int nvars, int var);
  /** 1 / factor^e. */
  static RationalFn inverse_factor(int nvars, const LinearFactor &f, int e = 1);

  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  const Poly &num() const { return num_; }
  const std::map<LinearFactor, int> &den() const { return den_; }

  friend RationalFn operator+(const RationalFn &a, const RationalFn &b);
  friend RationalFn operator-(const RationalFn &a, const RationalFn &b);
  friend RationalFn operator*(const RationalFn &a, const RationalFn &b);
  RationalFn scaled(const Rational &c, int wpow = 0) const;
  RationalFn derivative(int var) const;
  std::complex<double> eval(std::span<const std::complex<double>> s,
                            std::complex<double> w,
                            double floor = 1e-6) const;
  friend bool operator==(const RationalFn &a, const RationalFn &b)
  {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str(const std::vector<std::string> &names) const;

 private:
  void reduce();

  Poly num_;
  std::map<LinearFactor, int> den_;
};

std::string to_string(const Poly &p, const std::vector<std::string> &names);
std::string to_string(const LinearFactor &f, const std::vector<std::string> &names);

}  // namespace berezin
