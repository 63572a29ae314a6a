// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <ostream>
#include <string>

namespace berezin {

using Rational = boost::multiprecision::cpp_rational;

/** Gaussian rational a + b i with exact arithmetic. */
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(long v) : re(v) {}
  ExactComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  static ExactComplex i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  ExactComplex conj() const { return {re, -im}; }

  ExactComplex &operator+=(const ExactComplex &o)
  {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex &operator-=(const ExactComplex &o)
  {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex &operator*=(const ExactComplex &o)
  {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  ExactComplex operator/(const ExactComplex &o) const
  {
    Rational d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex &b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex &b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex &b) { return a *= b; }
  friend ExactComplex operator-(const ExactComplex &a) { return {-a.re, -a.im}; }
  friend bool operator==(const ExactComplex &a, const ExactComplex &b)
  {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const
  {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

std::string to_string(const ExactComplex &z);
std::ostream &operator<<(std::ostream &os, const ExactComplex &z);

}  // namespace berezin
