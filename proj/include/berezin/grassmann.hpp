// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Grassmann algebra over a scalar ring.
 *
 * Generators come in conjugate pairs (eta_n*, eta_n), n = 1, 2, ... and are
 * ordered eta_1* < eta_1 < eta_2* < eta_2 < ... . A monomial is a bitmask in
 * that order: bit 2(n-1) is eta_n*, bit 2(n-1)+1 is eta_n. The coefficient of a
 * mask multiplies the product of its generators taken in increasing order.
 */

#include "berezin/exact.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace berezin {

using Mask = std::uint64_t;

struct Generator {
  int pair = 1;          ///< 1-based pair index n
  bool starred = false;  ///< true for eta_n*

  int bit() const { return 2 * (pair - 1) + (starred ? 0 : 1); }
};

inline Generator eta(int n) { return {n, false}; }
inline Generator eta_star(int n) { return {n, true}; }

/** Mask of eta_1* eta_1 ... eta_L* eta_L. */
inline Mask full_mask(int L) { return L >= 32 ? ~Mask(0) : (Mask(1) << (2 * L)) - 1; }

/** Sign of reordering mask a followed by mask b into canonical order. */
inline int reorder_sign(Mask a, Mask b)
{
  int inversions = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(j >= 63 ? Mask(0) : a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/* Ring hooks. Floating rings prune |c| < 1e-14, exact rings prune exact zeros. */
inline bool ring_is_zero(const std::complex<double> &c) { return std::abs(c) < 1e-14; }
inline bool ring_is_zero(double c) { return std::abs(c) < 1e-14; }
inline bool ring_is_zero(const ExactComplex &c) { return c.is_zero(); }
inline std::complex<double> ring_conj(const std::complex<double> &c) { return std::conj(c); }
inline double ring_conj(double c) { return c; }
inline ExactComplex ring_conj(const ExactComplex &c) { return c.conj(); }

template<class S> class Multivector {
 public:
  using Term = std::pair<Mask, S>;

  Multivector() = default;
  Multivector(S c)
  {
    if (!ring_is_zero(c)) {
      terms_.emplace_back(Mask(0), std::move(c));
    }
  }

  static Multivector monomial(Mask m, S c)
  {
    Multivector r;
    if (!ring_is_zero(c)) {
      r.terms_.emplace_back(m, std::move(c));
    }
    return r;
  }
  static Multivector generator(Generator g) { return monomial(Mask(1) << g.bit(), S(1)); }

  const std::vector<Term> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(Mask m) const
  {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term &t, Mask k) {
      return t.first < k;
    });
    return (it != terms_.end() && it->first == m) ? it->second : S(0);
  }
  S body() const { return coefficient(0); }

  Multivector nil_part() const
  {
    Multivector r;
    for (const Term &t : terms_) {
      if (t.first != 0) {
        r.terms_.push_back(t);
      }
    }
    return r;
  }

  bool is_even() const
  {
    for (const Term &t : terms_) {
      if (std::popcount(t.first) & 1) {
        return false;
      }
    }
    return true;
  }
  bool is_odd() const
  {
    for (const Term &t : terms_) {
      if (!(std::popcount(t.first) & 1)) {
        return false;
      }
    }
    return true;
  }

  /** Highest pair index touched by any term (0 for a scalar). */
  int max_pair() const
  {
    Mask all = 0;
    for (const Term &t : terms_) {
      all |= t.first;
    }
    return all ? (64 - std::countl_zero(all) + 1) / 2 : 0;
  }

  Multivector &operator+=(const Multivector &o) { return *this = merge(*this, o, 1); }
  Multivector &operator-=(const Multivector &o) { return *this = merge(*this, o, -1); }
  friend Multivector operator+(const Multivector &a, const Multivector &b) { return merge(a, b, 1); }
  friend Multivector operator-(const Multivector &a, const Multivector &b) { return merge(a, b, -1); }
  friend Multivector operator-(const Multivector &a) { return a * S(-1); }

  friend Multivector operator*(const Multivector &a, const S &c)
  {
    Multivector r;
    for (const Term &t : a.terms_) {
      S v = t.second * c;
      if (!ring_is_zero(v)) {
        r.terms_.emplace_back(t.first, std::move(v));
      }
    }
    return r;
  }
  friend Multivector operator*(const S &c, const Multivector &a) { return a * c; }

  friend Multivector operator*(const Multivector &a, const Multivector &b)
  {
    if (a.terms_.empty() || b.terms_.empty()) {
      return {};
    }
    Mask all = 0;
    for (const Term &t : a.terms_) {
      all |= t.first;
    }
    for (const Term &t : b.terms_) {
      all |= t.first;
    }
    const int nbits = 64 - std::countl_zero(all);
    if (nbits > 20) {
      throw std::length_error("Multivector: more than 10 generator pairs");
    }
    std::vector<S> dense(std::size_t(1) << nbits, S(0));
    std::vector<char> touched(dense.size(), 0);
    for (const Term &x : a.terms_) {
      for (const Term &y : b.terms_) {
        if (x.first & y.first) {
          continue;
        }
        const Mask m = x.first | y.first;
        S v = x.second * y.second;
        if (reorder_sign(x.first, y.first) < 0) {
          dense[m] -= v;
        }
        else {
          dense[m] += v;
        }
        touched[m] = 1;
      }
    }
    Multivector r;
    for (std::size_t m = 0; m < dense.size(); m++) {
      if (touched[m] && !ring_is_zero(dense[m])) {
        r.terms_.emplace_back(Mask(m), std::move(dense[m]));
      }
    }
    return r;
  }

  /** Left derivative d/dg. */
  Multivector derivative(Generator g) const
  {
    const int b = g.bit();
    const Mask bit = Mask(1) << b;
    Multivector r;
    for (const Term &t : terms_) {
      if (!(t.first & bit)) {
        continue;
      }
      const bool flip = std::popcount(t.first & (bit - 1)) & 1;
      r.terms_.emplace_back(t.first & ~bit, flip ? S(0) - t.second : t.second);
    }
    return r;
  }

  /** Second-kind conjugation: (ab)* = a* b*, (eta)* = eta*, (eta*)* = -eta. */
  Multivector conjugate() const
  {
    Multivector r;
    for (const Term &t : terms_) {
      Multivector m(ring_conj(t.second));
      Mask rest = t.first;
      while (rest) {
        const int bit = std::countr_zero(rest);
        rest &= rest - 1;
        const int pair = bit / 2 + 1;
        const bool starred = (bit % 2) == 0;
        Multivector img = generator({pair, !starred});
        m = m * (starred ? -img : img);
      }
      r += m;
    }
    return r;
  }

 private:
  static Multivector merge(const Multivector &a, const Multivector &b, int sign)
  {
    Multivector r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    auto push = [&](Mask m, S v) {
      if (!ring_is_zero(v)) {
        r.terms_.emplace_back(m, std::move(v));
      }
    };
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        push(i->first, i->second);
        ++i;
      }
      else if (i == a.terms_.end() || j->first < i->first) {
        push(j->first, sign > 0 ? j->second : S(0) - j->second);
        ++j;
      }
      else {
        push(i->first, sign > 0 ? i->second + j->second : i->second - j->second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;  // sorted by mask, no zero coefficients
};

using MultivectorC = Multivector<std::complex<double>>;
using MultivectorQ = Multivector<ExactComplex>;

inline Mask component_mask(const std::vector<int> &j1, const std::vector<int> &j2)
{
  if (j1.size() != j2.size()) {
    throw std::invalid_argument("component_mask: multi-index lengths differ");
  }
  Mask m = 0;
  for (std::size_t n = 0; n < j1.size(); n++) {
    if (j1[n]) {
      m |= Mask(1) << (2 * n);
    }
    if (j2[n]) {
      m |= Mask(1) << (2 * n + 1);
    }
  }
  return m;
}

/** f_{j1 j2}: coefficient of prod_n (eta_n*)^{j1n} eta_n^{j2n}. */
template<class S>
S project_component(const Multivector<S> &a, const std::vector<int> &j1, const std::vector<int> &j2)
{
  return a.coefficient(component_mask(j1, j2));
}

template<class S> S project_body(const Multivector<S> &a) { return a.body(); }

/** Sign exponent J(j1, j2) as printed for the projector formula. */
inline int printed_projector_sign(const std::vector<int> &j1, const std::vector<int> &j2)
{
  const std::size_t L = j1.size();
  int J = 0;
  for (std::size_t n = 0; n < L; n++) {
    J += (1 - j1[n]) * j2[n];
    for (std::size_t m = n + 1; m < L; m++) {
      J += (j1[n] + j2[n]) * (j1[m] + j2[m]);
    }
  }
  return J;
}

/**
 * Projector applied literally: (-1)^J prod_n d^2/(d eta_n d eta_n*) acting on
 * (complement monomial) * f. Kept to document where the printed sign rule
 * disagrees with direct coefficient extraction.
 */
template<class S>
S project_component_printed(const Multivector<S> &a,
                            const std::vector<int> &j1,
                            const std::vector<int> &j2)
{
  const int L = int(j1.size());
  Multivector<S> comp(S(1));
  for (int n = 1; n <= L; n++) {
    if (!j1[n - 1]) {
      comp = comp * Multivector<S>::generator(eta_star(n));
    }
    if (!j2[n - 1]) {
      comp = comp * Multivector<S>::generator(eta(n));
    }
  }
  Multivector<S> g = comp * a;
  for (int n = L; n >= 1; n--) {
    g = g.derivative(eta_star(n)).derivative(eta(n));
  }
  S v = g.body();
  return (printed_projector_sign(j1, j2) & 1) ? S(0) - v : v;
}

/** Top coefficient f_{1..1} (sign and ordering of the canonical monomial). */
template<class S> S berezin_top(const Multivector<S> &a, int L) { return a.coefficient(full_mask(L)); }

/** int f d[eta] = (2 pi)^{-L} f_{1..1}. */
inline std::complex<double> berezin_integral_all(const MultivectorC &a, int L)
{
  return berezin_top(a, L) * std::pow(2.0 * std::numbers::pi, -L);
}

}  // namespace berezin
