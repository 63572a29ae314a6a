// SPDX-License-Identifier: Apache-2.0
#include "berezin/jets.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace berezin {

namespace {

void enumerate(int nvars, int remaining, int var, MultiIndex &cur, std::vector<MultiIndex> &out)
{
  if (var == nvars - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; e--) {
    cur[var] = e;
    enumerate(nvars, remaining - e, var + 1, cur, out);
  }
}

std::shared_ptr<const JetLayout> build_layout(int nvars, int order)
{
  auto L = std::make_shared<JetLayout>();
  L->nvars = nvars;
  L->order = order;
  if (nvars == 0) {
    L->index.push_back({});
    L->degree.push_back(0);
  }
  else {
    for (int d = 0; d <= order; d++) {
      MultiIndex cur(nvars, 0);
      std::vector<MultiIndex> level;
      enumerate(nvars, d, 0, cur, level);
      for (auto &a : level) {
        L->index.push_back(a);
        L->degree.push_back(d);
      }
    }
  }
  const int n = int(L->index.size());
  for (int k = 0; k < n; k++) {
    L->lookup[L->index[k]] = k;
  }
  L->products.assign(n, {});
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      if (L->degree[i] + L->degree[j] > order) {
        continue;
      }
      MultiIndex s(nvars);
      for (int v = 0; v < nvars; v++) {
        s[v] = L->index[i][v] + L->index[j][v];
      }
      L->products[L->position(s)].emplace_back(i, j);
    }
  }
  return L;
}

}  // namespace

int JetLayout::position(const MultiIndex &a) const
{
  auto it = lookup.find(a);
  return it == lookup.end() ? -1 : it->second;
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order)
{
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  if (nvars < 0 || order < 0) {
    throw std::invalid_argument("JetLayout: negative size");
  }
  std::lock_guard lock(mu);
  auto &slot = cache[{nvars, order}];
  if (!slot) {
    slot = build_layout(nvars, order);
  }
  return slot;
}

Jet::Jet(int nvars, int order, cplx value)
    : layout_(JetLayout::get(nvars, order)), c_(layout_->index.size(), 0.0)
{
  c_[0] = value;
}

Jet Jet::variable(int nvars, int order, int var, cplx value)
{
  Jet j(nvars, order, value);
  if (order >= 1) {
    MultiIndex a(nvars, 0);
    a[var] = 1;
    j.c_[j.layout_->position(a)] = 1.0;
  }
  return j;
}

cplx Jet::coeff(const MultiIndex &a) const
{
  const int p = layout_->position(a);
  return p < 0 ? cplx(0.0) : c_[p];
}

cplx Jet::derivative(const MultiIndex &a) const
{
  double f = 1.0;
  for (int e : a) {
    for (int k = 2; k <= e; k++) {
      f *= k;
    }
  }
  return coeff(a) * f;
}

Jet &Jet::operator+=(const Jet &o)
{
  if (o.layout_ != layout_) {
    throw std::invalid_argument("Jet: layout mismatch");
  }
  for (std::size_t k = 0; k < c_.size(); k++) {
    c_[k] += o.c_[k];
  }
  return *this;
}

Jet &Jet::operator-=(const Jet &o)
{
  if (o.layout_ != layout_) {
    throw std::invalid_argument("Jet: layout mismatch");
  }
  for (std::size_t k = 0; k < c_.size(); k++) {
    c_[k] -= o.c_[k];
  }
  return *this;
}

Jet &Jet::operator*=(const Jet &o)
{
  if (o.layout_ != layout_) {
    throw std::invalid_argument("Jet: layout mismatch");
  }
  std::vector<cplx> r(c_.size(), 0.0);
  for (std::size_t k = 0; k < r.size(); k++) {
    cplx acc = 0.0;
    for (auto [i, j] : layout_->products[k]) {
      acc += c_[i] * o.c_[j];
    }
    r[k] = acc;
  }
  c_ = std::move(r);
  return *this;
}

Jet &Jet::operator*=(cplx s)
{
  for (auto &v : c_) {
    v *= s;
  }
  return *this;
}

Jet operator/(const Jet &a, const Jet &b) { return a * pow(b, -1.0); }

cplx bessel_j0(cplx z)
{
  if (z.imag() == 0.0) {
    return std::cyl_bessel_j(0.0, std::abs(z.real()));
  }
  const cplx q = -z * z / 4.0;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; k++) {
    term *= q / double(k * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

cplx bessel_j1(cplx z)
{
  if (z.imag() == 0.0) {
    const double x = z.real();
    const double v = std::cyl_bessel_j(1.0, std::abs(x));
    return x < 0 ? -v : v;
  }
  const cplx q = -z * z / 4.0;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; k++) {
    term *= q / double(k * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return sum * z / 2.0;
}

std::vector<cplx> primitive_taylor(Primitive p, cplx u0, int K, cplx a)
{
  std::vector<cplx> t(K + 1, 0.0);
  switch (p) {
    case Primitive::Exp: {
      cplx v = std::exp(u0);
      for (int k = 0; k <= K; k++) {
        t[k] = v;
        v /= double(k + 1);
      }
      break;
    }
    case Primitive::Log: {
      if (u0 == cplx(0.0)) {
        throw std::domain_error("log jet at zero");
      }
      t[0] = std::log(u0);
      cplx inv = 1.0 / u0, pw = inv;
      for (int k = 1; k <= K; k++) {
        t[k] = ((k % 2) ? 1.0 : -1.0) * pw / double(k);
        pw *= inv;
      }
      break;
    }
    case Primitive::Pow: {
      const bool nonneg_int = a.imag() == 0.0 && a.real() >= 0.0 &&
                              a.real() == std::floor(a.real());
      if (u0 == cplx(0.0)) {
        if (!nonneg_int) {
          throw std::domain_error("pow jet at zero with non-integer exponent");
        }
        const int n = int(a.real());
        if (n <= K) {
          t[n] = 1.0;
        }
        break;
      }
      cplx binom = 1.0;
      const cplx base = std::pow(u0, a);
      cplx inv = 1.0 / u0, pw = 1.0;
      for (int k = 0; k <= K; k++) {
        t[k] = binom * base * pw;
        binom *= (a - double(k)) / double(k + 1);
        pw *= inv;
      }
      break;
    }
    case Primitive::Sin:
    case Primitive::Cos: {
      const cplx s = std::sin(u0), c = std::cos(u0);
      /* derivatives of sin cycle: s, c, -s, -c */
      const cplx cyc_sin[4] = {s, c, -s, -c};
      const cplx cyc_cos[4] = {c, -s, -c, s};
      double fact = 1.0;
      for (int k = 0; k <= K; k++) {
        if (k > 0) {
          fact *= k;
        }
        t[k] = (p == Primitive::Sin ? cyc_sin[k % 4] : cyc_cos[k % 4]) / fact;
      }
      break;
    }
    case Primitive::BesselJ0: {
      if (std::abs(u0) < 1e-12) {
        double c = 1.0;
        for (int m = 0; 2 * m <= K; m++) {
          t[2 * m] = c;
          c *= -0.25 / double((m + 1) * (m + 1));
        }
        break;
      }
      /* z y'' + y' + z y = 0 expanded at u0 */
      t[0] = bessel_j0(u0);
      if (K >= 1) {
        t[1] = -bessel_j1(u0);
      }
      for (int k = 0; k + 2 <= K; k++) {
        cplx prev = k >= 1 ? t[k - 1] : cplx(0.0);
        t[k + 2] = -(double((k + 1) * (k + 1)) * t[k + 1] + u0 * t[k] + prev) /
                   (u0 * double((k + 2) * (k + 1)));
      }
      break;
    }
  }
  return t;
}

Jet compose_taylor(std::span<const cplx> t, const Jet &u)
{
  Jet h = u;
  h.coeffs()[0] = 0.0;
  const int K = int(t.size()) - 1;
  Jet r(u.nvars(), u.order(), K >= 0 ? t[K] : cplx(0.0));
  for (int k = K - 1; k >= 0; k--) {
    r *= h;
    r += t[k];
  }
  return r;
}

Jet compose(Primitive p, const Jet &u, cplx exponent)
{
  auto t = primitive_taylor(p, u.value(), u.order(), exponent);
  return compose_taylor(t, u);
}

}  // namespace berezin
