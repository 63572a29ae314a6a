// SPDX-License-Identifier: Apache-2.0
#include "berezin/profile.hpp"

#include <stdexcept>

namespace berezin {

Jet GaussianPolyProfile::operator()(std::span<const Jet> u) const
{
  if (int(u.size()) < arity()) {
    throw std::invalid_argument("GaussianPolyProfile: too few invariants");
  }
  const int nv = u[0].nvars(), K = u[0].order();
  Jet expo(nv, K, 0.0);
  for (int j = 0; j < arity(); j++) {
    if (rates[j] != 0.0) {
      expo -= u[j] * cplx(rates[j]);
    }
  }
  Jet q(nv, K, 0.0);
  for (const auto &[a, c] : poly) {
    Jet m(nv, K, c);
    for (int j = 0; j < int(a.size()); j++) {
      for (int e = 0; e < a[j]; e++) {
        m *= u[j];
      }
    }
    q += m;
  }
  return q * exp(expo);
}

cplx GaussianPolyProfile::value(std::span<const cplx> u) const
{
  cplx expo = 0.0, q = 0.0;
  for (int j = 0; j < arity(); j++) {
    expo -= rates[j] * u[j];
  }
  for (const auto &[a, c] : poly) {
    cplx m = c;
    for (int j = 0; j < int(a.size()); j++) {
      for (int e = 0; e < a[j]; e++) {
        m *= u[j];
      }
    }
    q += m;
  }
  return q * std::exp(expo);
}

GaussianPolyProfile GaussianPolyProfile::scaled(double lambda) const
{
  GaussianPolyProfile r = *this;
  r.name += "*scaled";
  for (auto &c : r.rates) {
    c *= lambda;
  }
  for (auto &[a, c] : r.poly) {
    for (int e : a) {
      for (int k = 0; k < e; k++) {
        c *= lambda;
      }
    }
  }
  return r;
}

GaussianPolyProfile gaussian_vector_profile(double rate)
{
  return {"gauss", {rate}, {{{0}, 1.0}}};
}

GaussianPolyProfile gaussian_matrix_profile(int arity, double rate)
{
  GaussianPolyProfile p{"gauss", std::vector<double>(arity, 0.0), {{MultiIndex(arity, 0), 1.0}}};
  p.rates[1] = rate;
  return p;
}

std::vector<GaussianPolyProfile> standard_vector_profiles()
{
  return {
      gaussian_vector_profile(),
      {"poly2", {1.0}, {{{0}, 1.0}, {{1}, 0.5}, {{2}, 1.0 / 6.0}}},
      {"poly3", {0.5}, {{{0}, 2.0}, {{1}, -1.0}, {{3}, 0.1}}},
  };
}

std::vector<GaussianPolyProfile> standard_matrix_profiles()
{
  return {
      gaussian_matrix_profile(3),
      {"poly-u1-u3", {0.0, 1.0, 0.0}, {{{0, 0, 0}, 1.0}, {{2, 0, 0}, 0.5}, {{0, 0, 1}, -1.0 / 3.0}}},
      {"poly-u1u2", {0.0, 0.5, 0.0}, {{{0, 0, 0}, 1.0}, {{0, 1, 0}, 0.25}, {{1, 1, 0}, 0.2}}},
  };
}

MultivectorC nilpotent_expand(const Profile &p,
                              std::span<const cplx> base,
                              std::span<const MultivectorC> nil,
                              int max_degree)
{
  const int v = int(base.size());
  if (int(nil.size()) != v) {
    throw std::invalid_argument("nilpotent_expand: base/nil size mismatch");
  }
  for (const auto &n : nil) {
    if (!ring_is_zero(n.body())) {
      throw std::invalid_argument("nilpotent_expand: nil entry has a body");
    }
  }
  std::vector<Jet> u;
  u.reserve(v);
  for (int i = 0; i < v; i++) {
    u.push_back(Jet::variable(v, max_degree, i, base[i]));
  }
  const Jet F = p(u);
  /* powers[i][k] = nil_i^k */
  std::vector<std::vector<MultivectorC>> powers(v);
  for (int i = 0; i < v; i++) {
    powers[i].push_back(MultivectorC(cplx(1.0)));
    for (int k = 1; k <= max_degree; k++) {
      powers[i].push_back(powers[i].back() * nil[i]);
    }
  }
  const auto &lay = F.layout();
  MultivectorC out;
  for (std::size_t pos = 0; pos < lay.index.size(); pos++) {
    const cplx c = F.coeffs()[pos];
    if (c == cplx(0.0)) {
      continue;
    }
    MultivectorC term(c);
    for (int i = 0; i < v && !term.is_zero(); i++) {
      if (lay.index[pos][i]) {
        term = term * powers[i][lay.index[pos][i]];
      }
    }
    out += term;
  }
  return out;
}

}  // namespace berezin
