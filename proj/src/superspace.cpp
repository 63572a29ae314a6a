// SPDX-License-Identifier: Apache-2.0
#include "berezin/superspace.hpp"

#include <cmath>
#include <numbers>

namespace berezin {

std::string to_string(Flavor f)
{
  switch (f) {
    case Flavor::Real:
      return "real";
    case Flavor::Complex:
      return "complex";
    case Flavor::Quaternion:
      return "quaternion";
  }
  return "?";
}

std::string to_string(Symmetry s)
{
  switch (s) {
    case Symmetry::U:
      return "U";
    case Symmetry::UOSpPlus:
      return "UOSp+";
    case Symmetry::UOSpMinus:
      return "UOSp-";
  }
  return "?";
}

Flavor flavor_from_string(const std::string &s)
{
  if (s == "real") {
    return Flavor::Real;
  }
  if (s == "complex") {
    return Flavor::Complex;
  }
  if (s == "quaternion") {
    return Flavor::Quaternion;
  }
  throw std::invalid_argument("unknown flavor: " + s);
}

Symmetry symmetry_from_string(const std::string &s)
{
  if (s == "U") {
    return Symmetry::U;
  }
  if (s == "UOSp+") {
    return Symmetry::UOSpPlus;
  }
  if (s == "UOSp-") {
    return Symmetry::UOSpMinus;
  }
  throw std::invalid_argument("unknown symmetry: " + s);
}

Metric Metric::preset(Flavor f, int p, int L)
{
  switch (f) {
    case Flavor::Real:
      return {std::vector<double>(p, 1.0), std::vector<cplx>(L, 1.0)};
    case Flavor::Complex:
      return {std::vector<double>(p, 1.0), std::vector<cplx>(L, 0.5)};
    case Flavor::Quaternion:
      return {std::vector<double>(p, 2.0), std::vector<cplx>(L, 1.0)};
  }
  return {};
}

WickRotation::WickRotation(double psi_) : psi(psi_)
{
  if (!(psi > 0.0 && psi < std::numbers::pi)) {
    throw std::invalid_argument("Wick rotation angle must lie in (0, pi)");
  }
}

int SuperVector::real_dim() const
{
  switch (flavor) {
    case Flavor::Real:
      return p;
    case Flavor::Complex:
      return 2 * p;
    case Flavor::Quaternion:
      return 4 * p;
  }
  return 0;
}

SuperVector make_supervector(Flavor f, int L, std::vector<double> body)
{
  SuperVector v;
  v.flavor = f;
  v.L = L;
  const int per = f == Flavor::Real ? 1 : (f == Flavor::Complex ? 2 : 4);
  if (body.size() % per) {
    throw std::invalid_argument("make_supervector: body length does not match flavor");
  }
  v.p = int(body.size()) / per;
  v.body = std::move(body);
  return v;
}

namespace {

MultivectorC gen(Generator g) { return MultivectorC::generator(g); }

double body_norm2(const SuperVector &v)
{
  double s = 0.0;
  for (double x : v.body) {
    s += x * x;
  }
  return s;
}

}  // namespace

std::array<MultivectorC, 4> quaternion_gram(const SuperVector &v)
{
  if (v.flavor != Flavor::Quaternion) {
    throw std::invalid_argument("quaternion_gram: not a quaternion supervector");
  }
  std::array<MultivectorC, 4> G;
  double b = body_norm2(v);
  G[0] = MultivectorC(cplx(b));
  G[3] = MultivectorC(cplx(b));
  for (int m = 1; m <= v.L; m++) {
    /* block [[alpha, alpha*], [beta, beta*]] */
    MultivectorC blk[4] = {gen(eta(2 * m - 1)), gen(eta_star(2 * m - 1)), gen(eta(2 * m)),
                           gen(eta_star(2 * m))};
    MultivectorC dag[4] = {blk[0].conjugate(), blk[2].conjugate(), blk[1].conjugate(),
                           blk[3].conjugate()};
    for (int i = 0; i < 2; i++) {
      for (int j = 0; j < 2; j++) {
        G[2 * i + j] += dag[2 * i + 0] * blk[0 * 2 + j] + dag[2 * i + 1] * blk[1 * 2 + j];
      }
    }
  }
  return G;
}

MultivectorC vector_length_invariant(const SuperVector &v)
{
  if (v.flavor == Flavor::Quaternion) {
    return quaternion_gram(v)[0];
  }
  MultivectorC r(cplx(body_norm2(v)));
  for (int m = 1; m <= v.L; m++) {
    MultivectorC a = gen(eta(m));
    r += a.conjugate() * a;
    if (v.flavor == Flavor::Real) {
      MultivectorC as = gen(eta_star(m));
      r += as.conjugate() * as;
    }
  }
  return r;
}

MultivectorC vector_length_invariant(const SuperVector &v, const Metric &m)
{
  const Metric want = Metric::preset(v.flavor, v.p, v.L);
  if (m.g != want.g || m.h != want.h) {
    throw std::invalid_argument("vector_length_invariant: metric does not match flavor preset");
  }
  return vector_length_invariant(v);
}

SuperMatrix::SuperMatrix(int n, std::vector<bool> fermionic)
    : n_(n), fermionic_(std::move(fermionic)), e_(std::size_t(n) * n)
{
}

SuperMatrix operator*(const SuperMatrix &a, const SuperMatrix &b)
{
  if (a.n_ != b.n_) {
    throw std::invalid_argument("SuperMatrix: size mismatch");
  }
  SuperMatrix r = a;
  for (int i = 0; i < a.n_; i++) {
    for (int j = 0; j < a.n_; j++) {
      MultivectorC acc;
      for (int k = 0; k < a.n_; k++) {
        if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) {
          acc += a.at(i, k) * b.at(k, j);
        }
      }
      r.at(i, j) = std::move(acc);
    }
  }
  return r;
}

SuperMatrix operator+(const SuperMatrix &a, const SuperMatrix &b)
{
  SuperMatrix r = a;
  for (int i = 0; i < a.n_ * a.n_; i++) {
    r.e_[i] += b.e_[i];
  }
  return r;
}

int matrix_grassmann_pairs(Symmetry sym, int k1, int k2)
{
  switch (sym) {
    case Symmetry::U:
      return k1 * k2;
    case Symmetry::UOSpPlus:
    case Symmetry::UOSpMinus:
      return k1 * k2;
  }
  return 0;
}

int matrix_invariant_count(Symmetry, int k1, int k2) { return k1 + k2; }

SuperMatrix make_radial_supermatrix(Symmetry sym, const EigenvaluePoint &s, bool with_odd)
{
  const int k1 = int(s.s1.size()), k2 = int(s.s2.size());
  const WickRotation w(s.psi);
  const cplx om = w.omega();
  const cplx c = w.half();
  auto pair_of = [&](int n, int m) { return n * k2 + m + 1; };  // 0-based n, m
  SuperMatrix S;
  if (sym == Symmetry::U) {
    std::vector<bool> ferm(k1 + k2, false);
    for (int m = 0; m < k2; m++) {
      ferm[k1 + m] = true;
    }
    S = SuperMatrix(k1 + k2, ferm);
    for (int n = 0; n < k1; n++) {
      S.at(n, n) = MultivectorC(s.s1[n]);
    }
    for (int m = 0; m < k2; m++) {
      S.at(k1 + m, k1 + m) = MultivectorC(om * s.s2[m]);
    }
    if (with_odd) {
      for (int n = 0; n < k1; n++) {
        for (int m = 0; m < k2; m++) {
          S.at(n, k1 + m) = gen(eta_star(pair_of(n, m))) * c;
          S.at(k1 + m, n) = gen(eta(pair_of(n, m))) * c;
        }
      }
    }
  }
  else if (sym == Symmetry::UOSpPlus) {
    /* rows: boson (k1), fermion block 1 (k2), fermion block 2 (k2) */
    std::vector<bool> ferm(k1 + 2 * k2, true);
    for (int n = 0; n < k1; n++) {
      ferm[n] = false;
    }
    S = SuperMatrix(k1 + 2 * k2, ferm);
    for (int n = 0; n < k1; n++) {
      S.at(n, n) = MultivectorC(s.s1[n]);
    }
    for (int m = 0; m < k2; m++) {
      S.at(k1 + m, k1 + m) = MultivectorC(om * s.s2[m]);
      S.at(k1 + k2 + m, k1 + k2 + m) = MultivectorC(om * s.s2[m]);
    }
    if (with_odd) {
      const cplx cs = c;
      for (int n = 0; n < k1; n++) {
        for (int m = 0; m < k2; m++) {
          const int q = pair_of(n, m);
          S.at(n, k1 + m) = gen(eta(q)) * cs;
          S.at(n, k1 + k2 + m) = gen(eta_star(q)) * cs;
          S.at(k1 + m, n) = gen(eta_star(q)) * (-cs);
          S.at(k1 + k2 + m, n) = gen(eta(q)) * cs;
        }
      }
    }
  }
  else {
    /* rows: boson block 1 (k1), boson block 2 (k1), fermion (k2) */
    std::vector<bool> ferm(2 * k1 + k2, false);
    for (int m = 0; m < k2; m++) {
      ferm[2 * k1 + m] = true;
    }
    S = SuperMatrix(2 * k1 + k2, ferm);
    for (int n = 0; n < k1; n++) {
      S.at(n, n) = MultivectorC(s.s1[n]);
      S.at(k1 + n, k1 + n) = MultivectorC(s.s1[n]);
    }
    for (int m = 0; m < k2; m++) {
      S.at(2 * k1 + m, 2 * k1 + m) = MultivectorC(om * s.s2[m]);
    }
    if (with_odd) {
      const cplx cs = c;
      for (int n = 0; n < k1; n++) {
        for (int m = 0; m < k2; m++) {
          const int q = pair_of(n, m);
          S.at(n, 2 * k1 + m) = gen(eta(q)) * cs;
          S.at(k1 + n, 2 * k1 + m) = gen(eta_star(q)) * cs;
          S.at(2 * k1 + m, n) = gen(eta_star(q)) * (-cs);
          S.at(2 * k1 + m, k1 + n) = gen(eta(q)) * cs;
        }
      }
    }
  }
  S.symmetry = sym;
  S.k1 = k1;
  S.k2 = k2;
  S.psi = s.psi;
  return S;
}

MultivectorC supertrace(const SuperMatrix &S)
{
  MultivectorC r;
  for (int i = 0; i < S.size(); i++) {
    if (S.fermionic(i)) {
      r -= S.at(i, i);
    }
    else {
      r += S.at(i, i);
    }
  }
  return r;
}

std::vector<MultivectorC> supertrace_powers(const SuperMatrix &S, int m)
{
  std::vector<MultivectorC> out;
  if (m <= 0) {
    return out;
  }
  SuperMatrix P = S;
  out.push_back(supertrace(P));
  for (int j = 2; j <= m; j++) {
    P = P * S;
    out.push_back(supertrace(P));
  }
  return out;
}

MultivectorC supertrace_power(const SuperMatrix &S, int j)
{
  if (j < 1) {
    throw std::invalid_argument("supertrace_power: j must be >= 1");
  }
  return supertrace_powers(S, j).back();
}

MultivectorC invert_even(const MultivectorC &x)
{
  const cplx b = x.body();
  if (std::abs(b) < 1e-300) {
    throw SingularInputError("invert_even: body is not invertible");
  }
  const MultivectorC q = x.nil_part() * (-1.0 / b);
  MultivectorC sum(cplx(1.0)), pw(cplx(1.0));
  for (int k = 0; k < 64; k++) {
    pw = pw * q;
    if (pw.is_zero()) {
      break;
    }
    sum += pw;
  }
  return sum * (1.0 / b);
}

namespace {

using MvMatrix = std::vector<std::vector<MultivectorC>>;

MultivectorC det_even(const MvMatrix &A)
{
  const int n = int(A.size());
  if (n == 0) {
    return MultivectorC(cplx(1.0));
  }
  if (n == 1) {
    return A[0][0];
  }
  MultivectorC r;
  for (int j = 0; j < n; j++) {
    if (A[0][j].is_zero()) {
      continue;
    }
    MvMatrix minor(n - 1);
    for (int i = 1; i < n; i++) {
      for (int k = 0; k < n; k++) {
        if (k != j) {
          minor[i - 1].push_back(A[i][k]);
        }
      }
    }
    MultivectorC t = A[0][j] * det_even(minor);
    if (j % 2) {
      r -= t;
    }
    else {
      r += t;
    }
  }
  return r;
}

MvMatrix inverse_even(MvMatrix A)
{
  const int n = int(A.size());
  MvMatrix I(n, std::vector<MultivectorC>(n));
  for (int i = 0; i < n; i++) {
    I[i][i] = MultivectorC(cplx(1.0));
  }
  for (int col = 0; col < n; col++) {
    int piv = -1;
    double best = 0.0;
    for (int r = col; r < n; r++) {
      if (std::abs(A[r][col].body()) > best) {
        best = std::abs(A[r][col].body());
        piv = r;
      }
    }
    if (piv < 0 || best < 1e-300) {
      throw SingularInputError("superdeterminant: fermion-fermion block body is singular");
    }
    std::swap(A[piv], A[col]);
    std::swap(I[piv], I[col]);
    const MultivectorC inv = invert_even(A[col][col]);
    for (int k = 0; k < n; k++) {
      A[col][k] = inv * A[col][k];
      I[col][k] = inv * I[col][k];
    }
    for (int r = 0; r < n; r++) {
      if (r == col || A[r][col].is_zero()) {
        continue;
      }
      const MultivectorC f = A[r][col];
      for (int k = 0; k < n; k++) {
        A[r][k] -= f * A[col][k];
        I[r][k] -= f * I[col][k];
      }
    }
  }
  return I;
}

}  // namespace

MultivectorC superdeterminant(const SuperMatrix &S)
{
  std::vector<int> bos, fer;
  for (int i = 0; i < S.size(); i++) {
    (S.fermionic(i) ? fer : bos).push_back(i);
  }
  MvMatrix D(fer.size(), std::vector<MultivectorC>(fer.size()));
  for (std::size_t a = 0; a < fer.size(); a++) {
    for (std::size_t b = 0; b < fer.size(); b++) {
      D[a][b] = S.at(fer[a], fer[b]);
    }
  }
  const MvMatrix Dinv = inverse_even(D);
  MvMatrix M(bos.size(), std::vector<MultivectorC>(bos.size()));
  for (std::size_t a = 0; a < bos.size(); a++) {
    for (std::size_t b = 0; b < bos.size(); b++) {
      MultivectorC v = S.at(bos[a], bos[b]);
      for (std::size_t x = 0; x < fer.size(); x++) {
        for (std::size_t y = 0; y < fer.size(); y++) {
          if (S.at(bos[a], fer[x]).is_zero() || S.at(fer[y], bos[b]).is_zero()) {
            continue;
          }
          v -= S.at(bos[a], fer[x]) * Dinv[x][y] * S.at(fer[y], bos[b]);
        }
      }
      M[a][b] = std::move(v);
    }
  }
  const MultivectorC dB = det_even(M);
  const MultivectorC dF = det_even(D);
  if (std::abs(dB.body()) < 1e-300) {
    throw SingularInputError("superdeterminant: boson-boson block body is singular");
  }
  return dB * invert_even(dF);
}

std::vector<cplx> radial_invariants(Symmetry sym, const EigenvaluePoint &s, int m)
{
  const cplx om = std::polar(1.0, s.psi);
  const double mb = sym == Symmetry::UOSpMinus ? 2.0 : 1.0;
  const double mf = sym == Symmetry::UOSpPlus ? 2.0 : 1.0;
  std::vector<cplx> u(m, 0.0);
  for (int j = 1; j <= m; j++) {
    for (cplx a : s.s1) {
      u[j - 1] += mb * std::pow(a, j);
    }
    for (cplx b : s.s2) {
      u[j - 1] -= mf * std::pow(om * b, j);
    }
  }
  return u;
}

std::vector<Jet> radial_invariants(Symmetry sym, std::span<const Jet> s1, std::span<const Jet> s2, double psi, int m)
{
  const cplx om = std::polar(1.0, psi);
  const double mb = sym == Symmetry::UOSpMinus ? 2.0 : 1.0;
  const double mf = sym == Symmetry::UOSpPlus ? 2.0 : 1.0;
  const Jet &ref = s1.empty() ? s2[0] : s1[0];
  std::vector<Jet> u(m, Jet(ref.nvars(), ref.order(), 0.0));
  for (const Jet &a : s1) {
    Jet pw = a;
    for (int j = 1; j <= m; j++) {
      u[j - 1] += pw * cplx(mb);
      pw *= a;
    }
  }
  for (const Jet &b : s2) {
    Jet t = b * om;
    Jet pw = t;
    for (int j = 1; j <= m; j++) {
      u[j - 1] -= pw * cplx(mf);
      pw *= t;
    }
  }
  return u;
}

MultivectorC build_invariant_superfunction(const Profile &p, const SuperVector &v)
{
  const MultivectorC r2 = vector_length_invariant(v);
  const cplx base[1] = {r2.body()};
  const MultivectorC nil[1] = {r2.nil_part()};
  return nilpotent_expand(p, base, nil, v.grassmann_pairs());
}

MultivectorC build_invariant_superfunction(const Profile &p, const SuperMatrix &S, int arity)
{
  const auto inv = supertrace_powers(S, arity);
  std::vector<cplx> base;
  std::vector<MultivectorC> nil;
  for (const auto &x : inv) {
    base.push_back(x.body());
    nil.push_back(x.nil_part());
  }
  return nilpotent_expand(p, base, nil, matrix_grassmann_pairs(S.symmetry, S.k1, S.k2));
}

nlohmann::json to_json(const MultivectorC &x)
{
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &[m, c] : x.terms()) {
    arr.push_back({{"mask", m}, {"c", {c.real(), c.imag()}}});
  }
  return arr;
}

MultivectorC multivector_from_json(const nlohmann::json &j)
{
  MultivectorC r;
  for (const auto &t : j) {
    r += MultivectorC::monomial(t.at("mask").get<Mask>(),
                                cplx(t.at("c").at(0).get<double>(), t.at("c").at(1).get<double>()));
  }
  return r;
}

nlohmann::json to_json(const SuperMatrix &S)
{
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < S.size(); i++) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < S.size(); j++) {
      row.push_back(to_json(S.at(i, j)));
    }
    rows.push_back(row);
  }
  std::vector<bool> ferm;
  for (int i = 0; i < S.size(); i++) {
    ferm.push_back(S.fermionic(i));
  }
  return {{"symmetry", to_string(S.symmetry)},
          {"k1", S.k1},
          {"k2", S.k2},
          {"psi", S.psi},
          {"fermionic", ferm},
          {"entries", rows}};
}

SuperMatrix supermatrix_from_json(const nlohmann::json &j)
{
  std::vector<bool> ferm = j.at("fermionic").get<std::vector<bool>>();
  const int n = int(ferm.size());
  SuperMatrix S(n, ferm);
  S.symmetry = symmetry_from_string(j.at("symmetry").get<std::string>());
  S.k1 = j.at("k1").get<int>();
  S.k2 = j.at("k2").get<int>();
  S.psi = j.at("psi").get<double>();
  for (int r = 0; r < n; r++) {
    for (int c = 0; c < n; c++) {
      S.at(r, c) = multivector_from_json(j.at("entries").at(r).at(c));
    }
  }
  return S;
}

nlohmann::json to_json(const EigenvaluePoint &s)
{
  auto pack = [](const std::vector<cplx> &v) {
    nlohmann::json a = nlohmann::json::array();
    for (cplx z : v) {
      a.push_back({z.real(), z.imag()});
    }
    return a;
  };
  return {{"s1", pack(s.s1)}, {"s2", pack(s.s2)}, {"psi", s.psi}};
}

EigenvaluePoint eigenvalue_point_from_json(const nlohmann::json &j)
{
  auto unpack = [](const nlohmann::json &a) {
    std::vector<cplx> v;
    for (const auto &z : a) {
      v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    }
    return v;
  };
  return {unpack(j.at("s1")), unpack(j.at("s2")), j.at("psi").get<double>()};
}

}  // namespace berezin
