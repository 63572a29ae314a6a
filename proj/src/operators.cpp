// SPDX-License-Identifier: Apache-2.0
#include "berezin/operators.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace berezin {

namespace {

Rational binom(int n, int k)
{
  Rational r = 1;
  for (int i = 1; i <= k; i++) {
    r = r * (n - k + i) / i;
  }
  return r;
}

Rational rpow(Rational b, int e)
{
  Rational r = 1;
  for (int i = 0; i < e; i++) {
    r *= b;
  }
  return r;
}

Rational factorial(int n)
{
  Rational r = 1;
  for (int i = 2; i <= n; i++) {
    r *= i;
  }
  return r;
}

RationalFn derivative(const RationalFn &c, const MultiIndex &g)
{
  RationalFn r = c;
  for (std::size_t v = 0; v < g.size(); v++) {
    for (int t = 0; t < g[v]; t++) {
      r = r.derivative(int(v));
      if (r.is_zero()) {
        return r;
      }
    }
  }
  return r;
}

/* All multi-indices g <= a componentwise. */
std::vector<MultiIndex> below(const MultiIndex &a)
{
  std::vector<MultiIndex> out{MultiIndex(a.size(), 0)};
  for (std::size_t v = 0; v < a.size(); v++) {
    std::vector<MultiIndex> next;
    for (const auto &g : out) {
      for (int k = 0; k <= a[v]; k++) {
        MultiIndex h = g;
        h[v] = k;
        next.push_back(std::move(h));
      }
    }
    out = std::move(next);
  }
  return out;
}

void check_compatible(const RadialOperator &a, const RadialOperator &b)
{
  if (a.nvars() != b.nvars()) {
    throw std::invalid_argument("radial operators act on different variable sets");
  }
}

}  // namespace

RadialOperator::RadialOperator(std::vector<std::string> names, int pi_power)
    : names_(std::move(names)), pi_power_(pi_power)
{
}

RadialOperator RadialOperator::identity(std::vector<std::string> names)
{
  const int n = int(names.size());
  return multiply(std::move(names), RationalFn::constant(n, 1));
}

RadialOperator RadialOperator::multiply(std::vector<std::string> names, const RationalFn &c)
{
  const int n = int(names.size());
  RadialOperator op(std::move(names));
  op.add_term(MultiIndex(n, 0), c);
  return op;
}

RadialOperator RadialOperator::partial(std::vector<std::string> names, int var, int times)
{
  const int n = int(names.size());
  RadialOperator op(std::move(names));
  MultiIndex a(n, 0);
  a[var] = times;
  op.add_term(a, RationalFn::constant(n, 1));
  return op;
}

void RadialOperator::add_term(const MultiIndex &a, const RationalFn &c)
{
  if (c.is_zero()) {
    return;
  }
  auto [it, fresh] = terms_.try_emplace(a, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

int RadialOperator::order() const
{
  int o = 0;
  for (const auto &[a, c] : terms_) {
    int s = 0;
    for (int x : a) {
      s += x;
    }
    o = std::max(o, s);
  }
  return o;
}

RadialOperator RadialOperator::scaled(const Rational &c, int wpow, int pi) const
{
  RadialOperator r(names_, pi_power_ + pi);
  for (const auto &[a, v] : terms_) {
    r.add_term(a, v.scaled(c, wpow));
  }
  return r;
}

RadialOperator RadialOperator::left_multiply(const RationalFn &c) const
{
  RadialOperator r(names_, pi_power_);
  for (const auto &[a, v] : terms_) {
    r.add_term(a, c * v);
  }
  return r;
}

RadialOperator operator+(const RadialOperator &a, const RadialOperator &b)
{
  check_compatible(a, b);
  if (a.terms_.empty()) {
    return b;
  }
  if (b.terms_.empty()) {
    return a;
  }
  if (a.pi_power_ != b.pi_power_) {
    throw std::invalid_argument("cannot add radial operators with different powers of pi");
  }
  RadialOperator r = a;
  for (const auto &[k, c] : b.terms_) {
    r.add_term(k, c);
  }
  return r;
}

RadialOperator operator-(const RadialOperator &a, const RadialOperator &b) { return a + b.scaled(-1); }

RadialOperator operator*(const RadialOperator &a, const RadialOperator &b) { return compose(a, b); }

bool operator==(const RadialOperator &a, const RadialOperator &b)
{
  if (a.terms_.empty() || b.terms_.empty()) {
    return a.terms_.empty() && b.terms_.empty();
  }
  return a.pi_power_ == b.pi_power_ && a.terms_ == b.terms_;
}

RadialOperator compose(const RadialOperator &A, const RadialOperator &B)
{
  check_compatible(A, B);
  RadialOperator r(A.names(), A.pi_power() + B.pi_power());
  /* c_a d^a (d_b d^b) = sum_{g <= a} binom(a, g) c_a (d^g d_b) d^{a - g + b} */
  std::map<std::pair<MultiIndex, MultiIndex>, RationalFn> cache;
  for (const auto &[a, ca] : A.terms()) {
    const auto gs = below(a);
    for (const auto &[b, cb] : B.terms()) {
      for (const auto &g : gs) {
        auto key = std::make_pair(b, g);
        auto it = cache.find(key);
        if (it == cache.end()) {
          it = cache.emplace(key, derivative(cb, g)).first;
        }
        if (it->second.is_zero()) {
          continue;
        }
        Rational w = 1;
        MultiIndex idx(a.size());
        for (std::size_t v = 0; v < a.size(); v++) {
          w *= binom(a[v], g[v]);
          idx[v] = a[v] - g[v] + b[v];
        }
        r.add_term(idx, (ca * it->second).scaled(w));
      }
    }
  }
  return r;
}

RadialOperator commutator(const RadialOperator &a, const RadialOperator &b) { return a * b - b * a; }

cplx RadialOperator::apply(const Jet &F, std::span<const cplx> at, double psi, double floor) const
{
  if (F.nvars() != nvars()) {
    throw std::invalid_argument("jet and operator have different numbers of variables");
  }
  if (F.order() < order()) {
    throw std::invalid_argument("jet order is below the operator order");
  }
  const cplx w = std::polar(1.0, psi);
  cplx acc = 0.0;
  for (const auto &[a, c] : terms_) {
    acc += c.eval(at, w, floor) * F.derivative(a);
  }
  return acc * std::pow(std::numbers::pi, pi_power_);
}

std::string RadialOperator::str() const
{
  std::ostringstream os;
  if (pi_power_ != 0) {
    os << "pi^" << pi_power_ << " * ";
  }
  os << "[";
  bool first = true;
  for (const auto &[a, c] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << "(" << c.str(names_) << ")";
    for (std::size_t v = 0; v < a.size(); v++) {
      if (a[v] == 1) {
        os << " d_" << names_[v];
      }
      else if (a[v] > 1) {
        os << " d_" << names_[v] << "^" << a[v];
      }
    }
  }
  if (first) {
    os << "0";
  }
  os << "]";
  return os.str();
}

nlohmann::json RadialOperator::to_json() const
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &[a, c] : terms_) {
    terms.push_back({{"index", a}, {"coeff", c.str(names_)}});
  }
  return {{"variables", names_}, {"pi_power", pi_power_}, {"terms", terms}};
}

RadialOperator radial_laplacian(const std::vector<std::string> &names,
                                const std::vector<RationalFn> &kappa,
                                const std::vector<std::pair<LinearFactor, int>> &weight)
{
  const int n = int(names.size());
  RadialOperator op(names);
  for (int j = 0; j < n; j++) {
    MultiIndex a2(n, 0), a1(n, 0);
    a2[j] = 2;
    a1[j] = 1;
    op.add_term(a2, kappa[j]);
    RationalFn dlog(n);
    for (const auto &[f, e] : weight) {
      auto [c, w] = f.slope(j);
      if (c == 0 || e == 0) {
        continue;
      }
      dlog = dlog + RationalFn::inverse_factor(n, f).scaled(c * e, w);
    }
    op.add_term(a1, kappa[j] * dlog);
  }
  return op;
}

namespace {

RadialOperator laplacian_c(const LaplacianSpec &s) { return radial_laplacian(s.names, s.kappa, s.weight_c); }
RadialOperator laplacian_s(const LaplacianSpec &s) { return radial_laplacian(s.names, s.kappa, s.weight_s); }

RadialOperator finish(const LaplacianSpec &s, const RadialOperator &sum)
{
  const Rational norm = 1 / (factorial(s.L) * rpow(Rational(4), s.L));
  return sum.left_multiply(s.prefactor).scaled(norm, 0, -s.L);
}

}  // namespace

RadialOperator build_d_cs(const LaplacianSpec &spec)
{
  const auto C = laplacian_c(spec);
  const auto one = RadialOperator::identity(spec.names);
  /* sum_n binom(L,n) C^{L-n} (-S)^n with B = C - S inside binomial_sum */
  const auto S = laplacian_s(spec);
  const int L = spec.L;
  std::vector<RadialOperator> Cp{one}, Sp{one};
  for (int k = 1; k <= L; k++) {
    Cp.push_back(Cp.back() * C);
    Sp.push_back(Sp.back() * S.scaled(-1));
  }
  RadialOperator sum(spec.names);
  for (int n = 0; n <= L; n++) {
    sum = sum + (Cp[L - n] * Sp[n]).scaled(binom(L, n));
  }
  return finish(spec, sum);
}

RadialOperator build_d_cs_iad(const LaplacianSpec &spec)
{
  const auto C = laplacian_c(spec);
  const auto S = laplacian_s(spec);
  const auto one = RadialOperator::identity(spec.names);
  return finish(spec, iad_power(C, C - S, spec.L, one));
}

namespace {

struct FlavorData {
  int dim_per_component;  // real dimension of one commuting entry
  int g;                  // metric on commuting entries
  Rational h;             // metric on one Grassmann pair
  int pairs_per_block;
};

FlavorData flavor_data(Flavor f)
{
  switch (f) {
    case Flavor::Real:
      return {1, 1, Rational(1), 1};
    case Flavor::Complex:
      return {2, 1, Rational(1, 2), 1};
    case Flavor::Quaternion:
      return {4, 2, Rational(1), 2};
  }
  throw std::invalid_argument("unknown flavor");
}

}  // namespace

LaplacianSpec vector_spec(Flavor f, int p, int L)
{
  if (p < 1 || L < 0) {
    throw std::invalid_argument("vector_spec: need p >= 1 and L >= 0");
  }
  const auto fd = flavor_data(f);
  const int pairs = fd.pairs_per_block * L;
  const int d = fd.dim_per_component * p;
  /* Real and complex vectors use c = 2 pairs, quaternions c = pairs. */
  const int c = f == Flavor::Quaternion ? pairs : 2 * pairs;
  LaplacianSpec s;
  s.names = {"r"};
  s.kappa = {RationalFn::constant(1, Rational(1, fd.g))};
  const LinearFactor r{0, -1, 1, 0};
  s.weight_c = {{r, d - 1}};
  s.weight_s = {{r, d - 1 - c * fd.g}};
  s.prefactor = RationalFn::constant(1, rpow(fd.h, pairs));
  s.L = pairs;
  return s;
}

std::vector<std::string> matrix_names(int k1, int k2)
{
  std::vector<std::string> names;
  for (int n = 1; n <= k1; n++) {
    names.push_back("s1_" + std::to_string(n));
  }
  for (int n = 1; n <= k2; n++) {
    names.push_back("s2_" + std::to_string(n));
  }
  return names;
}

LaplacianSpec matrix_spec(Symmetry sym, int k1, int k2)
{
  if (k1 < 1 || k2 < 1) {
    throw std::invalid_argument("matrix_spec: need k1, k2 >= 1");
  }
  const int n = k1 + k2;
  int e1 = 2, e2 = 2;
  Rational kb = 1, kf = 1;
  switch (sym) {
    case Symmetry::U:
      break;
    case Symmetry::UOSpPlus:
      e1 = 1;
      e2 = 4;
      kf = Rational(1, 2);
      break;
    case Symmetry::UOSpMinus:
      e1 = 4;
      e2 = 1;
      kb = Rational(1, 2);
      break;
  }
  LaplacianSpec s;
  s.names = matrix_names(k1, k2);
  for (int j = 0; j < k1; j++) {
    s.kappa.push_back(RationalFn::constant(n, kb));
  }
  for (int j = 0; j < k2; j++) {
    s.kappa.push_back(RationalFn::constant(n, -kf, -2));
  }
  for (int a = 0; a < k1; a++) {
    for (int b = a + 1; b < k1; b++) {
      s.weight_c.push_back({LinearFactor{a, b, 1, 0}, e1});
    }
  }
  for (int a = 0; a < k2; a++) {
    for (int b = a + 1; b < k2; b++) {
      s.weight_c.push_back({LinearFactor{k1 + a, k1 + b, 1, 0}, e2});
    }
  }
  s.weight_s = s.weight_c;
  for (int a = 0; a < k1; a++) {
    for (int b = 0; b < k2; b++) {
      s.weight_s.push_back({LinearFactor{a, k1 + b, 1, 1}, -2});
    }
  }
  s.L = k1 * k2;
  /* h = w per pair for U, 2 w for both UOSp forms */
  s.prefactor = RationalFn::constant(n, sym == Symmetry::U ? Rational(1) : rpow(Rational(2), s.L), s.L);
  return s;
}

RadialOperator build_vector_operator(Flavor f, int L) { return build_d_cs(vector_spec(f, 1, L)); }
RadialOperator build_matrix_operator_22(int k1, int k2) { return build_d_cs(matrix_spec(Symmetry::U, k1, k2)); }
RadialOperator build_matrix_operator_14(int k1, int k2)
{
  return build_d_cs(matrix_spec(Symmetry::UOSpPlus, k1, k2));
}
RadialOperator build_matrix_operator_41(int k1, int k2)
{
  return build_d_cs(matrix_spec(Symmetry::UOSpMinus, k1, k2));
}

RadialOperator closed_form_vector(Flavor f, int L)
{
  const int pairs = flavor_data(f).pairs_per_block * L;
  const std::vector<std::string> names{"r"};
  const auto E = RadialOperator::partial(names, 0).left_multiply(
      RationalFn::inverse_factor(1, LinearFactor{0, -1, 1, 0}));
  RadialOperator r = RadialOperator::identity(names);
  for (int k = 0; k < pairs; k++) {
    r = r * E;
  }
  const Rational c = f == Flavor::Real ? Rational(1, 2) : Rational(1, 4);
  return r.scaled(rpow(c, pairs), 0, -pairs);
}

RadialOperator closed_form_real_2()
{
  const std::vector<std::string> names{"r"};
  const LinearFactor r{0, -1, 1, 0};
  RadialOperator op(names);
  op.add_term({2}, RationalFn::inverse_factor(1, r, 2));
  op.add_term({1}, RationalFn::inverse_factor(1, r, 3).scaled(-1));
  return op.scaled(Rational(1, 4), 0, -2);
}

RadialOperator closed_form_u11()
{
  const auto names = matrix_names(1, 1);
  RadialOperator op(names);
  const auto inv = RationalFn::inverse_factor(2, LinearFactor{0, 1, 1, 1});
  op.add_term({1, 0}, inv);
  op.add_term({0, 1}, inv.scaled(1, -1));
  return op.scaled(Rational(1, 2), 1, -1);
}

RadialOperator closed_form_uosp_plus_11()
{
  const auto names = matrix_names(1, 1);
  RadialOperator op(names);
  const auto inv = RationalFn::inverse_factor(2, LinearFactor{0, 1, 1, 1});
  op.add_term({1, 0}, inv.scaled(2));
  op.add_term({0, 1}, inv.scaled(1, -1));
  return op.scaled(Rational(1, 4), 1, -1);
}

RadialOperator closed_form_uosp_plus_21()
{
  const auto names = matrix_names(2, 1);
  auto E = [&](int a) {
    RadialOperator op(names);
    MultiIndex da{0, 0, 0}, df{0, 0, 1};
    da[a] = 1;
    op.add_term(da, RationalFn::constant(3, 2));
    op.add_term(df, RationalFn::constant(3, 1, -1));
    return op;
  };
  auto inv = [&](int a) { return RadialOperator::multiply(names, RationalFn::inverse_factor(3, LinearFactor{a, 2, 1, 1})); };
  const auto bracket = E(0) * inv(1) * E(1) - E(1) * inv(0) * E(0);
  return bracket.left_multiply(RationalFn::inverse_factor(3, LinearFactor{0, 1, 1, 0})).scaled(Rational(1, 4), 2, -2);
}

RadialOperator substitute(const RadialOperator &op,
                          const std::vector<int> &perm,
                          const std::vector<int> &sign,
                          const std::vector<int> &wpow,
                          std::vector<std::string> new_names)
{
  const int n = op.nvars();
  if (int(perm.size()) != n || int(sign.size()) != n || int(wpow.size()) != n || int(new_names.size()) != n) {
    throw std::invalid_argument("substitute: size mismatch");
  }
  auto sub_poly = [&](const Poly &p) {
    Poly r(n);
    for (const auto &[k, c] : p.terms()) {
      PolyKey kk(n + 1, 0);
      Rational cc = c;
      kk[n] = k[n];
      for (int i = 0; i < n; i++) {
        kk[perm[i]] += k[i];
        kk[n] += wpow[i] * k[i];
        if (sign[i] < 0 && k[i] % 2 != 0) {
          cc = -cc;
        }
      }
      r.add_term(std::move(kk), cc);
    }
    return r;
  };
  auto sub_fn = [&](const RationalFn &f) {
    RationalFn r(sub_poly(f.num()), {});
    for (const auto &[lf, e] : f.den()) {
      LinearFactor nf;
      int usign = sign[lf.a], uw = wpow[lf.a];
      if (lf.b < 0) {
        nf = LinearFactor{perm[lf.a], -1, 1, 0};
      }
      else {
        /* c_a y - sign w^k c_b y' */
        const auto u = make_factor(perm[lf.a], sign[lf.a], wpow[lf.a], perm[lf.b], lf.sign * sign[lf.b], lf.wpow + wpow[lf.b]);
        nf = u.f;
        usign = u.sign;
        uw = u.wpow;
      }
      /* 1 / (u nf)^e = u^-e / nf^e */
      r = r * RationalFn::inverse_factor(n, nf, e).scaled(e % 2 == 0 ? 1 : usign, -uw * e);
    }
    return r;
  };
  RadialOperator r(std::move(new_names), op.pi_power());
  for (const auto &[a, c] : op.terms()) {
    /* d/dx_i = c_i^-1 d/dy_perm[i] */
    MultiIndex b(n, 0);
    int sgn = 1, w = 0;
    for (int i = 0; i < n; i++) {
      b[perm[i]] += a[i];
      w -= wpow[i] * a[i];
      if (sign[i] < 0 && a[i] % 2 != 0) {
        sgn = -sgn;
      }
    }
    r.add_term(b, sub_fn(c).scaled(sgn, w));
  }
  return r;
}

RadialOperator first_order_factor(const std::vector<std::string> &names,
                                  int a, int sa, int wa,
                                  int b, int sb, int wb,
                                  const RationalFn &Aa, const RationalFn &Ab)
{
  const int n = int(names.size());
  /* l = p_a s_a + p_b s_b = u * f */
  const auto u = make_factor(a, sa, wa, b, -sb, wb);
  const auto inv = RationalFn::inverse_factor(n, u.f).scaled(u.sign, -u.wpow);
  RadialOperator op(names);
  MultiIndex da(n, 0), db(n, 0);
  da[a] = 1;
  db[b] = 1;
  op.add_term(da, (inv * Aa).scaled(sa, wa));
  op.add_term(db, (inv * Ab).scaled(sb, wb));
  return op;
}

RadialOperator str_laplacian(const std::vector<std::string> &names, const std::vector<RationalFn> &A)
{
  const int n = int(names.size());
  RadialOperator op(names);
  for (int j = 0; j < n; j++) {
    MultiIndex a(n, 0);
    a[j] = 2;
    op.add_term(a, A[j]);
  }
  return op;
}

}  // namespace berezin
