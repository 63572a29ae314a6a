// SPDX-License-Identifier: Apache-2.0
#include "berezin/symbolic.hpp"

#include <sstream>

namespace berezin {

Poly Poly::constant(int nvars, Rational c, int wpow)
{
  Poly p(nvars);
  PolyKey k(nvars + 1, 0);
  k[nvars] = wpow;
  p.add_term(k, c);
  return p;
}

Poly Poly::variable(int nvars, int var, Rational c, int wpow)
{
  Poly p(nvars);
  PolyKey k(nvars + 1, 0);
  k[var] = 1;
  k[nvars] = wpow;
  p.add_term(k, c);
  return p;
}

void Poly::add_term(PolyKey k, const Rational &c)
{
  if (c == 0) {
    return;
  }
  auto [it, fresh] = terms_.try_emplace(std::move(k), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

Poly &Poly::operator+=(const Poly &o)
{
  if (nvars_ == 0 && terms_.empty()) {
    nvars_ = o.nvars_;
  }
  for (const auto &[k, c] : o.terms_) {
    add_term(k, c);
  }
  return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
  if (nvars_ == 0 && terms_.empty()) {
    nvars_ = o.nvars_;
  }
  for (const auto &[k, c] : o.terms_) {
    add_term(k, -c);
  }
  return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
  Poly r(std::max(a.nvars_, b.nvars_));
  for (const auto &[ka, ca] : a.terms_) {
    for (const auto &[kb, cb] : b.terms_) {
      PolyKey k(ka.size());
      for (std::size_t i = 0; i < k.size(); i++) {
        k[i] = ka[i] + kb[i];
      }
      r.add_term(std::move(k), ca * cb);
    }
  }
  return r;
}

Poly Poly::scaled(const Rational &c, int wpow) const
{
  Poly r(nvars_);
  if (c == 0) {
    return r;
  }
  for (const auto &[k, v] : terms_) {
    PolyKey kk = k;
    kk[nvars_] += wpow;
    r.terms_.emplace(std::move(kk), v * c);
  }
  return r;
}

Poly Poly::derivative(int var) const
{
  Poly r(nvars_);
  for (const auto &[k, v] : terms_) {
    if (k[var] == 0) {
      continue;
    }
    PolyKey kk = k;
    kk[var] -= 1;
    r.add_term(std::move(kk), v * k[var]);
  }
  return r;
}

std::complex<double> Poly::eval(std::span<const std::complex<double>> s, std::complex<double> w) const
{
  std::complex<double> acc = 0.0;
  for (const auto &[k, v] : terms_) {
    std::complex<double> m = static_cast<double>(v);
    for (int i = 0; i < nvars_; i++) {
      for (int e = 0; e < k[i]; e++) {
        m *= s[i];
      }
    }
    if (k[nvars_] != 0) {
      m *= std::pow(w, k[nvars_]);
    }
    acc += m;
  }
  return acc;
}

Poly LinearFactor::as_poly(int nvars) const
{
  Poly p = Poly::variable(nvars, a);
  if (b >= 0) {
    p -= Poly::variable(nvars, b, Rational(sign), wpow);
  }
  return p;
}

std::pair<Rational, int> LinearFactor::slope(int var) const
{
  if (var == a) {
    return {Rational(1), 0};
  }
  if (var == b) {
    return {Rational(-sign), wpow};
  }
  return {Rational(0), 0};
}

std::complex<double> LinearFactor::eval(std::span<const std::complex<double>> s, std::complex<double> w) const
{
  if (b < 0) {
    return s[a];
  }
  return s[a] - double(sign) * std::pow(w, wpow) * s[b];
}

UnitFactor make_factor(int a, int sa, int wa, int b, int sb, int wb)
{
  if (a == b) {
    throw std::invalid_argument("make_factor: both terms use the same variable");
  }
  if (a < b) {
    return {{a, b, sa * sb, wb - wa}, sa, wa};
  }
  return {{b, a, sa * sb, wa - wb}, -sb, wb};
}

namespace {

/* Exact division of N by the factor; returns false if it does not divide. */
bool divide(const Poly &N, const LinearFactor &f, Poly &Q)
{
  const int n = N.nvars();
  if (f.b < 0) {
    Poly q(n);
    for (const auto &[k, c] : N.terms()) {
      if (k[f.a] == 0) {
        return false;
      }
      PolyKey kk = k;
      kk[f.a] -= 1;
      q.add_term(std::move(kk), c);
    }
    Q = std::move(q);
    return true;
  }
  /* N = sum_j N_j s_a^j; divide by (s_a - c s_b), c = sign w^wpow */
  std::map<int, Poly> byDeg;
  for (const auto &[k, c] : N.terms()) {
    PolyKey kk = k;
    const int d = kk[f.a];
    kk[f.a] = 0;
    auto it = byDeg.try_emplace(d, Poly(n)).first;
    it->second.add_term(std::move(kk), c);
  }
  if (byDeg.empty()) {
    Q = Poly(n);
    return true;
  }
  const int top = byDeg.rbegin()->first;
  if (top == 0) {
    return false;
  }
  auto times_c_sb = [&](const Poly &p) {
    Poly r(n);
    for (const auto &[k, c] : p.terms()) {
      PolyKey kk = k;
      kk[f.b] += 1;
      kk[n] += f.wpow;
      r.add_term(std::move(kk), c * f.sign);
    }
    return r;
  };
  std::vector<Poly> q(top, Poly(n));
  Poly carry(n);
  for (int j = top; j >= 1; j--) {
    auto it = byDeg.find(j);
    Poly cur = it == byDeg.end() ? Poly(n) : it->second;
    cur += carry;
    q[j - 1] = cur;
    carry = times_c_sb(cur);
  }
  auto it0 = byDeg.find(0);
  Poly rem = it0 == byDeg.end() ? Poly(n) : it0->second;
  rem += carry;
  if (!rem.is_zero()) {
    return false;
  }
  Poly out(n);
  for (int j = 0; j < top; j++) {
    for (const auto &[k, c] : q[j].terms()) {
      PolyKey kk = k;
      kk[f.a] += j;
      out.add_term(std::move(kk), c);
    }
  }
  Q = std::move(out);
  return true;
}

Poly power(const Poly &p, int e, int nvars)
{
  Poly r = Poly::constant(nvars, 1);
  for (int i = 0; i < e; i++) {
    r = r * p;
  }
  return r;
}

}  // namespace

RationalFn::RationalFn(Poly num, std::map<LinearFactor, int> den) : num_(std::move(num)), den_(std::move(den))
{
  reduce();
}

RationalFn RationalFn::constant(int nvars, Rational c, int wpow)
{
  return RationalFn(Poly::constant(nvars, c, wpow), {});
}

RationalFn RationalFn::variable(int nvars, int var) { return RationalFn(Poly::variable(nvars, var), {}); }

RationalFn RationalFn::inverse_factor(int nvars, const LinearFactor &f, int e)
{
  return RationalFn(Poly::constant(nvars, 1), {{f, e}});
}

void RationalFn::reduce()
{
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    Poly q;
    while (it->second > 0 && divide(num_, it->first, q)) {
      num_ = std::move(q);
      it->second--;
    }
    if (it->second == 0) {
      it = den_.erase(it);
    }
    else {
      ++it;
    }
  }
}

namespace {

/* Bring a and b over the common denominator max(e_a, e_b). */
std::map<LinearFactor, int> common(const RationalFn &a, const RationalFn &b, Poly &na, Poly &nb)
{
  const int n = std::max(a.nvars(), b.nvars());
  std::map<LinearFactor, int> den = a.den();
  for (const auto &[f, e] : b.den()) {
    den[f] = std::max(den[f], e);
  }
  na = a.num();
  nb = b.num();
  for (const auto &[f, e] : den) {
    auto ia = a.den().find(f);
    auto ib = b.den().find(f);
    const int ea = ia == a.den().end() ? 0 : ia->second;
    const int eb = ib == b.den().end() ? 0 : ib->second;
    if (e > ea) {
      na = na * power(f.as_poly(n), e - ea, n);
    }
    if (e > eb) {
      nb = nb * power(f.as_poly(n), e - eb, n);
    }
  }
  return den;
}

}  // namespace

RationalFn operator+(const RationalFn &a, const RationalFn &b)
{
  if (a.is_zero()) {
    return b;
  }
  if (b.is_zero()) {
    return a;
  }
  Poly na, nb;
  auto den = common(a, b, na, nb);
  return RationalFn(na + nb, std::move(den));
}

RationalFn operator-(const RationalFn &a, const RationalFn &b) { return a + b.scaled(-1); }

RationalFn operator*(const RationalFn &a, const RationalFn &b)
{
  if (a.is_zero() || b.is_zero()) {
    return RationalFn(std::max(a.nvars(), b.nvars()));
  }
  std::map<LinearFactor, int> den = a.den_;
  for (const auto &[f, e] : b.den_) {
    den[f] += e;
  }
  return RationalFn(a.num_ * b.num_, std::move(den));
}

RationalFn RationalFn::scaled(const Rational &c, int wpow) const
{
  RationalFn r = *this;
  r.num_ = num_.scaled(c, wpow);
  if (r.num_.is_zero()) {
    r.den_.clear();
  }
  return r;
}

RationalFn RationalFn::derivative(int var) const
{
  const int n = nvars();
  /* d(N/D) = (N' P - N sum_k e_k c_k P/l_k) / (D P), P = product of involved l_k */
  std::vector<LinearFactor> inv;
  for (const auto &[f, e] : den_) {
    if (f.slope(var).first != 0) {
      inv.push_back(f);
    }
  }
  Poly P = Poly::constant(n, 1);
  for (const auto &f : inv) {
    P = P * f.as_poly(n);
  }
  Poly top = num_.derivative(var) * P;
  for (std::size_t k = 0; k < inv.size(); k++) {
    Poly others = Poly::constant(n, 1);
    for (std::size_t j = 0; j < inv.size(); j++) {
      if (j != k) {
        others = others * inv[j].as_poly(n);
      }
    }
    auto [c, w] = inv[k].slope(var);
    top -= (num_ * others).scaled(c * den_.at(inv[k]), w);
  }
  std::map<LinearFactor, int> den = den_;
  for (const auto &f : inv) {
    den[f] += 1;
  }
  return RationalFn(std::move(top), std::move(den));
}

std::complex<double> RationalFn::eval(std::span<const std::complex<double>> s,
                                      std::complex<double> w,
                                      double floor) const
{
  std::complex<double> d = 1.0;
  for (const auto &[f, e] : den_) {
    const auto v = f.eval(s, w);
    if (std::abs(v) < floor) {
      throw SingularPointError("coefficient pole: denominator factor vanishes");
    }
    d *= std::pow(v, e);
  }
  return num_.eval(s, w) / d;
}

std::string to_string(const Poly &p, const std::vector<std::string> &names)
{
  if (p.is_zero()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  const int n = p.nvars();
  for (const auto &[k, c] : p.terms()) {
    Rational v = c;
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) {
        v = -v;
      }
    }
    else if (v < 0) {
      os << "-";
      v = -v;
    }
    first = false;
    std::vector<std::string> parts;
    bool trivial = true;
    for (int i = 0; i <= n; i++) {
      if (k[i] != 0) {
        trivial = false;
      }
    }
    if (v != 1 || trivial) {
      parts.push_back(v.str());
    }
    if (k[n] != 0) {
      parts.push_back(k[n] == 1 ? "w" : "w^" + std::to_string(k[n]));
    }
    for (int i = 0; i < n; i++) {
      if (k[i] == 1) {
        parts.push_back(names[i]);
      }
      else if (k[i] > 1) {
        parts.push_back(names[i] + "^" + std::to_string(k[i]));
      }
    }
    for (std::size_t j = 0; j < parts.size(); j++) {
      os << (j ? "*" : "") << parts[j];
    }
  }
  return os.str();
}

std::string to_string(const LinearFactor &f, const std::vector<std::string> &names)
{
  if (f.b < 0) {
    return names[f.a];
  }
  std::string c = f.wpow == 0 ? "" : (f.wpow == 1 ? "w*" : "w^" + std::to_string(f.wpow) + "*");
  return "(" + names[f.a] + (f.sign > 0 ? " - " : " + ") + c + names[f.b] + ")";
}

std::string RationalFn::str(const std::vector<std::string> &names) const
{
  std::string s = "(" + to_string(num_, names) + ")";
  if (!den_.empty()) {
    s += "/(";
    bool first = true;
    for (const auto &[f, e] : den_) {
      s += (first ? "" : "*") + to_string(f, names) + (e > 1 ? "^" + std::to_string(e) : "");
      first = false;
    }
    s += ")";
  }
  return s;
}

}  // namespace berezin
