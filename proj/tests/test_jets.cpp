// SPDX-License-Identifier: Apache-2.0
#include "berezin/jets.hpp"
#include "berezin/profile.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace berezin;

namespace {

/* Central finite differences of a scalar function of two variables. */
cplx fd(const std::function<cplx(double, double)> &f, double x, double y, int ax, int ay)
{
  const double h = 1e-4;
  if (ax == 1 && ay == 0) {
    return (f(x + h, y) - f(x - h, y)) / (2 * h);
  }
  if (ax == 0 && ay == 1) {
    return (f(x, y + h) - f(x, y - h)) / (2 * h);
  }
  if (ax == 2 && ay == 0) {
    return (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
  }
  if (ax == 1 && ay == 1) {
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
  }
  return f(x, y);
}

}  // namespace

TEST_CASE("jet product of x with itself")
{
  Jet x = Jet::variable(1, 2, 0, 2.0);
  Jet y = x * x;
  CHECK(y.value() == cplx(4.0));
  CHECK(y.derivative({1}) == cplx(4.0));
  CHECK(y.coeff({2}) == cplx(1.0));
}

TEST_CASE("jet addition commutes and associates")
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; t++) {
    Jet a(2, 3), b(2, 3), c(2, 3);
    for (auto *j : {&a, &b, &c}) {
      for (auto &v : j->coeffs()) {
        v = cplx(g(rng), g(rng));
      }
    }
    Jet d1 = (a + b) + c, d2 = a + (c + b);
    for (std::size_t k = 0; k < d1.coeffs().size(); k++) {
      CHECK(std::abs(d1.coeffs()[k] - d2.coeffs()[k]) < 1e-14);
    }
  }
}

TEST_CASE("jet arithmetic and primitives against finite differences")
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.3, 1.2);
  struct Case {
    const char *name;
    std::function<Jet(const Jet &, const Jet &)> jf;
    std::function<cplx(double, double)> f;
  };
  std::vector<Case> cases = {
      {"mul", [](const Jet &x, const Jet &y) { return (x + 1.0) * (y * y); },
       [](double x, double y) { return cplx((x + 1) * y * y); }},
      {"exp", [](const Jet &x, const Jet &y) { return exp(x * y); },
       [](double x, double y) { return cplx(std::exp(x * y)); }},
      {"log", [](const Jet &x, const Jet &y) { return log(x + y); },
       [](double x, double y) { return cplx(std::log(x + y)); }},
      {"sqrt", [](const Jet &x, const Jet &y) { return sqrt(x * x + y); },
       [](double x, double y) { return cplx(std::sqrt(x * x + y)); }},
      {"pow", [](const Jet &x, const Jet &y) { return pow(x + y, 2.5); },
       [](double x, double y) { return cplx(std::pow(x + y, 2.5)); }},
      {"sin", [](const Jet &x, const Jet &y) { return sin(x - 2.0 * y); },
       [](double x, double y) { return cplx(std::sin(x - 2 * y)); }},
      {"cos", [](const Jet &x, const Jet &y) { return cos(x * y); },
       [](double x, double y) { return cplx(std::cos(x * y)); }},
      {"j0", [](const Jet &x, const Jet &y) { return bessel_j0(3.0 * x + y); },
       [](double x, double y) { return cplx(std::cyl_bessel_j(0.0, 3 * x + y)); }},
  };
  for (const auto &c : cases) {
    for (int t = 0; t < 5; t++) {
      const double x0 = U(rng), y0 = U(rng);
      Jet X = Jet::variable(2, 2, 0, x0), Y = Jet::variable(2, 2, 1, y0);
      Jet F = c.jf(X, Y);
      for (auto [ax, ay] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}}) {
        cplx want = fd(c.f, x0, y0, ax, ay);
        cplx got = F.derivative({ax, ay});
        INFO(c.name, " ", ax, ay);
        CHECK(std::abs(got - want) <= 1e-5 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("compose examples")
{
  Jet z = Jet::constant(1, 3, 0.0);
  Jet e = exp(z);
  CHECK(e.value() == cplx(1.0));
  CHECK(std::abs(e.coeff({1})) == 0.0);
  CHECK(bessel_j0(Jet::variable(1, 4, 0, 0.0)).value() == cplx(1.0));
  Jet r = Jet::variable(1, 4, 0, 1.3);
  Jet s = sqrt(r * r);
  for (std::size_t k = 0; k < s.coeffs().size(); k++) {
    CHECK(std::abs(s.coeffs()[k] - r.coeffs()[k]) < 1e-12);
  }
  CHECK_THROWS_AS(sqrt(Jet::variable(1, 2, 0, 0.0)), std::domain_error);
}

TEST_CASE("J0 Taylor coefficients satisfy the Bessel equation")
{
  for (double r0 : {0.0, 0.4, 2.7}) {
    for (double k : {0.5, 1.7}) {
      Jet r = Jet::variable(1, 3, 0, r0 + 0.1);
      Jet f = bessel_j0(r * k);
      cplx res = f.derivative({2}) + f.derivative({1}) / (r0 + 0.1) + k * k * f.value();
      CHECK(std::abs(res) < 1e-9);
    }
  }
  /* complex argument: J0 is even and entire */
  const cplx z(0.3, 1.9);
  CHECK(std::abs(bessel_j0(z) - bessel_j0(-z)) < 1e-14);
  Jet w = Jet::variable(1, 2, 0, z);
  Jet fw = bessel_j0(w);
  CHECK(std::abs(z * fw.derivative({2}) + fw.derivative({1}) + z * fw.value()) < 1e-12);
}

TEST_CASE("chain rule for polynomial composites is exact")
{
  Jet x = Jet::variable(1, 5, 0, 0.7);
  Jet q = x * x + 2.0 * x;
  /* p(u) = u^3 - u */
  std::vector<cplx> tp;
  const cplx u0 = q.value();
  tp = {u0 * u0 * u0 - u0, 3.0 * u0 * u0 - 1.0, 3.0 * u0, 1.0, 0.0, 0.0};
  Jet viaTaylor = compose_taylor(tp, q);
  Jet direct = q * q * q - q;
  for (std::size_t k = 0; k < direct.coeffs().size(); k++) {
    CHECK(std::abs(viaTaylor.coeffs()[k] - direct.coeffs()[k]) < 1e-13);
  }
}

TEST_CASE("nilpotent_expand")
{
  auto es = MultivectorC::generator(eta_star(1));
  auto e = MultivectorC::generator(eta(1));
  Profile id = [](std::span<const Jet> u) { return u[0]; };
  {
    const cplx base[1] = {0.81};
    const MultivectorC nil[1] = {es * e * cplx(2.0)};
    auto F = nilpotent_expand(id, base, nil, 1);
    CHECK(std::abs(F.body() - 0.81) < 1e-15);
    CHECK(std::abs(F.coefficient(0b11) - 2.0) < 1e-15);
  }
  {
    Profile ex = [](std::span<const Jet> u) { return exp(-u[0]); };
    const cplx base[1] = {0.0};
    const MultivectorC nil[1] = {es * e};
    auto F = nilpotent_expand(ex, base, nil, 1);
    CHECK(std::abs(F.body() - 1.0) < 1e-15);
    CHECK(std::abs(F.coefficient(0b11) + 1.0) < 1e-15);
    CHECK(std::abs(berezin_integral_all(F, 1) + 1.0 / (2 * std::numbers::pi)) < 1e-15);
  }
  {
    Profile sq = [](std::span<const Jet> u) { return u[0] * u[0]; };
    auto n = es * e * cplx(2.0) +
             MultivectorC::generator(eta_star(2)) * MultivectorC::generator(eta(2)) * cplx(2.0);
    const cplx base[1] = {0.49};
    const MultivectorC nil[1] = {n};
    auto F = nilpotent_expand(sq, base, nil, 2);
    auto full = MultivectorC(cplx(0.49)) + n;
    auto brute = full * full;
    CHECK((F - brute).is_zero());
  }
  {
    const cplx base[1] = {1.0};
    const MultivectorC nil[1] = {MultivectorC(cplx(1.0)) + es * e};
    CHECK_THROWS_AS(nilpotent_expand(id, base, nil, 1), std::invalid_argument);
  }
}
