// SPDX-License-Identifier: Apache-2.0
#include "berezin/symbolic.hpp"

#include <doctest.h>

#include <random>

using namespace berezin;

namespace {

const LinearFactor kV{0, 1, 1, 1};  // s0 - w s1

RationalFn random_fn(std::mt19937_64 &rng, int nvars)
{
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2), pick(0, 2);
  Poly p(nvars);
  for (int t = 0; t < 4; t++) {
    PolyKey k(nvars + 1, 0);
    for (int i = 0; i < nvars; i++) {
      k[i] = e(rng);
    }
    k[nvars] = c(rng) % 2;
    p.add_term(k, Rational(c(rng), 1 + e(rng)));
  }
  std::map<LinearFactor, int> den;
  if (pick(rng) > 0) {
    den[kV] = 1 + e(rng);
  }
  if (pick(rng) > 1) {
    den[LinearFactor{0, -1, 1, 0}] = 1;
  }
  return RationalFn(p, den);
}

}  // namespace

TEST_CASE("rational functions cancel exact linear factors")
{
  const Poly V = kV.as_poly(2);
  RationalFn f(V * V * Poly::variable(2, 0), {{kV, 3}});
  CHECK(f.den().at(kV) == 1);
  CHECK(f == RationalFn(Poly::variable(2, 0), {{kV, 1}}));

  RationalFn g(V, {{kV, 1}});
  CHECK(g == RationalFn::constant(2, 1));
  CHECK(g.den().empty());
}

TEST_CASE("make_factor canonicalizes the orientation")
{
  /* w s1 - s0 = -(s0 - w s1) */
  auto u = make_factor(1, 1, 1, 0, 1, 0);
  CHECK(u.f == kV);
  CHECK(u.sign == -1);
  CHECK(u.wpow == 0);
}

TEST_CASE("sum and difference round trip")
{
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; t++) {
    auto a = random_fn(rng, 2), b = random_fn(rng, 2);
    CHECK(((a + b) - b) == a);
    CHECK((a * b) == (b * a));
  }
}

TEST_CASE("derivative agrees with finite differences")
{
  std::mt19937_64 rng(5);
  const std::complex<double> w = std::polar(1.0, 1.1);
  const double h = 1e-5;
  for (int t = 0; t < 20; t++) {
    auto f = random_fn(rng, 2);
    for (int v = 0; v < 2; v++) {
      std::vector<std::complex<double>> s{0.7, -0.4}, sp = s, sm = s;
      sp[v] += h;
      sm[v] -= h;
      const auto fd = (f.eval(sp, w) - f.eval(sm, w)) / (2 * h);
      const auto ex = f.derivative(v).eval(s, w);
      CHECK(std::abs(fd - ex) < 1e-6 * (1 + std::abs(ex)));
    }
  }
}

TEST_CASE("quotient rule holds exactly")
{
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; t++) {
    auto a = random_fn(rng, 2), b = random_fn(rng, 2);
    CHECK((a * b).derivative(0) == a.derivative(0) * b + a * b.derivative(0));
  }
}

TEST_CASE("evaluation near a pole raises")
{
  auto f = RationalFn::inverse_factor(2, kV);
  const std::complex<double> w = std::polar(1.0, 0.5);
  std::vector<std::complex<double>> s{w * 0.3, 0.3};
  CHECK_THROWS_AS(f.eval(s, w), SingularPointError);
}
