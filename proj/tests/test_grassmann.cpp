// SPDX-License-Identifier: Apache-2.0
#include "berezin/grassmann.hpp"
#include "berezin/profile.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace berezin;

namespace {

MultivectorQ random_exact(std::mt19937_64 &rng, int L, int nterms)
{
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<Mask> mask(0, full_mask(L));
  MultivectorQ r;
  for (int t = 0; t < nterms; t++) {
    r += MultivectorQ::monomial(mask(rng), ExactComplex(coef(rng), coef(rng)));
  }
  return r;
}

bool equal(const MultivectorQ &a, const MultivectorQ &b) { return (a - b).is_zero(); }

std::vector<int> bits(int v, int L)
{
  std::vector<int> r(L);
  for (int n = 0; n < L; n++) {
    r[n] = (v >> n) & 1;
  }
  return r;
}

}  // namespace

TEST_CASE("generators anticommute and square to zero")
{
  for (int a = 1; a <= 3; a++) {
    for (bool sa : {false, true}) {
      auto x = MultivectorQ::generator({a, sa});
      CHECK((x * x).is_zero());
      for (int b = 1; b <= 3; b++) {
        for (bool sb : {false, true}) {
          auto y = MultivectorQ::generator({b, sb});
          CHECK(equal(x * y, -(y * x)));
        }
      }
    }
  }
}

TEST_CASE("multiply examples")
{
  auto e1s = MultivectorQ::generator(eta_star(1));
  auto e1 = MultivectorQ::generator(eta(1));
  CHECK((e1 * e1s).coefficient(0b11) == ExactComplex(-1));
  CHECK((e1s * e1).coefficient(0b11) == ExactComplex(1));
  auto x = MultivectorQ(ExactComplex(2)) + e1s * e1;
  auto sq = x * x;
  CHECK(sq.body() == ExactComplex(4));
  CHECK(sq.coefficient(0b11) == ExactComplex(4));
}

TEST_CASE("bilinearity and associativity on random exact inputs")
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; trial++) {
    auto a = random_exact(rng, 3, 6), b = random_exact(rng, 3, 6), c = random_exact(rng, 3, 6);
    CHECK(equal((a * b) * c, a * (b * c)));
    CHECK(equal(a * (b + c), a * b + a * c));
    CHECK(equal((a + b) * c, a * c + b * c));
    ExactComplex s(Rational(3, 7), Rational(-2));
    CHECK(equal((a * s) * b, (a * b) * s));
  }
}

TEST_CASE("left derivative")
{
  auto e1s = MultivectorQ::generator(eta_star(1));
  auto e1 = MultivectorQ::generator(eta(1));
  CHECK(equal(e1.derivative(eta(1)), MultivectorQ(ExactComplex(1))));
  CHECK(equal((e1s * e1).derivative(eta(1)), -e1s));
  CHECK(equal((e1s * e1).derivative(eta_star(1)), e1));
}

TEST_CASE("d/dg g + g d/dg is the identity on random inputs")
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; trial++) {
    auto a = random_exact(rng, 3, 8);
    for (int n = 1; n <= 3; n++) {
      for (bool st : {false, true}) {
        Generator g{n, st};
        auto G = MultivectorQ::generator(g);
        auto lhs = (G * a).derivative(g) + G * a.derivative(g);
        CHECK(equal(lhs, a));
      }
    }
  }
}

TEST_CASE("project_component examples")
{
  auto e1s = MultivectorQ::generator(eta_star(1));
  auto e1 = MultivectorQ::generator(eta(1));
  auto f = MultivectorQ(ExactComplex(1)) + e1s * e1 * ExactComplex(3);
  CHECK(project_component(f, {0}, {0}) == ExactComplex(1));
  CHECK(project_component(f, {1}, {1}) == ExactComplex(3));
  CHECK(project_component(f, {1}, {0}) == ExactComplex(0));
  CHECK(project_body(f) == project_component(f, {0}, {0}));
  CHECK(project_body(e1s * e1).is_zero());
  CHECK(project_body(MultivectorQ(ExactComplex(7))) == ExactComplex(7));
}

TEST_CASE("resolution of identity from components")
{
  std::mt19937_64 rng(9);
  const int L = 3;
  for (int trial = 0; trial < 20; trial++) {
    auto a = random_exact(rng, L, 12);
    MultivectorQ rebuilt;
    for (int x = 0; x < (1 << L); x++) {
      for (int y = 0; y < (1 << L); y++) {
        auto j1 = bits(x, L), j2 = bits(y, L);
        MultivectorQ mono(ExactComplex(1));
        for (int n = 1; n <= L; n++) {
          if (j1[n - 1]) {
            mono = mono * MultivectorQ::generator(eta_star(n));
          }
          if (j2[n - 1]) {
            mono = mono * MultivectorQ::generator(eta(n));
          }
        }
        rebuilt += mono * project_component(a, j1, j2);
      }
    }
    CHECK(equal(rebuilt, a));
  }
}

TEST_CASE("printed projector sign agrees with extraction on the diagonal components")
{
  std::mt19937_64 rng(21);
  const int L = 2;
  auto a = random_exact(rng, L, 16);
  for (int x = 0; x < (1 << L); x++) {
    auto j = bits(x, L);
    CHECK(project_component_printed(a, j, j) == project_component(a, j, j));
  }
  /* Off-diagonal components expose the sign slip, e.g. L = 1, j1 = 0, j2 = 1. */
  auto e1 = MultivectorQ::generator(eta(1));
  CHECK(project_component(e1, {0}, {1}) == ExactComplex(1));
  CHECK(project_component_printed(e1, {0}, {1}) == ExactComplex(-1));
}

TEST_CASE("Berezin integral normalization")
{
  const double twopi = 2 * std::numbers::pi;
  auto e1s = MultivectorC::generator(eta_star(1));
  auto e1 = MultivectorC::generator(eta(1));
  auto f = MultivectorC(cplx(1.0)) + e1s * e1;
  CHECK(std::abs(berezin_integral_all(f, 1) - 1.0 / twopi) < 1e-15);
  CHECK(std::abs(berezin_integral_all(MultivectorC(cplx(3.0)), 1)) == 0.0);
  auto g = MultivectorC(cplx(0.49)) + e1s * e1 * cplx(2.0);
  CHECK(std::abs(berezin_integral_all(g, 1) - 1.0 / std::numbers::pi) < 1e-15);
  /* linear in a body scalar */
  auto h = f * cplx(2.5, -1.0);
  CHECK(std::abs(berezin_integral_all(h, 1) - cplx(2.5, -1.0) / twopi) < 1e-15);
}

TEST_CASE("dimensional reduction identity for L = 1")
{
  /* int (f(x^2 + eta* eta) d[eta] dx dy-style reduction: top coefficient is f'(x^2) */
  for (double x : {0.0, 0.3, 1.1}) {
    GaussianPolyProfile p = gaussian_vector_profile();
    auto nil = MultivectorC::generator(eta_star(1)) * MultivectorC::generator(eta(1));
    const cplx base[1] = {x * x};
    const MultivectorC nils[1] = {nil};
    auto F = nilpotent_expand(p.as_profile(), base, nils, 1);
    CHECK(std::abs(berezin_integral_all(F, 1) + std::exp(-x * x) / (2 * std::numbers::pi)) < 1e-15);
  }
}

TEST_CASE("conjugation is second kind")
{
  auto e = MultivectorC::generator(eta(1));
  auto es = MultivectorC::generator(eta_star(1));
  CHECK(((e.conjugate() - es).is_zero()));
  CHECK(((es.conjugate() + e).is_zero()));
  auto bil = es * e;
  CHECK(((bil.conjugate() - bil).is_zero()));
  auto z = MultivectorC(cplx(1.0, 2.0)) * es;
  CHECK(((z.conjugate() + e * cplx(1.0, -2.0)).is_zero()));
}
