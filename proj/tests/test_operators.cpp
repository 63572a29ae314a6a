// SPDX-License-Identifier: Apache-2.0
#include "berezin/operators.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace berezin;

namespace {

RadialOperator potential(const std::vector<std::string> &names, const RationalFn &v)
{
  return RadialOperator::multiply(names, v);
}

/* Random smooth test function exp(a.s + b |s|^2) (1 + c s_0 s_last) on jets. */
std::function<Jet(std::span<const Jet>)> random_function(std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> a(8);
  for (auto &x : a) {
    x = u(rng);
  }
  const double b = -0.3 + 0.1 * u(rng), c = u(rng);
  return [=](std::span<const Jet> s) {
    Jet e = s[0] * cplx(a[0]);
    Jet q = s[0] * s[0];
    for (std::size_t j = 1; j < s.size(); j++) {
      e = e + s[j] * cplx(a[j]);
      q = q + s[j] * s[j];
    }
    return exp(e + q * cplx(b)) * (1.0 + cplx(c) * s[0] * s[s.size() - 1]);
  };
}

std::vector<Jet> variables(std::span<const cplx> at, int order)
{
  std::vector<Jet> v;
  for (std::size_t j = 0; j < at.size(); j++) {
    v.push_back(Jet::variable(int(at.size()), order, int(j), at[j]));
  }
  return v;
}

/* (1/g) H (g f) against Lap f at a point. */
void check_conjugated(const RadialOperator &lap,
                      const RadialOperator &H,
                      const std::function<Jet(std::span<const Jet>)> &g,
                      std::span<const cplx> at,
                      double psi)
{
  std::mt19937_64 rng(99);
  for (int t = 0; t < 3; t++) {
    auto f = random_function(rng);
    auto s = variables(at, 2);
    const Jet G = g(s);
    const Jet F = f(s);
    const cplx lhs = H.apply(G * F, at, psi) / G.value();
    const cplx rhs = lap.apply(F, at, psi);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(rhs)));
  }
}

}  // namespace

TEST_CASE("vector operators reduce to the closed forms")
{
  CHECK(build_vector_operator(Flavor::Real, 1) == closed_form_vector(Flavor::Real, 1));
  CHECK(build_vector_operator(Flavor::Real, 2) == closed_form_real_2());
  for (int L = 1; L <= 4; L++) {
    CAPTURE(L);
    CHECK(build_vector_operator(Flavor::Real, L) == closed_form_vector(Flavor::Real, L));
    CHECK(build_vector_operator(Flavor::Complex, L) == closed_form_vector(Flavor::Complex, L));
  }
  for (int L = 1; L <= 2; L++) {
    CHECK(build_vector_operator(Flavor::Quaternion, L) == closed_form_vector(Flavor::Quaternion, L));
  }
}

TEST_CASE("vector operator does not depend on the number of commuting entries")
{
  for (int p = 1; p <= 4; p++) {
    CHECK(build_d_cs(vector_spec(Flavor::Real, p, 2)) == build_d_cs(vector_spec(Flavor::Real, 1, 2)));
  }
}

TEST_CASE("matrix operators reduce to the closed forms")
{
  CHECK(build_matrix_operator_22(1, 1) == closed_form_u11());
}

TEST_CASE("UOSp(+)(1/2) operator is twice the single first-order factor")
{
  CHECK(build_matrix_operator_14(1, 1) == closed_form_uosp_plus_11().scaled(2));
}

TEST_CASE("UOSp(+)(2/2) operator is the nested first-order product")
{
  CHECK(build_matrix_operator_14(2, 1) == closed_form_uosp_plus_21());
}

TEST_CASE("IAd route matches the binomial sum")
{
  CHECK(build_d_cs_iad(vector_spec(Flavor::Real, 2, 3)) == build_d_cs(vector_spec(Flavor::Real, 2, 3)));
  CHECK(build_d_cs_iad(matrix_spec(Symmetry::U, 2, 1)) == build_d_cs(matrix_spec(Symmetry::U, 2, 1)));
  CHECK(build_d_cs_iad(matrix_spec(Symmetry::UOSpPlus, 2, 1)) ==
        build_d_cs(matrix_spec(Symmetry::UOSpPlus, 2, 1)));
  CHECK(build_d_cs_iad(matrix_spec(Symmetry::UOSpMinus, 1, 2)) ==
        build_d_cs(matrix_spec(Symmetry::UOSpMinus, 1, 2)));
}

TEST_CASE("binomial_sum and iad_power agree on integers")
{
  CHECK(binomial_sum<long long>(3, 5, 4, 1) == iad_power<long long>(3, 5, 4, 1));
}

TEST_CASE("matrix operators have order k1 k2")
{
  CHECK(build_matrix_operator_22(1, 2).order() == 2);
  CHECK(build_matrix_operator_22(2, 1).order() == 2);
  CHECK(build_matrix_operator_14(2, 1).order() == 2);
  CHECK(build_matrix_operator_41(1, 2).order() == 2);
}

TEST_CASE("UOSp(-) operator is the substituted UOSp(+) operator")
{
  for (auto [k1, k2] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
    CAPTURE(k1);
    CAPTURE(k2);
    const auto minus = build_matrix_operator_41(k1, k2);
    const auto plus = build_matrix_operator_14(k2, k1);
    /* t1 = -w s2, t2 = -w^-1 s1 */
    std::vector<int> perm, sign, wpow;
    for (int i = 0; i < k2; i++) {
      perm.push_back(k1 + i);
      sign.push_back(-1);
      wpow.push_back(1);
    }
    for (int j = 0; j < k1; j++) {
      perm.push_back(j);
      sign.push_back(-1);
      wpow.push_back(-1);
    }
    auto sub = substitute(plus, perm, sign, wpow, matrix_names(k1, k2));
    if ((k1 * k2) % 2 != 0) {
      sub = sub.scaled(-1);
    }
    CHECK(minus == sub);
  }
}

TEST_CASE("first-order factors satisfy [Str d^2, D] = -2 D^2")
{
  const auto names = matrix_names(2, 2);
  for (auto [gb, gf] : {std::pair{Rational(1), Rational(1)},
                        std::pair{Rational(1), Rational(1, 2)},
                        std::pair{Rational(1, 2), Rational(1)}}) {
    const RationalFn Ab = RationalFn::constant(4, gb), Af = RationalFn::constant(4, -gf, -2);
    const auto str = str_laplacian(names, {Ab, Ab, Af, Af});
    std::vector<RadialOperator> factors{
        first_order_factor(names, 0, 1, 0, 1, -1, 0, Ab, Ab),
        first_order_factor(names, 2, 1, 0, 3, -1, 0, Af, Af),
        first_order_factor(names, 0, 1, 0, 2, -1, 1, Ab, Af),
        first_order_factor(names, 1, 1, 0, 3, -1, 1, Ab, Af),
    };
    for (const auto &D : factors) {
      CHECK(commutator(str, D) == (D * D).scaled(-2));
    }
  }
}

TEST_CASE("the opposite sign in the mixed factor breaks the commutator identity")
{
  const auto names = matrix_names(1, 1);
  const RationalFn A1 = RationalFn::constant(2, 1), A2 = RationalFn::constant(2, -1, -2);
  const auto str = str_laplacian(names, {A1, A2});
  const auto inv = RationalFn::inverse_factor(2, LinearFactor{0, 1, 1, 1});
  RadialOperator D(names);
  D.add_term({1, 0}, inv);
  D.add_term({0, 1}, inv.scaled(-1, -1));
  CHECK_FALSE(commutator(str, D) == (D * D).scaled(-2));
}

TEST_CASE("Laplacians take the Hamiltonian form")
{
  const double psi = 1.0;
  const cplx w = std::polar(1.0, psi);
  const auto inv2 = [](int n, int a, int b, int sign, int wp) {
    return RationalFn::inverse_factor(n, LinearFactor{a, b, sign, wp}, 2);
  };

  SUBCASE("real symmetric, k = 3")
  {
    const auto names = std::vector<std::string>{"a", "b", "c"};
    std::vector<std::pair<LinearFactor, int>> wt{{{0, 1, 1, 0}, 1}, {{0, 2, 1, 0}, 1}, {{1, 2, 1, 0}, 1}};
    std::vector<RationalFn> k(3, RationalFn::constant(3, 1));
    const auto lap = radial_laplacian(names, k, wt);
    auto H = str_laplacian(names, k);
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      H = H + potential(names, inv2(3, a, b, 1, 0).scaled(Rational(1, 2)));
    }
    const std::vector<cplx> at{1.3, 0.2, -0.9};
    check_conjugated(lap, H, [](std::span<const Jet> s) { return sqrt((s[0] - s[1]) * (s[0] - s[2]) * (s[1] - s[2])); }, at, psi);
  }

  SUBCASE("quaternion, k = 2")
  {
    const auto names = std::vector<std::string>{"a", "b"};
    std::vector<RationalFn> k(2, RationalFn::constant(2, Rational(1, 2)));
    const auto lap = radial_laplacian(names, k, {{{0, 1, 1, 0}, 4}});
    const auto H = str_laplacian(names, k) + potential(names, inv2(2, 0, 1, 1, 0).scaled(-2));
    const std::vector<cplx> at{0.7, -0.5};
    check_conjugated(lap, H, [](std::span<const Jet> s) { return (s[0] - s[1]) * (s[0] - s[1]); }, at, psi);
  }

  SUBCASE("U(2/1) superspace Laplacian")
  {
    const auto spec = matrix_spec(Symmetry::U, 2, 1);
    const auto lap = radial_laplacian(spec.names, spec.kappa, spec.weight_s);
    const auto H = str_laplacian(spec.names, spec.kappa);
    const std::vector<cplx> at{0.9, -0.4, 0.3};
    check_conjugated(lap, H, [w](std::span<const Jet> s) {
      return (s[0] - s[1]) / ((s[0] - w * s[2]) * (s[1] - w * s[2]));
    }, at, psi);
  }

  SUBCASE("UOSp(+)(2/2) superspace Laplacian")
  {
    const auto spec = matrix_spec(Symmetry::UOSpPlus, 2, 1);
    const auto lap = radial_laplacian(spec.names, spec.kappa, spec.weight_s);
    const auto n = spec.names;
    /* H1(s1) - w^-2 H4(s2) - sum 1/(s1 - w s2)^2; H4 is trivial for k2 = 1 */
    auto H = str_laplacian(n, spec.kappa) + potential(n, inv2(3, 0, 1, 1, 0).scaled(Rational(1, 2)));
    H = H - potential(n, inv2(3, 0, 2, 1, 1)) - potential(n, inv2(3, 1, 2, 1, 1));
    const std::vector<cplx> at{0.9, -0.4, 0.3};
    check_conjugated(lap, H, [w](std::span<const Jet> s) {
      return sqrt(s[0] - s[1]) / ((s[0] - w * s[2]) * (s[1] - w * s[2]));
    }, at, psi);
  }

  SUBCASE("UOSp(+)(1/4) superspace Laplacian")
  {
    const auto spec = matrix_spec(Symmetry::UOSpPlus, 1, 2);
    const auto lap = radial_laplacian(spec.names, spec.kappa, spec.weight_s);
    const auto n = spec.names;
    auto H = str_laplacian(n, spec.kappa) + potential(n, inv2(3, 1, 2, 1, 0).scaled(2, -2));
    H = H - potential(n, inv2(3, 0, 1, 1, 1)) - potential(n, inv2(3, 0, 2, 1, 1));
    const std::vector<cplx> at{0.9, -0.4, 0.3};
    check_conjugated(lap, H, [w](std::span<const Jet> s) {
      return (s[1] - s[2]) * (s[1] - s[2]) / ((s[0] - w * s[1]) * (s[0] - w * s[2]));
    }, at, psi);
  }
}

TEST_CASE("operator application matches a hand derivative")
{
  /* U(1/1) on f = s1^2 + s2: (w/2pi)(2 s1 + w^-1)/(s1 - w s2) */
  const auto D = closed_form_u11();
  const double psi = 0.8;
  const cplx w = std::polar(1.0, psi);
  const std::vector<cplx> at{0.6, 0.25};
  auto s = variables(at, 1);
  const Jet F = s[0] * s[0] + s[1];
  const cplx expect = w / (2 * std::numbers::pi) * (2.0 * at[0] + 1.0 / w) / (at[0] - w * at[1]);
  CHECK(std::abs(D.apply(F, at, psi) - expect) < 1e-14);
}

TEST_CASE("application at a coefficient pole raises")
{
  const auto D = closed_form_u11();
  const std::vector<cplx> at{0.0, 0.0};
  auto s = variables(at, 1);
  CHECK_THROWS_AS(D.apply(s[0] * s[1], at, 1.0), SingularPointError);
}
