// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Radial differential operators with exact rational coefficients.
 *
 * An operator is pi^pi_power * sum_a c_a(s, w) d^a. Variables are the
 * boson-block eigenvalues followed by the fermion-block eigenvalues (or the
 * single radius r for supervectors).
 */

#include "berezin/jets.hpp"
#include "berezin/superspace.hpp"
#include "berezin/symbolic.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace berezin {

class RadialOperator {
 public:
  RadialOperator() = default;
  explicit RadialOperator(std::vector<std::string> names, int pi_power = 0);

  static RadialOperator identity(std::vector<std::string> names);
  /** Multiplication by a coefficient function. */
  static RadialOperator multiply(std::vector<std::string> names, const RationalFn &c);
  /** d/d(var). */
  static RadialOperator partial(std::vector<std::string> names, int var, int times = 1);

  int nvars() const { return int(names_.size()); }
  const std::vector<std::string> &names() const { return names_; }
  int pi_power() const { return pi_power_; }
  const std::map<MultiIndex, RationalFn> &terms() const { return terms_; }
  void add_term(const MultiIndex &a, const RationalFn &c);

  /** Highest total order with a nonzero coefficient. */
  int order() const;

  RadialOperator scaled(const Rational &c, int wpow = 0, int pi = 0) const;
  RadialOperator left_multiply(const RationalFn &c) const;

  friend RadialOperator operator+(const RadialOperator &a, const RadialOperator &b);
  friend RadialOperator operator-(const RadialOperator &a, const RadialOperator &b);
  friend RadialOperator operator*(const RadialOperator &a, const RadialOperator &b);
  friend bool operator==(const RadialOperator &a, const RadialOperator &b);

  /** sum_a c_a(at) d^a F(at), F a jet expanded at the evaluation point. */
  cplx apply(const Jet &F, std::span<const cplx> at, double psi, double floor = 1e-6) const;

  std::string str() const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> names_;
  int pi_power_ = 0;
  std::map<MultiIndex, RationalFn> terms_;
};

RadialOperator compose(const RadialOperator &a, const RadialOperator &b);
RadialOperator commutator(const RadialOperator &a, const RadialOperator &b);

/** IAd[A,B]^L(1): X_0 = 1, X_k = [A, X_{k-1}] + X_{k-1} B. */
template<class T> T iad_power(const T &A, const T &B, int L, const T &one)
{
  T X = one;
  for (int k = 0; k < L; k++) {
    X = (A * X - X * A) + X * B;
  }
  return X;
}

/** sum_n binom(L, n) A^{L-n} (B - A)^n. */
template<class T> T binomial_sum(const T &A, const T &B, int L, const T &one)
{
  std::vector<T> Ap{one}, Cp{one};
  const T C = B - A;
  for (int k = 1; k <= L; k++) {
    Ap.push_back(Ap.back() * A);
    Cp.push_back(Cp.back() * C);
  }
  T sum = Ap[L] * Cp[0];
  long long binom = 1;
  for (int n = 1; n <= L; n++) {
    binom = binom * (L - n + 1) / n;
    T t = Ap[L - n] * Cp[n];
    for (long long b = 1; b < binom; b++) {
      t = t + Ap[L - n] * Cp[n];
    }
    sum = sum + t;
  }
  return sum;
}

/**
 * Laplacian pieces of the generic construction: both are
 * sum_j kappa_j (d_j^2 + (d_j ln B) d_j) for a product B of linear factors.
 */
struct LaplacianSpec {
  std::vector<std::string> names;
  std::vector<RationalFn> kappa;                         ///< per variable
  std::vector<std::pair<LinearFactor, int>> weight_c;    ///< B for Delta_C
  std::vector<std::pair<LinearFactor, int>> weight_s;    ///< B for Delta_{S,r}
  RationalFn prefactor;                                  ///< prod h_m (rational part)
  int L = 0;                                             ///< Grassmann pairs
};

RadialOperator radial_laplacian(const std::vector<std::string> &names,
                                const std::vector<RationalFn> &kappa,
                                const std::vector<std::pair<LinearFactor, int>> &weight);

/** D = prefactor / (L! (4 pi)^L) sum_n binom(L,n) Delta_C^{L-n} (-Delta_{S,r})^n. */
RadialOperator build_d_cs(const LaplacianSpec &spec);
/** Same operator through IAd[Delta_C, Delta_C - Delta_{S,r}]^L(1). */
RadialOperator build_d_cs_iad(const LaplacianSpec &spec);

/** Radial specs. p = number of commuting vector components of the flavor. */
LaplacianSpec vector_spec(Flavor f, int p, int L);
LaplacianSpec matrix_spec(Symmetry sym, int k1, int k2);

/** Generic constructions: vector with L odd blocks, U, UOSp(+), UOSp(-) matrices. */
RadialOperator build_vector_operator(Flavor f, int L);
RadialOperator build_matrix_operator_22(int k1, int k2);
RadialOperator build_matrix_operator_14(int k1, int k2);
RadialOperator build_matrix_operator_41(int k1, int k2);

/**
 * Known closed forms. Vector: c^n ((1/r) d_r)^n, c = 1/(2 pi) real and
 * 1/(4 pi) otherwise, n = number of Grassmann pairs (2L for quaternions).
 */
RadialOperator closed_form_vector(Flavor f, int L);
/** Real L = 2 as (1/(2 pi))^2 (r^-2 d_r^2 - r^-3 d_r). */
RadialOperator closed_form_real_2();
/** U(1/1): (w / 2 pi) (s1 - w s2)^-1 (d1 + w^-1 d2). */
RadialOperator closed_form_u11();
/** UOSp(+)(1/2): (w / 4 pi) (s1 - w s2)^-1 (2 d1 + w^-1 d2). */
RadialOperator closed_form_uosp_plus_11();
/** UOSp(+)(2/2) as the nested product of first-order factors. */
RadialOperator closed_form_uosp_plus_21();

/**
 * Change of variables x_i = c_i y_{perm[i]} with units c_i = sign_i w^{wpow_i}.
 * The result acts on functions of y.
 */
RadialOperator substitute(const RadialOperator &op,
                          const std::vector<int> &perm,
                          const std::vector<int> &sign,
                          const std::vector<int> &wpow,
                          std::vector<std::string> new_names);

/** (1/l) sum_j A_j p_j d_j with l = sum_j p_j s_j, p_j units on two variables. */
RadialOperator first_order_factor(const std::vector<std::string> &names,
                                  int a, int sa, int wa,
                                  int b, int sb, int wb,
                                  const RationalFn &Aa, const RationalFn &Ab);

/** Str d^2 = sum_j A_j d_j^2. */
RadialOperator str_laplacian(const std::vector<std::string> &names, const std::vector<RationalFn> &A);

std::vector<std::string> matrix_names(int k1, int k2);

}  // namespace berezin
