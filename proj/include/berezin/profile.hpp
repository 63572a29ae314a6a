// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Smooth profiles of invariants and their exact expansion in nilpotent
 * directions.
 */

#include "berezin/grassmann.hpp"
#include "berezin/jets.hpp"

#include <functional>
#include <string>

namespace berezin {

/** p(u_1, ..., u_v) evaluated on jets. */
using Profile = std::function<Jet(std::span<const Jet>)>;

/**
 * q(u) exp(-sum_j c_j u_j) with a polynomial q of rational coefficients.
 * Invariant j (0-based) is u_{j+1}.
 */
struct GaussianPolyProfile {
  std::string name;
  std::vector<double> rates;
  std::vector<std::pair<MultiIndex, double>> poly;

  int arity() const { return int(rates.size()); }
  Jet operator()(std::span<const Jet> u) const;
  cplx value(std::span<const cplx> u) const;
  /** Same profile with every invariant scaled, p(lambda u). */
  GaussianPolyProfile scaled(double lambda) const;
  Profile as_profile() const
  {
    return [self = *this](std::span<const Jet> u) { return self(u); };
  }
};

/** Three profiles in u = r^2. */
std::vector<GaussianPolyProfile> standard_vector_profiles();
/** Three profiles in (Str s, Str s^2, Str s^3). */
std::vector<GaussianPolyProfile> standard_matrix_profiles();
/** exp(-rate u_2) alone, arity m. */
GaussianPolyProfile gaussian_matrix_profile(int arity, double rate = 1.0);
GaussianPolyProfile gaussian_vector_profile(double rate = 1.0);

/**
 * sum_a (d^a p)(base)/a! prod_i nil_i^{a_i}. Exact: the series stops once the
 * product of nilpotents vanishes, which happens beyond degree max_degree.
 */
MultivectorC nilpotent_expand(const Profile &p,
                              std::span<const cplx> base,
                              std::span<const MultivectorC> nil,
                              int max_degree);

}  // namespace berezin
