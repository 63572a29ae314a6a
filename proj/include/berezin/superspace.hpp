// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Flat superspaces: supervectors of three flavors and Wick-rotated
 * supermatrices with multivector entries.
 */

#include "berezin/grassmann.hpp"
#include "berezin/profile.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace berezin {

class SingularInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Flavor { Real, Complex, Quaternion };
enum class Symmetry { U, UOSpPlus, UOSpMinus };

std::string to_string(Flavor f);
std::string to_string(Symmetry s);
Flavor flavor_from_string(const std::string &s);
Symmetry symmetry_from_string(const std::string &s);

/** Per-coordinate weights g_n and per-pair weights h_m of the inner product. */
struct Metric {
  std::vector<double> g;
  std::vector<cplx> h;

  static Metric preset(Flavor f, int p, int L);
};

struct WickRotation {
  double psi = 1.5707963267948966;

  explicit WickRotation(double psi_ = 1.5707963267948966);
  cplx omega() const { return std::polar(1.0, psi); }
  cplx half() const { return std::polar(1.0, psi / 2); }
};

/**
 * Supervector. Body layout: real p reals; complex p complex numbers stored
 * as (re, im) pairs; quaternion p pairs (z1, z2) stored as (re1, im1, re2, im2).
 * Pair usage: real and complex use pairs 1..L; quaternion block m uses pairs
 * 2m-1 (alpha) and 2m (beta).
 */
struct SuperVector {
  Flavor flavor = Flavor::Real;
  int p = 0;
  int L = 0;
  std::vector<double> body;

  int grassmann_pairs() const { return flavor == Flavor::Quaternion ? 2 * L : L; }
  /** Number of real commuting coordinates. */
  int real_dim() const;
};

SuperVector make_supervector(Flavor f, int L, std::vector<double> body);

/** v^dagger v (the (1,1) quaternion entry for the quaternion flavor). */
MultivectorC vector_length_invariant(const SuperVector &v);
MultivectorC vector_length_invariant(const SuperVector &v, const Metric &m);
/** Full 2x2 block v^dagger v for the quaternion flavor (row-major). */
std::array<MultivectorC, 4> quaternion_gram(const SuperVector &v);

struct EigenvaluePoint {
  std::vector<cplx> s1;
  std::vector<cplx> s2;
  double psi = 1.5707963267948966;
};

class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(int n, std::vector<bool> fermionic);

  int size() const { return n_; }
  bool fermionic(int i) const { return fermionic_[i]; }
  MultivectorC &at(int i, int j) { return e_[i * n_ + j]; }
  const MultivectorC &at(int i, int j) const { return e_[i * n_ + j]; }

  Symmetry symmetry = Symmetry::U;
  int k1 = 0;
  int k2 = 0;
  double psi = 1.5707963267948966;

  friend SuperMatrix operator*(const SuperMatrix &a, const SuperMatrix &b);
  friend SuperMatrix operator+(const SuperMatrix &a, const SuperMatrix &b);

 private:
  int n_ = 0;
  std::vector<bool> fermionic_;
  std::vector<MultivectorC> e_;
};

/** Number of Grassmann pairs carried by the odd blocks. */
int matrix_grassmann_pairs(Symmetry sym, int k1, int k2);
/** Number of Str-power invariants used for profiles, k1 + k2. */
int matrix_invariant_count(Symmetry sym, int k1, int k2);

/**
 * Supermatrix at the radial point s (body diag) with generic odd entries.
 * with_odd = false gives the pure body.
 */
SuperMatrix make_radial_supermatrix(Symmetry sym, const EigenvaluePoint &s, bool with_odd = true);

MultivectorC supertrace(const SuperMatrix &S);
MultivectorC supertrace_power(const SuperMatrix &S, int j);
/** Str S^1 .. Str S^m. */
std::vector<MultivectorC> supertrace_powers(const SuperMatrix &S, int m);
MultivectorC superdeterminant(const SuperMatrix &S);

/** Inverse of an even multivector with invertible body. */
MultivectorC invert_even(const MultivectorC &x);

/** Body invariants of the radial point: Str s^j, j = 1..m. */
std::vector<cplx> radial_invariants(Symmetry sym, const EigenvaluePoint &s, int m);
/** Same on jets in the variables (s1..., s2...). */
std::vector<Jet> radial_invariants(Symmetry sym, std::span<const Jet> s1, std::span<const Jet> s2, double psi, int m);

MultivectorC build_invariant_superfunction(const Profile &p, const SuperVector &v);
MultivectorC build_invariant_superfunction(const Profile &p, const SuperMatrix &S, int arity);

nlohmann::json to_json(const MultivectorC &x);
MultivectorC multivector_from_json(const nlohmann::json &j);
nlohmann::json to_json(const SuperMatrix &S);
SuperMatrix supermatrix_from_json(const nlohmann::json &j);
nlohmann::json to_json(const EigenvaluePoint &s);
EigenvaluePoint eigenvalue_point_from_json(const nlohmann::json &j);

}  // namespace berezin
