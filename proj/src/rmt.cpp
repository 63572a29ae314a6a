// SPDX-License-Identifier: Apache-2.0
#include "berezin/rmt.hpp"

#include "berezin/quadrature.hpp"
#include "berezin/simd.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace berezin {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I1(0.0, 1.0);
/* Gaussian integrands are zero to double precision far beyond this radius. */
constexpr double kRadialCutoff = 1e3;

cplx ipow(cplx z, int n)
{
  cplx r = 1.0;
  for (int k = 0; k < n; k++) {
    r *= z;
  }
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_spec(const EnsembleSpec &e, const GeneratingQuadrature &q)
{
  if (e.N < 1) {
    throw std::domain_error("level number N must be >= 1");
  }
  if (e.epsilon < 0 || e.epsilon >= q.shift / 2) {
    throw std::domain_error("epsilon must lie in [0, shift / 2)");
  }
  /* the fermion-fermion Gaussian exp(+(w s2)^2) decays only for Re w^2 < 0 */
  if (!(std::cos(2 * e.wick.psi) < 0)) {
    throw std::domain_error("generating functions need psi in (pi/4, 3 pi/4)");
  }
}

/* (0, inf) by Gauss-Legendre in u with r = scale u / (1 - u). */
Axis half_line(int n, double scale)
{
  const Axis g = gauss_legendre(n, 0.0, 1.0);
  Axis a;
  for (std::size_t i = 0; i < g.size(); i++) {
    const double u = g.nodes[i].real();
    a.nodes.push_back(scale * u / (1 - u));
    a.weights.push_back(g.weights[i] * scale / ((1 - u) * (1 - u)));
  }
  return a;
}

}  // namespace

std::string to_string(Ensemble e) { return e == Ensemble::GUE ? "GUE" : "GOE"; }

/* ---------------------------------------------------------------- unitary */

cplx gue_generating_function_minus_one(const EnsembleSpec &e, const SourcePoint &pt, const GeneratingQuadrature &q)
{
  check_spec(e, q);
  const cplx w = e.wick.omega();
  const double psi = e.wick.psi;
  const double x = pt.x1, J = pt.J1, eps = e.epsilon;
  const int N = e.N;
  const cplx C = I1;
  /* s1 runs on R + i delta; the pole s1 = w s2 is crossed for 0 < s2 < u0 */
  const double delta = q.shift;
  const double u0 = delta / std::sin(psi);
  const double t0 = delta * std::cos(psi) / std::sin(psi);
  auto g = [&](cplx s1, double s2) {
    const cplx a = w * s2;
    const cplx b = s1 + x - J, f = a + x + J;
    return std::exp(-(b * b - f * f)) * ipow((a + I1 * eps) / (s1 + I1 * eps), N) * (4 * J);
  };
  std::vector<cplx> part(static_cast<std::size_t>(q.angles));
  parallel_for(part.size(), [&](std::size_t k) {
    const double th = 2 * kPi * double(k) / q.angles;
    const double ct = std::cos(th), st = std::sin(th);
    part[k] = tanh_sinh_complex(
                  [&](double rho) {
                    if (!(rho < kRadialCutoff)) {
                      return cplx(0.0);
                    }
                    return g(cplx(t0 + rho * ct, delta), u0 + rho * st);
                  },
                  0.0, std::numeric_limits<double>::infinity(), 1e-13) /
              (ct - w * st);
  });
  cplx shifted = 0.0;
  for (const auto &v : part) {
    shifted += v;
  }
  shifted *= 2 * kPi / q.angles;
  /* residue 4 J exp(4 J (w s2 + x)) integrated over (0, u0) */
  cplx residue = 0.0;
  if (J != 0.0) {
    const cplx z = 4 * J * w * u0;
    const cplx em1 = std::abs(z) < 1e-5 ? z * (1.0 + z / 2.0 * (1.0 + z / 3.0)) : std::exp(z) - 1.0;
    residue = 2 * kPi * I1 * std::exp(4 * J * x) * em1 / w;
  }
  return w / (2 * kPi) * C * (shifted + residue);
}

cplx gue_generating_function(const EnsembleSpec &e, const SourcePoint &pt, const GeneratingQuadrature &q)
{
  return 1.0 + gue_generating_function_minus_one(e, pt, q);
}

/* ------------------------------------------------------------- orthogonal */

namespace {

/* Pieces of the GOE integrand in R = (s11 + s21) / 2 at fixed r, a = w s2. */
struct GoeIntegrand {
  double x, J, eps, r;
  cplx a;
  int m;  // N / 2

  template<class T> T gauss(const T &R) const
  {
    const T b = R + (x - J);
    const cplx f = a + x + J;
    return exp_of(-(2.0 * b * b) + (2.0 * f * f - 2.0 * r * r));
  }
  /* source bracket divided by 2 r (|s11 - s21| = 2 r) */
  template<class T> T source(const T &R) const
  {
    const T p = R + (r - a), n = R - (r + a);
    return 16 * J * J * inv(p * n) + 4 * J * (2.0 * R - 2.0 * a) * inv(p * p * n * n);
  }

  static cplx exp_of(cplx z) { return std::exp(z); }
  static Jet exp_of(const Jet &z) { return exp(z); }
  static cplx inv(cplx z) { return 1.0 / z; }
  static Jet inv(const Jet &z) { return Jet::constant(z.nvars(), z.order(), 1.0) / z; }

  cplx full(cplx R) const
  {
    const cplx d = (R + r + I1 * eps) * (R - r + I1 * eps);
    return gauss(R) * ipow(a + I1 * eps, 2 * m) * ipow(1.0 / d, m) * source(R) * (2 * r);
  }

  /* sum of the residues at R = +-r - i eps */
  cplx residues() const
  {
    const cplx pp = r - I1 * eps, pm = -r - I1 * eps;
    const cplx num = ipow(a + I1 * eps, 2 * m);
    if (m == 1) {
      return num * (gauss(pp) * source(pp) - gauss(pm) * source(pm));
    }
    auto one = [&](cplx p, double other_sign) {
      const Jet R = Jet::variable(1, m - 1, 0, p);
      Jet other = R + cplx(other_sign * r + I1 * eps);
      Jet op = Jet::constant(1, m - 1, 1.0);
      for (int k = 0; k < m; k++) {
        op *= other;
      }
      const Jet G = gauss(R) * source(R) * inv(op) * (num * 2.0 * r);
      return G.coeff({m - 1});
    };
    return one(pp, +1.0) + one(pm, -1.0);
  }
};

}  // namespace

cplx goe_generating_function_minus_one(const EnsembleSpec &e, const SourcePoint &pt, double c_scale,
                                       const GeneratingQuadrature &q)
{
  check_spec(e, q);
  if (e.N % 2) {
    throw std::domain_error("the orthogonal generator is implemented for even N");
  }
  const cplx w = e.wick.omega();
  const double x = pt.x1, J = pt.J1;
  if (J == 0.0) {
    return 0.0;
  }
  const Axis hr = gauss_hermite(q.inner, 2.0);
  const Axis ang = gauss_legendre(q.polar, 0.0, kPi / 2);
  const Axis rad = half_line(q.radial, 1.0);
  const double kappa = q.shift;
  auto inner = [&](double r, double s2) {
    GoeIntegrand F{x, J, e.epsilon, r, w * s2, e.N / 2};
    const double k = s2 > 0 ? -kappa : kappa;
    cplx sum = 0.0;
    for (std::size_t i = 0; i < hr.size(); i++) {
      sum += hr.weights[i] * F.full(hr.nodes[i] - (x - J) + I1 * k);
    }
    if (s2 > 0) {
      sum -= 2 * kPi * I1 * F.residues();
    }
    return sum;
  };
  /* (r, s2) quadrants in polar form: the residue term is not smooth at the corner */
  const std::size_t na = ang.size();
  std::vector<cplx> part(2 * na);
  parallel_for(part.size(), [&](std::size_t j) {
    const double sgn = j < na ? 1.0 : -1.0;
    const double th = ang.nodes[j % na].real();
    cplx s = 0.0;
    for (std::size_t i = 0; i < rad.size(); i++) {
      const double rho = rad.nodes[i].real();
      s += rad.weights[i] * rho * inner(rho * std::cos(th), sgn * rho * std::sin(th));
    }
    part[j] = ang.weights[j % na] * s;
  });
  cplx total = 0.0;
  for (const auto &v : part) {
    total += v;
  }
  const cplx C = c_scale / (2.0 * I1 * w);
  /* orderings of (s11, s21) and d s11 d s21 = 2 dR dr */
  return C * 2.0 * w * w / kPi * 4.0 * total;
}

cplx goe_generating_function(const EnsembleSpec &e, const SourcePoint &pt, double c_scale,
                             const GeneratingQuadrature &q)
{
  return 1.0 + goe_generating_function_minus_one(e, pt, c_scale, q);
}

DensityEstimate density_from_generating_function(const std::function<cplx(double, double)> &zm1, double x1,
                                                 double step)
{
  auto rho = [&](double h) { return -((zm1(x1, h) - zm1(x1, -h)) / (2 * h)).imag() / (2 * kPi); };
  DensityEstimate d;
  d.rho = rho(step);
  d.step_sensitivity = std::abs(d.rho - rho(2 * step));
  return d;
}

namespace {

SumRule sum_rule(const EnsembleSpec &e, const std::function<cplx(double, double)> &zm1)
{
  const double L = generator_window(e.ensemble, e.wick.psi);
  const int n = 2 * int(std::ceil(L / 0.05)) + 1;
  const double h = 2 * L / (n - 1);
  std::vector<double> rho(static_cast<std::size_t>(n));
  parallel_for(rho.size(), [&](std::size_t i) {
    rho[i] = density_from_generating_function(zm1, -L + h * double(i)).rho;
  });
  double s = 0;
  for (int i = 0; i < n; i++) {
    s += (i == 0 || i == n - 1 ? 0.5 : 1.0) * rho[static_cast<std::size_t>(i)];
  }
  SumRule r;
  r.integral = s * h;
  r.scale = e.N / r.integral;
  r.window = L;
  return r;
}

}  // namespace

double generator_window(Ensemble ens, double psi)
{
  if (!(std::abs(psi - kPi / 2) <= 0.3 + 1e-12)) {
    throw std::domain_error("generator_window: the generators are accurate only for |psi - pi/2| <= 0.3");
  }
  /* measured edges: < 1e-3 relative against the exact densities */
  const double c2 = -std::cos(2 * psi);
  return ens == Ensemble::GUE ? 2.45 * c2 : 2.45 * std::pow(c2, 6);
}

SumRule gue_sum_rule(const EnsembleSpec &e, const GeneratingQuadrature &q)
{
  return sum_rule(e, [&](double x, double J) { return gue_generating_function_minus_one(e, {x, J}, q); });
}

SumRule goe_sum_rule(const EnsembleSpec &e, const GeneratingQuadrature &q)
{
  return sum_rule(e, [&](double x, double J) { return goe_generating_function_minus_one(e, {x, J}, 1.0, q); });
}

/* ---------------------------------------------------------------- oracles */

double hermite_density_oracle(int N, double x)
{
  if (N < 1) {
    throw std::domain_error("level number N must be >= 1");
  }
  /* orthonormal Hermite functions for the weight exp(-x^2) */
  double p0 = std::pow(kPi, -0.25) * std::exp(-x * x / 2), p1 = std::sqrt(2.0) * x * p0;
  double s = p0 * p0;
  if (N > 1) {
    s += p1 * p1;
  }
  for (int k = 1; k + 1 < N; k++) {
    const double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(double(k) / (k + 1)) * p0;
    s += p2 * p2;
    p0 = p1;
    p1 = p2;
  }
  return s;
}

double Histogram::density(double x) const
{
  const double t = std::floor((x - lo) / width);
  if (t < 0 || t >= double(counts.size()) || samples == 0) {
    return 0.0;
  }
  return double(counts[static_cast<std::size_t>(t)]) / (double(samples) * width);
}

Histogram mc_density_oracle(Ensemble ens, int N, std::uint64_t samples, double bin_width, std::uint64_t seed,
                            double lo, double hi)
{
  if (N < 1 || bin_width <= 0 || hi <= lo) {
    throw std::invalid_argument("mc_density_oracle: bad arguments");
  }
  Histogram h;
  h.lo = lo;
  h.width = bin_width;
  h.N = N;
  h.samples = samples;
  const auto nb = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width));
  h.counts.assign(nb, 0);
  constexpr std::uint64_t chunk = 1 << 16;
  const std::uint64_t nchunks = (samples + chunk - 1) / chunk;
  std::vector<std::vector<std::uint64_t>> parts(nchunks);
  parallel_for(nchunks, [&](std::size_t c) {
    std::seed_seq seq{std::uint64_t(seed), std::uint64_t(c), std::uint64_t(N), std::uint64_t(ens)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> diag(0.0, std::sqrt(0.5)), off(0.0, 0.5);
    const std::uint64_t n = std::min<std::uint64_t>(chunk, samples - c * chunk);
    std::vector<double> ev;
    ev.reserve(n * std::uint64_t(N));
    Eigen::MatrixXcd H(N, N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
    for (std::uint64_t t = 0; t < n; t++) {
      for (int i = 0; i < N; i++) {
        H(i, i) = diag(rng);
        for (int j = i + 1; j < N; j++) {
          const double re = off(rng);
          const double im = ens == Ensemble::GUE ? off(rng) : 0.0;
          H(i, j) = cplx(re, im);
          H(j, i) = cplx(re, -im);
        }
      }
      if (N == 1) {
        ev.push_back(H(0, 0).real());
      }
      else {
        es.compute(H, Eigen::EigenvaluesOnly);
        for (int i = 0; i < N; i++) {
          ev.push_back(es.eigenvalues()[i]);
        }
      }
    }
    parts[c].assign(nb, 0);
    simd::histogram_add(ev, lo, bin_width, parts[c]);
  });
  for (const auto &p : parts) {
    for (std::size_t i = 0; i < nb; i++) {
      h.counts[i] += p[i];
    }
  }
  return h;
}

/* ------------------------------------------------------ Bessel functions */

namespace {

cplx vandermonde(std::span<const cplx> v)
{
  cplx d = 1.0;
  for (std::size_t m = 0; m < v.size(); m++) {
    for (std::size_t n = m + 1; n < v.size(); n++) {
      d *= v[n] - v[m];
    }
  }
  return d;
}

cplx exp_det(std::span<const cplx> s, std::span<const cplx> x)
{
  const auto k = static_cast<Eigen::Index>(s.size());
  if (k == 0) {
    return 1.0;
  }
  Eigen::MatrixXcd M(k, k);
  for (Eigen::Index m = 0; m < k; m++) {
    for (Eigen::Index n = 0; n < k; n++) {
      M(m, n) = std::exp(s[m] * x[n]);
    }
  }
  return M.determinant();
}

void check_distinct(std::span<const cplx> v, const char *what)
{
  for (std::size_t m = 0; m < v.size(); m++) {
    for (std::size_t n = m + 1; n < v.size(); n++) {
      if (std::abs(v[m] - v[n]) < 1e-12) {
        throw SingularPointError(std::string("degenerate ") + what);
      }
    }
  }
}

}  // namespace

cplx supermatrix_bessel_22(const BesselArgs &a)
{
  const auto k1 = static_cast<int>(a.s.s1.size()), k2 = static_cast<int>(a.s.s2.size());
  if (a.x1.size() != a.s.s1.size() || a.x2.size() != a.s.s2.size()) {
    throw std::invalid_argument("supermatrix_bessel_22: block sizes of s and x differ");
  }
  const cplx w = std::polar(1.0, a.s.psi);
  std::vector<cplx> ws2, mws2, x1(a.x1.begin(), a.x1.end()), x2(a.x2.begin(), a.x2.end());
  for (cplx v : a.s.s2) {
    ws2.push_back(w * v);
    mws2.push_back(-w * v);
  }
  check_distinct(a.s.s1, "s1 eigenvalues");
  check_distinct(ws2, "s2 eigenvalues");
  check_distinct(x1, "x1 entries");
  check_distinct(x2, "x2 entries");
  cplx cross_s = 1.0, cross_x = 1.0;
  /* relative test: the polar integrals evaluate this close to the origin */
  auto close = [](cplx u, cplx v) { return std::abs(u - v) <= 1e-12 * (std::abs(u) + std::abs(v)); };
  for (int m = 0; m < k1; m++) {
    for (int n = 0; n < k2; n++) {
      if (close(a.s.s1[m], ws2[n]) || close(x1[m], x2[n])) {
        throw SingularPointError("supermatrix_bessel_22: boson and fermion eigenvalues coincide");
      }
      cross_s *= a.s.s1[m] - ws2[n];
      cross_x *= x1[m] - x2[n];
    }
  }
  /* sqrt(B(s) B(x)) on the rational branch; the (-1)^{k1 k2} matches the U(1/1) Cartesian integral */
  const cplx root = ((k1 * k2) % 2 ? -1.0 : 1.0) * vandermonde(a.s.s1) * vandermonde(ws2) * vandermonde(x1) *
                    vandermonde(x2) / (cross_s * cross_x);
  const double pref = std::pow(kPi, (k1 - k2) * (k1 - k2) / 2.0) / (std::pow(2.0, k1 * k2) * std::pow(kPi, (k1 + k2) / 2.0));
  /* fermion block with the Str sign: exp(-w s2 x2) */
  return pref * exp_det(a.s.s1, x1) * exp_det(mws2, x2) / root;
}

cplx hciz_ordinary(std::span<const double> s, std::span<const double> x)
{
  if (s.size() != x.size() || s.empty()) {
    throw std::invalid_argument("hciz_ordinary: s and x must have the same positive size");
  }
  std::vector<cplx> sc(s.begin(), s.end()), xc(x.begin(), x.end());
  check_distinct(sc, "s");
  check_distinct(xc, "x");
  double c = 1.0;
  for (std::size_t j = 1; j < s.size(); j++) {
    c *= std::tgamma(double(j) + 1.0);
  }
  return c * exp_det(sc, xc) / (vandermonde(sc) * vandermonde(xc));
}

McEstimate hciz_monte_carlo(std::span<const double> s, std::span<const double> x, std::uint64_t samples,
                            std::uint64_t seed)
{
  const auto k = static_cast<Eigen::Index>(s.size());
  constexpr std::uint64_t chunk = 1 << 15;
  const std::uint64_t nchunks = (samples + chunk - 1) / chunk;
  std::vector<double> sum(nchunks), sum2(nchunks);
  parallel_for(nchunks, [&](std::size_t c) {
    std::seed_seq seq{std::uint64_t(seed), std::uint64_t(c), std::uint64_t(k)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g;
    const std::uint64_t n = std::min<std::uint64_t>(chunk, samples - c * chunk);
    Eigen::MatrixXcd Z(k, k);
    double a = 0, b = 0;
    for (std::uint64_t t = 0; t < n; t++) {
      for (Eigen::Index i = 0; i < k; i++) {
        for (Eigen::Index j = 0; j < k; j++) {
          Z(i, j) = cplx(g(rng), g(rng));
        }
      }
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
      Eigen::MatrixXcd Q = qr.householderQ();
      const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
      for (Eigen::Index j = 0; j < k; j++) {
        Q.col(j) *= R(j, j) / std::abs(R(j, j));
      }
      double e = 0;
      for (Eigen::Index m = 0; m < k; m++) {
        for (Eigen::Index n2 = 0; n2 < k; n2++) {
          e += s[m] * x[n2] * std::norm(Q(m, n2));
        }
      }
      const double v = std::exp(e);
      a += v;
      b += v * v;
    }
    sum[c] = a;
    sum2[c] = b;
  });
  double a = 0, b = 0;
  for (std::size_t c = 0; c < nchunks; c++) {
    a += sum[c];
    b += sum2[c];
  }
  McEstimate r;
  const double mean = a / double(samples);
  r.mean = mean;
  r.std_error = std::sqrt(std::max(0.0, b / double(samples) - mean * mean) / double(samples));
  return r;
}

cplx supermatrix_bessel_14_21(cplx s11, cplx s21, cplx s2, double x11, double x21, double x2, double psi)
{
  const cplx w = std::polar(1.0, psi);
  const cplx R = (s11 + s21) / 2.0, r = (s11 - s21) / 2.0;
  const cplx k = -I1 * (x11 - x21);
  const cplx strs = s11 + s21 - 2.0 * w * s2;
  const double strx = x11 + x21 - 2 * x2;
  const cplx j0 = bessel_j0(k * r), j1 = bessel_j1(k * r);
  /* 2 r d/dr J0(k r) = -2 k r J1(k r) */
  const cplx bracket = (4.0 * (s11 - w * s2) * (s21 - w * s2) * (x11 - x2) * (x21 - x2) - strs * strx) * j0 +
                       2.0 * k * r * j1;
  return std::exp(R * (x11 + x21) - 2.0 * w * s2 * x2) * bracket / (2 * kPi);
}

namespace {

const RadialOperator &uosp22_bessel_operator()
{
  static const RadialOperator op = [] {
    const std::vector<std::string> n{"s11", "s21", "s2"};
    const auto Da = RadialOperator::partial(n, 0).scaled(2) + RadialOperator::partial(n, 2).scaled(1, -1);
    const auto Db = RadialOperator::partial(n, 1).scaled(2) + RadialOperator::partial(n, 2).scaled(1, -1);
    const LinearFactor fa{0, 2, 1, 1}, fb{1, 2, 1, 1};
    const auto T = Db * Da.left_multiply(RationalFn::inverse_factor(3, fb)) -
                   Da * Db.left_multiply(RationalFn::inverse_factor(3, fa));
    const Poly pa = fa.as_poly(3), pb = fb.as_poly(3);
    const RationalFn P(pa * pa * pb * pb, {{LinearFactor{0, 1, 1, 0}, 1}});
    return T.left_multiply(P).scaled(Rational(1, 2), 0, -1);
  }();
  return op;
}

}  // namespace

cplx supermatrix_bessel_14_21_operator(cplx s11, cplx s21, cplx s2, double x11, double x21, double x2, double psi)
{
  const auto &op = uosp22_bessel_operator();
  const cplx w = std::polar(1.0, psi);
  const Jet a = Jet::variable(3, 2, 0, s11), b = Jet::variable(3, 2, 1, s21), c = Jet::variable(3, 2, 2, s2);
  const Jet phi = exp((a + b) * cplx((x11 + x21) / 2) - c * (2.0 * w * x2)) *
                  bessel_j0((a - b) * (-I1 * (x11 - x21) / 2.0));
  const cplx at[3] = {s11, s21, s2};
  return op.apply(phi, at, psi);
}

/* -------------------------------------------------------- verification */

namespace {

VerificationReport make_report(const std::string &name, nlohmann::json params, double tol, bool relative)
{
  VerificationReport r;
  r.theorem = name;
  r.params = std::move(params);
  r.tolerance = tol;
  r.relative = relative;
  return r;
}

}  // namespace

std::vector<VerificationReport> verify_gue_normalization(const std::vector<double> &xs, double psi)
{
  std::vector<VerificationReport> out;
  for (int N : {1, 3}) {
    for (double x : xs) {
      const auto t0 = std::chrono::steady_clock::now();
      EnsembleSpec e;
      e.N = N;
      e.wick = WickRotation(psi);
      auto r = make_report("gue-normalization", {{"N", N}, {"x", number_json(x)}, {"psi", number_json(psi)}},
                           1e-10, false);
      r.lhs = gue_generating_function(e, {x, 0.0});
      r.rhs = 1.0;
      r.finish();
      r.seconds = seconds_since(t0);
      out.push_back(r);
    }
  }
  return out;
}

namespace {

void check_window(Ensemble ens, const std::vector<double> &xs, double psi)
{
  const double w = generator_window(ens, psi);
  for (double x : xs) {
    if (!(std::abs(x) <= w)) {
      throw std::domain_error(to_string(ens) + " density: |x| must be <= " + std::to_string(w) + " at this psi");
    }
  }
}

}  // namespace

std::vector<VerificationReport> verify_gue_density(const std::vector<int> &Ns, const std::vector<double> &xs,
                                                   double psi, double tolerance)
{
  check_window(Ensemble::GUE, xs, psi);
  std::vector<VerificationReport> out;
  for (int N : Ns) {
    EnsembleSpec e;
    e.N = N;
    e.wick = WickRotation(psi);
    for (double x : xs) {
      const auto t0 = std::chrono::steady_clock::now();
      auto r = make_report("gue-density", {{"N", N}, {"x", number_json(x)}, {"psi", number_json(psi)}},
                           tolerance, true);
      const auto d = density_from_generating_function(
          [&](double xx, double J) { return gue_generating_function_minus_one(e, {xx, J}); }, x);
      r.lhs = d.rho;
      r.rhs = hermite_density_oracle(N, x);
      r.finish();
      /* relative to the oracle value itself */
      r.rel_dev = r.abs_dev / std::abs(r.rhs);
      r.pass = r.rel_dev <= tolerance;
      r.extra["step_sensitivity"] = number_json(d.step_sensitivity);
      r.seconds = seconds_since(t0);
      out.push_back(r);
    }
  }
  return out;
}

std::vector<VerificationReport> verify_goe_density(int N, const std::vector<double> &xs, double psi,
                                                   std::uint64_t samples, std::uint64_t seed, double tolerance)
{
  check_window(Ensemble::GOE, xs, psi);
  EnsembleSpec e;
  e.ensemble = Ensemble::GOE;
  e.N = N;
  e.wick = WickRotation(psi);
  const auto t0 = std::chrono::steady_clock::now();
  const SumRule sr = goe_sum_rule(e);
  const double w = 0.05;
  /* bins centred on multiples of w */
  const Histogram h = mc_density_oracle(Ensemble::GOE, N, samples, w, seed, -6.0 - w / 2, 6.0 + w / 2);
  std::vector<VerificationReport> out;
  for (double x : xs) {
    auto r = make_report("goe-density",
                         {{"N", N}, {"x", number_json(x)}, {"psi", number_json(psi)}, {"samples", samples},
                          {"seed", seed}},
                         tolerance, true);
    const auto d = density_from_generating_function(
        [&](double xx, double J) { return goe_generating_function_minus_one(e, {xx, J}, kGoeDensityScale); }, x);
    r.lhs = d.rho;
    r.rhs = h.density(x);
    r.finish();
    r.rel_dev = r.abs_dev / std::abs(r.rhs);
    r.pass = r.rel_dev <= tolerance;
    r.extra["sum_rule_scale"] = number_json(sr.scale);
    r.extra["sum_rule_window"] = number_json(sr.window);
    r.extra["unscaled_integral"] = number_json(sr.integral);
    r.extra["exact_density"] = number_json([&] {
      /* N = 2 closed form: int |x - y| exp(-x^2 - y^2) dy / norm */
      if (N != 2) {
        return std::nan("");
      }
      const double ex = std::exp(-x * x);
      const double inner = ex * (std::exp(-x * x) + std::sqrt(kPi) * x * std::erf(x));
      return 2 * inner / std::sqrt(2 * kPi);
    }());
    r.extra["step_sensitivity"] = number_json(d.step_sensitivity);
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  return out;
}

VerificationReport verify_bessel_u11(double psi, double x1, double x2, double tolerance)
{
  const auto t0 = std::chrono::steady_clock::now();
  const cplx w = std::polar(1.0, psi);
  if (!(std::cos(2 * psi) < 0)) {
    throw std::domain_error("the Gaussian check needs psi in (pi/4, 3 pi/4)");
  }
  const auto prof = standard_matrix_profiles()[0];
  const double c = prof.rates[1];
  auto r = make_report("bessel-u11",
                       {{"psi", number_json(psi)}, {"x1", number_json(x1)}, {"x2", number_json(x2)},
                        {"profile", prof.name}},
                       tolerance, false);
  /* Cartesian side: exp(Str sigma x) has no Grassmann part */
  const std::vector<Axis> axes{gauss_hermite(48, c), gauss_hermite(48, -c * w * w)};
  r.lhs = tensor_integrate(axes, [&](std::span<const cplx> t) {
    EigenvaluePoint s{{t[0]}, {t[1]}, psi};
    return std::exp(t[0] * x1 - w * t[1] * x2) * berezin_oracle_matrix(prof, Symmetry::U, s);
  });
  /* eigenvalue side: -i f(0) + w int f Phi B, polar around the pole at the origin */
  auto f = [&](cplx s1, cplx s2) {
    const auto u = radial_invariants(Symmetry::U, EigenvaluePoint{{s1}, {s2}, psi}, prof.arity());
    return prof.value(u);
  };
  const int M = 64;
  std::vector<cplx> part(M);
  parallel_for(part.size(), [&](std::size_t k) {
    const double th = 2 * kPi * double(k) / M;
    part[k] = tanh_sinh_complex(
        [&](double rho) {
          if (rho == 0.0 || !(rho < kRadialCutoff)) {
            return cplx(0.0);
          }
          const cplx s1 = rho * std::cos(th), s2 = rho * std::sin(th);
          const cplx fv = f(s1, s2);
          /* the kernel grows exponentially; stop once the profile has underflowed */
          if (fv == 0.0) {
            return cplx(0.0);
          }
          BesselArgs a{EigenvaluePoint{{s1}, {s2}, psi}, {x1}, {x2}};
          const cplx d = s1 - w * s2;
          return (rho / d) * fv * (supermatrix_bessel_22(a) / d);
        },
        0.0, std::numeric_limits<double>::infinity(), 1e-13);
  });
  cplx sum = 0.0;
  for (const auto &v : part) {
    sum += v;
  }
  r.rhs = -I1 * f(0.0, 0.0) + w * sum * (2 * kPi / M);
  r.finish();
  r.seconds = seconds_since(t0);
  return r;
}

VerificationReport verify_bessel_uosp22(std::uint64_t seed, int points, double tolerance)
{
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5), ps(0.3, 2.8);
  auto r = make_report("bessel-uosp22", {{"points", points}, {"seed", seed}}, tolerance, true);
  double worst = -1;
  for (int k = 0; k < points; k++) {
    const double s11 = u(rng), s21 = u(rng), s2 = u(rng), x11 = u(rng), x21 = u(rng), x2 = u(rng), psi = ps(rng);
    const cplx a = supermatrix_bessel_14_21_operator(s11, s21, s2, x11, x21, x2, psi);
    const cplx b = supermatrix_bessel_14_21(s11, s21, s2, x11, x21, x2, psi);
    const double dev = std::abs(a - b) / std::max(1.0, std::abs(b));
    if (dev > worst) {
      worst = dev;
      r.lhs = a;
      r.rhs = b;
      r.extra["point"] = {number_json(s11), number_json(s21), number_json(s2), number_json(x11),
                          number_json(x21), number_json(x2), number_json(psi)};
    }
  }
  r.finish();
  r.seconds = seconds_since(t0);
  return r;
}

VerificationReport verify_hciz(std::uint64_t samples, std::uint64_t seed, double tolerance)
{
  const auto t0 = std::chrono::steady_clock::now();
  const double s[2] = {0.9, -0.4}, x[2] = {0.7, -0.5};
  auto r = make_report("hciz", {{"k", 2}, {"samples", samples}, {"seed", seed}}, tolerance, true);
  const auto mc = hciz_monte_carlo(s, x, samples, seed);
  r.lhs = hciz_ordinary(s, x);
  r.rhs = mc.mean;
  r.finish();
  r.rel_dev = r.abs_dev / std::abs(r.rhs);
  r.pass = r.rel_dev <= tolerance;
  r.extra["mc_std_error"] = number_json(mc.std_error);
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace berezin
