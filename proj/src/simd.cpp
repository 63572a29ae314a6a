// SPDX-License-Identifier: Apache-2.0
#include "berezin/simd.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BEREZIN_X86 1
#endif

namespace berezin::simd {

namespace {
std::atomic<bool> g_force_scalar{false};
}

bool avx2_available()
{
#ifdef BEREZIN_X86
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

void force_scalar(bool on) { g_force_scalar = on; }

const char *active_path() { return (!g_force_scalar && avx2_available()) ? "avx2" : "scalar"; }

cplx weighted_sum_scalar(std::span<const cplx> w, std::span<const cplx> f)
{
  if (w.size() != f.size()) {
    throw std::invalid_argument("weighted_sum: size mismatch");
  }
  double re = 0, im = 0;
  for (std::size_t i = 0; i < w.size(); i++) {
    re += w[i].real() * f[i].real() - w[i].imag() * f[i].imag();
    im += w[i].real() * f[i].imag() + w[i].imag() * f[i].real();
  }
  return {re, im};
}

std::uint64_t histogram_add_scalar(std::span<const double> x, double lo, double width, std::span<std::uint64_t> counts)
{
  std::uint64_t outside = 0;
  const double inv = 1.0 / width;
  const auto nb = static_cast<std::int64_t>(counts.size());
  for (double v : x) {
    const double t = std::floor((v - lo) * inv);
    if (t >= 0 && t < double(nb)) {
      counts[static_cast<std::size_t>(t)]++;
    }
    else {
      outside++;
    }
  }
  return outside;
}

#ifdef BEREZIN_X86

__attribute__((target("avx2,fma"))) cplx weighted_sum_avx2(std::span<const cplx> w, std::span<const cplx> f)
{
  if (w.size() != f.size()) {
    throw std::invalid_argument("weighted_sum: size mismatch");
  }
  const auto *pw = reinterpret_cast<const double *>(w.data());
  const auto *pf = reinterpret_cast<const double *>(f.data());
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(pw + 2 * i);
    const __m256d b = _mm256_loadu_pd(pf + 2 * i);
    const __m256d ar = _mm256_movedup_pd(a);          // wr wr
    const __m256d ai = _mm256_permute_pd(a, 0xF);     // wi wi
    const __m256d bs = _mm256_permute_pd(b, 0x5);     // fi fr
    const __m256d t = _mm256_mul_pd(ai, bs);
    acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, t));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx s(lanes[0] + lanes[2], lanes[1] + lanes[3]);
  for (; i < n; i++) {
    s += w[i] * f[i];
  }
  return s;
}

__attribute__((target("avx2,fma"))) std::uint64_t histogram_add_avx2(std::span<const double> x,
                                                                      double lo,
                                                                      double width,
                                                                      std::span<std::uint64_t> counts)
{
  std::uint64_t outside = 0;
  const double inv = 1.0 / width;
  const double nb = double(counts.size());
  const __m256d vlo = _mm256_set1_pd(lo), vinv = _mm256_set1_pd(inv);
  const __m256d zero = _mm256_setzero_pd(), vnb = _mm256_set1_pd(nb);
  std::size_t i = 0;
  alignas(32) double idx[4];
  for (; i + 4 <= x.size(); i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i), vlo), vinv);
    t = _mm256_floor_pd(t);
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(t, zero, _CMP_GE_OQ), _mm256_cmp_pd(t, vnb, _CMP_LT_OQ));
    const int mask = _mm256_movemask_pd(ok);
    _mm256_store_pd(idx, t);
    for (int k = 0; k < 4; k++) {
      if (mask & (1 << k)) {
        counts[static_cast<std::size_t>(idx[k])]++;
      }
      else {
        outside++;
      }
    }
  }
  return outside + histogram_add_scalar(x.subspan(i), lo, width, counts);
}

#else

cplx weighted_sum_avx2(std::span<const cplx> w, std::span<const cplx> f) { return weighted_sum_scalar(w, f); }
std::uint64_t histogram_add_avx2(std::span<const double> x, double lo, double width, std::span<std::uint64_t> counts)
{
  return histogram_add_scalar(x, lo, width, counts);
}

#endif

cplx weighted_sum(std::span<const cplx> w, std::span<const cplx> f)
{
  if (!g_force_scalar && avx2_available()) {
    return weighted_sum_avx2(w, f);
  }
  return weighted_sum_scalar(w, f);
}

std::uint64_t histogram_add(std::span<const double> x, double lo, double width, std::span<std::uint64_t> counts)
{
  if (!g_force_scalar && avx2_available()) {
    return histogram_add_avx2(x, lo, width, counts);
  }
  return histogram_add_scalar(x, lo, width, counts);
}

}  // namespace berezin::simd
