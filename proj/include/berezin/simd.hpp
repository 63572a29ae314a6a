// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Hot numeric loops with a scalar reference and an AVX2 variant chosen at run time.
 */

#include <complex>
#include <cstdint>
#include <span>

namespace berezin::simd {

using cplx = std::complex<double>;

bool avx2_available();
/** Disables the vector path for the rest of the process (tests, reproducibility runs). */
void force_scalar(bool on);
const char *active_path();

/** sum_i w_i f_i. */
cplx weighted_sum(std::span<const cplx> w, std::span<const cplx> f);
cplx weighted_sum_scalar(std::span<const cplx> w, std::span<const cplx> f);
cplx weighted_sum_avx2(std::span<const cplx> w, std::span<const cplx> f);

/**
 * counts[floor((x - lo) / width)] += 1 for x inside [lo, lo + width * counts.size()).
 * Returns the number of samples that fell outside.
 */
std::uint64_t histogram_add(std::span<const double> x, double lo, double width, std::span<std::uint64_t> counts);
std::uint64_t histogram_add_scalar(std::span<const double> x, double lo, double width, std::span<std::uint64_t> counts);
std::uint64_t histogram_add_avx2(std::span<const double> x, double lo, double width, std::span<std::uint64_t> counts);

}  // namespace berezin::simd
