// SPDX-License-Identifier: Apache-2.0
#pragma once

/** \file
 * Named verification suites with documented defaults, shared by the CLI and
 * the acceptance runner.
 */

#include "berezin/rmt.hpp"
#include "berezin/theorems.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace berezin {

/**
 * Unset optionals fall back to per-suite defaults:
 *   theorem1    tolerance 1e-9, psi sweep {pi/3, pi/2, 2 pi/3}
 *   vectors     tolerance 1e-6, 40 Laguerre nodes
 *   matrices    1e-6 for U(1/1), 1e-5 otherwise; 24 nodes per axis; psi sweep
 *   appendix-a  tolerance 1e-6, psi = pi/2, alpha in {2, 1}
 *   operators   seed 1
 */
struct RunConfig {
  std::optional<double> psi;
  std::optional<double> tolerance;
  std::optional<int> quad_points;
  std::uint64_t seed = 1;
  std::optional<int> max_L;
  std::vector<double> alphas;

  /** Throws std::invalid_argument on out-of-range values. */
  void validate() const;
};

const std::vector<std::string> &suite_names();

/** One of suite_names() or "all". */
std::vector<VerificationReport> run_suite(const std::string &suite, const RunConfig &cfg);

struct SuiteSummary {
  int total = 0;
  int asserted = 0;
  int failed = 0;
  double worst_abs = 0.0;
};
SuiteSummary summarize(const std::vector<VerificationReport> &rs);

/** Fixed-width table, one row per report. */
std::string summary_table(const std::vector<VerificationReport> &rs);

/** Decimal with 15 significant digits, as used in every emitted number. */
std::string format15(double x);

}  // namespace berezin
