#pragma once

#include <cstdint>

#include "spherebounds_cli/report.hpp"

namespace spherebounds::cli {

enum class VerifyScale { Quick, Full };

struct VerifyOptions {
  std::uint64_t seed = 1;
  VerifyScale scale = VerifyScale::Quick;
  unsigned threads = 1;
  LPConfig lp;
  /// Test hook: corrupt one certificate before checking it.
  bool inject_bad_certificate = false;
};

struct VerifyOutcome {
  Json report;
  bool ok = true;
};

/// End-to-end oracle sandwich: known-code witnesses against LP bounds,
/// Monte Carlo tetrahedron densities against the closed form, greedy contact
/// packings against the contact and kissing bounds.
VerifyOutcome run_verify(const VerifyOptions& options);

}  // namespace spherebounds::cli
