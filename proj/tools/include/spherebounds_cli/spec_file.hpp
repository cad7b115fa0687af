#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spherebounds/lp_bound.hpp"
#include "spherebounds/packing_bounds.hpp"

namespace spherebounds::cli {

/// Malformed or invalid spec file (exit code 1).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed packing spec file. JSON object with keys
///   species    required, array of {"radius": r > 0, "count": n >= 1}
///   kappa      optional number (default 0.926675)
///   lp         optional {"degree", "grid", "verify_grid", "tol", "refine_rounds"}
///   delta_max  optional number in (0, 1]
///   seed       optional unsigned integer
/// Unknown keys are rejected at every level.
struct SpecFile {
  PackingSpec spec;
  LPConfig lp;
  std::optional<double> delta_max;
  std::optional<std::uint64_t> seed;
};

SpecFile parse_spec_file(std::string_view text);
SpecFile load_spec_file(const std::filesystem::path& path, std::string* raw_text = nullptr);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace spherebounds::cli
