#include "spherebounds_cli/spec_file.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spherebounds::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw SpecError("unknown key '" + key + "' in " + std::string(where));
  }
}

double number(const json& v, std::string_view what) {
  if (!v.is_number()) throw SpecError(std::string(what) + " must be a number");
  return v.get<double>();
}

long long integer(const json& v, std::string_view what) {
  if (!v.is_number_integer()) throw SpecError(std::string(what) + " must be an integer");
  return v.get<long long>();
}

}  // namespace

SpecFile parse_spec_file(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SpecError("spec file must be a JSON object");
  reject_unknown(root, {"species", "kappa", "lp", "delta_max", "seed"}, "spec file");

  SpecFile out;
  if (!root.contains("species") || !root["species"].is_array() || root["species"].empty()) {
    throw SpecError("spec file needs a nonempty 'species' array");
  }
  for (const auto& entry : root["species"]) {
    if (!entry.is_object()) throw SpecError("each species must be an object");
    reject_unknown(entry, {"radius", "count"}, "species entry");
    if (!entry.contains("radius") || !entry.contains("count")) {
      throw SpecError("each species needs 'radius' and 'count'");
    }
    out.spec.species.push_back({number(entry["radius"], "radius"), integer(entry["count"], "count")});
  }
  if (root.contains("kappa")) out.spec.kappa = number(root["kappa"], "kappa");

  if (root.contains("lp")) {
    const json& lp = root["lp"];
    if (!lp.is_object()) throw SpecError("'lp' must be an object");
    reject_unknown(lp, {"degree", "grid", "verify_grid", "tol", "refine_rounds"}, "lp");
    if (lp.contains("degree")) out.lp.degree = static_cast<int>(integer(lp["degree"], "lp.degree"));
    if (lp.contains("grid")) {
      out.lp.constraint_grid = static_cast<int>(integer(lp["grid"], "lp.grid"));
      out.lp.verify_grid = std::max(out.lp.verify_grid, 16 * out.lp.constraint_grid);
    }
    if (lp.contains("verify_grid")) out.lp.verify_grid = static_cast<int>(integer(lp["verify_grid"], "lp.verify_grid"));
    if (lp.contains("tol")) out.lp.feasibility_tol = number(lp["tol"], "lp.tol");
    if (lp.contains("refine_rounds")) {
      out.lp.refine_rounds = static_cast<int>(integer(lp["refine_rounds"], "lp.refine_rounds"));
    }
  }
  if (root.contains("delta_max")) {
    const double d = number(root["delta_max"], "delta_max");
    if (!(d > 0.0) || d > 1.0) throw SpecError("delta_max must lie in (0, 1]");
    out.delta_max = d;
  }
  if (root.contains("seed")) {
    const json& s = root["seed"];
    if (!s.is_number_unsigned()) throw SpecError("seed must be a nonnegative integer");
    out.seed = s.get<std::uint64_t>();
  }

  try {
    out.spec.validate();
    out.lp.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return out;
}

SpecFile load_spec_file(const std::filesystem::path& path, std::string* raw_text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open spec file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (raw_text != nullptr) *raw_text = text;
  return parse_spec_file(text);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace spherebounds::cli
