#include "spherebounds_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "spherebounds/errors.hpp"
#include "spherebounds/oracle.hpp"
#include "spherebounds_cli/report.hpp"
#include "spherebounds_cli/spec_file.hpp"
#include "spherebounds_cli/verify.hpp"

namespace spherebounds::cli {
namespace {

struct CommonFlags {
  std::string format = "text";
  std::optional<int> degree;
  std::optional<int> grid;
  std::optional<double> tol;
  unsigned threads = 1;
  bool timings = false;
};

void add_common(CLI::App& sub, CommonFlags& flags, bool lp_flags) {
  sub.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub.add_option("--threads", flags.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 256u));
  sub.add_flag("--timings", flags.timings, "Append wall-clock timings to the report");
  if (lp_flags) {
    sub.add_option("--degree", flags.degree, "Legendre series degree")->check(CLI::Range(1, 200));
    sub.add_option("--grid", flags.grid, "LP constraint grid size")->check(CLI::Range(16, 100000));
    sub.add_option("--tol", flags.tol, "Certificate feasibility tolerance")->check(CLI::PositiveNumber);
  }
}

LPConfig apply_flags(LPConfig config, const CommonFlags& flags) {
  if (flags.degree) config.degree = *flags.degree;
  if (flags.grid) {
    config.constraint_grid = *flags.grid;
    config.verify_grid = std::max(config.verify_grid, 16 * config.constraint_grid);
  }
  if (flags.tol) config.feasibility_tol = *flags.tol;
  config.validate();
  return config;
}

// Arguments that change the result; --threads and --timings are dropped so
// reports compare byte-for-byte across thread counts.
std::string command_echo(const std::vector<std::string>& args) {
  std::string echo;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--timings") continue;
    if (args[i] == "--threads") {
      ++i;
      continue;
    }
    if (args[i].rfind("--threads=", 0) == 0) continue;
    if (!echo.empty()) echo += ' ';
    echo += args[i];
  }
  return echo;
}

std::string fmt(double v, int precision = 12) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "nan";
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(std::ostream& out, const CommonFlags& flags, Json report, const std::string& text, const Stopwatch& clock) {
  if (flags.timings) report["timings_ms"] = clock.ms();
  if (flags.format == "json") {
    out << report.dump(2) << '\n';
    return;
  }
  out << text;
  if (flags.timings) out << "time: " << fmt(clock.ms(), 6) << " ms\n";
}

std::string lp_text(const LPBoundResult& r) {
  std::ostringstream t;
  t << "theta: " << fmt(r.theta) << " rad (" << fmt(r.theta * 180.0 / std::numbers::pi) << " deg)\n"
    << "status: " << to_string(r.status) << '\n'
    << "A_LP(3, theta) upper bound: " << fmt(r.bound) << '\n'
    << "max spherical code size: at most " << (std::isfinite(r.bound) ? fmt(std::floor(r.bound + 1e-9), 16) : "inf")
    << '\n'
    << "certificate max violation: " << fmt(r.certificate.max_violation, 6) << " (tol " << fmt(r.config.feasibility_tol, 3)
    << ")\n"
    << "repair shift: " << fmt(r.repair_shift, 6) << ", refine rounds: " << r.refine_rounds_used
    << ", constraint points: " << r.constraint_points << '\n'
    << "lp: degree " << r.config.degree << ", grid " << r.config.constraint_grid << ", verify grid "
    << r.config.verify_grid << '\n'
    << "coefficients (Legendre):";
  for (std::size_t k = 0; k < r.certificate.coeffs.coeffs.size(); ++k) {
    t << (k % 4 == 0 ? "\n  " : "  ") << "c" << k << "=" << fmt(r.certificate.coeffs[k], 10);
  }
  t << '\n';
  return t.str();
}

std::string bound_text(const BoundReport& b, bool kissing) {
  std::ostringstream t;
  if (kissing) {
    t << "average kissing number k(P) < " << fmt(b.avg_kissing_bound) << "  (strict upper bound)\n";
    t << "contact number C(P) < " << fmt(b.contact_bound) << '\n';
  } else {
    t << "contact number C(P) < " << fmt(b.contact_bound) << "  (strict upper bound)\n";
    t << "average kissing number k(P) < " << fmt(b.avg_kissing_bound) << '\n';
  }
  t << "spheres: " << b.total_count << ", kappa: " << fmt(b.kappa) << ", cross sum: " << fmt(b.cross_sum) << '\n';
  for (std::size_t i = 0; i < b.same_species_bounds.size(); ++i) {
    t << "  |E_" << i << i << "| < " << fmt(b.same_species_bounds[i]) << '\n';
  }
  if (!b.pairs.empty()) t << "pairs (i j  theta_ij theta_ji  lp_ij lp_ji  tau_ij tau_ji  |E_ij| bound):\n";
  for (const auto& p : b.pairs) {
    t << "  " << p.i << ' ' << p.j << "  " << fmt(p.theta_ij, 8) << ' ' << fmt(p.theta_ji, 8) << "  " << fmt(p.lp_ij, 8)
      << ' ' << fmt(p.lp_ji, 8) << "  " << p.tau_ij << ' ' << p.tau_ji << "  " << p.edge_bound << '\n';
  }
  t << "Kuperberg-Schramm interval for sup k(P): (" << fmt(b.ks_lower) << ", " << fmt(b.ks_upper) << ")";
  if (b.avg_kissing_bound < b.ks_lower) t << "; this bound lies below it";
  else if (b.avg_kissing_bound < b.ks_upper) t << "; this bound lies inside it";
  else t << "; this bound lies above it";
  t << '\n'
    << "lp: degree " << b.lp_config.degree << ", grid " << b.lp_config.constraint_grid << ", tol "
    << fmt(b.lp_config.feasibility_tol, 3) << '\n';
  return t.str();
}

std::vector<double> parse_radii(const std::vector<std::string>& tokens) {
  std::vector<double> radii;
  for (const auto& token : tokens) {
    std::stringstream ss(token);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      std::size_t used = 0;
      double r = 0.0;
      try {
        r = std::stod(item, &used);
      } catch (const std::exception&) {
        throw SpecError("cannot parse radius '" + item + "'");
      }
      if (used != item.size() || !(r > 0.0) || !std::isfinite(r)) throw SpecError("invalid radius '" + item + "'");
      radii.push_back(r);
    }
  }
  if (radii.empty()) throw SpecError("no radii given");
  return radii;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified upper bounds for non-congruent sphere packings in R^3", "spherebounds"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* lp = app.add_subcommand("lp", "LP bound on spherical theta-codes A(3, theta)");
  double theta_value = 0.0;
  std::string units;
  lp->add_option("theta", theta_value, "Minimum angular separation")->required();
  lp->add_option("--units", units, "Angle units")->required()->check(CLI::IsMember({"deg", "rad"}));
  add_common(*lp, flags, true);

  std::string spec_path;
  auto* kissing = app.add_subcommand("kissing", "Average kissing number bound for a packing spec file");
  kissing->add_option("specfile", spec_path, "JSON packing spec")->required();
  add_common(*kissing, flags, true);
  auto* contact = app.add_subcommand("contact", "Contact number bound for a packing spec file");
  contact->add_option("specfile", spec_path, "JSON packing spec")->required();
  add_common(*contact, flags, true);

  auto* density = app.add_subcommand("density", "Density bound from locally maximal tangent tetrahedra");
  std::vector<std::string> radius_tokens;
  std::optional<double> delta_max;
  bool skip_degenerate = false;
  std::string density_spec;
  density->add_option("radii", radius_tokens, "Distinct radii (space or comma separated)");
  density->add_option("--spec", density_spec, "Take radii and delta_max from a JSON spec file");
  density->add_option("--delta-max", delta_max, "Constant delta_max factor in (0, 1]")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
  density->add_flag("--skip-degenerate", skip_degenerate, "Skip quadruples with no tangent embedding");
  add_common(*density, flags, false);

  auto* tetra = app.add_subcommand("tetra", "Dump tangent-tetrahedron geometry for four radii");
  std::vector<std::string> tetra_tokens;
  tetra->add_option("radii", tetra_tokens, "Four radii")->required();
  add_common(*tetra, flags, false);

  auto* verify = app.add_subcommand("verify", "Run the oracle sandwich suite");
  std::uint64_t seed = 1;
  std::string scale = "quick";
  bool inject = false;
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--scale", scale, "Suite size")->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--inject-bad-certificate", inject, "Test hook: corrupt one certificate");
  add_common(*verify, flags, true);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  const Stopwatch clock;
  const std::string echo = command_echo(args);
  try {
    if (lp->parsed()) {
      const double radians = units == "deg" ? theta_value * std::numbers::pi / 180.0 : theta_value;
      const LPConfig config = apply_flags(LPConfig{}, flags);
      const LPBoundResult r = lp_upper_bound(ThetaCodeAngle(radians), config);
      Json report{{"command", echo}, {"input_hash", fnv1a_hex(echo)}, {"lp", to_json(r)}};
      emit(out, flags, report, lp_text(r), clock);
      return r.status == LpBoundStatus::Certified ? kExitOk : kExitNotConverged;
    }
    if (kissing->parsed() || contact->parsed()) {
      std::string raw;
      const SpecFile file = load_spec_file(spec_path, &raw);
      const LPConfig config = apply_flags(file.lp, flags);
      const BoundReport b = compute_bounds(file.spec, config, {.threads = flags.threads});
      const bool is_kissing = kissing->parsed();
      Json report{{"command", echo},
                  {"input_hash", fnv1a_hex(raw)},
                  {"headline", is_kissing ? "avg_kissing_bound" : "contact_bound"},
                  {"value", is_kissing ? b.avg_kissing_bound : b.contact_bound},
                  {"bounds", to_json(b)}};
      emit(out, flags, report, bound_text(b, is_kissing), clock);
      return kExitOk;
    }
    if (density->parsed()) {
      std::vector<double> radii;
      std::string hash = fnv1a_hex(echo);
      if (!density_spec.empty()) {
        if (!radius_tokens.empty()) throw SpecError("give radii either on the command line or with --spec");
        std::string raw;
        const SpecFile file = load_spec_file(density_spec, &raw);
        for (const auto& sp : file.spec.species) radii.push_back(sp.radius);
        if (!delta_max) delta_max = file.delta_max;
        hash = fnv1a_hex(raw);
      } else {
        radii = parse_radii(radius_tokens);
      }
      DeltaMax dm;
      if (delta_max) {
        const double c = *delta_max;
        dm = [c](const RadiiQuadruple&) { return c; };
      }
      const DensityBoundResult r =
          density_upper_bound(radii, dm, {.threads = flags.threads, .skip_degenerate = skip_degenerate});
      Json report{{"command", echo}, {"input_hash", hash}, {"delta_max", delta_max.value_or(1.0)},
                  {"density", to_json(r)}};
      std::ostringstream t;
      t << "density delta(P) < " << fmt(r.bound) << "  (strict upper bound, delta_max " << fmt(delta_max.value_or(1.0))
        << ")\n"
        << "argmax quadruple: (" << fmt(r.argmax[0]) << ", " << fmt(r.argmax[1]) << ", " << fmt(r.argmax[2]) << ", "
        << fmt(r.argmax[3]) << ")\n"
        << "quadruples: " << r.quadruples << ", skipped: " << r.skipped << '\n';
      emit(out, flags, report, t.str(), clock);
      return kExitOk;
    }
    if (tetra->parsed()) {
      const std::vector<double> radii = parse_radii(tetra_tokens);
      if (radii.size() != 4) throw SpecError("tetra needs exactly four radii");
      const TetraReport tr = analyze_tetrahedron(RadiiQuadruple(radii[0], radii[1], radii[2], radii[3]));
      Json report{{"command", echo}, {"input_hash", fnv1a_hex(echo)}, {"tetra", to_json(tr)}};
      std::ostringstream t;
      const char* labels = "ijkl";
      t << "radii: (" << fmt(tr.tet.radii[0]) << ", " << fmt(tr.tet.radii[1]) << ", " << fmt(tr.tet.radii[2]) << ", "
        << fmt(tr.tet.radii[3]) << ")\n";
      for (std::size_t m = 0; m < 4; ++m) {
        const Vec3& v = tr.tet.vertices[m];
        t << "omega_" << labels[m] << " = (" << fmt(v.x()) << ", " << fmt(v.y()) << ", " << fmt(v.z())
          << ")  solid angle " << fmt(tr.solid[m]) << "  wedge volume " << fmt(tr.wedge_volumes[m]) << '\n';
      }
      const auto& d = tr.dihedrals;
      t << "dihedrals: ij " << fmt(d.ij) << ", ik " << fmt(d.ik) << ", il " << fmt(d.il) << ", jk " << fmt(d.jk)
        << ", jl " << fmt(d.jl) << ", kl " << fmt(d.kl) << '\n'
        << "volume: " << fmt(tr.volume) << ", simplicial density: " << fmt(tr.density)
        << (tr.sectors ? "" : "  (a ball crosses its opposite face)") << '\n';
      emit(out, flags, report, t.str(), clock);
      return kExitOk;
    }
    if (verify->parsed()) {
      VerifyOptions opt;
      opt.seed = seed;
      opt.scale = scale == "full" ? VerifyScale::Full : VerifyScale::Quick;
      opt.threads = flags.threads;
      opt.lp = apply_flags(LPConfig{}, flags);
      opt.inject_bad_certificate = inject;
      VerifyOutcome outcome = run_verify(opt);
      outcome.report["command"] = echo;
      std::ostringstream t;
      for (const auto& item : outcome.report["checks"]) {
        t << (item["passed"].get<bool>() ? "PASS " : "FAIL ") << item["name"].get<std::string>() << "  "
          << item["detail"].dump() << '\n';
      }
      t << (outcome.ok ? "all checks passed" : "INVARIANT VIOLATION") << '\n';
      emit(out, flags, outcome.report, t.str(), clock);
      return outcome.ok ? kExitOk : kExitInvariantViolation;
    }
  } catch (const LpNotConverged& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const LpInfeasible& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const DegenerateSimplex& e) {
    err << "error: " << e.what() << " (use --skip-degenerate to ignore such quadruples)\n";
    return kExitInputError;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace spherebounds::cli
