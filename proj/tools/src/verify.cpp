#include "spherebounds_cli/verify.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spherebounds/errors.hpp"
#include "spherebounds/oracle.hpp"
#include "spherebounds/rng.hpp"

namespace spherebounds::cli {
namespace {

struct Checklist {
  Json items = Json::array();
  bool ok = true;

  void add(std::string name, bool passed, Json detail) {
    ok = ok && passed;
    items.push_back({{"name", std::move(name)}, {"passed", passed}, {"detail", std::move(detail)}});
  }
};

void sandwich_checks(Checklist& list, const VerifyOptions& opt) {
  for (KnownCode kind : all_known_codes()) {
    const SphericalCode code = known_code(kind);
    const std::string name(to_string(kind));
    LPBoundResult lp = lp_upper_bound(ThetaCodeAngle(code.min_angle), opt.lp);
    if (opt.inject_bad_certificate && kind == KnownCode::Tetrahedron && lp.certificate.coeffs.degree() >= 1) {
      lp.certificate.coeffs[1] -= 2.0;
    }
    const double ceiling = std::floor(lp.bound + 1e-6);
    list.add("sandwich/" + name,
             lp.status == LpBoundStatus::Certified && static_cast<double>(code.size()) <= ceiling,
             {{"size", code.size()}, {"min_angle", code.min_angle}, {"lp_bound", lp.bound},
              {"status", std::string(to_string(lp.status))}});
    const CertificateCheck check = verify_certificate(lp.certificate, opt.lp.verify_grid);
    list.add("certificate/" + name,
             check.max_violation <= opt.lp.feasibility_tol && check.min_coeff >= -1e-12,
             {{"max_violation", check.max_violation}, {"min_coeff", check.min_coeff}});
  }
}

// Random quadruples with radii in [0.1, 10] whose balls meet Delta in exact
// cone sectors (the quantity the closed form counts).
std::vector<RadiiQuadruple> sector_quadruples(std::uint64_t seed, std::size_t count) {
  Rng rng = Rng::derive(seed, 0x7e7a);
  std::vector<RadiiQuadruple> out;
  while (out.size() < count) {
    RadiiQuadruple q(rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0));
    try {
      if (wedges_are_sectors(embed(q))) out.push_back(q);
    } catch (const DegenerateSimplex&) {
    }
  }
  return out;
}

void monte_carlo_checks(Checklist& list, const VerifyOptions& opt) {
  const bool full = opt.scale == VerifyScale::Full;
  const std::size_t count = full ? 20 : 4;
  const std::size_t samples = full ? 1000000 : 200000;
  const auto quads = sector_quadruples(opt.seed, count);
  for (std::size_t n = 0; n < quads.size(); ++n) {
    const double exact = simplicial_density(quads[n]);
    const MonteCarloEstimate mc = monte_carlo_tetra_density(quads[n], samples, opt.seed + n, opt.threads);
    list.add("monte_carlo/" + std::to_string(n), std::abs(mc.estimate - exact) <= 3.0 * mc.stderr_,
             {{"radii", {quads[n][0], quads[n][1], quads[n][2], quads[n][3]}},
              {"closed_form", exact},
              {"estimate", mc.estimate},
              {"stderr", mc.stderr_},
              {"samples", samples}});
  }
}

PackingSpec random_spec(Rng& rng, long long max_count) {
  PackingSpec spec;
  const std::size_t k = 1 + rng.uniform_index(3);
  while (spec.species.size() < k) {
    const double r = rng.uniform(0.5, 2.0);
    bool distinct = true;
    for (const auto& s : spec.species) distinct = distinct && s.radius != r;
    if (!distinct) continue;
    spec.species.push_back({r, 1 + static_cast<long long>(rng.uniform_index(static_cast<std::uint64_t>(max_count)))});
  }
  return spec;
}

void packing_checks(Checklist& list, const VerifyOptions& opt) {
  const bool full = opt.scale == VerifyScale::Full;
  const int packings = full ? 20 : 3;
  const long long max_count = full ? 50 : 15;
  TauCache cache(opt.lp);
  Rng rng = Rng::derive(opt.seed, 0xc0ffee);
  for (int n = 0; n < packings; ++n) {
    const PackingSpec spec = random_spec(rng, max_count);
    const ContactPacking packing = greedy_contact_packing(spec, opt.seed + static_cast<std::uint64_t>(n));
    const BoundReport bounds = compute_bounds(spec, opt.lp, {.threads = opt.threads, .cache = &cache});
    const double contacts = static_cast<double>(packing.contact_number());
    const double overlap = packing.max_overlap();
    Json species = Json::array();
    for (const auto& s : spec.species) species.push_back({{"radius", s.radius}, {"count", s.count}});
    list.add("packing/" + std::to_string(n),
             overlap <= 1e-9 && contacts < bounds.contact_bound && packing.average_kissing() < bounds.avg_kissing_bound,
             {{"species", species},
              {"contacts", packing.contact_number()},
              {"contact_bound", bounds.contact_bound},
              {"average_kissing", packing.average_kissing()},
              {"avg_kissing_bound", bounds.avg_kissing_bound},
              {"max_overlap", spec.total_count() > 1 ? Json(overlap) : Json(nullptr)}});
  }
}

void code_search_check(Checklist& list, const VerifyOptions& opt) {
  const double theta = std::numbers::pi / 3.0;
  const int restarts = opt.scale == VerifyScale::Full ? 10 : 3;
  const SphericalCode code = greedy_code_search(theta, restarts, opt.seed);
  const LPBoundResult lp = lp_upper_bound(ThetaCodeAngle(theta), opt.lp);
  list.add("code_search/pi_over_3",
           code.min_angle >= theta && static_cast<double>(code.size()) <= std::floor(lp.bound + 1e-6),
           {{"size", code.size()}, {"min_angle", code.min_angle}, {"lp_bound", lp.bound}});
}

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& options) {
  Checklist list;
  sandwich_checks(list, options);
  monte_carlo_checks(list, options);
  packing_checks(list, options);
  code_search_check(list, options);

  std::size_t violations = 0;
  for (const auto& item : list.items) violations += item["passed"].get<bool>() ? 0 : 1;

  VerifyOutcome outcome;
  outcome.ok = list.ok;
  outcome.report = Json{{"command", "verify"},
                        {"seed", options.seed},
                        {"scale", options.scale == VerifyScale::Full ? "full" : "quick"},
                        {"lp_config", to_json(options.lp)},
                        {"checks", list.items},
                        {"violations", violations},
                        {"passed", list.ok}};
  return outcome;
}

}  // namespace spherebounds::cli
