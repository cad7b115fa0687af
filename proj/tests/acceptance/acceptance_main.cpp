// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "spherebounds/lp_bound.hpp"
#include "spherebounds/oracle.hpp"
#include "spherebounds/packing_bounds.hpp"
#include "spherebounds/rng.hpp"
#include "spherebounds/tetra_geometry.hpp"
#include "spherebounds_cli/commands.hpp"

namespace sb = spherebounds;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> run;
};

std::string num(double v, int precision = 10) {
  std::ostringstream out;
  out.precision(precision);
  out << v;
  return out.str();
}

unsigned hw_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Radii uniform in [lo, hi] until the quadruple embeds (and, if asked, every
// ball stays inside its wedge).
sb::RadiiQuadruple random_quadruple(sb::Rng& rng, double lo, double hi, bool require_sectors) {
  for (;;) {
    const sb::RadiiQuadruple q(rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi));
    if (sb::normalized_cayley_menger(q) <= 1e-12) continue;
    if (require_sectors && !sb::wedges_are_sectors(sb::embed(q))) continue;
    return q;
  }
}

Outcome simplex_angle() {
  Outcome o;
  const double theta = std::acos(-1.0 / 3.0);
  std::ostringstream d;
  for (int degree : {2, 3, 5, 10, 20}) {
    sb::LPConfig c;
    c.degree = degree;
    const auto r = sb::lp_upper_bound(sb::ThetaCodeAngle(theta), c);
    const bool ok = r.status == sb::LpBoundStatus::Certified && std::abs(r.bound - 4.0) <= 1e-6;
    o.pass &= ok;
    d << "d=" << degree << ":" << num(r.bound, 12) << " ";
  }
  const auto code = sb::known_code(sb::KnownCode::Tetrahedron);
  o.pass &= code.size() == 4 && code.min_angle >= theta - 1e-12;
  d << "witness=" << code.size();
  o.detail = d.str();
  return o;
}

Outcome antipodal_angle() {
  Outcome o;
  std::ostringstream d;
  for (int degree : {1, 2, 20}) {
    sb::LPConfig c;
    c.degree = degree;
    const auto r = sb::lp_upper_bound(sb::ThetaCodeAngle(std::numbers::pi), c);
    o.pass &= r.status == sb::LpBoundStatus::Certified && std::abs(r.bound - 2.0) <= 1e-6;
    d << "d=" << degree << ":" << num(r.bound, 12) << " ";
  }
  o.detail = d.str();
  return o;
}

Outcome kissing_angle() {
  Outcome o;
  sb::LPConfig c;
  c.degree = 20;
  const auto r = sb::lp_upper_bound(sb::ThetaCodeAngle(std::numbers::pi / 3), c);
  const auto check = sb::verify_certificate(r.certificate, 200000);
  const auto witness = sb::known_code(sb::KnownCode::FccKissing);
  o.pass = r.status == sb::LpBoundStatus::Certified && r.bound >= 12.8 && r.bound <= 13.3 &&
           r.bound >= static_cast<double>(witness.size()) && check.max_violation <= 1e-9 && check.min_coeff >= 0.0;
  o.detail = "bound=" + num(r.bound, 12) + " max_violation=" + num(check.max_violation, 3) +
             " witness=" + std::to_string(witness.size());
  return o;
}

Outcome sandwich() {
  Outcome o;
  std::ostringstream d;
  for (auto code : {sb::KnownCode::Antipodal, sb::KnownCode::Tetrahedron, sb::KnownCode::Octahedron,
                    sb::KnownCode::Icosahedron, sb::KnownCode::FccKissing}) {
    const auto c = sb::known_code(code);
    const auto r = sb::lp_upper_bound(sb::ThetaCodeAngle(c.min_angle));
    const bool ok = r.status == sb::LpBoundStatus::Certified &&
                    static_cast<double>(c.size()) <= std::floor(r.bound + 1e-6);
    o.pass &= ok;
    d << sb::to_string(code) << ":" << c.size() << "<=" << num(r.bound, 8) << " ";
  }
  o.detail = d.str();
  return o;
}

Outcome monotonicity() {
  Outcome o;
  const int count = 50;
  const double lo = 0.3;
  const double hi = std::numbers::pi;
  double prev = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= count; ++k) {
    const double theta = lo + (hi - lo) * k / count;
    const auto r = sb::lp_upper_bound(sb::ThetaCodeAngle(theta));
    if (r.status != sb::LpBoundStatus::Certified) {
      o.pass = false;
      o.detail = "not certified at theta=" + num(theta);
      return o;
    }
    worst = std::max(worst, r.bound - prev);
    if (r.bound > prev + 1e-6) o.pass = false;
    prev = r.bound;
  }
  o.detail = "largest step increase=" + num(worst, 3) + " final=" + num(prev, 12);
  return o;
}

Outcome congruent_kissing() {
  Outcome o;
  const double expect1000 = 12.0 - 1.85335 * std::pow(1000.0, -1.0 / 3.0);
  const double b1000 = sb::avg_kissing_bound({{{1.0, 1000}}}).avg_kissing_bound;
  const double b1 = sb::avg_kissing_bound({{{1.0, 1}}}).avg_kissing_bound;
  o.pass = std::abs(b1000 - expect1000) <= 1e-9 && std::abs(b1000 - 11.814665) <= 1e-9 &&
           std::abs(b1 - 10.14665) <= 1e-9;
  o.detail = "n=1000:" + num(b1000, 12) + " n=1:" + num(b1, 12);
  return o;
}

Outcome congruent_contact() {
  Outcome o;
  const double b = sb::contact_number_bound({{{2.5, 27}}}).contact_bound;
  o.pass = std::abs(b - 153.659925) <= 1e-9;
  o.detail = "n=27:" + num(b, 12);
  return o;
}

sb::PackingSpec random_spec(sb::Rng& rng, int max_species, long long max_count, double r_lo, double r_hi,
                            bool log_uniform) {
  sb::PackingSpec spec;
  const int k = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_species)));
  while (static_cast<int>(spec.species.size()) < k) {
    const double u = rng.uniform();
    const double r = log_uniform ? r_lo * std::pow(r_hi / r_lo, u) : r_lo + (r_hi - r_lo) * u;
    const bool duplicate =
        std::any_of(spec.species.begin(), spec.species.end(), [&](const sb::Species& s) { return s.radius == r; });
    if (duplicate) continue;
    spec.species.push_back({r, 1 + static_cast<long long>(rng.uniform_index(static_cast<std::uint64_t>(max_count)))});
  }
  return spec;
}

Outcome internal_identity() {
  Outcome o;
  sb::Rng rng = sb::Rng::derive(8, 0);
  sb::TauCache cache;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto spec = random_spec(rng, 4, 10000, 1.0, 10.0, true);
    const auto b = sb::compute_bounds(spec, {}, {.threads = hw_threads(), .cache = &cache});
    const double diff = std::abs(b.avg_kissing_bound - 2.0 * b.contact_bound / static_cast<double>(b.total_count));
    worst = std::max(worst, diff);
  }
  o.pass = worst <= 1e-9;
  o.detail = "max |difference|=" + num(worst, 3) + " over 100 specs";
  return o;
}

Outcome tetra_anchor() {
  Outcome o;
  const sb::RadiiQuadruple q(1, 1, 1, 1);
  const double expect = std::sqrt(2.0) * (3.0 * std::acos(1.0 / 3.0) - std::numbers::pi);
  const double density = sb::simplicial_density(q);
  const auto rep = sb::analyze_tetrahedron(q);
  const double dihedral = std::acos(1.0 / 3.0);
  double worst_dihedral = 0.0;
  for (double a : {rep.dihedrals.ij, rep.dihedrals.ik, rep.dihedrals.il, rep.dihedrals.jk, rep.dihedrals.jl,
                   rep.dihedrals.kl}) {
    worst_dihedral = std::max(worst_dihedral, std::abs(a - dihedral));
  }
  const double omega = 3.0 * dihedral - std::numbers::pi;
  double worst_solid = 0.0;
  for (double w : rep.solid.omega) worst_solid = std::max(worst_solid, std::abs(w - omega));
  o.pass = std::abs(density - expect) <= 1e-9 && std::abs(density - 0.7796356) <= 1e-7 && worst_dihedral <= 1e-10 &&
           worst_solid <= 1e-9 && std::abs(omega - 0.551286) <= 1e-6;
  o.detail = "density=" + num(density, 12) + " dihedral err=" + num(worst_dihedral, 3) +
             " solid=" + num(rep.solid.omega[0], 12);
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  sb::Rng rng = sb::Rng::derive(10, 0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto q = random_quadruple(rng, 0.1, 10.0, true);
    const double exact = sb::simplicial_density(q);
    const auto est = sb::monte_carlo_tetra_density(q, 1000000, 1000 + static_cast<std::uint64_t>(t), hw_threads());
    const double z = std::abs(est.estimate - exact) / est.stderr_;
    worst = std::max(worst, z);
    if (!(z <= 3.0)) o.pass = false;
  }
  o.detail = "largest deviation=" + num(worst, 3) + " stderr";
  return o;
}

Outcome dual_geometry() {
  Outcome o;
  sb::Rng rng = sb::Rng::derive(11, 0);
  double worst_dihedral = 0.0;
  double worst_solid = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto q = random_quadruple(rng, 0.1, 10.0, false);
    const auto tet = sb::embed(q);
    const auto a = sb::dihedral_angles(tet);
    const auto b = sb::dihedral_angles_by_projection(tet);
    for (auto [x, y] : {std::pair{a.ij, b.ij}, {a.ik, b.ik}, {a.il, b.il}, {a.jk, b.jk}, {a.jl, b.jl}, {a.kl, b.kl}}) {
      worst_dihedral = std::max(worst_dihedral, std::abs(x - y));
    }
    const auto girard = sb::solid_angles(a);
    const auto tangent = sb::solid_angles_van_oosterom(tet);
    for (std::size_t m = 0; m < 4; ++m) {
      worst_solid = std::max(worst_solid, std::abs(girard.omega[m] - tangent.omega[m]));
    }
  }
  o.pass = worst_dihedral <= 1e-9 && worst_solid <= 1e-9;
  o.detail = "dihedral=" + num(worst_dihedral, 3) + " solid=" + num(worst_solid, 3) + " over 10000 quadruples";
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

Outcome invariance() {
  Outcome o;
  sb::Rng rng = sb::Rng::derive(12, 0);
  const std::vector<double> scales = {0.001, 0.37, 2.9, 1000.0};
  double angle_err = 0.0;
  double density_err = 0.0;
  double bound_err = 0.0;
  bool tau_match = true;
  for (int t = 0; t < 50; ++t) {
    const double a = rng.uniform(0.1, 10.0);
    const double b = rng.uniform(0.1, 10.0);
    const auto q = random_quadruple(rng, 0.1, 10.0, false);
    const auto& r = q.radii();
    const double base_angle = sb::contact_angle(a, b);
    const double base_density = sb::simplicial_density(q);
    for (double s : scales) {
      angle_err = std::max(angle_err, std::abs(sb::contact_angle(s * a, s * b) - base_angle));
      density_err = std::max(density_err,
                             std::abs(sb::simplicial_density(sb::RadiiQuadruple(s * r[0], s * r[1], s * r[2], s * r[3])) -
                                      base_density));
    }
    std::array<double, 4> p = r;
    std::reverse(p.begin(), p.end());
    std::swap(p[1], p[2]);
    density_err = std::max(density_err, std::abs(sb::simplicial_density(sb::RadiiQuadruple(p)) - base_density));
  }
  sb::TauCache cache;
  for (int t = 0; t < 10; ++t) {
    const auto spec = random_spec(rng, 3, 500, 0.5, 5.0, false);
    const auto base = sb::compute_bounds(spec, {}, {.threads = hw_threads()});
    std::vector<sb::PackingSpec> variants;
    for (double s : scales) {
      auto v = spec;
      for (auto& sp : v.species) sp.radius *= s;
      variants.push_back(v);
    }
    auto reversed = spec;
    std::reverse(reversed.species.begin(), reversed.species.end());
    variants.push_back(reversed);
    for (const auto& v : variants) {
      const auto b = sb::compute_bounds(v, {}, {.threads = hw_threads()});
      bound_err = std::max(bound_err, rel(b.avg_kissing_bound, base.avg_kissing_bound));
      bound_err = std::max(bound_err, rel(b.contact_bound, base.contact_bound));
      double cross_a = 0.0;
      for (const auto& pr : base.pairs) cross_a += pr.tau_ij + pr.tau_ji;
      double cross_b = 0.0;
      for (const auto& pr : b.pairs) cross_b += pr.tau_ij + pr.tau_ji;
      tau_match &= cross_a == cross_b;
    }
  }
  o.pass = angle_err <= 1e-12 && density_err <= 1e-12 && bound_err <= 1e-12 && tau_match;
  o.detail = "contact_angle=" + num(angle_err, 3) + " density=" + num(density_err, 3) +
             " bounds(rel)=" + num(bound_err, 3) + (tau_match ? "" : " tau mismatch");
  return o;
}

Outcome witness_consistency() {
  Outcome o;
  sb::Rng rng = sb::Rng::derive(13, 0);
  sb::TauCache cache;
  std::size_t worst_gap_contacts = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto spec = random_spec(rng, 3, 50, 0.5, 2.0, false);
    const auto packing = sb::greedy_contact_packing(spec, seed);
    const auto bounds = sb::compute_bounds(spec, {}, {.threads = hw_threads(), .cache = &cache});
    const double c = static_cast<double>(packing.contact_number());
    const double k = packing.average_kissing();
    o.pass &= packing.max_overlap() <= 1e-9 && c < bounds.contact_bound && k < bounds.avg_kissing_bound;
    min_margin = std::min(min_margin, bounds.contact_bound - c);
    worst_gap_contacts = std::max(worst_gap_contacts, packing.contact_number());
  }
  o.detail = "smallest contact margin=" + num(min_margin, 6) + " largest C=" + std::to_string(worst_gap_contacts);
  return o;
}

Outcome determinism() {
  Outcome o;
  auto run = [](unsigned threads) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = sb::cli::run_cli(
        {"spherebounds", "verify", "--seed", "42", "--format", "json", "--threads", std::to_string(threads)}, out, err);
    return std::pair{code, out.str()};
  };
  const auto first = run(1);
  const auto again = run(1);
  const auto two = run(2);
  const auto four = run(4);
  o.pass = first.first == sb::cli::kExitOk && !first.second.empty() && first == again && first == two &&
           first == four;
  o.detail = "report bytes=" + std::to_string(first.second.size()) + " exit=" + std::to_string(first.first);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "LP tightness at the simplex angle", 1.0, simplex_angle},
      {2, "LP at theta = pi", 0.0, antipodal_angle},
      {3, "LP at theta = pi/3, degree 20", 10.0, kissing_angle},
      {4, "known-code sandwich battery", 30.0, sandwich},
      {5, "LP monotone in theta on (0.3, pi]", 0.0, monotonicity},
      {6, "congruent average kissing bound", 0.0, congruent_kissing},
      {7, "congruent contact number bound", 0.0, congruent_contact},
      {8, "avg kissing = 2 contact / n identity", 0.0, internal_identity},
      {9, "regular tetrahedron anchor", 0.0, tetra_anchor},
      {10, "Monte Carlo density cross-check", 60.0, monte_carlo},
      {11, "dual-method geometry agreement", 0.0, dual_geometry},
      {12, "scale and permutation invariance", 0.0, invariance},
      {13, "greedy packing witnesses below bounds", 0.0, witness_consistency},
      {14, "verify report determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      o.pass = false;
      o.detail += " [over time limit " + num(c.time_limit_s, 3) + " s]";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
