#include "spherebounds_cli/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace spherebounds::cli {
namespace {

// JSON has no infinity; an infeasible LP bound is written as null.
Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double real_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

LpBoundStatus status_from(const std::string& s) {
  if (s == "Certified") return LpBoundStatus::Certified;
  if (s == "Infeasible") return LpBoundStatus::Infeasible;
  if (s == "NotConverged") return LpBoundStatus::NotConverged;
  throw std::invalid_argument("unknown LP status '" + s + "'");
}

Json vec(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json radii_json(const RadiiQuadruple& q) { return Json::array({q[0], q[1], q[2], q[3]}); }

}  // namespace

Json to_json(const LPConfig& c) {
  return Json{{"degree", c.degree},
              {"grid", c.constraint_grid},
              {"verify_grid", c.verify_grid},
              {"tol", c.feasibility_tol},
              {"refine_rounds", c.refine_rounds},
              {"repair_limit", c.repair_limit}};
}

LPConfig lp_config_from_json(const Json& j) {
  LPConfig c;
  c.degree = j.at("degree").get<int>();
  c.constraint_grid = j.at("grid").get<int>();
  c.verify_grid = j.at("verify_grid").get<int>();
  c.feasibility_tol = j.at("tol").get<double>();
  c.refine_rounds = j.at("refine_rounds").get<int>();
  c.repair_limit = j.at("repair_limit").get<double>();
  return c;
}

Json to_json(const LPBoundResult& r) {
  return Json{{"theta", r.theta},
              {"bound", real(r.bound)},
              {"status", std::string(to_string(r.status))},
              {"certificate",
               {{"coeffs", r.certificate.coeffs.coeffs},
                {"theta", r.certificate.theta},
                {"max_violation", r.certificate.max_violation}}},
              {"refine_rounds_used", r.refine_rounds_used},
              {"constraint_points", r.constraint_points},
              {"repair_shift", r.repair_shift},
              {"discrete_value", r.discrete_value},
              {"lp_config", to_json(r.config)}};
}

LPBoundResult lp_result_from_json(const Json& j) {
  LPBoundResult r;
  r.theta = j.at("theta").get<double>();
  r.bound = real_from(j.at("bound"));
  r.status = status_from(j.at("status").get<std::string>());
  const Json& cert = j.at("certificate");
  r.certificate.coeffs = SeriesCoefficients(cert.at("coeffs").get<std::vector<double>>());
  r.certificate.theta = cert.at("theta").get<double>();
  r.certificate.max_violation = cert.at("max_violation").get<double>();
  r.refine_rounds_used = j.at("refine_rounds_used").get<int>();
  r.constraint_points = j.at("constraint_points").get<std::size_t>();
  r.repair_shift = j.at("repair_shift").get<double>();
  r.discrete_value = j.at("discrete_value").get<double>();
  r.config = lp_config_from_json(j.at("lp_config"));
  return r;
}

Json to_json(const BoundReport& b) {
  Json pairs = Json::array();
  for (const auto& p : b.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"theta_ij", p.theta_ij},
                     {"theta_ji", p.theta_ji},
                     {"lp_ij", real(p.lp_ij)},
                     {"lp_ji", real(p.lp_ji)},
                     {"degree_ij", p.degree_ij},
                     {"degree_ji", p.degree_ji},
                     {"tau_ij", p.tau_ij},
                     {"tau_ji", p.tau_ji},
                     {"edge_bound", p.edge_bound}});
  }
  return Json{{"avg_kissing_bound", b.avg_kissing_bound},
              {"contact_bound", b.contact_bound},
              {"strict_upper_bound", b.strict},
              {"total_count", b.total_count},
              {"kappa", b.kappa},
              {"same_species_bounds", b.same_species_bounds},
              {"cross_sum", b.cross_sum},
              {"pairs", pairs},
              {"lp_config", to_json(b.lp_config)},
              {"kuperberg_schramm", {{"lower", b.ks_lower}, {"upper", b.ks_upper}}}};
}

BoundReport bound_report_from_json(const Json& j) {
  BoundReport b;
  b.avg_kissing_bound = j.at("avg_kissing_bound").get<double>();
  b.contact_bound = j.at("contact_bound").get<double>();
  b.strict = j.at("strict_upper_bound").get<bool>();
  b.total_count = j.at("total_count").get<long long>();
  b.kappa = j.at("kappa").get<double>();
  b.same_species_bounds = j.at("same_species_bounds").get<std::vector<double>>();
  b.cross_sum = j.at("cross_sum").get<double>();
  for (const auto& p : j.at("pairs")) {
    PairBoundDetail d;
    d.i = p.at("i").get<std::size_t>();
    d.j = p.at("j").get<std::size_t>();
    d.theta_ij = p.at("theta_ij").get<double>();
    d.theta_ji = p.at("theta_ji").get<double>();
    d.lp_ij = real_from(p.at("lp_ij"));
    d.lp_ji = real_from(p.at("lp_ji"));
    d.degree_ij = p.at("degree_ij").get<int>();
    d.degree_ji = p.at("degree_ji").get<int>();
    d.tau_ij = p.at("tau_ij").get<double>();
    d.tau_ji = p.at("tau_ji").get<double>();
    d.edge_bound = p.at("edge_bound").get<double>();
    b.pairs.push_back(d);
  }
  b.lp_config = lp_config_from_json(j.at("lp_config"));
  b.ks_lower = j.at("kuperberg_schramm").at("lower").get<double>();
  b.ks_upper = j.at("kuperberg_schramm").at("upper").get<double>();
  return b;
}

Json to_json(const DensityBoundResult& r) {
  Json quads = Json::array();
  for (const auto& q : r.evaluated) {
    quads.push_back({{"radii", radii_json(q.radii)},
                     {"degenerate", q.degenerate},
                     {"simplicial_density", q.simplicial},
                     {"delta_max", q.delta_max},
                     {"value", q.value}});
  }
  return Json{{"density_bound", r.bound},
              {"strict_upper_bound", true},
              {"argmax", radii_json(r.argmax)},
              {"quadruples", r.quadruples},
              {"skipped_degenerate", r.skipped},
              {"evaluated", quads}};
}

Json to_json(const TetraReport& t) {
  Json vertices = Json::array();
  for (const auto& v : t.tet.vertices) vertices.push_back(vec(v));
  Json normals = Json::object();
  const char* names[] = {"U_ijk", "U_ikl", "U_ijl", "U_jkl"};
  for (std::size_t f = 0; f < 4; ++f) {
    normals[names[f]] = {{"outward", vec(t.normals.normals[f])}, {"flipped", t.normals.flipped[f]}};
  }
  const auto& d = t.dihedrals;
  return Json{{"radii", radii_json(t.tet.radii)},
              {"vertices", vertices},
              {"tangency_residual", t.tet.tangency_residual()},
              {"face_normals", normals},
              {"dihedral_angles",
               {{"ij", d.ij}, {"ik", d.ik}, {"il", d.il}, {"jk", d.jk}, {"jl", d.jl}, {"kl", d.kl}}},
              {"solid_angles", t.solid.omega},
              {"wedge_volumes", t.wedge_volumes},
              {"volume", t.volume},
              {"simplicial_density", t.density},
              {"wedges_are_sectors", t.sectors}};
}

}  // namespace spherebounds::cli
