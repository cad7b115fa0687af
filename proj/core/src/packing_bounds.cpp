#include "spherebounds/packing_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spherebounds/errors.hpp"
#include "spherebounds/parallel.hpp"

namespace spherebounds {

void PackingSpec::validate() const {
  if (species.empty()) throw std::invalid_argument("packing spec: no species");
  if (!std::isfinite(kappa)) throw std::invalid_argument("packing spec: kappa must be finite");
  std::set<double> seen;
  for (std::size_t i = 0; i < species.size(); ++i) {
    const Species& s = species[i];
    if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
      throw std::invalid_argument("packing spec: species " + std::to_string(i) + " has nonpositive radius");
    }
    if (s.count < 1) throw std::invalid_argument("packing spec: species " + std::to_string(i) + " has count < 1");
    if (!seen.insert(s.radius).second) {
      std::ostringstream msg;
      msg << "packing spec: radius " << s.radius << " appears more than once";
      throw std::invalid_argument(msg.str());
    }
  }
}

long long PackingSpec::total_count() const {
  long long n = 0;
  for (const auto& s : species) n += s.count;
  return n;
}

double contact_angle(double r_center, double r_outer) {
  if (!(r_center > 0.0) || !(r_outer > 0.0) || !std::isfinite(r_center) || !std::isfinite(r_outer)) {
    throw std::domain_error("contact_angle: radii must be positive and finite");
  }
  const double q = r_outer / (r_center + r_outer);
  return std::acos(std::clamp(1.0 - 2.0 * q * q, -1.0, 1.0));
}

namespace {

double floor_lp(double bound) { return std::floor(bound + 1e-9); }

void require_certified(const LPBoundResult& r) {
  if (r.status == LpBoundStatus::Certified) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "LP bound at theta = " << r.theta << " is " << to_string(r.status);
  if (r.status == LpBoundStatus::Infeasible) throw LpInfeasible(msg.str());
  throw LpNotConverged(msg.str());
}

}  // namespace

// The cutting-plane residual shrinks about 4x per round.
constexpr int kMaxRefineRounds = 24;

LPBoundResult certified_lp_bound(double theta, const LPConfig& config, int max_degree) {
  LPConfig attempt = config;
  LPBoundResult r = lp_upper_bound(ThetaCodeAngle(theta), attempt);
  for (;;) {
    if (r.status == LpBoundStatus::NotConverged && attempt.refine_rounds < kMaxRefineRounds) {
      attempt.refine_rounds = std::min(kMaxRefineRounds, 2 * attempt.refine_rounds + 2);
    } else if (r.status == LpBoundStatus::Infeasible && attempt.degree + 8 <= max_degree) {
      attempt.degree += 8;
    } else {
      return r;
    }
    r = lp_upper_bound(ThetaCodeAngle(theta), attempt);
  }
}

double tau_upper(double r_center, double r_outer, const LPConfig& config) {
  const LPBoundResult r = certified_lp_bound(contact_angle(r_center, r_outer), config);
  require_certified(r);
  return floor_lp(r.bound);
}

double pair_edge_bound(const Species& si, const Species& sj, double tau_ij, double tau_ji) {
  const double ni = static_cast<double>(si.count);
  const double nj = static_cast<double>(sj.count);
  return std::min(ni * std::min(nj, tau_ij), nj * std::min(ni, tau_ji));
}

double same_species_edge_bound(long long count, double kappa) {
  const double n = static_cast<double>(count);
  return 6.0 * n - kappa * std::cbrt(n * n);
}

LPBoundResult TauCache::lp_for(double r_center, double r_outer) {
  const double theta = contact_angle(r_center, r_outer);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(theta); it != cache_.end()) {
      require_certified(*it->second);
      return *it->second;
    }
  }
  auto computed = std::make_shared<const LPBoundResult>(certified_lp_bound(theta, config_, max_degree_));
  std::shared_ptr<const LPBoundResult> stored;
  {
    std::lock_guard lock(mutex_);
    stored = cache_.emplace(theta, std::move(computed)).first->second;
  }
  require_certified(*stored);
  return *stored;
}

double TauCache::tau(double r_center, double r_outer) { return floor_lp(lp_for(r_center, r_outer).bound); }

std::size_t TauCache::size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

BoundReport compute_bounds(const PackingSpec& spec, const LPConfig& config, const BoundOptions& options) {
  spec.validate();
  config.validate();
  TauCache local(config);
  TauCache& cache = options.cache != nullptr ? *options.cache : local;

  BoundReport report;
  report.kappa = spec.kappa;
  report.lp_config = cache.config();
  report.total_count = spec.total_count();

  const std::size_t k = spec.species.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) report.pairs.push_back({.i = i, .j = j});
  }

  // Two LP bounds per unordered pair; results land in fixed slots.
  std::vector<LPBoundResult> lp(2 * report.pairs.size());
  parallel_for(lp.size(), options.threads, [&](std::size_t t) {
    const PairBoundDetail& p = report.pairs[t / 2];
    const double ri = spec.species[p.i].radius;
    const double rj = spec.species[p.j].radius;
    lp[t] = (t % 2 == 0) ? cache.lp_for(ri, rj) : cache.lp_for(rj, ri);
  });

  report.cross_sum = 0.0;
  for (std::size_t p = 0; p < report.pairs.size(); ++p) {
    PairBoundDetail& d = report.pairs[p];
    const Species& si = spec.species[d.i];
    const Species& sj = spec.species[d.j];
    d.theta_ij = contact_angle(si.radius, sj.radius);
    d.theta_ji = contact_angle(sj.radius, si.radius);
    d.lp_ij = lp[2 * p].bound;
    d.lp_ji = lp[2 * p + 1].bound;
    d.degree_ij = lp[2 * p].config.degree;
    d.degree_ji = lp[2 * p + 1].config.degree;
    d.tau_ij = floor_lp(d.lp_ij);
    d.tau_ji = floor_lp(d.lp_ji);
    d.edge_bound = pair_edge_bound(si, sj, d.tau_ij, d.tau_ji);
    report.cross_sum += 2.0 * d.edge_bound;
  }

  double same_sum = 0.0;
  double power_sum = 0.0;
  for (const Species& s : spec.species) {
    report.same_species_bounds.push_back(same_species_edge_bound(s.count, spec.kappa));
    same_sum += report.same_species_bounds.back();
    const double n = static_cast<double>(s.count);
    power_sum += std::cbrt(n * n);
  }

  const double total = static_cast<double>(report.total_count);
  report.avg_kissing_bound = 12.0 + (report.cross_sum - 2.0 * spec.kappa * power_sum) / total;
  report.contact_bound = same_sum + 0.5 * report.cross_sum;
  return report;
}

BoundReport avg_kissing_bound(const PackingSpec& spec, const LPConfig& config, const BoundOptions& options) {
  return compute_bounds(spec, config, options);
}

BoundReport contact_number_bound(const PackingSpec& spec, const LPConfig& config, const BoundOptions& options) {
  return compute_bounds(spec, config, options);
}

}  // namespace spherebounds
