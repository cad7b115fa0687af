#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "spherebounds/lp_bound.hpp"

namespace spherebounds {

/// Constant in the congruent contact bound 6n - kappa n^{2/3}; the average
/// kissing bound uses 2 * kappa = 1.85335.
inline constexpr double kDefaultKappa = 0.926675;

/// Reference interval for the supremal average kissing number in R^3.
inline constexpr double kKuperbergSchrammLower = 12.566;
inline constexpr double kKuperbergSchrammUpper = 14.928203230275509;  // 8 + 4 sqrt(3)

struct Species {
  double radius = 1.0;
  long long count = 1;
};

struct PackingSpec {
  std::vector<Species> species;
  double kappa = kDefaultKappa;

  /// Throws std::invalid_argument: empty, nonpositive radius, count < 1,
  /// repeated radius, or non-finite kappa.
  void validate() const;
  [[nodiscard]] long long total_count() const;
};

/// Angle subtended at a radius-r_center sphere's center by two tangent
/// radius-r_outer spheres that both touch it:
///   arccos(1 - 2 r_outer^2 / (r_center + r_outer)^2).
/// Computed from the ratio r_outer / r_center. Throws std::domain_error on
/// nonpositive or non-finite radii.
double contact_angle(double r_center, double r_outer);

/// Degree ceiling for escalation when the configured degree is infeasible.
inline constexpr int kDefaultMaxDegree = 64;

/// lp_upper_bound at theta, retried with more refine rounds (up to 24) while
/// NotConverged, and with the degree raised by 8 while the truncated LP is
/// Infeasible and the degree stays <= max_degree. Small contact angles
/// (radius ratios near 0.1) need degree 28 or more. The last attempt is
/// returned whatever its status.
LPBoundResult certified_lp_bound(double theta, const LPConfig& config, int max_degree = kDefaultMaxDegree);

/// floor(A^LP(3, contact_angle) + 1e-9), with degree escalation as in
/// certified_lp_bound.
double tau_upper(double r_center, double r_outer, const LPConfig& config = {});

/// min{ n_i min{n_j, tau_ij}, n_j min{n_i, tau_ji} }.
double pair_edge_bound(const Species& si, const Species& sj, double tau_ij, double tau_ji);

/// 6 n - kappa n^{2/3}, the congruent-species edge bound.
double same_species_edge_bound(long long count, double kappa);

struct PairBoundDetail {
  std::size_t i = 0;
  std::size_t j = 0;
  double theta_ij = 0.0;  ///< contact_angle(r_i, r_j)
  double theta_ji = 0.0;  ///< contact_angle(r_j, r_i)
  double lp_ij = 0.0;     ///< unfloored LP value at theta_ij
  double lp_ji = 0.0;
  int degree_ij = 0;      ///< LP degree that produced lp_ij
  int degree_ji = 0;
  double tau_ij = 0.0;    ///< max radius-r_j spheres on a radius-r_i sphere
  double tau_ji = 0.0;
  double edge_bound = 0.0;
};

struct BoundReport {
  double avg_kissing_bound = 0.0;
  double contact_bound = 0.0;
  /// Both values are open ("<") upper bounds.
  bool strict = true;
  long long total_count = 0;
  double kappa = kDefaultKappa;
  /// One entry per unordered pair i < j; each counts twice in the ordered sum.
  std::vector<PairBoundDetail> pairs;
  std::vector<double> same_species_bounds;
  double cross_sum = 0.0;  ///< sum over ordered pairs i != j of edge_bound
  LPConfig lp_config;
  double ks_lower = kKuperbergSchrammLower;
  double ks_upper = kKuperbergSchrammUpper;
};

/// Memoizes LP bounds by the bit pattern of the contact angle. Safe for
/// concurrent use; equal angles always return the first stored result.
class TauCache {
 public:
  explicit TauCache(LPConfig config = {}, int max_degree = kDefaultMaxDegree)
      : config_(config), max_degree_(max_degree) {}

  /// Returns the LP result at contact_angle(r_center, r_outer); throws like
  /// tau_upper when not Certified.
  LPBoundResult lp_for(double r_center, double r_outer);
  double tau(double r_center, double r_outer);

  [[nodiscard]] const LPConfig& config() const { return config_; }
  [[nodiscard]] std::size_t size() const;

 private:
  LPConfig config_;
  int max_degree_;
  mutable std::mutex mutex_;
  std::map<double, std::shared_ptr<const LPBoundResult>> cache_;
};

struct BoundOptions {
  unsigned threads = 1;
  /// Optional shared cache; when null a private one is used per call.
  TauCache* cache = nullptr;
};

/// Computes both bounds together; avg_kissing_bound and contact_bound share
/// the same edge-count bounds.
BoundReport compute_bounds(const PackingSpec& spec, const LPConfig& config = {},
                           const BoundOptions& options = {});

/// 12 + (sum_{i != j} E_ij - 2 kappa sum_i n_i^{2/3}) / sum_i n_i.
BoundReport avg_kissing_bound(const PackingSpec& spec, const LPConfig& config = {},
                              const BoundOptions& options = {});

/// sum_i (6 n_i - kappa n_i^{2/3}) + (1/2) sum_{i != j} E_ij.
BoundReport contact_number_bound(const PackingSpec& spec, const LPConfig& config = {},
                                 const BoundOptions& options = {});

}  // namespace spherebounds
