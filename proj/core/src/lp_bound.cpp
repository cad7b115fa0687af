#include "spherebounds/lp_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spherebounds/lp_solver.hpp"

namespace spherebounds {

ThetaCodeAngle::ThetaCodeAngle(double radians) : radians_(radians) {
  if (!std::isfinite(radians) || !(radians > 0.0) || radians > std::numbers::pi + 1e-15) {
    throw std::invalid_argument("theta must lie in (0, pi], got " + std::to_string(radians));
  }
  radians_ = std::min(radians, std::numbers::pi);
}

void LPConfig::validate() const {
  if (degree < 1) throw std::invalid_argument("LPConfig: degree must be >= 1");
  if (constraint_grid < 16) throw std::invalid_argument("LPConfig: constraint_grid must be >= 16");
  if (verify_grid < 10 * constraint_grid) {
    throw std::invalid_argument("LPConfig: verify_grid must be >= 10 * constraint_grid");
  }
  if (!(feasibility_tol > 0.0)) throw std::invalid_argument("LPConfig: feasibility_tol must be positive");
  if (refine_rounds < 0) throw std::invalid_argument("LPConfig: refine_rounds must be >= 0");
  if (!(repair_limit >= 0.0) || repair_limit >= 0.5) {
    throw std::invalid_argument("LPConfig: repair_limit must lie in [0, 0.5)");
  }
}

std::string_view to_string(LpBoundStatus status) {
  switch (status) {
    case LpBoundStatus::Certified: return "Certified";
    case LpBoundStatus::Infeasible: return "Infeasible";
    case LpBoundStatus::NotConverged: return "NotConverged";
  }
  return "Unknown";
}

std::vector<double> chebyshev_lobatto(double lo, double hi, int points) {
  if (!(hi > lo) || points < 2) return {lo};
  std::vector<double> t(static_cast<std::size_t>(points));
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int m = 0; m < points; ++m) {
    t[m] = mid - half * std::cos(std::numbers::pi * m / (points - 1));
  }
  t.front() = lo;
  t.back() = hi;
  return t;
}

namespace {

double interval_top(double theta) {
  if (theta >= std::numbers::pi) return -1.0;
  return std::max(-1.0, std::cos(theta));
}

struct DiscreteSolve {
  bool feasible = false;
  std::vector<double> coeffs;  // c_0 = 1
  double value = 0.0;
};

// Dual of  min sum_{k>=1} c_k  s.t.  sum_k c_k P_k(t_m) <= -1, c >= 0:
//   max sum_m y_m  s.t.  sum_m -P_k(t_m) y_m <= 1 (k = 1..d), y >= 0.
// The primal c_k are the shadow prices of the dual rows.
DiscreteSolve solve_discrete(const std::vector<double>& points, int degree) {
  const std::size_t count = points.size();
  LinearProgram lp;
  lp.objective.assign(count, -1.0);
  lp.constraints.resize(static_cast<std::size_t>(degree));
  for (auto& row : lp.constraints) {
    row.coeffs.resize(count);
    row.relation = Relation::LessEqual;
    row.rhs = 1.0;
  }
  for (std::size_t m = 0; m < count; ++m) {
    const std::vector<double> p = gegenbauer_values(degree, kSphereLambda, points[m]);
    for (int k = 1; k <= degree; ++k) lp.constraints[k - 1].coeffs[m] = -p[k];
  }
  const LpSolution sol = lp_solve(lp);
  DiscreteSolve out;
  if (sol.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  out.coeffs[0] = 1.0;
  for (int k = 1; k <= degree; ++k) out.coeffs[k] = std::max(0.0, -sol.duals[k - 1]);
  out.value = 1.0 - sol.objective;
  return out;
}

struct ViolationScan {
  double max_value = -std::numeric_limits<double>::infinity();
  std::vector<double> positive_maxima;  // locations with g > 0
};

double golden_max(const std::vector<double>& coeffs, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval_series(coeffs, kSphereLambda, c);
  double fd = eval_series(coeffs, kSphereLambda, d);
  for (int iter = 0; iter < 80 && (b - a) > 1e-15; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval_series(coeffs, kSphereLambda, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval_series(coeffs, kSphereLambda, d);
    }
  }
  return fc > fd ? c : d;
}

// Local maxima of g on a fine grid, interior ones polished by golden-section
// search between the neighbouring grid points.
ViolationScan scan_violations(const std::vector<double>& coeffs, double top, int grid) {
  ViolationScan scan;
  const std::vector<double> t = chebyshev_lobatto(-1.0, top, grid);
  std::vector<double> g(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) g[i] = eval_series(coeffs, kSphereLambda, t[i]);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const bool left_ok = i == 0 || g[i] >= g[i - 1];
    const bool right_ok = i + 1 == t.size() || g[i] >= g[i + 1];
    if (!left_ok || !right_ok) {
      scan.max_value = std::max(scan.max_value, g[i]);
      continue;
    }
    double where = t[i];
    double value = g[i];
    if (i > 0 && i + 1 < t.size()) {
      const double polished = golden_max(coeffs, t[i - 1], t[i + 1]);
      const double pv = eval_series(coeffs, kSphereLambda, polished);
      if (pv > value) {
        where = polished;
        value = pv;
      }
    }
    scan.max_value = std::max(scan.max_value, value);
    if (value > 0.0) scan.positive_maxima.push_back(where);
  }
  return scan;
}

}  // namespace

LPBoundResult lp_upper_bound(ThetaCodeAngle theta, const LPConfig& config) {
  config.validate();
  LPBoundResult result;
  result.theta = theta.radians();
  result.config = config;
  result.certificate.theta = theta.radians();

  const double top = interval_top(theta.radians());
  std::vector<double> points = chebyshev_lobatto(-1.0, top, config.constraint_grid);

  DiscreteSolve solve;
  ViolationScan scan;
  int round = 0;
  for (;; ++round) {
    solve = solve_discrete(points, config.degree);
    if (!solve.feasible) {
      result.status = LpBoundStatus::Infeasible;
      result.bound = std::numeric_limits<double>::infinity();
      result.constraint_points = points.size();
      result.refine_rounds_used = round;
      return result;
    }
    scan = scan_violations(solve.coeffs, top, config.verify_grid);
    if (scan.max_value <= config.feasibility_tol || round >= config.refine_rounds) break;
    for (double t : scan.positive_maxima) points.push_back(t);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
  result.refine_rounds_used = round;
  result.constraint_points = points.size();
  result.discrete_value = solve.value;

  const double residual = std::max(0.0, scan.max_value);
  if (residual > config.feasibility_tol && residual > config.repair_limit) {
    result.status = LpBoundStatus::NotConverged;
    result.certificate.coeffs = SeriesCoefficients(solve.coeffs);
    result.certificate.max_violation = residual;
    result.bound = eval_series(solve.coeffs, kSphereLambda, 1.0);
    return result;
  }

  // g <= residual on [-1, cos theta], so (g - residual) / (1 - residual) is
  // a valid certificate with c_0 = 1.
  std::vector<double> coeffs = solve.coeffs;
  if (residual > 0.0) {
    const double scale = 1.0 / (1.0 - residual);
    coeffs[0] = 1.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) coeffs[k] *= scale;
    result.repair_shift = residual;
  }
  result.certificate.coeffs = SeriesCoefficients(coeffs);
  result.bound = eval_series(coeffs, kSphereLambda, 1.0);
  const CertificateCheck check = verify_certificate(result.certificate, config.verify_grid);
  result.certificate.max_violation = check.max_violation;
  result.status = check.max_violation <= config.feasibility_tol ? LpBoundStatus::Certified
                                                                 : LpBoundStatus::NotConverged;
  return result;
}

CertificateCheck verify_certificate(const Certificate& cert, int fine_grid) {
  CertificateCheck check;
  const auto& c = cert.coeffs.coeffs;
  check.min_coeff = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < c.size(); ++k) check.min_coeff = std::min(check.min_coeff, c[k]);

  const double hi = cert.theta >= std::numbers::pi ? -1.0 : std::max(-1.0, std::cos(cert.theta));
  double worst = std::max(eval_series(c, kSphereLambda, -1.0), eval_series(c, kSphereLambda, hi));
  if (hi > -1.0 && fine_grid >= 2) {
    const double mid = 0.5 * (hi - 1.0);
    const double half = 0.5 * (hi + 1.0);
    for (int m = 0; m < fine_grid; ++m) {
      const double t = mid + half * std::cos(std::numbers::pi * (m + 0.5) / fine_grid);
      worst = std::max(worst, eval_series(c, kSphereLambda, t));
    }
  }
  check.max_violation = worst;
  return check;
}

}  // namespace spherebounds
