#pragma once

#include <string_view>
#include <vector>

#include "spherebounds/polybasis.hpp"

namespace spherebounds {

/// Minimum angular separation theta in (0, pi] of a spherical code.
class ThetaCodeAngle {
 public:
  /// Throws std::invalid_argument unless 0 < radians <= pi (up to 1e-15).
  explicit ThetaCodeAngle(double radians);
  [[nodiscard]] double radians() const { return radians_; }

 private:
  double radians_;
};

struct LPConfig {
  int degree = 20;
  int constraint_grid = 256;
  int verify_grid = 4096;
  double feasibility_tol = 1e-9;
  int refine_rounds = 3;
  /// Largest residual violation the final c_0 shift may absorb. Beyond this
  /// the result is NotConverged.
  double repair_limit = 1e-4;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct Certificate {
  /// c_0 = 1 and c_k >= 0; g(t) = sum_k c_k P_k(t).
  SeriesCoefficients coeffs;
  double theta = 0.0;
  /// max g over [-1, cos theta] measured on the verify grid.
  double max_violation = 0.0;
};

enum class LpBoundStatus { Certified, Infeasible, NotConverged };

std::string_view to_string(LpBoundStatus status);

struct LPBoundResult {
  double theta = 0.0;
  /// g(1) / c_0, an upper bound on A(3, theta) when Certified.
  double bound = 0.0;
  Certificate certificate;
  LpBoundStatus status = LpBoundStatus::NotConverged;
  int refine_rounds_used = 0;
  std::size_t constraint_points = 0;
  /// Residual max(g) on [-1, cos theta] absorbed into c_0 before rescaling.
  double repair_shift = 0.0;
  /// Objective of the last discretized LP (a lower estimate of the bound).
  double discrete_value = 0.0;
  LPConfig config;
};

/// Delsarte LP bound on spherical theta-codes in S^2 with Legendre series of
/// degree config.degree.
///
/// Fixing c_0 = 1, minimizes g(1) = sum c_k subject to c_k >= 0 and
/// g(t_m) <= 0 on a Chebyshev-Lobatto grid of [-1, cos theta]. The solution
/// is checked on a finer grid with local maxima polished; violating maxima
/// are added as constraints and the LP is re-solved. A residual violation
/// v <= repair_limit is absorbed exactly by g -> (g - v) / (1 - v), which
/// keeps every coefficient of index >= 1 nonnegative.
LPBoundResult lp_upper_bound(ThetaCodeAngle theta, const LPConfig& config = {});

struct CertificateCheck {
  double max_violation = 0.0;
  /// min c_k over k >= 1 (+inf for a constant certificate).
  double min_coeff = 0.0;
};

/// Independent re-evaluation of a certificate: max of g over fine_grid
/// Chebyshev points of [-1, cos theta] and both endpoints, plus the smallest
/// coefficient of index >= 1.
CertificateCheck verify_certificate(const Certificate& cert, int fine_grid);

/// Chebyshev-Lobatto points of [lo, hi], ascending, endpoints included.
std::vector<double> chebyshev_lobatto(double lo, double hi, int points);

}  // namespace spherebounds
