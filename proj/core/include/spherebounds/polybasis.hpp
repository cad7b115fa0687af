#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace spherebounds {

/// Basis parameter for S^2 in R^3: lambda = (n - 2) / 2 with n = 3.
inline constexpr double kSphereLambda = 0.5;

/// Coefficients c_0..c_d of a finite Gegenbauer series.
struct SeriesCoefficients {
  std::vector<double> coeffs;

  SeriesCoefficients() = default;
  explicit SeriesCoefficients(std::vector<double> c) : coeffs(std::move(c)) {}

  [[nodiscard]] std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  [[nodiscard]] bool empty() const { return coeffs.empty(); }
  double operator[](std::size_t k) const { return coeffs[k]; }
  double& operator[](std::size_t k) { return coeffs[k]; }
};

/// C_k^lambda(t) by the three-term recurrence. Throws std::domain_error for
/// t outside [-1, 1] (beyond 1e-12), lambda <= 0 or k < 0.
double gegenbauer_eval(int k, double lambda, double t);

/// All values C_0^lambda(t) .. C_degree^lambda(t) in one recurrence pass.
std::vector<double> gegenbauer_values(int degree, double lambda, double t);

/// sum_k c_k C_k^lambda(t), accumulated alongside the forward recurrence.
double eval_series(const SeriesCoefficients& series, double lambda, double t);
double eval_series(std::span<const double> coeffs, double lambda, double t);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes from Newton iteration on P_n, refined to machine precision.
/// Cached per order; the returned reference stays valid for the program's life.
const GaussLegendreRule& gauss_legendre(int points);

inline constexpr int kDefaultQuadraturePoints = 64;

/// Weighted average  int g(t)(1-t^2)^w dt / int (1-t^2)^w dt  over [-1, 1].
///
/// w = 0 is the orthogonality weight of the Legendre basis, for which the
/// mean of a series equals c_0. w = 1 is the weight (1-t^2) also offered
/// for comparison; the two disagree in general.
double weighted_mean(const std::function<double(double)>& g, double weight_exponent = 0.0,
                     int quadrature_points = kDefaultQuadraturePoints);

}  // namespace spherebounds
