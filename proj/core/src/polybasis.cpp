#include "spherebounds/polybasis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spherebounds {
namespace {

constexpr double kDomainSlack = 1e-12;

void check_arguments(int k, double lambda, double t) {
  if (k < 0) throw std::domain_error("gegenbauer: negative degree " + std::to_string(k));
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("gegenbauer: lambda must be positive and finite");
  }
  if (!std::isfinite(t) || std::abs(t) > 1.0 + kDomainSlack) {
    throw std::domain_error("gegenbauer: t = " + std::to_string(t) + " outside [-1, 1]");
  }
}

double clamp_unit(double t) { return t > 1.0 ? 1.0 : (t < -1.0 ? -1.0 : t); }

}  // namespace

double gegenbauer_eval(int k, double lambda, double t) {
  check_arguments(k, lambda, t);
  t = clamp_unit(t);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * lambda * t;
  for (int n = 2; n <= k; ++n) {
    const double next = (2.0 * (n + lambda - 1.0) * t * curr - (n + 2.0 * lambda - 2.0) * prev) / n;
    prev = curr;
    curr = next;
  }
  return curr;
}

std::vector<double> gegenbauer_values(int degree, double lambda, double t) {
  check_arguments(degree, lambda, t);
  t = clamp_unit(t);
  std::vector<double> values(static_cast<std::size_t>(degree) + 1);
  values[0] = 1.0;
  if (degree >= 1) values[1] = 2.0 * lambda * t;
  for (int n = 2; n <= degree; ++n) {
    values[n] = (2.0 * (n + lambda - 1.0) * t * values[n - 1] - (n + 2.0 * lambda - 2.0) * values[n - 2]) / n;
  }
  return values;
}

double eval_series(std::span<const double> coeffs, double lambda, double t) {
  const int degree = coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1;
  check_arguments(degree, lambda, t);
  if (coeffs.empty()) return 0.0;
  t = clamp_unit(t);
  double prev = 1.0;
  double sum = coeffs[0];
  if (degree == 0) return sum;
  double curr = 2.0 * lambda * t;
  sum += coeffs[1] * curr;
  for (int n = 2; n <= degree; ++n) {
    const double next = (2.0 * (n + lambda - 1.0) * t * curr - (n + 2.0 * lambda - 2.0) * prev) / n;
    prev = curr;
    curr = next;
    sum += coeffs[n] * curr;
  }
  return sum;
}

double eval_series(const SeriesCoefficients& series, double lambda, double t) {
  return eval_series(std::span<const double>(series.coeffs), lambda, t);
}

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int points) {
  if (points < 2) throw std::invalid_argument("gauss_legendre: need at least 2 points");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[points];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(points));
  return *slot;
}

double weighted_mean(const std::function<double(double)>& g, double weight_exponent, int quadrature_points) {
  if (!(weight_exponent >= 0.0)) throw std::invalid_argument("weighted_mean: weight exponent must be >= 0");
  const GaussLegendreRule& rule = gauss_legendre(quadrature_points);
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const double w = rule.weights[q] * (weight_exponent == 0.0 ? 1.0 : std::pow(1.0 - t * t, weight_exponent));
    const double value = g(t);
    if (!std::isfinite(value)) throw std::domain_error("weighted_mean: integrand is not finite");
    numerator += w * value;
    denominator += w;
  }
  return numerator / denominator;
}

}  // namespace spherebounds
