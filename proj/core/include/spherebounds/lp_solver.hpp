#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace spherebounds {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// minimize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status);

struct LpOptions {
  double pivot_tol = 1e-11;
  double optimality_tol = 1e-11;
  double feasibility_tol = 1e-9;
  std::size_t max_iterations = 100000;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// Shadow prices d(objective)/d(rhs_i) for each input constraint.
  std::vector<double> duals;
  std::size_t iterations = 0;
};

/// Two-phase dense tableau simplex.
///
/// Entering column: most negative reduced cost, lowest index among equals.
/// Ratio-test ties leave on the larger pivot, then the lowest-index basic
/// variable. After 50 consecutive degenerate pivots the solver switches to
/// Bland's rule (lowest-index entering column) until it makes progress.
/// No randomness: identical inputs give identical results.
LpSolution lp_solve(const LinearProgram& program, const LpOptions& options = {});

}  // namespace spherebounds
