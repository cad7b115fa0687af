#include "spherebounds/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spherebounds {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

namespace {

// Dense tableau. Row r holds B^{-1}A and B^{-1}b in the last column; the
// cost row holds reduced costs and -objective in the last column.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double cost(std::size_t c) const { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = cols_ + 1;
    double* prow = &data_[pr * width];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * width];
      const double factor = row[pc];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) row[c] -= factor * prow[c];
      row[pc] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseResult { Optimal, Unbounded, IterationLimit };

PhaseResult run_phase(Tableau& tab, std::vector<std::size_t>& basis, std::size_t allowed_cols,
                      const LpOptions& opt, std::size_t& iterations) {
  constexpr std::size_t kStallLimit = 50;
  std::size_t degenerate_streak = 0;
  while (true) {
    // Dantzig entering rule (lowest index among equal reduced costs); after
    // a run of degenerate pivots fall back to Bland's rule until progress.
    const bool bland = degenerate_streak >= kStallLimit;
    std::size_t entering = allowed_cols;
    double most_negative = -opt.optimality_tol;
    for (std::size_t c = 0; c < allowed_cols; ++c) {
      const double d = tab.cost(c);
      if (bland) {
        if (d < -opt.optimality_tol) {
          entering = c;
          break;
        }
      } else if (d < most_negative) {
        most_negative = d;
        entering = c;
      }
    }
    if (entering == allowed_cols) return PhaseResult::Optimal;
    if (iterations >= opt.max_iterations) return PhaseResult::IterationLimit;

    // Ratio test; near-ties prefer the larger pivot, then the lower basic index.
    std::size_t leaving = tab.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const double a = tab.at(r, entering);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(r), 0.0) / a;
      if (leaving == tab.rows()) {
        leaving = r;
        best_ratio = ratio;
        best_pivot = a;
        continue;
      }
      const double slack = 1e-12 * (1.0 + best_ratio);
      if (ratio < best_ratio - slack) {
        leaving = r;
        best_ratio = ratio;
        best_pivot = a;
      } else if (ratio <= best_ratio + slack) {
        const bool better = bland ? basis[r] < basis[leaving]
                                  : (a > best_pivot * (1.0 + 1e-12) ||
                                     (a >= best_pivot * (1.0 - 1e-12) && basis[r] < basis[leaving]));
        if (better) {
          leaving = r;
          best_ratio = std::min(best_ratio, ratio);
          best_pivot = a;
        }
      }
    }
    if (leaving == tab.rows()) return PhaseResult::Unbounded;
    degenerate_streak = best_ratio <= 1e-14 ? degenerate_streak + 1 : 0;
    tab.pivot(leaving, entering);
    basis[leaving] = entering;
    ++iterations;
  }
}

}  // namespace

LpSolution lp_solve(const LinearProgram& program, const LpOptions& options) {
  const std::size_t n = program.objective.size();
  const std::size_t m = program.constraints.size();
  for (const auto& row : program.constraints) {
    if (row.coeffs.size() != n) throw std::invalid_argument("lp_solve: constraint width does not match objective");
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("lp_solve: non-finite right-hand side");
    for (double a : row.coeffs) {
      if (!std::isfinite(a)) throw std::invalid_argument("lp_solve: non-finite coefficient");
    }
  }
  for (double c : program.objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("lp_solve: non-finite objective coefficient");
  }

  // Normalize to b >= 0, then lay out [x | slack/surplus | artificial].
  std::vector<Relation> relation(m);
  std::vector<bool> negated(m, false);
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Relation rel = program.constraints[i].relation;
    if (program.constraints[i].rhs < 0.0) {
      negated[i] = true;
      if (rel == Relation::LessEqual) rel = Relation::GreaterEqual;
      else if (rel == Relation::GreaterEqual) rel = Relation::LessEqual;
    }
    relation[i] = rel;
    if (rel != Relation::Equal) ++slack_count;
    if (rel != Relation::LessEqual) ++artificial_count;
  }

  const std::size_t slack_begin = n;
  const std::size_t artificial_begin = n + slack_count;
  const std::size_t cols = artificial_begin + artificial_count;
  Tableau tab(m, cols);
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> identity_col(m);

  std::size_t next_slack = slack_begin;
  std::size_t next_artificial = artificial_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = negated[i] ? -1.0 : 1.0;
    const auto& row = program.constraints[i];
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * row.coeffs[j];
    tab.rhs(i) = sign * row.rhs;
    switch (relation[i]) {
      case Relation::LessEqual:
        tab.at(i, next_slack) = 1.0;
        basis[i] = identity_col[i] = next_slack++;
        break;
      case Relation::GreaterEqual:
        tab.at(i, next_slack++) = -1.0;
        tab.at(i, next_artificial) = 1.0;
        basis[i] = identity_col[i] = next_artificial++;
        break;
      case Relation::Equal:
        tab.at(i, next_artificial) = 1.0;
        basis[i] = identity_col[i] = next_artificial++;
        break;
    }
  }

  LpSolution solution;
  std::size_t iterations = 0;

  if (artificial_count > 0) {
    // Phase I: minimize the sum of artificials.
    for (std::size_t c = 0; c <= cols; ++c) tab.cost(c) = 0.0;
    for (std::size_t c = artificial_begin; c < cols; ++c) tab.cost(c) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < artificial_begin) continue;
      for (std::size_t c = 0; c <= cols; ++c) tab.cost(c) -= tab.at(i, c);
    }
    const PhaseResult phase1 = run_phase(tab, basis, cols, options, iterations);
    if (phase1 == PhaseResult::IterationLimit) {
      solution.status = LpStatus::IterationLimit;
      solution.iterations = iterations;
      return solution;
    }
    double scale = 1.0;
    for (const auto& row : program.constraints) scale = std::max(scale, std::abs(row.rhs));
    if (-tab.rhs(m) > options.feasibility_tol * scale) {
      solution.status = LpStatus::Infeasible;
      solution.iterations = iterations;
      return solution;
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // with no usable pivot are redundant and keep their artificial at zero.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < artificial_begin) continue;
      for (std::size_t c = 0; c < artificial_begin; ++c) {
        if (std::abs(tab.at(i, c)) > options.pivot_tol) {
          tab.pivot(i, c);
          basis[i] = c;
          ++iterations;
          break;
        }
      }
    }
  }

  // Phase II with the true objective; artificials may not re-enter.
  for (std::size_t c = 0; c <= cols; ++c) tab.cost(c) = c < n ? program.objective[c] : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = basis[i];
    const double cb = b < n ? program.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) tab.cost(c) -= cb * tab.at(i, c);
  }
  const PhaseResult phase2 = run_phase(tab, basis, artificial_begin, options, iterations);
  solution.iterations = iterations;
  if (phase2 == PhaseResult::IterationLimit) {
    solution.status = LpStatus::IterationLimit;
    return solution;
  }
  if (phase2 == PhaseResult::Unbounded) {
    solution.status = LpStatus::Unbounded;
    return solution;
  }

  solution.status = LpStatus::Optimal;
  solution.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) solution.x[basis[i]] = std::max(tab.rhs(i), 0.0);
  }
  solution.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) solution.objective += program.objective[j] * solution.x[j];
  solution.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double y = -tab.cost(identity_col[i]);
    solution.duals[i] = negated[i] ? -y : y;
  }
  return solution;
}

}  // namespace spherebounds
