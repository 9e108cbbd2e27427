#pragma once

#include <optional>
#include <vector>

#include "d2lab/scalar.hpp"

namespace d2lab {

enum class LpStatus { optimal, infeasible, unbounded };
enum class RowSense { le, eq, ge };
enum class OptDir { maximize, minimize };

struct VarBound {
  std::optional<Scalar> lower;
  std::optional<Scalar> upper;

  static VarBound free() { return {}; }
  static VarBound nonneg() { return {Scalar(0), std::nullopt}; }
  static VarBound box(const Scalar& lo, const Scalar& hi) { return {lo, hi}; }
};

struct LpProblem {
  OptDir dir = OptDir::maximize;
  std::vector<Scalar> objective;               // length n
  std::vector<std::vector<Scalar>> rows;       // m rows of length n
  std::vector<RowSense> senses;                // length m
  std::vector<Scalar> rhs;                     // length m
  std::vector<VarBound> bounds;                // length n; empty means all free

  size_t num_vars() const { return objective.size(); }
  size_t num_rows() const { return rows.size(); }
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Scalar objective_value;            // meaningful iff status == optimal
  std::vector<Scalar> solution;      // meaningful iff status == optimal
};

// Throws std::invalid_argument on dimension mismatches.
void validate_lp(const LpProblem& problem);

// Exact primal simplex. Dantzig entering rule with a lexicographic ratio
// test keyed on (rhs, initial basis columns), so no cycle is possible.
LpResult solve_lp(const LpProblem& problem);

// Exact recheck: does x satisfy every row and bound of the problem?
bool lp_solution_feasible(const LpProblem& problem, const std::vector<Scalar>& x);

}  // namespace d2lab
