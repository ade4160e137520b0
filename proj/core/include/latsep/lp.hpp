#pragma once

#include <vector>

#include "latsep/linalg.hpp"
#include "latsep/rational.hpp"

namespace latsep {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  RatVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// maximize objective . x  subject to the constraints; variables are
/// nonnegative unless listed in free_variables.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> constraints;
  RatVector objective;  // empty means pure feasibility
  std::vector<std::size_t> free_variables;

  void add(RatVector coeffs, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVector x;
  Rational value;
};

/// Dense two-phase simplex with Bland's anti-cycling rule. Rows are scaled to
/// integers and pivoted fraction-free in 64-bit storage; if any value leaves
/// 64 bits the problem is re-solved over exact rationals.
LpResult solve(const LinearProgram& program);

/// The rational tableau alone; same pivots, same result.
LpResult solve_rational(const LinearProgram& program);

/// Solves `base` plus every row of `lazy`, adding lazy rows only as the
/// current optimum violates them (at most `batch` most violated per round).
/// The relaxation without lazy rows must be bounded.
LpResult solve_with_row_generation(const LinearProgram& base,
                                   const std::vector<LinearConstraint>& lazy,
                                   std::size_t batch = 8);

}  // namespace latsep
