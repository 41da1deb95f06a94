#pragma once

#include <optional>

#include "ldpput/linalg.hpp"
#include "ldpput/rational.hpp"

namespace ldpput {

/** minimize objectiveᵀx subject to constraints·x = rhs, x ≥ 0. */
struct LinearProgram
{
    RationalMatrix constraints;
    RationalVector rhs;
    RationalVector objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution
{
    LpStatus status = LpStatus::Infeasible;
    RationalVector x;
    Rational value;
};

/**
 * Exact two-phase tableau simplex with Bland's rule. The returned x is a
 * basic solution; `value` is objectiveᵀx evaluated exactly.
 */
LpSolution solve_lp(const LinearProgram& lp);

/** Phase 1 only: a basic feasible point of {x ≥ 0 : A x = b}, if one exists. */
std::optional<RationalVector> find_feasible_point(const RationalMatrix& a, const RationalVector& b);

} // namespace ldpput
