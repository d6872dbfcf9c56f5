#pragma once

#include "gptdyn/matrix.hpp"

namespace gptdyn {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Sense { Min, Max };

/// Rows of `a` paired with right-hand sides `b`. A default-constructed
/// system means "no constraints of this kind".
struct LinearSystem {
    RMat a;
    RVec b;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat optimum;   // meaningful when Optimal
    RVec witness;  // meaningful when Optimal
};

/// Exact two-phase simplex over free variables x:
///   optimize objective . x  s.t.  eq.a x = eq.b,  ineq.a x <= ineq.b.
/// Bland's rule throughout, so it always terminates.
LpResult lp_optimize(const RVec &objective, const LinearSystem &eq, const LinearSystem &ineq,
                     Sense sense);

/// Feasible point of the system, or an empty vector when infeasible.
RVec lp_feasible_point(size_t nvars, const LinearSystem &eq, const LinearSystem &ineq);

}  // namespace gptdyn
