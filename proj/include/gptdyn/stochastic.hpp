#pragma once

#include "gptdyn/matrix.hpp"

namespace gptdyn {

/// True when S is square, non-negative and every column sums to one.
bool is_column_stochastic(const RMat &s);

/// A probability vector v with S v = v. Found as a non-negative, normalised
/// element of the nullspace of S - I (exact elimination, then an LP
/// feasibility solve over the nullspace coordinates). Any fixed point is
/// returned when there are several.
RVec stochastic_fixed_point(const RMat &s);

}  // namespace gptdyn
