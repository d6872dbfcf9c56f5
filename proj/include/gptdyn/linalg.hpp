#pragma once

#include <optional>
#include <vector>

#include "gptdyn/matrix.hpp"

namespace gptdyn {

struct LinearSolution {
    RVec particular;
    std::vector<RVec> nullspace_basis;
    size_t rank = 0;
};

/// Exact Gauss-Jordan elimination of A x = b. Free variables are set to zero
/// in the particular solution; the nullspace has one basis vector per free
/// column. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const RMat &a, const RVec &b);

/// Basis of {x : A x = 0}; empty iff A has full column rank.
std::vector<RVec> nullspace(const RMat &a);

size_t rank(const RMat &a);

/// Rank of a list of equal-length vectors (zero for an empty list).
size_t span_rank(const std::vector<RVec> &vectors);

/// Linearly independent subset of `vectors` with the same span, in input order.
std::vector<RVec> span_basis(const std::vector<RVec> &vectors);

/// Dimension of the affine hull: rank of the differences from the first point.
size_t affine_hull_dim(const std::vector<RVec> &points);

}  // namespace gptdyn
