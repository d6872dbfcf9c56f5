#pragma once

#include <vector>

#include "gptdyn/matrix.hpp"

namespace gptdyn {

/// a . x <= b
struct Halfspace {
    RVec a;
    Rat b;
    friend bool operator==(const Halfspace &, const Halfspace &) = default;
};

/// Largest ambient dimension the brute-force enumerators accept.
inline constexpr size_t kMaxBruteForceDim = 6;

/// Irredundant H-representation of conv(vertices). Candidate hyperplanes pass
/// through affinely independent subsets of the vertices inside their affine
/// hull and are kept when every vertex lies on one side. When the hull is not
/// full-dimensional its defining equalities are emitted as opposing pairs.
/// Each halfspace is scaled to coprime integer coefficients.
std::vector<Halfspace> facet_enumeration(const std::vector<RVec> &vertices);

/// Vertices of the bounded polyhedron {x : a.x <= b for all halfspaces} in
/// dimension `dim`, found by intersecting every dim-subset of hyperplanes.
std::vector<RVec> vertex_enumeration(const std::vector<Halfspace> &halfspaces, size_t dim);

}  // namespace gptdyn
