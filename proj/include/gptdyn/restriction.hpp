#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gptdyn/theory.hpp"

namespace gptdyn {

/// States certain to be found in one branch. The generators are normalised
/// minimal-rep states; their linear span (which includes every scaling down
/// to the zero state) is the set the branch-locality equalities act on.
struct ConditionalSet {
    size_t branch = 0;
    std::vector<StateVec> generators;
    /// Affine dimension of the normalised slice, in [0, M].
    size_t freedom = 0;
};

ConditionalSet conditional_state_set(const TheorySpec &t, size_t branch);

enum class RestrictionClass { FullyConditionallyRestricted, FullyIndependent, Partial };

std::string to_string(RestrictionClass c);

struct RestrictionReport {
    std::vector<size_t> per_branch_freedom;
    RestrictionClass cls = RestrictionClass::Partial;
    size_t N = 0;
    size_t M = 0;
    size_t d = 0;
};

/// All freedoms 0 -> fully conditionally restricted (checked first, so an
/// M = 0 theory lands here); all freedoms M -> fully independent; else partial.
RestrictionReport classify_restriction(const TheorySpec &t);

struct UncertaintyCheck {
    bool holds = true;
    std::optional<StateVec> witness;   // first violating branch-certain state
    std::string measurement;           // the measurement that was not uniform
};

/// Whenever Z is certain, every other measurement in `mub` must be uniformly
/// random. Checked on the generators of every conditional set.
UncertaintyCheck check_quantum_like_uncertainty(const TheorySpec &t,
                                                const std::vector<std::string> &mub);

}  // namespace gptdyn
