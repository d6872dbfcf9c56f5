#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gptdyn/polytope.hpp"
#include "gptdyn/restriction.hpp"
#include "gptdyn/theory.hpp"

namespace gptdyn {

/// d x d matrix acting on minimal-representation states.
using Transformation = RMat;

/// Equalities a transformation acting on branch b' must satisfy.
///
/// Branch locality: every state certain to be in another branch b != b' is
/// a +1 eigenvector, T eta = eta. Because those conditional sets are closed
/// under scaling to n = 0, the constraint is linear on their span.
///
/// Z statistics and normalisation are unchanged for every state; valid
/// states span the whole space, so rows 0..N-1 of T (n and the leading Z
/// probabilities) equal the identity rows.
struct ConstraintSystem {
    size_t acting_branch = 0;
    size_t d = 0;
    std::vector<RVec> fixed_vectors;  // generators, all state-space members
    std::vector<RVec> fixed_basis;    // independent subset with the same span
    std::vector<size_t> z_rows;
    /// Equalities over vec(T) (row-major, d*d unknowns).
    RMat equality_matrix;
    RVec equality_rhs;
};

/// Throws DegenerateTheoryError when the valid states do not span d dimensions.
ConstraintSystem assemble_constraints(const TheorySpec &t, size_t acting_branch);

struct LinearStage {
    Transformation identity;
    std::vector<Transformation> free_directions;
    size_t dim() const { return free_directions.size(); }
};

LinearStage solve_linear_stage(const ConstraintSystem &cs);

/// T0 + sum_k lambda_k F_k.
Transformation instantiate(const LinearStage &ls, const RVec &lambda);

/// Parameters lambda for which T(lambda) maps the state space into itself.
struct ParameterFamily {
    size_t dim = 0;                       // affine dimension of the lambda polytope
    std::vector<Halfspace> halfspaces;    // a . lambda <= b, deduplicated
    std::vector<Rat> lower, upper;        // per-coordinate bounds
    std::vector<RVec> feasible_points;    // 0 plus the LP optima found on the way
};

struct Candidate {
    std::string name;
    Transformation matrix;
};

struct StatePreserving {
    enum class Kind { UniqueIdentity, PolytopeFamily, CandidateVerified };
    Kind kind = Kind::UniqueIdentity;
    ParameterFamily family;             // polytope kinds
    std::vector<Candidate> candidates;  // CandidateVerified
};

/// Exact LP stage for polytope theories. Throws NotApplicableError on a ball.
StatePreserving impose_state_preservation(const TheorySpec &t, const LinearStage &ls);

struct AllowedTransformSet {
    size_t branch = 0;
    LinearStage linear_stage;
    StatePreserving state_preserving;
    size_t forced_fixed_count = 0;

    /// True when something other than the identity is allowed.
    bool nontrivial() const;
};

AllowedTransformSet allowed_transform_set(const TheorySpec &t, size_t acting_branch);

/// Built-in ball candidates: exact rational rotations and reflections of the
/// (<X>, <Y>) block plus a dephasing contraction, in minimal rep.
std::vector<Candidate> qubit_candidate_family(const TheorySpec &t);

struct MembershipViolation {
    RVec probe;
    RVec image;
    std::string constraint;
};

struct VerificationReport {
    std::vector<Rat> residuals;
    std::vector<MembershipViolation> membership_violations;
    /// Ball fallback only: membership was checked on a finite probe set.
    bool probe_set_incomplete = false;
    bool pass = false;
};

VerificationReport verify_transformation(const TheorySpec &t, const Transformation &T,
                                         size_t acting_branch);

/// A state certain to be in `acting_branch` left invariant by T, found as the
/// stochastic fixed point of T's action on the vertices of that face. T must
/// map the face into itself (ArgumentError otherwise). Polytope theories only.
RVec branch_fixed_state(const TheorySpec &t, const Transformation &T, size_t acting_branch);

/// Rank of the +1 eigenvectors every allowed T must have: the fixed span of
/// the other branches, plus one state on the acting branch when the theory
/// is fully conditionally restricted (its unique certain state) or fully
/// independent (the stochastic fixed point of `T`'s face action).
size_t count_forced_eigenvectors(const TheorySpec &t, size_t acting_branch);
size_t count_forced_eigenvectors(const TheorySpec &t, size_t acting_branch, const Transformation &T);

struct TheoremReport {
    std::string theory;
    RestrictionReport restriction;
    std::vector<AllowedTransformSet> branches;
    std::vector<std::string> findings;  // theorem violations; empty when it holds
    std::string summary;
    bool holds() const { return findings.empty(); }
};

TheoremReport verify_main_theorem(const TheorySpec &t);

struct MonotonicityReport {
    std::vector<size_t> less_restricted_dims;
    std::vector<size_t> more_restricted_dims;
    std::vector<std::string> findings;
    bool strict = false;  // some branch gained dimension
    bool holds() const { return findings.empty(); }
};

/// Extra conditional restriction must not shrink the allowed family: per
/// branch, dim(more_restricted) >= dim(less_restricted). Polytope theories
/// with matching N and M.
MonotonicityReport compare_monotonicity(const TheorySpec &less_restricted,
                                        const TheorySpec &more_restricted);

}  // namespace gptdyn
