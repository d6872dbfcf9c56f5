#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gptdyn/matrix.hpp"
#include "gptdyn/polytope.hpp"

namespace gptdyn {

enum class Role { Branch, Fiducial };

/// One measurement of the theory. Outcomes are labelled 0..outcomes-1; for
/// binary measurements outcome 0 plays the role of "+1".
struct MeasurementSpec {
    std::string label;
    size_t outcomes = 2;
    Role role = Role::Fiducial;
};

/// How the set of normalised states is described. Polytope kinds carry both
/// representations once the theory is built: vertices are normalised
/// minimal-rep states (n = 1), halfspaces read a.s <= b on normalised states
/// and a.s <= b*n on the sub-normalised cone. Ball is the qubit
/// <Z>^2 + <X>^2 + <Y>^2 <= n^2 body and carries neither.
struct StateSpaceSpec {
    enum class Kind { PolytopeV, PolytopeH, Ball };
    Kind kind = Kind::PolytopeV;
    std::vector<RVec> vertices;
    std::vector<Halfspace> halfspaces;

    bool is_ball() const { return kind == Kind::Ball; }
};

/// A single-system theory: measurement list (exactly one Branch, called Z)
/// plus its state space. Immutable once created.
///
/// Probability and expectation representations follow the declaration
/// order of the measurements. The minimal representation is
///   [n, p(Z=0) .. p(Z=N-2), p(X1=0) .. p(X1=k1-2), p(X2=0) ..]
/// with Z first and the fiducials in declaration order, so d = N + M.
class TheorySpec {
   public:
    /// Validates every invariant and completes the state space: polytope_v
    /// input with d <= 6 and no halfspaces gets facets by brute-force
    /// enumeration, polytope_h input gets its vertices enumerated.
    static TheorySpec create(std::string name, std::vector<MeasurementSpec> measurements,
                             StateSpaceSpec state_space);

    const std::string &name() const { return name_; }
    const std::vector<MeasurementSpec> &measurements() const { return measurements_; }
    const StateSpaceSpec &state_space() const { return state_space_; }

    size_t N() const { return measurements_[branch_].outcomes; }
    size_t M() const { return M_; }
    size_t d() const { return N() + M_; }
    size_t branch_index() const { return branch_; }
    const MeasurementSpec &branch() const { return measurements_[branch_]; }

    /// Index of the measurement with this label; throws ArgumentError.
    size_t measurement_index(std::string_view label) const;
    bool all_binary() const;

    /// Position of the first leading probability of measurement `m` in the
    /// minimal vector (it owns outcomes-1 consecutive entries).
    size_t minimal_offset(size_t m) const { return minimal_offset_[m]; }
    /// Position of outcome 0 of measurement `m` in the probability vector.
    size_t probability_offset(size_t m) const { return probability_offset_[m]; }
    size_t probability_dim() const { return probability_dim_; }

    /// Probability -> minimal (d x P) and back (P x d).
    RMat probability_to_minimal() const;
    RMat minimal_to_probability() const;
    /// Probability -> expectation (1+m x P) and back. Binary theories only;
    /// with two measurements these are exactly the textbook M and M^-1.
    RMat probability_to_expectation() const;
    RMat expectation_to_probability() const;
    /// Minimal <-> expectation, composed from the matrices above.
    RMat minimal_to_expectation() const;
    RMat expectation_to_minimal() const;

    /// Exact p(measurement m = outcome) of a minimal-rep vector.
    Rat probability(const RVec &minimal, size_t m, size_t outcome) const;
    /// Z branch labels: "up"/"low" for binary Z, decimal outcome otherwise.
    std::string branch_label(size_t outcome) const;
    /// Accepts "up"/"low" (binary Z) or a decimal outcome index.
    size_t parse_branch(std::string_view label) const;

   private:
    TheorySpec() = default;
    void finish_state_space();

    std::string name_;
    std::vector<MeasurementSpec> measurements_;
    StateSpaceSpec state_space_;
    size_t branch_ = 0;
    size_t M_ = 0;
    std::vector<size_t> minimal_offset_;
    std::vector<size_t> probability_offset_;
    size_t probability_dim_ = 0;
};

enum class Rep { Probability, Expectation, Minimal };

struct StateVec {
    Rep rep = Rep::Minimal;
    RVec entries;
    friend bool operator==(const StateVec &, const StateVec &) = default;
};

StateVec to_expectation(const TheorySpec &t, const StateVec &probability);
StateVec to_probability(const TheorySpec &t, const StateVec &expectation);
/// Requires every measurement block to share the same normalisation.
StateVec to_minimal(const TheorySpec &t, const StateVec &probability);
StateVec from_minimal(const TheorySpec &t, const StateVec &minimal);
/// Any representation to any other, through the probability picture.
StateVec convert(const TheorySpec &t, const StateVec &s, Rep target);

struct Membership {
    bool inside = true;
    std::string violated;  // human-readable constraint when outside
    explicit operator bool() const { return inside; }
};

/// Exact test on the truncated cone {n s : 0 <= n <= 1, s normalised state}.
Membership membership(const TheorySpec &t, const RVec &minimal);
Membership membership(const TheorySpec &t, const StateVec &minimal);

/// Measurement-outcome effect stored in the representation of the states it
/// pairs with, so that p = e . s.
struct Effect {
    RVec vector;
    Rep rep = Rep::Minimal;
    size_t measurement = 0;
    size_t outcome = 0;
};

Effect make_effect(const TheorySpec &t, size_t measurement, size_t outcome, Rep rep);
Rat outcome_probability(const StateVec &s, const Effect &e);

/// <G> = p(G=0) - p(G=1) of a binary measurement.
Rat expectation_value(const TheorySpec &t, const RVec &minimal, size_t m);

// Builders for the named theories.
TheorySpec make_boxworld(size_t m, size_t k);
TheorySpec make_gbit();
TheorySpec make_qubit();
TheorySpec make_classical(size_t n);
/// Binary Z and X with normalised slice |<X>| + |<Z>| <= 1. Not one of the
/// literature theories: a fully conditionally restricted contrast to the gbit.
TheorySpec make_octahedron();

/// gbit, cube, qubit, classical2, octahedron. Throws ArgumentError otherwise.
TheorySpec make_builtin(std::string_view name);
const std::vector<std::string> &builtin_names();

}  // namespace gptdyn
