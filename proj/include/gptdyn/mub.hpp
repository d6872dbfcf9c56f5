#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gptdyn/theory.hpp"

namespace gptdyn {

/// Relabelling of one measurement's outcomes: outcome o's probability moves
/// to outcome mapping[o].
struct Permutation {
    std::string measurement;
    std::vector<size_t> mapping;

    bool is_identity() const;
    Permutation inverse() const;
};

/// s' with the named measurement's statistics permuted and every other
/// entry (n included) untouched. s' need not be a valid state.
StateVec permute_measurement_stats(const TheorySpec &t, const StateVec &s, const Permutation &p);

enum class MubVerdict { MutuallyUnbiased, NotUnbiased };

struct MubReport {
    std::vector<std::string> labels;
    MubVerdict verdict = MubVerdict::MutuallyUnbiased;
    struct Counterexample {
        StateVec state;
        Permutation permutation;
        std::string violated;
    };
    std::optional<Counterexample> counterexample;
};

/// Every non-identity permutation of every listed measurement must map each
/// valid state to a valid state. For polytopes the check runs over vertices
/// (the permuted image is affine in the state, the state set convex); for
/// the qubit ball each binary swap is a sign flip of one Bloch coordinate.
MubReport is_mutually_unbiased(const TheorySpec &t, const std::vector<std::string> &labels);

/// Qubit Bloch axes a, b (rational, nonzero) give mutually unbiased
/// measurements iff a . b = 0.
bool qubit_axis_unbiased(const RVec &axis_a, const RVec &axis_b);

}  // namespace gptdyn
