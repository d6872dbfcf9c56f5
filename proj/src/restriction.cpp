#include "gptdyn/restriction.hpp"

#include <algorithm>

#include "gptdyn/errors.hpp"
#include "gptdyn/linalg.hpp"

namespace gptdyn {

ConditionalSet conditional_state_set(const TheorySpec &t, size_t branch) {
    if (branch >= t.N()) {
        throw ArgumentError("branch " + std::to_string(branch) + " out of range for " +
                            t.branch().label + " with " + std::to_string(t.N()) + " outcomes");
    }
    ConditionalSet out;
    out.branch = branch;
    const auto &ss = t.state_space();
    if (ss.is_ball()) {
        // <Z> = +-1 forces <X> = <Y> = 0: a single ray.
        RVec e{1, branch == 0 ? 1 : -1, 0, 0};
        out.generators.push_back({Rep::Minimal, t.expectation_to_minimal() * e});
        out.freedom = 0;
        return out;
    }
    std::vector<RVec> slice;
    for (const auto &v : ss.vertices) {
        if (t.probability(v, t.branch_index(), branch) == Rat(1)) {
            slice.push_back(v);
            out.generators.push_back({Rep::Minimal, v});
        }
    }
    // Non-empty: validated when the theory was created.
    out.freedom = affine_hull_dim(slice);
    return out;
}

std::string to_string(RestrictionClass c) {
    switch (c) {
        case RestrictionClass::FullyConditionallyRestricted:
            return "fully_conditionally_restricted";
        case RestrictionClass::FullyIndependent:
            return "fully_independent";
        case RestrictionClass::Partial:
            return "partial";
    }
    return "partial";
}

RestrictionReport classify_restriction(const TheorySpec &t) {
    RestrictionReport r;
    r.N = t.N();
    r.M = t.M();
    r.d = t.d();
    for (size_t b = 0; b < t.N(); b++) {
        r.per_branch_freedom.push_back(conditional_state_set(t, b).freedom);
    }
    const auto &f = r.per_branch_freedom;
    if (std::all_of(f.begin(), f.end(), [](size_t x) { return x == 0; })) {
        r.cls = RestrictionClass::FullyConditionallyRestricted;
    } else if (std::all_of(f.begin(), f.end(), [&](size_t x) { return x == t.M(); })) {
        r.cls = RestrictionClass::FullyIndependent;
    } else {
        r.cls = RestrictionClass::Partial;
    }
    return r;
}

UncertaintyCheck check_quantum_like_uncertainty(const TheorySpec &t,
                                                const std::vector<std::string> &mub) {
    std::vector<size_t> others;
    bool has_branch = false;
    for (const auto &label : mub) {
        size_t m = t.measurement_index(label);
        if (m == t.branch_index()) {
            has_branch = true;
        } else {
            others.push_back(m);
        }
    }
    if (!has_branch) {
        throw ArgumentError("uncertainty check needs the branch measurement '" + t.branch().label +
                            "' in the set");
    }
    UncertaintyCheck out;
    for (size_t b = 0; b < t.N(); b++) {
        for (const auto &g : conditional_state_set(t, b).generators) {
            for (size_t m : others) {
                const size_t k = t.measurements()[m].outcomes;
                Rat uniform = g.entries[0] / Rat(static_cast<int64_t>(k));
                for (size_t o = 0; o < k; o++) {
                    if (t.probability(g.entries, m, o) != uniform) {
                        out.holds = false;
                        out.witness = g;
                        out.measurement = t.measurements()[m].label;
                        return out;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace gptdyn
