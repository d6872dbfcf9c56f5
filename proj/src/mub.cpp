#include "gptdyn/mub.hpp"

#include <algorithm>
#include <numeric>

#include "gptdyn/errors.hpp"

namespace gptdyn {

bool Permutation::is_identity() const {
    for (size_t i = 0; i < mapping.size(); i++) {
        if (mapping[i] != i) {
            return false;
        }
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv{measurement, std::vector<size_t>(mapping.size())};
    for (size_t i = 0; i < mapping.size(); i++) {
        inv.mapping[mapping[i]] = i;
    }
    return inv;
}

StateVec permute_measurement_stats(const TheorySpec &t, const StateVec &s, const Permutation &p) {
    if (s.rep != Rep::Minimal) {
        throw ArgumentError("permute_measurement_stats expects a minimal-rep state");
    }
    const size_t m = t.measurement_index(p.measurement);
    const size_t k = t.measurements()[m].outcomes;
    if (p.mapping.size() != k) {
        throw ArgumentError("permutation of '" + p.measurement + "' must have " +
                            std::to_string(k) + " entries");
    }
    std::vector<bool> hit(k, false);
    for (size_t target : p.mapping) {
        if (target >= k || hit[target]) {
            throw ArgumentError("permutation of '" + p.measurement + "' is not a bijection");
        }
        hit[target] = true;
    }
    std::vector<Rat> probs(k);
    for (size_t o = 0; o < k; o++) {
        probs[p.mapping[o]] = t.probability(s.entries, m, o);
    }
    StateVec out = s;
    for (size_t o = 0; o + 1 < k; o++) {
        out.entries[t.minimal_offset(m) + o] = probs[o];
    }
    return out;
}

bool qubit_axis_unbiased(const RVec &axis_a, const RVec &axis_b) {
    if (axis_a.size() != 3 || axis_b.size() != 3) {
        throw ArgumentError("Bloch axes must have 3 coordinates");
    }
    if (axis_a.is_zero() || axis_b.is_zero()) {
        throw ArgumentError("Bloch axis must be nonzero");
    }
    return dot(axis_a, axis_b).is_zero();
}

MubReport is_mutually_unbiased(const TheorySpec &t, const std::vector<std::string> &labels) {
    if (labels.size() < 2) {
        throw ArgumentError("mutual unbiasedness needs at least two measurements");
    }
    MubReport report;
    report.labels = labels;
    for (const auto &l : labels) {
        t.measurement_index(l);
    }
    if (t.state_space().is_ball()) {
        // Ball measurements are binary: the only non-identity relabelling is
        // a swap, i.e. a sign flip of one expectation value, which preserves
        // <Z>^2 + <X>^2 + <Y>^2 <= n^2.
        return report;
    }
    for (const auto &label : labels) {
        const size_t k = t.measurements()[t.measurement_index(label)].outcomes;
        std::vector<size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end())) {
            Permutation p{label, perm};
            for (const auto &v : t.state_space().vertices) {
                StateVec s{Rep::Minimal, v};
                StateVec image = permute_measurement_stats(t, s, p);
                Membership mem = membership(t, image);
                if (!mem) {
                    report.verdict = MubVerdict::NotUnbiased;
                    report.counterexample = MubReport::Counterexample{s, p, mem.violated};
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace gptdyn
