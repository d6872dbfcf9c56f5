#include "gptdyn/theory.hpp"

#include <charconv>
#include <set>

#include "gptdyn/errors.hpp"
#include "gptdyn/lp.hpp"

namespace gptdyn {

TheorySpec TheorySpec::create(std::string name, std::vector<MeasurementSpec> measurements,
                              StateSpaceSpec state_space) {
    TheorySpec t;
    t.name_ = std::move(name);
    t.measurements_ = std::move(measurements);
    t.state_space_ = std::move(state_space);

    if (t.measurements_.empty()) {
        throw ValidationError("theory has no measurements");
    }
    std::set<std::string> labels;
    size_t branches = 0;
    for (size_t i = 0; i < t.measurements_.size(); i++) {
        const auto &m = t.measurements_[i];
        if (m.label.empty()) {
            throw ValidationError("measurement " + std::to_string(i) + " has an empty label");
        }
        if (!labels.insert(m.label).second) {
            throw ValidationError("duplicate measurement label '" + m.label + "'");
        }
        if (m.outcomes < 2) {
            throw ValidationError("measurement '" + m.label + "' needs at least 2 outcomes");
        }
        if (m.role == Role::Branch) {
            branches++;
            t.branch_ = i;
        }
    }
    if (branches != 1) {
        throw ValidationError("exactly one measurement must have the branch role, found " +
                              std::to_string(branches));
    }

    t.minimal_offset_.assign(t.measurements_.size(), 0);
    t.probability_offset_.assign(t.measurements_.size(), 0);
    size_t pos = 1;
    t.minimal_offset_[t.branch_] = pos;
    pos += t.N() - 1;
    t.M_ = 0;
    for (size_t i = 0; i < t.measurements_.size(); i++) {
        if (i == t.branch_) {
            continue;
        }
        t.minimal_offset_[i] = pos;
        pos += t.measurements_[i].outcomes - 1;
        t.M_ += t.measurements_[i].outcomes - 1;
    }
    size_t ppos = 0;
    for (size_t i = 0; i < t.measurements_.size(); i++) {
        t.probability_offset_[i] = ppos;
        ppos += t.measurements_[i].outcomes;
    }
    t.probability_dim_ = ppos;

    t.finish_state_space();
    return t;
}

namespace {

// Empty string when the minimal vector has valid probabilities for n = 1.
std::string probability_problem(const TheorySpec &t, const RVec &v) {
    if (v.size() != t.d()) {
        return "has length " + std::to_string(v.size()) + ", expected d = " + std::to_string(t.d());
    }
    if (v[0] != Rat(1)) {
        return "has n = " + v[0].to_short_string() + ", expected 1";
    }
    for (size_t m = 0; m < t.measurements().size(); m++) {
        for (size_t o = 0; o < t.measurements()[m].outcomes; o++) {
            Rat p = t.probability(v, m, o);
            if (p.sign() < 0 || p > Rat(1)) {
                return "has p(" + t.measurements()[m].label + "=" + std::to_string(o) +
                       ") = " + p.to_short_string() + " outside [0,1]";
            }
        }
    }
    return {};
}

RVec drop_first(const RVec &v) { return RVec(std::vector<Rat>(v.begin() + 1, v.end())); }

RVec prepend(const Rat &x, const RVec &v) {
    RVec out(v.size() + 1);
    out[0] = x;
    for (size_t i = 0; i < v.size(); i++) {
        out[i + 1] = v[i];
    }
    return out;
}

}  // namespace

void TheorySpec::finish_state_space() {
    auto &ss = state_space_;
    const size_t dim = d();
    if (ss.kind == StateSpaceSpec::Kind::Ball) {
        if (N() != 2 || measurements_.size() != 3 || !all_binary()) {
            throw ValidationError(
                "ball state space requires binary Z and exactly two binary fiducial measurements");
        }
        if (!ss.vertices.empty() || !ss.halfspaces.empty()) {
            throw ValidationError("ball state space takes no vertices or halfspaces");
        }
        return;
    }

    for (size_t i = 0; i < ss.halfspaces.size(); i++) {
        if (ss.halfspaces[i].a.size() != dim) {
            throw ValidationError("halfspace " + std::to_string(i) + " has length " +
                                  std::to_string(ss.halfspaces[i].a.size()) + ", expected d = " +
                                  std::to_string(dim));
        }
    }

    if (ss.kind == StateSpaceSpec::Kind::PolytopeH) {
        if (ss.halfspaces.empty()) {
            throw ValidationError("polytope_h state space has no halfspaces");
        }
        if (dim > kMaxBruteForceDim) {
            throw UnsupportedError("polytope_h with d = " + std::to_string(dim) +
                                   " is beyond brute-force vertex enumeration (d <= " +
                                   std::to_string(kMaxBruteForceDim) + ")");
        }
        // Normalised slice: a0 + a'.y <= b.
        std::vector<Halfspace> reduced;
        for (const auto &h : ss.halfspaces) {
            reduced.push_back({drop_first(h.a), h.b - h.a[0]});
        }
        ss.vertices.clear();
        for (const auto &y : vertex_enumeration(reduced, dim - 1)) {
            ss.vertices.push_back(prepend(Rat(1), y));
        }
        if (ss.vertices.empty()) {
            throw ValidationError("polytope_h halfspaces describe an empty or unbounded set");
        }
        // Every outcome probability must be bounded below by 0 on the body,
        // which also makes it bounded.
        LinearSystem body{RMat(reduced.size(), dim - 1), RVec(reduced.size())};
        for (size_t i = 0; i < reduced.size(); i++) {
            body.a.set_row(i, reduced[i].a);
            body.b[i] = reduced[i].b;
        }
        for (size_t m = 0; m < measurements_.size(); m++) {
            for (size_t o = 0; o < measurements_[m].outcomes; o++) {
                // p = c0 + c'.y over normalised states.
                RVec c = minimal_to_probability().row(probability_offset_[m] + o);
                LpResult r = lp_optimize(drop_first(c), {}, body, Sense::Min);
                if (r.status != LpStatus::Optimal || r.optimum + c[0] < Rat(0)) {
                    throw ValidationError("polytope_h admits p(" + measurements_[m].label + "=" +
                                          std::to_string(o) + ") < 0");
                }
            }
        }
    }

    if (ss.vertices.empty()) {
        throw ValidationError("polytope state space has no vertices");
    }
    for (size_t i = 0; i < ss.vertices.size(); i++) {
        std::string problem = probability_problem(*this, ss.vertices[i]);
        if (!problem.empty()) {
            throw ValidationError("vertex " + std::to_string(i) + " " + to_string(ss.vertices[i]) +
                                  " " + problem);
        }
    }

    if (ss.halfspaces.empty()) {
        if (dim > kMaxBruteForceDim) {
            throw UnsupportedError("polytope_v with d = " + std::to_string(dim) +
                                   " needs a supplied H-representation (facet enumeration "
                                   "supports d <= " +
                                   std::to_string(kMaxBruteForceDim) + ")");
        }
        std::vector<RVec> reduced;
        for (const auto &v : ss.vertices) {
            reduced.push_back(drop_first(v));
        }
        for (const auto &h : facet_enumeration(reduced)) {
            ss.halfspaces.push_back({prepend(Rat(0), h.a), h.b});
        }
    } else {
        for (size_t i = 0; i < ss.vertices.size(); i++) {
            for (size_t j = 0; j < ss.halfspaces.size(); j++) {
                if (dot(ss.halfspaces[j].a, ss.vertices[i]) > ss.halfspaces[j].b) {
                    throw ValidationError("vertex " + std::to_string(i) + " " +
                                          to_string(ss.vertices[i]) + " violates halfspace " +
                                          std::to_string(j));
                }
            }
        }
    }

    for (size_t b = 0; b < N(); b++) {
        bool found = false;
        for (const auto &v : ss.vertices) {
            found = found || probability(v, branch_, b) == Rat(1);
        }
        if (!found) {
            throw ValidationError("no state is certain to give " + branch().label + "=" +
                                  std::to_string(b));
        }
    }
}

size_t TheorySpec::measurement_index(std::string_view label) const {
    for (size_t i = 0; i < measurements_.size(); i++) {
        if (measurements_[i].label == label) {
            return i;
        }
    }
    throw ArgumentError("unknown measurement '" + std::string(label) + "'");
}

bool TheorySpec::all_binary() const {
    for (const auto &m : measurements_) {
        if (m.outcomes != 2) {
            return false;
        }
    }
    return true;
}

RMat TheorySpec::probability_to_minimal() const {
    RMat out(d(), probability_dim_);
    for (size_t o = 0; o < N(); o++) {
        out(0, probability_offset_[branch_] + o) = 1;
    }
    for (size_t m = 0; m < measurements_.size(); m++) {
        for (size_t o = 0; o + 1 < measurements_[m].outcomes; o++) {
            out(minimal_offset_[m] + o, probability_offset_[m] + o) = 1;
        }
    }
    return out;
}

RMat TheorySpec::minimal_to_probability() const {
    RMat out(probability_dim_, d());
    for (size_t m = 0; m < measurements_.size(); m++) {
        const size_t k = measurements_[m].outcomes;
        const size_t last = probability_offset_[m] + k - 1;
        out(last, 0) = 1;
        for (size_t o = 0; o + 1 < k; o++) {
            out(probability_offset_[m] + o, minimal_offset_[m] + o) = 1;
            out(last, minimal_offset_[m] + o) = -1;
        }
    }
    return out;
}

RMat TheorySpec::probability_to_expectation() const {
    if (!all_binary()) {
        throw UnsupportedError("expectation representation needs binary measurements");
    }
    const size_t count = measurements_.size();
    RMat out(1 + count, probability_dim_);
    Rat share(1, static_cast<int64_t>(count));
    for (size_t j = 0; j < probability_dim_; j++) {
        out(0, j) = share;
    }
    for (size_t m = 0; m < count; m++) {
        out(1 + m, probability_offset_[m]) = 1;
        out(1 + m, probability_offset_[m] + 1) = -1;
    }
    return out;
}

RMat TheorySpec::expectation_to_probability() const {
    if (!all_binary()) {
        throw UnsupportedError("expectation representation needs binary measurements");
    }
    const size_t count = measurements_.size();
    RMat out(probability_dim_, 1 + count);
    Rat half(1, 2);
    for (size_t m = 0; m < count; m++) {
        out(probability_offset_[m], 0) = half;
        out(probability_offset_[m], 1 + m) = half;
        out(probability_offset_[m] + 1, 0) = half;
        out(probability_offset_[m] + 1, 1 + m) = -half;
    }
    return out;
}

RMat TheorySpec::minimal_to_expectation() const {
    return probability_to_expectation() * minimal_to_probability();
}

RMat TheorySpec::expectation_to_minimal() const {
    return probability_to_minimal() * expectation_to_probability();
}

Rat TheorySpec::probability(const RVec &minimal, size_t m, size_t outcome) const {
    if (minimal.size() != d()) {
        throw ArgumentError("state has length " + std::to_string(minimal.size()) +
                            ", expected d = " + std::to_string(d()));
    }
    const size_t k = measurements_.at(m).outcomes;
    if (outcome >= k) {
        throw ArgumentError("outcome " + std::to_string(outcome) + " out of range for '" +
                            measurements_[m].label + "'");
    }
    if (outcome + 1 < k) {
        return minimal[minimal_offset_[m] + outcome];
    }
    Rat p = minimal[0];
    for (size_t o = 0; o + 1 < k; o++) {
        p -= minimal[minimal_offset_[m] + o];
    }
    return p;
}

std::string TheorySpec::branch_label(size_t outcome) const {
    if (N() == 2) {
        return outcome == 0 ? "up" : "low";
    }
    return std::to_string(outcome);
}

size_t TheorySpec::parse_branch(std::string_view label) const {
    if (N() == 2 && label == "up") {
        return 0;
    }
    if (N() == 2 && label == "low") {
        return 1;
    }
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
    if (ec != std::errc() || ptr != label.data() + label.size() || value >= N()) {
        throw ArgumentError("invalid branch '" + std::string(label) + "' for " + branch().label +
                            " with " + std::to_string(N()) + " outcomes");
    }
    return value;
}

namespace {

void expect_rep(const StateVec &s, Rep rep, const char *op) {
    if (s.rep != rep) {
        throw ArgumentError(std::string(op) + ": state is in the wrong representation");
    }
}

}  // namespace

StateVec to_expectation(const TheorySpec &t, const StateVec &probability) {
    expect_rep(probability, Rep::Probability, "to_expectation");
    return {Rep::Expectation, t.probability_to_expectation() * probability.entries};
}

StateVec to_probability(const TheorySpec &t, const StateVec &expectation) {
    expect_rep(expectation, Rep::Expectation, "to_probability");
    return {Rep::Probability, t.expectation_to_probability() * expectation.entries};
}

StateVec to_minimal(const TheorySpec &t, const StateVec &probability) {
    expect_rep(probability, Rep::Probability, "to_minimal");
    const RVec &p = probability.entries;
    if (p.size() != t.probability_dim()) {
        throw ArgumentError("to_minimal: probability vector has length " +
                            std::to_string(p.size()) + ", expected " +
                            std::to_string(t.probability_dim()));
    }
    std::optional<Rat> norm;
    for (size_t m = 0; m < t.measurements().size(); m++) {
        Rat sum;
        for (size_t o = 0; o < t.measurements()[m].outcomes; o++) {
            sum += p[t.probability_offset(m) + o];
        }
        if (norm && *norm != sum) {
            throw ValidationError("to_minimal: measurement '" + t.measurements()[m].label +
                                  "' has normalisation " + sum.to_short_string() + ", expected " +
                                  norm->to_short_string());
        }
        norm = sum;
    }
    return {Rep::Minimal, t.probability_to_minimal() * p};
}

StateVec from_minimal(const TheorySpec &t, const StateVec &minimal) {
    expect_rep(minimal, Rep::Minimal, "from_minimal");
    return {Rep::Probability, t.minimal_to_probability() * minimal.entries};
}

StateVec convert(const TheorySpec &t, const StateVec &s, Rep target) {
    if (s.rep == target) {
        return s;
    }
    StateVec p = s;
    if (s.rep == Rep::Expectation) {
        p = to_probability(t, s);
    } else if (s.rep == Rep::Minimal) {
        p = from_minimal(t, s);
    }
    switch (target) {
        case Rep::Probability:
            return p;
        case Rep::Expectation:
            return to_expectation(t, p);
        case Rep::Minimal:
            return to_minimal(t, p);
    }
    return p;
}

Rat expectation_value(const TheorySpec &t, const RVec &minimal, size_t m) {
    if (t.measurements().at(m).outcomes != 2) {
        throw UnsupportedError("expectation value of non-binary measurement '" +
                               t.measurements()[m].label + "'");
    }
    return t.probability(minimal, m, 0) - t.probability(minimal, m, 1);
}

Membership membership(const TheorySpec &t, const RVec &s) {
    if (s.size() != t.d()) {
        throw ArgumentError("membership: state has length " + std::to_string(s.size()) +
                            ", expected d = " + std::to_string(t.d()));
    }
    const Rat &n = s[0];
    if (n.sign() < 0) {
        return {false, "n >= 0"};
    }
    if (n > Rat(1)) {
        return {false, "n <= 1"};
    }
    const auto &ss = t.state_space();
    if (ss.is_ball()) {
        Rat r2;
        for (size_t m = 0; m < 3; m++) {
            Rat e = expectation_value(t, s, m);
            r2 += e * e;
        }
        if (r2 > n * n) {
            return {false, "<Z>^2 + <X>^2 + <Y>^2 <= n^2"};
        }
        return {};
    }
    for (size_t i = 0; i < ss.halfspaces.size(); i++) {
        const auto &h = ss.halfspaces[i];
        if (dot(h.a, s) > h.b * n) {
            return {false, "halfspace " + std::to_string(i) + ": " + to_string(h.a) +
                               ".s <= " + h.b.to_short_string() + " n"};
        }
    }
    return {};
}

Membership membership(const TheorySpec &t, const StateVec &s) {
    expect_rep(s, Rep::Minimal, "membership");
    return membership(t, s.entries);
}

Effect make_effect(const TheorySpec &t, size_t measurement, size_t outcome, Rep rep) {
    if (measurement >= t.measurements().size() ||
        outcome >= t.measurements()[measurement].outcomes) {
        throw ArgumentError("make_effect: no such measurement outcome");
    }
    const size_t p = t.probability_offset(measurement) + outcome;
    Effect e;
    e.rep = rep;
    e.measurement = measurement;
    e.outcome = outcome;
    switch (rep) {
        case Rep::Probability:
            e.vector = RVec::unit(t.probability_dim(), p);
            break;
        case Rep::Minimal:
            e.vector = t.minimal_to_probability().row(p);
            break;
        case Rep::Expectation:
            e.vector = t.expectation_to_probability().row(p);
            break;
    }
    return e;
}

Rat outcome_probability(const StateVec &s, const Effect &e) {
    if (s.rep != e.rep) {
        throw ArgumentError("outcome_probability: state and effect representations differ");
    }
    return dot(e.vector, s.entries);
}

namespace {

std::vector<RVec> deterministic_corners(const std::vector<MeasurementSpec> &ms,
                                        const std::vector<size_t> &offsets, size_t d) {
    std::vector<RVec> out;
    std::vector<size_t> assign(ms.size(), 0);
    while (true) {
        RVec v(d);
        v[0] = 1;
        for (size_t m = 0; m < ms.size(); m++) {
            if (assign[m] + 1 < ms[m].outcomes) {
                v[offsets[m] + assign[m]] = 1;
            }
        }
        out.push_back(std::move(v));
        size_t i = ms.size();
        while (i > 0) {
            i--;
            if (++assign[i] < ms[i].outcomes) {
                break;
            }
            assign[i] = 0;
            if (i == 0) {
                return out;
            }
        }
    }
}

}  // namespace

TheorySpec make_boxworld(size_t m, size_t k) {
    if (m < 2 || k < 2) {
        throw ArgumentError("make_boxworld needs m >= 2 and k >= 2");
    }
    std::vector<MeasurementSpec> ms{{"Z", k, Role::Branch}};
    for (size_t i = 1; i < m; i++) {
        std::string label = m == 2 ? "X" : (m == 3 ? (i == 1 ? "X" : "Y") : "X" + std::to_string(i));
        ms.push_back({label, k, Role::Fiducial});
    }
    // Minimal offsets: Z first, then fiducials in order.
    std::vector<size_t> offsets(m);
    size_t d = 1;
    for (size_t i = 0; i < m; i++) {
        offsets[i] = d;
        d += k - 1;
    }
    StateSpaceSpec ss;
    ss.kind = StateSpaceSpec::Kind::PolytopeV;
    ss.vertices = deterministic_corners(ms, offsets, d);
    // Box-world is the product of outcome simplices: its facets are the
    // probability non-negativity constraints.
    for (size_t i = 0; i < m; i++) {
        RVec last(d);
        for (size_t o = 0; o + 1 < k; o++) {
            ss.halfspaces.push_back({RVec::unit(d, offsets[i] + o) * Rat(-1), Rat(0)});
            last[offsets[i] + o] = 1;
        }
        ss.halfspaces.push_back({last, Rat(1)});
    }
    std::string name = (m == 2 && k == 2) ? "gbit"
                       : (m == 3 && k == 2)
                           ? "cube"
                           : "boxworld(" + std::to_string(m) + "," + std::to_string(k) + ")";
    return TheorySpec::create(name, std::move(ms), std::move(ss));
}

TheorySpec make_gbit() { return make_boxworld(2, 2); }

TheorySpec make_qubit() {
    return TheorySpec::create(
        "qubit", {{"Z", 2, Role::Branch}, {"X", 2, Role::Fiducial}, {"Y", 2, Role::Fiducial}},
        StateSpaceSpec{StateSpaceSpec::Kind::Ball, {}, {}});
}

TheorySpec make_classical(size_t n) {
    if (n < 2) {
        throw ArgumentError("make_classical needs N >= 2");
    }
    std::vector<MeasurementSpec> ms{{"Z", n, Role::Branch}};
    StateSpaceSpec ss;
    ss.kind = StateSpaceSpec::Kind::PolytopeV;
    ss.vertices = deterministic_corners(ms, {1}, n);
    RVec last(n);
    for (size_t o = 0; o + 1 < n; o++) {
        ss.halfspaces.push_back({RVec::unit(n, 1 + o) * Rat(-1), Rat(0)});
        last[1 + o] = 1;
    }
    ss.halfspaces.push_back({last, Rat(1)});
    return TheorySpec::create("classical" + std::to_string(n), std::move(ms), std::move(ss));
}

TheorySpec make_octahedron() {
    // (n, p(Z=0), p(X=0)) for <Z>,<X> in {(1,0), (-1,0), (0,1), (0,-1)}.
    Rat h(1, 2);
    StateSpaceSpec ss;
    ss.kind = StateSpaceSpec::Kind::PolytopeV;
    ss.vertices = {RVec{1, 1, h}, RVec{1, 0, h}, RVec{1, h, 1}, RVec{1, h, 0}};
    return TheorySpec::create("octahedron", {{"Z", 2, Role::Branch}, {"X", 2, Role::Fiducial}},
                              std::move(ss));
}

const std::vector<std::string> &builtin_names() {
    static const std::vector<std::string> names{"gbit", "cube", "qubit", "classical2",
                                                "octahedron"};
    return names;
}

TheorySpec make_builtin(std::string_view name) {
    if (name == "gbit") {
        return make_gbit();
    }
    if (name == "cube") {
        return make_boxworld(3, 2);
    }
    if (name == "qubit") {
        return make_qubit();
    }
    if (name == "classical2") {
        return make_classical(2);
    }
    if (name == "octahedron") {
        return make_octahedron();
    }
    throw ArgumentError("unknown builtin theory '" + std::string(name) + "'");
}

}  // namespace gptdyn
