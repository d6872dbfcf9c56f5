#include "gptdyn/report.hpp"

#include <algorithm>
#include <sstream>

namespace gptdyn {

using nlohmann::json;

namespace {

json vec_json(const RVec &v) {
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(x.to_string());
    }
    return out;
}

const char *result_name(const AllowedTransformSet &a) {
    switch (a.state_preserving.kind) {
        case StatePreserving::Kind::UniqueIdentity:
            return "unique_identity";
        case StatePreserving::Kind::PolytopeFamily:
            return "family";
        case StatePreserving::Kind::CandidateVerified:
            return "candidates";
    }
    return "unique_identity";
}

bool residuals_zero(const VerificationReport &r) {
    return std::all_of(r.residuals.begin(), r.residuals.end(), [](const Rat &x) { return x.is_zero(); });
}

// Left-aligned columns separated by two spaces.
class Table {
   public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<size_t> width(rows_.front().size(), 0);
        for (const auto &r : rows_) {
            for (size_t c = 0; c < r.size(); c++) {
                width[c] = std::max(width[c], r[c].size());
            }
        }
        std::ostringstream out;
        for (const auto &r : rows_) {
            std::string line;
            for (size_t c = 0; c < r.size(); c++) {
                line += r[c];
                if (c + 1 < r.size()) {
                    line += std::string(width[c] - r[c].size() + 2, ' ');
                }
            }
            out << "  " << line << "\n";
        }
        return out.str();
    }

   private:
    std::vector<std::vector<std::string>> rows_;
};

std::string short_vec(const RVec &v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); i++) {
        s += (i ? ", " : "") + v[i].to_short_string();
    }
    return s + ")";
}

std::string family_cell(const AllowedTransformSet &a) {
    switch (a.state_preserving.kind) {
        case StatePreserving::Kind::UniqueIdentity:
            return "identity only";
        case StatePreserving::Kind::PolytopeFamily:
            return "family, dim " + std::to_string(a.state_preserving.family.dim);
        case StatePreserving::Kind::CandidateVerified:
            return std::to_string(a.state_preserving.candidates.size()) + " verified candidates";
    }
    return "";
}

}  // namespace

json restriction_json(const RestrictionReport &r, const TheorySpec &t) {
    json freedom = json::object();
    for (size_t b = 0; b < r.per_branch_freedom.size(); b++) {
        freedom[t.branch_label(b)] = r.per_branch_freedom[b];
    }
    return {{"class", to_string(r.cls)}, {"per_branch_freedom", freedom}, {"N", r.N}, {"M", r.M}, {"d", r.d}};
}

json mub_json(const MubReport &r) {
    json out{{"verdict", r.verdict == MubVerdict::MutuallyUnbiased ? "mutually_unbiased" : "not_unbiased"},
             {"counterexample", nullptr}};
    if (r.counterexample) {
        out["counterexample"] = {{"state", vec_json(r.counterexample->state.entries)},
                                 {"measurement", r.counterexample->permutation.measurement},
                                 {"permutation", r.counterexample->permutation.mapping}};
    }
    return out;
}

json solver_json(const AllowedTransformSet &a, const TheorySpec &t) {
    json dim = nullptr;
    if (a.state_preserving.kind != StatePreserving::Kind::CandidateVerified) {
        dim = a.state_preserving.family.dim;
    }
    return {{"branch", t.branch_label(a.branch)},
            {"linear_stage_dim", a.linear_stage.dim()},
            {"result", result_name(a)},
            {"family_dim", dim},
            {"forced_fixed_count", a.forced_fixed_count}};
}

json verification_json(const VerificationReport &r, size_t branch, const TheorySpec &t) {
    json violations = json::array();
    for (const auto &v : r.membership_violations) {
        violations.push_back({{"probe", vec_json(v.probe)}, {"image", vec_json(v.image)}, {"constraint", v.constraint}});
    }
    json residuals = json::array();
    for (const auto &x : r.residuals) {
        residuals.push_back(x.to_string());
    }
    return {{"branch", t.branch_label(branch)},
            {"verdict", r.pass ? "pass" : "fail"},
            {"residuals", residuals},
            {"membership_violations", violations},
            {"probe_set_incomplete", r.probe_set_incomplete}};
}

json theorem_json(const TheoremReport &r, const TheorySpec &t) {
    json branches = json::array();
    for (const auto &a : r.branches) {
        branches.push_back(solver_json(a, t));
    }
    return {{"theory", r.theory},
            {"restriction", restriction_json(r.restriction, t)},
            {"branches", branches},
            {"findings", r.findings},
            {"summary", r.summary},
            {"holds", r.holds()}};
}

json monotonicity_json(const MonotonicityReport &r, const TheorySpec &less, const TheorySpec &more) {
    return {{"less_restricted", {{"theory", less.name()}, {"family_dims", r.less_restricted_dims}}},
            {"more_restricted", {{"theory", more.name()}, {"family_dims", r.more_restricted_dims}}},
            {"findings", r.findings},
            {"strict", r.strict},
            {"holds", r.holds()}};
}

std::string dump_report(const json &j) { return j.dump(2) + "\n"; }

std::string restriction_text(const RestrictionReport &r, const TheorySpec &t) {
    std::ostringstream out;
    out << t.name() << ": N = " << r.N << ", M = " << r.M << ", d = " << r.d << "\n";
    Table tab({"branch", "freedom"});
    for (size_t b = 0; b < r.per_branch_freedom.size(); b++) {
        tab.add({t.branch_label(b), std::to_string(r.per_branch_freedom[b])});
    }
    out << tab.str() << "class: " << to_string(r.cls) << "\n";
    return out.str();
}

std::string mub_text(const MubReport &r) {
    std::ostringstream out;
    out << "{";
    for (size_t i = 0; i < r.labels.size(); i++) {
        out << (i ? ", " : "") << r.labels[i];
    }
    out << "}: " << (r.verdict == MubVerdict::MutuallyUnbiased ? "mutually unbiased" : "not unbiased") << "\n";
    if (r.counterexample) {
        const auto &c = *r.counterexample;
        out << "  state " << short_vec(c.state.entries) << " with " << c.permutation.measurement
            << " outcomes sent to [";
        for (size_t i = 0; i < c.permutation.mapping.size(); i++) {
            out << (i ? " " : "") << c.permutation.mapping[i];
        }
        out << "] violates " << c.violated << "\n";
    }
    return out.str();
}

std::string solver_text(const std::vector<AllowedTransformSet> &branches, const TheorySpec &t) {
    std::ostringstream out;
    out << t.name() << ": allowed transformations per acting branch\n";
    Table tab({"branch", "linear stage", "state preserving", "forced +1 eigenvectors"});
    for (const auto &a : branches) {
        tab.add({t.branch_label(a.branch), std::to_string(a.linear_stage.dim()), family_cell(a),
                 std::to_string(a.forced_fixed_count)});
    }
    out << tab.str();
    for (const auto &a : branches) {
        if (a.state_preserving.kind == StatePreserving::Kind::CandidateVerified) {
            out << "candidates on branch " << t.branch_label(a.branch) << ":";
            for (const auto &c : a.state_preserving.candidates) {
                out << " [" << c.name << "]";
            }
            out << "\n";
        }
        if (a.state_preserving.kind == StatePreserving::Kind::PolytopeFamily) {
            const auto &f = a.state_preserving.family;
            out << "parameter box on branch " << t.branch_label(a.branch) << ":";
            for (size_t k = 0; k < f.lower.size(); k++) {
                out << " l" << k << " in [" << f.lower[k].to_short_string() << ", "
                    << f.upper[k].to_short_string() << "]";
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string verification_text(const VerificationReport &r, size_t branch, const TheorySpec &t) {
    std::ostringstream out;
    out << t.name() << ", branch " << t.branch_label(branch) << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    out << "  locality residuals: " << (residuals_zero(r) ? "all zero" : "nonzero") << "\n";
    for (const auto &v : r.membership_violations) {
        if (v.probe.size() == 0) {
            out << "  violation: " << v.constraint << "\n";
        } else {
            out << "  " << short_vec(v.probe) << " -> " << short_vec(v.image) << " violates " << v.constraint
                << "\n";
        }
    }
    if (r.probe_set_incomplete) {
        out << "  note: membership checked on a finite probe set only\n";
    }
    return out.str();
}

std::string theorem_text(const TheoremReport &r, const TheorySpec &t) {
    std::ostringstream out;
    out << restriction_text(r.restriction, t);
    out << solver_text(r.branches, t);
    for (const auto &f : r.findings) {
        out << "finding: " << f << "\n";
    }
    out << r.summary << "\n";
    return out.str();
}

std::string monotonicity_text(const MonotonicityReport &r, const TheorySpec &less, const TheorySpec &more) {
    std::ostringstream out;
    Table tab({"branch", less.name(), more.name()});
    for (size_t b = 0; b < r.less_restricted_dims.size(); b++) {
        tab.add({less.branch_label(b), std::to_string(r.less_restricted_dims[b]),
                 std::to_string(r.more_restricted_dims[b])});
    }
    out << "allowed family dimension\n" << tab.str();
    for (const auto &f : r.findings) {
        out << "finding: " << f << "\n";
    }
    out << (r.holds() ? (r.strict ? "more restriction, strictly more freedom" : "more restriction, no less freedom")
                      : "monotonicity violated")
        << "\n";
    return out.str();
}

}  // namespace gptdyn
