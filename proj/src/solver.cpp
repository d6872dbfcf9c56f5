#include "gptdyn/solver.hpp"

#include <array>
#include <set>
#include <stdexcept>

#include "gptdyn/errors.hpp"
#include "gptdyn/linalg.hpp"
#include "gptdyn/lp.hpp"
#include "gptdyn/stochastic.hpp"

namespace gptdyn {

namespace {

void check_branch(const TheorySpec &t, size_t b) {
    if (b >= t.N()) {
        throw ArgumentError("branch " + std::to_string(b) + " out of range for " +
                            t.branch().label + " with " + std::to_string(t.N()) + " outcomes");
    }
}

RVec vec_of(const RMat &m) {
    RVec v(m.rows() * m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            v[r * m.cols() + c] = m(r, c);
        }
    }
    return v;
}

RMat mat_of(const RVec &v, size_t d) {
    RMat m(d, d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            m(r, c) = v[r * d + c];
        }
    }
    return m;
}

// Scales a row so that its first nonzero coefficient has absolute value 1.
std::optional<Halfspace> normalise_row(RVec a, Rat b) {
    for (const auto &x : a) {
        if (!x.is_zero()) {
            Rat s = Rat(1) / abs(x);
            return Halfspace{a * s, b * s};
        }
    }
    return std::nullopt;
}

}  // namespace

ConstraintSystem assemble_constraints(const TheorySpec &t, size_t acting_branch) {
    check_branch(t, acting_branch);
    const size_t d = t.d();
    if (!t.state_space().is_ball() && span_rank(t.state_space().vertices) < d) {
        throw DegenerateTheoryError("states of '" + t.name() + "' span only " +
                                    std::to_string(span_rank(t.state_space().vertices)) +
                                    " of d = " + std::to_string(d) +
                                    " dimensions; the fiducial set is inconsistent");
    }
    ConstraintSystem cs;
    cs.acting_branch = acting_branch;
    cs.d = d;
    for (size_t b = 0; b < t.N(); b++) {
        if (b == acting_branch) {
            continue;
        }
        for (const auto &g : conditional_state_set(t, b).generators) {
            cs.fixed_vectors.push_back(g.entries);
        }
    }
    cs.fixed_basis = span_basis(cs.fixed_vectors);
    for (size_t i = 0; i < t.N(); i++) {
        cs.z_rows.push_back(i);
    }

    const size_t rows = cs.fixed_basis.size() * d + cs.z_rows.size() * d;
    cs.equality_matrix = RMat(rows, d * d);
    cs.equality_rhs = RVec(rows);
    size_t r = 0;
    for (const auto &eta : cs.fixed_basis) {
        // (T eta)_i = eta_i
        for (size_t i = 0; i < d; i++, r++) {
            for (size_t j = 0; j < d; j++) {
                cs.equality_matrix(r, i * d + j) = eta[j];
            }
            cs.equality_rhs[r] = eta[i];
        }
    }
    for (size_t i : cs.z_rows) {
        for (size_t j = 0; j < d; j++, r++) {
            cs.equality_matrix(r, i * d + j) = 1;
            cs.equality_rhs[r] = i == j ? Rat(1) : Rat(0);
        }
    }
    return cs;
}

LinearStage solve_linear_stage(const ConstraintSystem &cs) {
    LinearStage ls;
    ls.identity = RMat::identity(cs.d);
    auto sol = solve_linear(cs.equality_matrix, cs.equality_rhs);
    if (!sol || cs.equality_matrix * vec_of(ls.identity) != cs.equality_rhs) {
        throw std::logic_error("branch-locality equalities exclude the identity");
    }
    for (const auto &v : sol->nullspace_basis) {
        ls.free_directions.push_back(mat_of(v, cs.d));
    }
    return ls;
}

Transformation instantiate(const LinearStage &ls, const RVec &lambda) {
    if (lambda.size() != ls.dim()) {
        throw ArgumentError("instantiate: expected " + std::to_string(ls.dim()) + " parameters");
    }
    Transformation T = ls.identity;
    for (size_t k = 0; k < lambda.size(); k++) {
        if (!lambda[k].is_zero()) {
            T += ls.free_directions[k] * lambda[k];
        }
    }
    return T;
}

StatePreserving impose_state_preservation(const TheorySpec &t, const LinearStage &ls) {
    if (t.state_space().is_ball()) {
        throw NotApplicableError("state preservation on a ball has no finite H-representation; "
                                 "use verify_transformation on candidates");
    }
    const auto &ss = t.state_space();
    if (ss.halfspaces.empty()) {
        throw UnsupportedError("theory '" + t.name() + "' has no H-representation");
    }
    const size_t k = ls.dim();
    StatePreserving out;
    if (k == 0) {
        out.kind = StatePreserving::Kind::UniqueIdentity;
        return out;
    }

    // Membership of T(lambda) v, linear in lambda, for every vertex v:
    //   (a - b e0) . T v <= 0,  -n(Tv) <= 0,  n(Tv) <= 1.
    std::vector<Halfspace> rows;
    std::set<std::string> seen;
    auto add = [&](const RVec &v, const RVec &base, const Rat &bound) {
        // base . Tv = base . v + sum_k lambda_k base . F_k v <= bound
        RVec coeffs(k);
        for (size_t j = 0; j < k; j++) {
            coeffs[j] = dot(base, ls.free_directions[j] * v);
        }
        Rat rhs = bound - dot(base, v);
        auto h = normalise_row(coeffs, rhs);
        if (!h) {
            return;  // constant row; identity is feasible so it holds
        }
        std::string key = to_string(h->a) + "|" + h->b.to_string();
        if (seen.insert(key).second) {
            rows.push_back(std::move(*h));
        }
    };
    const size_t d = t.d();
    const RVec e0 = RVec::unit(d, 0);
    for (const auto &v : ss.vertices) {
        for (const auto &h : ss.halfspaces) {
            add(v, h.a - e0 * h.b, Rat(0));
        }
        add(v, e0 * Rat(-1), Rat(0));
        add(v, e0, Rat(1));
    }

    out.family.halfspaces = rows;
    LinearSystem body{RMat(rows.size(), k), RVec(rows.size())};
    for (size_t i = 0; i < rows.size(); i++) {
        body.a.set_row(i, rows[i].a);
        body.b[i] = rows[i].b;
    }

    // Rows tight at lambda = 0 define the local cone {A_t lambda <= 0}, which
    // has the same dimension as the family. Maximising sum(s) subject to
    // A_t lambda + s <= 0, 0 <= s <= 1 leaves s_i = 0 exactly on the implicit
    // equalities.
    std::vector<size_t> tight;
    for (size_t i = 0; i < rows.size(); i++) {
        if (rows[i].b.is_zero()) {
            tight.push_back(i);
        }
    }
    std::vector<RVec> implicit;
    if (!tight.empty()) {
        const size_t nt = tight.size();
        const size_t nv = k + nt;
        LinearSystem cone{RMat(3 * nt, nv), RVec(3 * nt)};
        RVec objective(nv);
        for (size_t i = 0; i < nt; i++) {
            for (size_t j = 0; j < k; j++) {
                cone.a(i, j) = rows[tight[i]].a[j];
            }
            cone.a(i, k + i) = 1;
            cone.a(nt + i, k + i) = 1;
            cone.b[nt + i] = 1;
            cone.a(2 * nt + i, k + i) = -1;
            objective[k + i] = 1;
        }
        LpResult r = lp_optimize(objective, {}, cone, Sense::Max);
        if (r.status != LpStatus::Optimal) {
            throw std::logic_error("implicit-equality LP did not reach an optimum");
        }
        for (size_t i = 0; i < nt; i++) {
            if (r.witness[k + i].is_zero()) {
                implicit.push_back(rows[tight[i]].a);
            }
        }
    }
    out.family.dim = k - span_rank(implicit);

    out.family.feasible_points.push_back(RVec(k));
    out.family.lower.assign(k, Rat(0));
    out.family.upper.assign(k, Rat(0));
    if (out.family.dim > 0) {
        for (size_t j = 0; j < k; j++) {
            for (Sense sense : {Sense::Min, Sense::Max}) {
                LpResult r = lp_optimize(RVec::unit(k, j), {}, body, sense);
                if (r.status != LpStatus::Optimal) {
                    throw std::logic_error("parameter polytope is unbounded");
                }
                (sense == Sense::Min ? out.family.lower : out.family.upper)[j] = r.optimum;
                out.family.feasible_points.push_back(r.witness);
            }
        }
    }
    out.kind = out.family.dim == 0 ? StatePreserving::Kind::UniqueIdentity
                                   : StatePreserving::Kind::PolytopeFamily;
    return out;
}

std::vector<Candidate> qubit_candidate_family(const TheorySpec &t) {
    if (!t.state_space().is_ball()) {
        throw NotApplicableError("candidate family is defined for ball theories");
    }
    // (<X>, <Y>) blocks; n and <Z> rows stay identity.
    struct Block {
        const char *name;
        Rat a, b, c, e;
    };
    const std::vector<Block> blocks{
        {"rotation 3-4-5", Rat(3, 5), Rat(-4, 5), Rat(4, 5), Rat(3, 5)},
        {"rotation 5-12-13", Rat(5, 13), Rat(-12, 13), Rat(12, 13), Rat(5, 13)},
        {"rotation 8-15-17", Rat(8, 17), Rat(-15, 17), Rat(15, 17), Rat(8, 17)},
        {"rotation quarter turn", Rat(0), Rat(-1), Rat(1), Rat(0)},
        {"reflection <Y>", Rat(1), Rat(0), Rat(0), Rat(-1)},
        {"reflection <X>", Rat(-1), Rat(0), Rat(0), Rat(1)},
        {"reflection X<->Y", Rat(0), Rat(1), Rat(1), Rat(0)},
        {"dephasing 1/2", Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)},
    };
    const RMat to_exp = t.minimal_to_expectation();
    const RMat to_min = t.expectation_to_minimal();
    const size_t x = 1 + t.measurement_index("X");
    const size_t y = 1 + t.measurement_index("Y");
    std::vector<Candidate> out;
    for (const auto &blk : blocks) {
        RMat e = RMat::identity(4);
        e(x, x) = blk.a;
        e(x, y) = blk.b;
        e(y, x) = blk.c;
        e(y, y) = blk.e;
        out.push_back({blk.name, to_min * e * to_exp});
    }
    return out;
}

bool AllowedTransformSet::nontrivial() const {
    switch (state_preserving.kind) {
        case StatePreserving::Kind::UniqueIdentity:
            return false;
        case StatePreserving::Kind::PolytopeFamily:
            return state_preserving.family.dim > 0;
        case StatePreserving::Kind::CandidateVerified:
            for (const auto &c : state_preserving.candidates) {
                if (c.matrix != linear_stage.identity) {
                    return true;
                }
            }
            return false;
    }
    return false;
}

AllowedTransformSet allowed_transform_set(const TheorySpec &t, size_t acting_branch) {
    AllowedTransformSet out;
    out.branch = acting_branch;
    out.linear_stage = solve_linear_stage(assemble_constraints(t, acting_branch));
    if (t.state_space().is_ball()) {
        out.state_preserving.kind = StatePreserving::Kind::CandidateVerified;
        for (auto &c : qubit_candidate_family(t)) {
            if (verify_transformation(t, c.matrix, acting_branch).pass) {
                out.state_preserving.candidates.push_back(std::move(c));
            }
        }
    } else {
        out.state_preserving = impose_state_preservation(t, out.linear_stage);
    }
    out.forced_fixed_count = count_forced_eigenvectors(t, acting_branch);
    return out;
}

namespace {

// Rational points on the unit sphere (inverse stereographic projection of
// integer grid points) plus the poles and the centre, as (n, <Z>, <X>, <Y>)
// probes in expectation order Z, X, Y.
std::vector<std::array<Rat, 3>> sphere_probes() {
    std::vector<std::array<Rat, 3>> out{{Rat(1), Rat(0), Rat(0)},
                                        {Rat(-1), Rat(0), Rat(0)},
                                        {Rat(0), Rat(0), Rat(0)}};
    for (int64_t a = -3; a <= 3; a++) {
        for (int64_t b = -3; b <= 3; b++) {
            Rat den(a * a + b * b + 1);
            // (x, y, z) -> stored as (z, x, y)
            out.push_back({Rat(a * a + b * b - 1) / den, Rat(2 * a) / den, Rat(2 * b) / den});
        }
    }
    return out;
}

void check_ball(const TheorySpec &t, const Transformation &T, VerificationReport &rep) {
    const RMat to_exp = t.minimal_to_expectation();
    const RMat to_min = t.expectation_to_minimal();
    const RMat e = to_exp * T * to_min;
    const size_t z = 1 + t.branch_index();
    const size_t x = 1 + t.measurement_index("X");
    const size_t y = 1 + t.measurement_index("Y");

    auto probe = [&](const Rat &pz, const Rat &px, const Rat &py) {
        RVec s(4);
        s[0] = 1;
        s[z] = pz;
        s[x] = px;
        s[y] = py;
        RVec m = to_min * s;
        RVec img = T * m;
        Membership mem = membership(t, img);
        if (!mem) {
            rep.membership_violations.push_back({m, img, mem.violated});
            return true;
        }
        return false;
    };

    const bool nz_identity = e.row(0) == RVec::unit(4, 0) && e.row(z) == RVec::unit(4, z);
    if (!nz_identity) {
        rep.probe_set_incomplete = true;
        for (const auto &p : sphere_probes()) {
            probe(p[0], p[1], p[2]);
        }
        return;
    }
    // With n and <Z> untouched the image is (n, z, u n + w z + B r). The
    // poles force u = w = 0; then the ball maps into itself iff B is a
    // contraction, i.e. I - B^T B is positive semidefinite.
    const bool offsets_zero =
        e(x, 0).is_zero() && e(y, 0).is_zero() && e(x, z).is_zero() && e(y, z).is_zero();
    if (!offsets_zero) {
        probe(Rat(1), Rat(0), Rat(0));
        probe(Rat(-1), Rat(0), Rat(0));
        return;
    }
    const Rat b00 = e(x, x), b01 = e(x, y), b10 = e(y, x), b11 = e(y, y);
    const Rat p00 = Rat(1) - (b00 * b00 + b10 * b10);
    const Rat p11 = Rat(1) - (b01 * b01 + b11 * b11);
    const Rat p01 = -(b00 * b01 + b10 * b11);
    const bool contraction = p00.sign() >= 0 && p11.sign() >= 0 && (p00 * p11 - p01 * p01).sign() >= 0;
    if (contraction) {
        return;
    }
    size_t before = rep.membership_violations.size();
    for (const auto &p : sphere_probes()) {
        if (probe(p[0], p[1], p[2])) {
            break;
        }
    }
    if (rep.membership_violations.size() == before) {
        rep.membership_violations.push_back(
            {RVec(), RVec(), "(<X>,<Y>) block is not a contraction: I - B^T B is not PSD"});
    }
}

}  // namespace

VerificationReport verify_transformation(const TheorySpec &t, const Transformation &T,
                                         size_t acting_branch) {
    const size_t d = t.d();
    if (T.rows() != d || T.cols() != d) {
        throw ArgumentError("transformation is " + std::to_string(T.rows()) + "x" +
                            std::to_string(T.cols()) + ", expected " + std::to_string(d) + "x" +
                            std::to_string(d));
    }
    ConstraintSystem cs = assemble_constraints(t, acting_branch);
    VerificationReport rep;
    for (const auto &eta : cs.fixed_basis) {
        RVec r = T * eta - eta;
        rep.residuals.insert(rep.residuals.end(), r.begin(), r.end());
    }
    for (size_t i : cs.z_rows) {
        RVec r = T.row(i) - RVec::unit(d, i);
        rep.residuals.insert(rep.residuals.end(), r.begin(), r.end());
    }
    if (t.state_space().is_ball()) {
        check_ball(t, T, rep);
    } else {
        for (const auto &v : t.state_space().vertices) {
            RVec img = T * v;
            Membership mem = membership(t, img);
            if (!mem) {
                rep.membership_violations.push_back({v, img, mem.violated});
            }
        }
    }
    bool zero = true;
    for (const auto &r : rep.residuals) {
        zero = zero && r.is_zero();
    }
    rep.pass = zero && rep.membership_violations.empty();
    return rep;
}

RVec branch_fixed_state(const TheorySpec &t, const Transformation &T, size_t acting_branch) {
    check_branch(t, acting_branch);
    if (t.state_space().is_ball()) {
        throw NotApplicableError("branch_fixed_state works on polytope faces");
    }
    std::vector<RVec> face;
    for (const auto &g : conditional_state_set(t, acting_branch).generators) {
        face.push_back(g.entries);
    }
    const size_t d = t.d();
    const size_t r = face.size();
    const RMat f = RMat::from_columns(face, d);
    // Column i of S: convex weights expressing T v_i in the face vertices.
    RMat s(r, r);
    LinearSystem nonneg{RMat::identity(r) * Rat(-1), RVec(r)};
    for (size_t i = 0; i < r; i++) {
        RVec target = T * face[i];
        LinearSystem eq{RMat(d + 1, r), RVec(d + 1)};
        for (size_t row = 0; row < d; row++) {
            eq.a.set_row(row, f.row(row));
            eq.b[row] = target[row];
        }
        for (size_t j = 0; j < r; j++) {
            eq.a(d, j) = 1;
        }
        eq.b[d] = 1;
        RVec w = lp_feasible_point(r, eq, nonneg);
        if (w.empty()) {
            throw ArgumentError("transformation does not map the branch " +
                                t.branch_label(acting_branch) + " face into itself");
        }
        for (size_t j = 0; j < r; j++) {
            s(j, i) = w[j];
        }
    }
    RVec p = stochastic_fixed_point(s);
    return f * p;
}

size_t count_forced_eigenvectors(const TheorySpec &t, size_t acting_branch) {
    return count_forced_eigenvectors(t, acting_branch, RMat::identity(t.d()));
}

size_t count_forced_eigenvectors(const TheorySpec &t, size_t acting_branch,
                                 const Transformation &T) {
    ConstraintSystem cs = assemble_constraints(t, acting_branch);
    std::vector<RVec> fixed = cs.fixed_basis;
    RestrictionReport rr = classify_restriction(t);
    if (rr.cls == RestrictionClass::FullyConditionallyRestricted) {
        fixed.push_back(conditional_state_set(t, acting_branch).generators.front().entries);
    } else if (rr.cls == RestrictionClass::FullyIndependent) {
        fixed.push_back(branch_fixed_state(t, T, acting_branch));
    }
    return span_rank(fixed);
}

TheoremReport verify_main_theorem(const TheorySpec &t) {
    TheoremReport rep;
    rep.theory = t.name();
    rep.restriction = classify_restriction(t);
    const auto cls = rep.restriction.cls;
    bool any_nontrivial = false;
    for (size_t b = 0; b < t.N(); b++) {
        rep.branches.push_back(allowed_transform_set(t, b));
        const auto &a = rep.branches.back();
        const std::string where = "branch " + t.branch_label(b) + ": ";
        any_nontrivial = any_nontrivial || a.nontrivial();
        if (!verify_transformation(t, a.linear_stage.identity, b).pass) {
            rep.findings.push_back(where + "identity fails verification");
        }
        if (t.M() == 0 || cls == RestrictionClass::FullyIndependent) {
            if (a.state_preserving.kind != StatePreserving::Kind::UniqueIdentity) {
                rep.findings.push_back(where + "theory without conditional restriction admits "
                                               "transformations other than the identity");
            }
            if (a.forced_fixed_count != t.d()) {
                rep.findings.push_back(where + "forced +1 eigenvectors " +
                                       std::to_string(a.forced_fixed_count) + " != d = " +
                                       std::to_string(t.d()));
            }
        } else if (cls == RestrictionClass::FullyConditionallyRestricted) {
            if (!a.nontrivial()) {
                rep.findings.push_back(where + "fully conditionally restricted theory is frozen");
            }
            if (a.forced_fixed_count != t.N()) {
                rep.findings.push_back(where + "forced +1 eigenvectors " +
                                       std::to_string(a.forced_fixed_count) + " != N = " +
                                       std::to_string(t.N()));
            }
        }
    }
    rep.summary = any_nontrivial ? "non-classical dynamics present"
                                 : "frozen: UniqueIdentity on every branch";
    return rep;
}

MonotonicityReport compare_monotonicity(const TheorySpec &less_restricted,
                                        const TheorySpec &more_restricted) {
    if (less_restricted.N() != more_restricted.N() || less_restricted.M() != more_restricted.M()) {
        throw ArgumentError("monotonicity comparison needs theories with equal N and M");
    }
    MonotonicityReport rep;
    auto fl = classify_restriction(less_restricted).per_branch_freedom;
    auto fm = classify_restriction(more_restricted).per_branch_freedom;
    for (size_t b = 0; b < less_restricted.N(); b++) {
        if (fm[b] > fl[b]) {
            throw ArgumentError("'" + more_restricted.name() + "' is less restricted than '" +
                                less_restricted.name() + "' on branch " + std::to_string(b));
        }
        auto dl = allowed_transform_set(less_restricted, b).state_preserving.family.dim;
        auto dm = allowed_transform_set(more_restricted, b).state_preserving.family.dim;
        rep.less_restricted_dims.push_back(dl);
        rep.more_restricted_dims.push_back(dm);
        if (dm < dl) {
            rep.findings.push_back("branch " + less_restricted.branch_label(b) +
                                   ": allowed dimension dropped from " + std::to_string(dl) +
                                   " to " + std::to_string(dm));
        }
        rep.strict = rep.strict || dm > dl;
    }
    return rep;
}

}  // namespace gptdyn
