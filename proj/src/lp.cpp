#include "gptdyn/lp.hpp"

#include <optional>
#include <string>
#include <vector>

#include "gptdyn/errors.hpp"

namespace gptdyn {

namespace {

void check_system(const LinearSystem &s, size_t n, const char *what) {
    if (s.a.rows() == 0 && s.b.size() == 0) {
        return;
    }
    if (s.a.cols() != n || s.a.rows() != s.b.size()) {
        throw ArgumentError(std::string("lp_optimize: ") + what + " system is " +
                            std::to_string(s.a.rows()) + "x" + std::to_string(s.a.cols()) +
                            " with " + std::to_string(s.b.size()) + " right-hand sides, expected " +
                            std::to_string(n) + " columns");
    }
}

// Dense tableau in equality form: every row reads sum_j t(i,j) y_j = rhs_i,
// y >= 0, and column basis[i] is the unit vector e_i.
class Tableau {
   public:
    Tableau(RMat t, RVec rhs, std::vector<size_t> basis)
        : t_(std::move(t)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

    size_t rows() const { return t_.rows(); }
    size_t cols() const { return t_.cols(); }
    const std::vector<size_t> &basis() const { return basis_; }
    const Rat &rhs(size_t i) const { return rhs_[i]; }
    const Rat &at(size_t i, size_t j) const { return t_(i, j); }

    void pivot(size_t r, size_t c) {
        Rat inv = Rat(1) / t_(r, c);
        for (size_t k = 0; k < cols(); k++) {
            if (!t_(r, k).is_zero()) {
                t_(r, k) *= inv;
            }
        }
        rhs_[r] *= inv;
        for (size_t i = 0; i < rows(); i++) {
            if (i == r || t_(i, c).is_zero()) {
                continue;
            }
            Rat f = t_(i, c);
            for (size_t k = 0; k < cols(); k++) {
                if (!t_(r, k).is_zero()) {
                    t_(i, k) -= f * t_(r, k);
                }
            }
            rhs_[i] -= f * rhs_[r];
        }
        basis_[r] = c;
    }

    void drop_row(size_t r) {
        RMat t(rows() - 1, cols());
        RVec rhs(rows() - 1);
        std::vector<size_t> basis;
        for (size_t i = 0, o = 0; i < rows(); i++) {
            if (i == r) {
                continue;
            }
            t.set_row(o, t_.row(i));
            rhs[o] = rhs_[i];
            basis.push_back(basis_[i]);
            o++;
        }
        t_ = std::move(t);
        rhs_ = std::move(rhs);
        basis_ = std::move(basis);
    }

    // Minimizes cost . y over columns j with allowed[j]. Returns false when unbounded.
    bool minimize(const RVec &cost, const std::vector<bool> &allowed) {
        while (true) {
            std::optional<size_t> enter;
            for (size_t j = 0; j < cols() && !enter; j++) {
                if (!allowed[j]) {
                    continue;
                }
                Rat reduced = cost[j];
                for (size_t i = 0; i < rows(); i++) {
                    if (!t_(i, j).is_zero() && !cost[basis_[i]].is_zero()) {
                        reduced -= cost[basis_[i]] * t_(i, j);
                    }
                }
                if (reduced.sign() < 0) {
                    enter = j;
                }
            }
            if (!enter) {
                return true;
            }
            std::optional<size_t> leave;
            Rat best;
            for (size_t i = 0; i < rows(); i++) {
                if (t_(i, *enter).sign() <= 0) {
                    continue;
                }
                Rat ratio = rhs_[i] / t_(i, *enter);
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) {
                return false;
            }
            pivot(*leave, *enter);
        }
    }

    RVec solution() const {
        RVec y(cols());
        for (size_t i = 0; i < rows(); i++) {
            y[basis_[i]] = rhs_[i];
        }
        return y;
    }

   private:
    RMat t_;
    RVec rhs_;
    std::vector<size_t> basis_;
};

}  // namespace

LpResult lp_optimize(const RVec &objective, const LinearSystem &eq, const LinearSystem &ineq,
                     Sense sense) {
    const size_t n = objective.size();
    check_system(eq, n, "equality");
    check_system(ineq, n, "inequality");
    const size_t meq = eq.b.size();
    const size_t min = ineq.b.size();
    const size_t m = meq + min;

    // Columns: x+ (n), x- (n), slacks (min), artificials (one per row that
    // cannot start with its slack basic).
    const size_t slack0 = 2 * n;
    const size_t art0 = slack0 + min;
    std::vector<size_t> art_rows;
    for (size_t i = 0; i < m; i++) {
        bool slack_ok = i >= meq && ineq.b[i - meq].sign() >= 0;
        if (!slack_ok) {
            art_rows.push_back(i);
        }
    }
    const size_t ncols = art0 + art_rows.size();

    RMat t(m, ncols);
    RVec rhs(m);
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; i++) {
        const bool is_eq = i < meq;
        const RMat &a = is_eq ? eq.a : ineq.a;
        const size_t r = is_eq ? i : i - meq;
        Rat b = is_eq ? eq.b[r] : ineq.b[r];
        Rat flip = b.sign() < 0 ? Rat(-1) : Rat(1);
        for (size_t j = 0; j < n; j++) {
            t(i, j) = flip * a(r, j);
            t(i, n + j) = -t(i, j);
        }
        if (!is_eq) {
            t(i, slack0 + r) = flip;
            basis[i] = slack0 + r;
        }
        rhs[i] = flip * b;
    }
    for (size_t k = 0; k < art_rows.size(); k++) {
        t(art_rows[k], art0 + k) = 1;
        basis[art_rows[k]] = art0 + k;
    }

    Tableau tab(std::move(t), std::move(rhs), std::move(basis));
    std::vector<bool> allowed(ncols, true);

    if (!art_rows.empty()) {
        RVec phase1(ncols);
        for (size_t k = 0; k < art_rows.size(); k++) {
            phase1[art0 + k] = 1;
        }
        tab.minimize(phase1, allowed);
        Rat infeas;
        for (size_t i = 0; i < tab.rows(); i++) {
            if (tab.basis()[i] >= art0) {
                infeas += tab.rhs(i);
            }
        }
        if (!infeas.is_zero()) {
            return {LpStatus::Infeasible, Rat(), RVec()};
        }
        // Drive zero-valued artificials out of the basis; rows where that is
        // impossible are redundant.
        for (size_t i = 0; i < tab.rows();) {
            if (tab.basis()[i] < art0) {
                i++;
                continue;
            }
            std::optional<size_t> col;
            for (size_t j = 0; j < art0 && !col; j++) {
                if (!tab.at(i, j).is_zero()) {
                    col = j;
                }
            }
            if (col) {
                tab.pivot(i, *col);
                i++;
            } else {
                tab.drop_row(i);
            }
        }
        for (size_t j = art0; j < ncols; j++) {
            allowed[j] = false;
        }
    }

    RVec cost(ncols);
    for (size_t j = 0; j < n; j++) {
        Rat c = sense == Sense::Max ? -objective[j] : objective[j];
        cost[j] = c;
        cost[n + j] = -c;
    }
    if (!tab.minimize(cost, allowed)) {
        return {LpStatus::Unbounded, Rat(), RVec()};
    }
    RVec y = tab.solution();
    RVec x(n);
    for (size_t j = 0; j < n; j++) {
        x[j] = y[j] - y[n + j];
    }
    return {LpStatus::Optimal, dot(objective, x), std::move(x)};
}

RVec lp_feasible_point(size_t nvars, const LinearSystem &eq, const LinearSystem &ineq) {
    LpResult r = lp_optimize(RVec(nvars), eq, ineq, Sense::Min);
    return r.status == LpStatus::Optimal ? r.witness : RVec();
}

}  // namespace gptdyn
