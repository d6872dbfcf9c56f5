#include "gptdyn/linalg.hpp"

#include "gptdyn/errors.hpp"

namespace gptdyn {

namespace {

struct Rref {
    RMat m;
    std::vector<size_t> pivot_cols;
};

// Reduced row echelon form of the first `ncols` columns; any further columns
// (an augmented right-hand side) are carried along.
Rref reduce(RMat m, size_t ncols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < m.rows(); c++) {
        size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) {
            p++;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != r) {
            for (size_t k = 0; k < m.cols(); k++) {
                std::swap(m(p, k), m(r, k));
            }
        }
        Rat inv = Rat(1) / m(r, c);
        for (size_t k = c; k < m.cols(); k++) {
            m(r, k) *= inv;
        }
        for (size_t i = 0; i < m.rows(); i++) {
            if (i == r || m(i, c).is_zero()) {
                continue;
            }
            Rat f = m(i, c);
            for (size_t k = c; k < m.cols(); k++) {
                if (!m(r, k).is_zero()) {
                    m(i, k) -= f * m(r, k);
                }
            }
        }
        pivots.push_back(c);
        r++;
    }
    return {std::move(m), std::move(pivots)};
}

std::vector<RVec> kernel_from_rref(const Rref &rr, size_t ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : rr.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<RVec> basis;
    for (size_t f = 0; f < ncols; f++) {
        if (is_pivot[f]) {
            continue;
        }
        RVec v(ncols);
        v[f] = 1;
        for (size_t i = 0; i < rr.pivot_cols.size(); i++) {
            v[rr.pivot_cols[i]] = -rr.m(i, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::optional<LinearSolution> solve_linear(const RMat &a, const RVec &b) {
    if (a.rows() != b.size()) {
        throw ArgumentError("solve_linear: A has " + std::to_string(a.rows()) + " rows but b has " +
                            std::to_string(b.size()) + " entries");
    }
    RMat aug(a.rows(), a.cols() + 1);
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            aug(r, c) = a(r, c);
        }
        aug(r, a.cols()) = b[r];
    }
    Rref rr = reduce(std::move(aug), a.cols());
    size_t rk = rr.pivot_cols.size();
    for (size_t r = rk; r < a.rows(); r++) {
        if (!rr.m(r, a.cols()).is_zero()) {
            return std::nullopt;
        }
    }
    LinearSolution sol;
    sol.rank = rk;
    sol.particular = RVec(a.cols());
    for (size_t i = 0; i < rk; i++) {
        sol.particular[rr.pivot_cols[i]] = rr.m(i, a.cols());
    }
    sol.nullspace_basis = kernel_from_rref(rr, a.cols());
    return sol;
}

std::vector<RVec> nullspace(const RMat &a) {
    Rref rr = reduce(a, a.cols());
    return kernel_from_rref(rr, a.cols());
}

size_t rank(const RMat &a) { return reduce(a, a.cols()).pivot_cols.size(); }

size_t span_rank(const std::vector<RVec> &vectors) {
    if (vectors.empty()) {
        return 0;
    }
    return rank(RMat::from_rows(vectors, vectors.front().size()));
}

std::vector<RVec> span_basis(const std::vector<RVec> &vectors) {
    if (vectors.empty()) {
        return {};
    }
    // Pivot columns of the matrix with the vectors as columns pick out an
    // independent subset.
    Rref rr = reduce(RMat::from_columns(vectors, vectors.front().size()), vectors.size());
    std::vector<RVec> out;
    for (auto c : rr.pivot_cols) {
        out.push_back(vectors[c]);
    }
    return out;
}

size_t affine_hull_dim(const std::vector<RVec> &points) {
    if (points.empty()) {
        throw ArgumentError("affine_hull_dim: empty point list");
    }
    std::vector<RVec> diffs;
    for (size_t i = 1; i < points.size(); i++) {
        if (points[i].size() != points[0].size()) {
            throw ArgumentError("affine_hull_dim: points of unequal length");
        }
        diffs.push_back(points[i] - points[0]);
    }
    return span_rank(diffs);
}

}  // namespace gptdyn
