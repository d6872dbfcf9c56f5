#include "gptdyn/stochastic.hpp"

#include "gptdyn/errors.hpp"
#include "gptdyn/linalg.hpp"
#include "gptdyn/lp.hpp"

namespace gptdyn {

bool is_column_stochastic(const RMat &s) {
    if (s.rows() != s.cols() || s.rows() == 0) {
        return false;
    }
    for (size_t c = 0; c < s.cols(); c++) {
        Rat sum;
        for (size_t r = 0; r < s.rows(); r++) {
            if (s(r, c).sign() < 0) {
                return false;
            }
            sum += s(r, c);
        }
        if (sum != Rat(1)) {
            return false;
        }
    }
    return true;
}

RVec stochastic_fixed_point(const RMat &s) {
    if (!is_column_stochastic(s)) {
        throw ArgumentError("stochastic_fixed_point: matrix is not square column-stochastic");
    }
    const size_t n = s.rows();
    const std::vector<RVec> basis = nullspace(s - RMat::identity(n));
    // Perron-Frobenius guarantees a non-empty kernel for a stochastic matrix.
    const size_t k = basis.size();

    // v = B c with v >= 0 (as -B c <= 0) and sum(v) = 1.
    RMat b = RMat::from_columns(basis, n);
    LinearSystem eq{RMat(1, k), RVec{Rat(1)}};
    for (size_t j = 0; j < k; j++) {
        Rat col_sum;
        for (size_t r = 0; r < n; r++) {
            col_sum += b(r, j);
        }
        eq.a(0, j) = col_sum;
    }
    LinearSystem ineq{b * Rat(-1), RVec(n)};
    RVec c = lp_feasible_point(k, eq, ineq);
    if (c.empty()) {
        throw ArgumentError("stochastic_fixed_point: no probability fixed point found");
    }
    return b * c;
}

}  // namespace gptdyn
