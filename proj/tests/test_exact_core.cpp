#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"

#include "gptdyn/errors.hpp"
#include "gptdyn/linalg.hpp"
#include "gptdyn/lp.hpp"
#include "gptdyn/polytope.hpp"
#include "gptdyn/stochastic.hpp"
#include "test_util.hpp"

using namespace gptdyn;
using gptdyn::testing::random_rat;

TEST(rational, lowest_terms_and_parse) {
    Rat a(6, -4);
    EXPECT_EQ(a.to_string(), "-3/2");
    EXPECT_EQ(Rat::parse("10/4"), Rat(5, 2));
    EXPECT_EQ(Rat::parse("-7"), Rat(-7));
    EXPECT_EQ(Rat::parse("+3/9").to_string(), "1/3");
    EXPECT_EQ(Rat(0).to_string(), "0/1");
    EXPECT_EQ(Rat(4).to_short_string(), "4");
    EXPECT_THROW(Rat::parse("1/0"), ArgumentError);
    EXPECT_THROW(Rat::parse("0.5"), ArgumentError);
    EXPECT_THROW(Rat::parse("1/-2"), ArgumentError);
    EXPECT_THROW(Rat::parse(""), ArgumentError);
    EXPECT_THROW(Rat(1) / Rat(0), ArgumentError);
}

TEST(rational, exact_arithmetic) {
    Rat third(1, 3);
    EXPECT_EQ(third + third + third, Rat(1));
    EXPECT_LT(Rat(1, 3), Rat(1, 2));
    // No rounding at scale.
    Rat big = Rat::parse("123456789012345678901234567890/7");
    EXPECT_EQ((big * Rat(7)).to_string(), "123456789012345678901234567890/1");
}

TEST(matrix, shapes_checked) {
    RMat a(2, 3);
    RMat b(2, 2);
    EXPECT_THROW(a + b, ArgumentError);
    EXPECT_THROW(a * a, ArgumentError);
    EXPECT_THROW(dot(RVec(2), RVec(3)), ArgumentError);
    EXPECT_EQ((RMat{{1, 2}, {3, 4}} * RVec{1, 1}), (RVec{3, 7}));
}

TEST(solve_linear, scalar) {
    auto sol = solve_linear(RMat{{2}}, RVec{1});
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->particular, (RVec{Rat(1, 2)}));
    EXPECT_TRUE(sol->nullspace_basis.empty());
}

TEST(solve_linear, identity) {
    auto sol = solve_linear(RMat::identity(3), RVec::unit(3, 1));
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->particular, RVec::unit(3, 1));
    EXPECT_TRUE(sol->nullspace_basis.empty());
    EXPECT_EQ(sol->rank, 3u);
}

TEST(solve_linear, underdetermined_checked_by_multiplication) {
    RMat a{{1, 1}};
    RVec b{1};
    auto sol = solve_linear(a, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(a * sol->particular, b);
    ASSERT_EQ(sol->nullspace_basis.size(), 1u);
    EXPECT_TRUE((a * sol->nullspace_basis[0]).is_zero());
    // Spans the same line as (1, -1).
    const RVec &v = sol->nullspace_basis[0];
    EXPECT_EQ(v[0], -v[1]);
    EXPECT_FALSE(v.is_zero());
}

TEST(solve_linear, inconsistent_and_shape_error) {
    EXPECT_FALSE(solve_linear(RMat{{1, 1}, {1, 1}}, RVec{0, 1}));
    EXPECT_THROW(solve_linear(RMat(2, 2), RVec(3)), ArgumentError);
}

TEST(solve_linear, random_systems_satisfy_contract) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; trial++) {
        size_t rows = 1 + rng() % 5;
        size_t cols = 1 + rng() % 5;
        RMat a(rows, cols);
        for (size_t r = 0; r < rows; r++) {
            for (size_t c = 0; c < cols; c++) {
                a(r, c) = (rng() % 3 == 0) ? Rat(0) : random_rat(rng);
            }
        }
        // Consistent right-hand side from a random x.
        RVec x(cols);
        for (auto &e : x) {
            e = random_rat(rng);
        }
        RVec b = a * x;
        auto sol = solve_linear(a, b);
        ASSERT_TRUE(sol);
        EXPECT_EQ(a * sol->particular, b);
        for (const auto &v : sol->nullspace_basis) {
            EXPECT_TRUE((a * v).is_zero());
        }
        EXPECT_EQ(sol->rank + sol->nullspace_basis.size(), cols);
        EXPECT_EQ(span_rank(sol->nullspace_basis), sol->nullspace_basis.size());
    }
}

TEST(nullspace, examples) {
    EXPECT_TRUE(nullspace(RMat::identity(4)).empty());
    EXPECT_EQ(nullspace(RMat(2, 3)).size(), 3u);
    RMat a{{1, 1, 0}, {0, 0, 1}};
    auto ker = nullspace(a);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_TRUE((a * ker[0]).is_zero());
    EXPECT_EQ(ker[0][0], -ker[0][1]);
    EXPECT_TRUE(ker[0][2].is_zero());
}

TEST(affine_hull_dim, examples) {
    EXPECT_EQ(affine_hull_dim({RVec{1, 2}}), 0u);
    EXPECT_EQ(affine_hull_dim({RVec{0, 0}, RVec{1, 0}, RVec{0, 1}}), 2u);
    // gbit branch-certain vertices in (n, <Z>, <X>).
    EXPECT_EQ(affine_hull_dim({RVec{1, 1, 1}, RVec{1, 1, -1}}), 1u);
    EXPECT_THROW(affine_hull_dim({}), ArgumentError);
}

TEST(affine_hull_dim, permutation_invariant) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; trial++) {
        std::vector<RVec> pts;
        size_t n = 1 + rng() % 6;
        for (size_t i = 0; i < n; i++) {
            pts.push_back(RVec{random_rat(rng, 2, 1), random_rat(rng, 2, 1), random_rat(rng, 2, 1)});
        }
        size_t dim = affine_hull_dim(pts);
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_EQ(affine_hull_dim(pts), dim);
    }
}

namespace {

LinearSystem square_box() {
    // |x| <= 1, |z| <= 1
    return {RMat{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, RVec{1, 1, 1, 1}};
}

}  // namespace

TEST(lp_optimize, interval) {
    LinearSystem ineq{RMat{{1}, {-1}}, RVec{1, 0}};
    auto r = lp_optimize(RVec{1}, {}, ineq, Sense::Max);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(r.optimum, Rat(1));
    EXPECT_EQ(r.witness, RVec{1});
}

TEST(lp_optimize, infeasible) {
    LinearSystem ineq{RMat{{1}, {-1}}, RVec{0, -1}};
    EXPECT_EQ(lp_optimize(RVec{1}, {}, ineq, Sense::Max).status, LpStatus::Infeasible);
}

TEST(lp_optimize, unbounded) {
    LinearSystem ineq{RMat{{-1}}, RVec{0}};
    EXPECT_EQ(lp_optimize(RVec{1}, {}, ineq, Sense::Max).status, LpStatus::Unbounded);
}

TEST(lp_optimize, square_against_vertex_oracle) {
    // Oracle: evaluate the objective on the four vertices of the square.
    const std::vector<RVec> corners{RVec{1, 1}, RVec{1, -1}, RVec{-1, 1}, RVec{-1, -1}};
    RVec obj{1, 1};
    Rat best = dot(obj, corners[0]);
    for (const auto &c : corners) {
        best = std::max(best, dot(obj, c));
    }
    ASSERT_EQ(best, Rat(2));

    auto r = lp_optimize(obj, {}, square_box(), Sense::Max);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(r.optimum, best);
    EXPECT_EQ(r.witness, (RVec{1, 1}));
}

TEST(lp_optimize, equalities_and_shape_errors) {
    // max x + z on the square with x = z/2.
    LinearSystem eq{RMat{{2, -1}}, RVec{0}};
    auto r = lp_optimize(RVec{1, 1}, eq, square_box(), Sense::Max);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(r.optimum, Rat(3, 2));
    EXPECT_THROW(lp_optimize(RVec{1}, {}, square_box(), Sense::Max), ArgumentError);
}

TEST(lp_optimize, negated_objective_symmetry_on_random_polytopes) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; trial++) {
        // Random cuts intersected with the box [-2, 2]^3 keep it bounded.
        LinearSystem ineq{RMat(6 + 3, 3), RVec(6 + 3)};
        for (size_t i = 0; i < 3; i++) {
            ineq.a(2 * i, i) = 1;
            ineq.a(2 * i + 1, i) = -1;
            ineq.b[2 * i] = 2;
            ineq.b[2 * i + 1] = 2;
        }
        for (size_t i = 6; i < 9; i++) {
            for (size_t j = 0; j < 3; j++) {
                ineq.a(i, j) = random_rat(rng, 4, 3);
            }
            ineq.b[i] = Rat(1) + abs(random_rat(rng, 4, 3));  // origin stays feasible
        }
        RVec obj{random_rat(rng), random_rat(rng), random_rat(rng)};
        auto mx = lp_optimize(obj, {}, ineq, Sense::Max);
        auto mn = lp_optimize(obj * Rat(-1), {}, ineq, Sense::Min);
        ASSERT_EQ(mx.status, LpStatus::Optimal);
        ASSERT_EQ(mn.status, LpStatus::Optimal);
        EXPECT_EQ(mx.optimum, -mn.optimum);
        // Witness is feasible and attains the optimum exactly.
        RVec lhs = ineq.a * mx.witness;
        for (size_t i = 0; i < lhs.size(); i++) {
            EXPECT_LE(lhs[i], ineq.b[i]);
        }
        EXPECT_EQ(dot(obj, mx.witness), mx.optimum);
    }
}

TEST(stochastic_fixed_point, examples) {
    {
        RMat s = RMat::identity(2);
        RVec v = stochastic_fixed_point(s);
        EXPECT_EQ(s * v, v);
        EXPECT_EQ(v[0] + v[1], Rat(1));
    }
    EXPECT_EQ(stochastic_fixed_point(RMat{{0, 1}, {1, 0}}), (RVec{Rat(1, 2), Rat(1, 2)}));
    RMat s{{Rat(1, 2), Rat(1, 4)}, {Rat(1, 2), Rat(3, 4)}};
    RVec v = stochastic_fixed_point(s);
    EXPECT_EQ(s * v, v);
    EXPECT_EQ(v, (RVec{Rat(1, 3), Rat(2, 3)}));
    EXPECT_THROW(stochastic_fixed_point(RMat{{1, 1}, {1, 0}}), ArgumentError);
    EXPECT_THROW(stochastic_fixed_point(RMat(2, 3)), ArgumentError);
    EXPECT_THROW(stochastic_fixed_point(RMat{{Rat(3, 2), 0}, {Rat(-1, 2), 1}}), ArgumentError);
}

TEST(facet_enumeration, interval) {
    auto h = facet_enumeration({RVec{0}, RVec{1}});
    ASSERT_EQ(h.size(), 2u);
    std::vector<Halfspace> expected{{RVec{1}, Rat(1)}, {RVec{-1}, Rat(0)}};
    for (const auto &e : expected) {
        EXPECT_NE(std::find(h.begin(), h.end(), e), h.end()) << to_string(e.a) << " <= " << e.b;
    }
}

TEST(facet_enumeration, square) {
    auto h = facet_enumeration({RVec{1, 1}, RVec{1, -1}, RVec{-1, 1}, RVec{-1, -1}});
    ASSERT_EQ(h.size(), 4u);
    for (const Halfspace &e : std::vector<Halfspace>{{RVec{1, 0}, 1},
                                                      {RVec{-1, 0}, 1},
                                                      {RVec{0, 1}, 1},
                                                      {RVec{0, -1}, 1}}) {
        EXPECT_NE(std::find(h.begin(), h.end(), e), h.end());
    }
}

TEST(facet_enumeration, octahedron_diamond) {
    std::vector<RVec> verts{RVec{1, 0}, RVec{-1, 0}, RVec{0, 1}, RVec{0, -1}};
    auto h = facet_enumeration(verts);
    ASSERT_EQ(h.size(), 4u);
    for (const auto &f : h) {
        EXPECT_EQ(f.b, Rat(1));
        EXPECT_EQ(abs(f.a[0]), Rat(1));
        EXPECT_EQ(abs(f.a[1]), Rat(1));
    }
    // Each vertex satisfies every facet and is tight on at least two.
    for (const auto &v : verts) {
        int tight = 0;
        for (const auto &f : h) {
            EXPECT_LE(dot(f.a, v), f.b);
            tight += dot(f.a, v) == f.b;
        }
        EXPECT_GE(tight, 2);
    }
}

TEST(facet_enumeration, lower_dimensional_hull_emits_equalities) {
    // A segment inside the plane z = 1.
    auto h = facet_enumeration({RVec{0, 1}, RVec{1, 1}});
    for (const auto &f : h) {
        EXPECT_LE(dot(f.a, RVec{0, 1}), f.b);
        EXPECT_LE(dot(f.a, RVec{1, 1}), f.b);
    }
    // The point (1/2, 2) is off the plane and must be cut off.
    bool cut = false;
    for (const auto &f : h) {
        cut = cut || dot(f.a, RVec{Rat(1, 2), 2}) > f.b;
    }
    EXPECT_TRUE(cut);
}

TEST(facet_enumeration, random_hulls_satisfy_contract) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; trial++) {
        std::vector<RVec> pts;
        size_t n = 4 + rng() % 6;
        for (size_t i = 0; i < n; i++) {
            pts.push_back(RVec{random_rat(rng, 3, 2), random_rat(rng, 3, 2), random_rat(rng, 3, 2)});
        }
        size_t dim = affine_hull_dim(pts);
        auto h = facet_enumeration(pts);
        for (const auto &f : h) {
            size_t tight = 0;
            for (const auto &p : pts) {
                EXPECT_LE(dot(f.a, p), f.b);
                tight += dot(f.a, p) == f.b;
            }
            EXPECT_GE(tight, dim);
        }
        // Round trip through vertex enumeration recovers the hull's vertices,
        // each of which is an input point.
        if (dim == 3) {
            auto verts = vertex_enumeration(h, 3);
            EXPECT_GE(verts.size(), 4u);
            for (const auto &v : verts) {
                EXPECT_NE(std::find(pts.begin(), pts.end(), v), pts.end());
            }
        }
    }
}

TEST(facet_enumeration, dimension_limit) {
    EXPECT_THROW(facet_enumeration({RVec(7), RVec::unit(7, 0)}), UnsupportedError);
    EXPECT_THROW(facet_enumeration({}), ArgumentError);
}
