#include "gptdyn/polytope.hpp"

#include <functional>
#include <set>
#include <string>

#include "gptdyn/errors.hpp"
#include "gptdyn/linalg.hpp"

namespace gptdyn {

namespace {

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(size_t n, size_t k, const std::function<void(const std::vector<size_t> &)> &fn) {
    if (k > n) {
        return;
    }
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; i++) {
        idx[i] = i;
    }
    while (true) {
        fn(idx);
        size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            i--;
        }
        if (i == 0) {
            return;
        }
        idx[i - 1]++;
        for (size_t j = i; j < k; j++) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

Halfspace primitive(const RVec &a, const Rat &b) {
    mpz_class l = b.den();
    for (const auto &x : a) {
        mpz_class den = x.den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Rat lr(mpq_class(l, 1));
    Halfspace h{a * lr, b * lr};
    mpz_class g = h.b.num();
    for (const auto &x : h.a) {
        mpz_class num = x.num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    if (g != 0 && g != 1) {
        Rat inv(mpq_class(1, g));
        h.a *= inv;
        h.b *= inv;
    }
    return h;
}

std::string key(const Halfspace &h) { return to_string(h.a) + "<=" + h.b.to_string(); }

std::vector<RVec> dedupe(const std::vector<RVec> &points) {
    std::vector<RVec> out;
    std::set<std::string> seen;
    for (const auto &p : points) {
        if (seen.insert(to_string(p)).second) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

std::vector<Halfspace> facet_enumeration(const std::vector<RVec> &vertices_in) {
    if (vertices_in.empty()) {
        throw ArgumentError("facet_enumeration: no vertices");
    }
    const size_t dim = vertices_in.front().size();
    if (dim > kMaxBruteForceDim) {
        throw UnsupportedError("facet_enumeration: ambient dimension " + std::to_string(dim) +
                               " exceeds " + std::to_string(kMaxBruteForceDim) +
                               "; supply an H-representation instead");
    }
    for (const auto &v : vertices_in) {
        if (v.size() != dim) {
            throw ArgumentError("facet_enumeration: vertices of unequal length");
        }
    }
    const std::vector<RVec> vertices = dedupe(vertices_in);

    std::vector<RVec> diffs;
    for (size_t i = 1; i < vertices.size(); i++) {
        diffs.push_back(vertices[i] - vertices[0]);
    }
    const size_t hull_dim = span_rank(diffs);
    std::vector<RVec> normals;
    if (hull_dim < dim) {
        normals = diffs.empty() ? nullspace(RMat(0, dim)) : nullspace(RMat::from_rows(diffs, dim));
    }

    std::vector<Halfspace> out;
    std::set<std::string> seen;
    auto emit = [&](const RVec &a, const Rat &b) {
        Halfspace h = primitive(a, b);
        if (seen.insert(key(h)).second) {
            out.push_back(std::move(h));
        }
    };

    for (const auto &c : normals) {
        Rat b = dot(c, vertices[0]);
        emit(c, b);
        emit(-c, -b);
    }
    if (hull_dim == 0) {
        return out;
    }

    for_each_subset(vertices.size(), hull_dim, [&](const std::vector<size_t> &subset) {
        std::vector<RVec> rows = normals;
        for (size_t i = 1; i < subset.size(); i++) {
            rows.push_back(vertices[subset[i]] - vertices[subset[0]]);
        }
        auto ker = nullspace(RMat::from_rows(rows, dim));
        if (ker.size() != 1) {
            return;
        }
        const RVec &a = ker.front();
        Rat b = dot(a, vertices[subset[0]]);
        bool below = true;
        bool above = true;
        for (const auto &v : vertices) {
            Rat s = dot(a, v);
            below = below && s <= b;
            above = above && s >= b;
        }
        if (below) {
            emit(a, b);
        } else if (above) {
            emit(-a, -b);
        }
    });
    return out;
}

std::vector<RVec> vertex_enumeration(const std::vector<Halfspace> &halfspaces, size_t dim) {
    if (dim > kMaxBruteForceDim) {
        throw UnsupportedError("vertex_enumeration: dimension " + std::to_string(dim) +
                               " exceeds " + std::to_string(kMaxBruteForceDim));
    }
    for (const auto &h : halfspaces) {
        if (h.a.size() != dim) {
            throw ArgumentError("vertex_enumeration: halfspace of wrong length");
        }
    }
    std::vector<RVec> found;
    for_each_subset(halfspaces.size(), dim, [&](const std::vector<size_t> &subset) {
        RMat a(dim, dim);
        RVec b(dim);
        for (size_t i = 0; i < dim; i++) {
            a.set_row(i, halfspaces[subset[i]].a);
            b[i] = halfspaces[subset[i]].b;
        }
        auto sol = solve_linear(a, b);
        if (!sol || sol->rank != dim) {
            return;
        }
        for (const auto &h : halfspaces) {
            if (dot(h.a, sol->particular) > h.b) {
                return;
            }
        }
        found.push_back(sol->particular);
    });
    return dedupe(found);
}

}  // namespace gptdyn
