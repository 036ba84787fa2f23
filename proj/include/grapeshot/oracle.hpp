#ifndef GRAPESHOT_ORACLE_HPP
#define GRAPESHOT_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grapeshot/graph.hpp"
#include "grapeshot/homology.hpp"
#include "grapeshot/linalg.hpp"

namespace grapeshot {

// Safe over-subdivision for the discretized model of k points: every edge is
// cut into k+1 segments.
inline Graph subdivide_for(const Graph& g, int k) {
    return subdivide_edges(g, k + 1);
}

// Discretized configuration space of k points on a subdivided graph: a
// d-cube is a set of k pairwise-disjoint closed cells with exactly d of them
// edges. Cell ids: 0..nv-1 vertices, nv..nv+ne-1 edges.
struct CubeComplex {
    int npoints = 0;
    int nv = 0, ne = 0;
    std::vector<std::vector<std::vector<int>>> cubes;  // per dim, sorted cell ids
    std::vector<std::map<std::vector<int>, int>> index;

    int max_dim() const { return static_cast<int>(cubes.size()) - 1; }

    long count(int d) const {
        if (d < 0 || d > max_dim()) return 0;
        return static_cast<long>(cubes[static_cast<size_t>(d)].size());
    }
};

inline CubeComplex discretized_config_complex(const Graph& g, int k) {
    if (g.nv() > 64)
        throw GraphError("discretized complex limited to 64 vertices after subdivision");
    CubeComplex cx;
    cx.npoints = k;
    cx.nv = g.nv();
    cx.ne = g.ne();
    const int ncells = g.nv() + g.ne();

    // Occupancy mask of each closed cell (vertices of the subdivided graph).
    std::vector<uint64_t> occ(static_cast<size_t>(ncells), 0);
    for (int v = 0; v < g.nv(); ++v) occ[static_cast<size_t>(v)] = 1ull << v;
    for (int e = 0; e < g.ne(); ++e)
        occ[static_cast<size_t>(g.nv() + e)] =
            (1ull << g.edges[static_cast<size_t>(e)].first) |
            (1ull << g.edges[static_cast<size_t>(e)].second);

    cx.cubes.assign(static_cast<size_t>(std::min(k, g.ne()) + 1), {});
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int from, int left, uint64_t mask, int dim) -> void {
        if (left == 0) {
            cx.cubes[static_cast<size_t>(dim)].push_back(chosen);
            return;
        }
        for (int c = from; c < ncells; ++c) {
            if (ncells - c < left) break;
            if (occ[static_cast<size_t>(c)] & mask) continue;
            int ndim = dim + (c >= g.nv() ? 1 : 0);
            if (ndim >= static_cast<int>(cx.cubes.size())) continue;
            chosen.push_back(c);
            self(self, c + 1, left - 1, mask | occ[static_cast<size_t>(c)], ndim);
            chosen.pop_back();
        }
    };
    rec(rec, 0, k, 0, 0);

    cx.index.assign(cx.cubes.size(), {});
    for (size_t d = 0; d < cx.cubes.size(); ++d)
        for (size_t i = 0; i < cx.cubes[d].size(); ++i)
            cx.index[d].emplace(cx.cubes[d][i], static_cast<int>(i));
    return cx;
}

// Boundary matrix from d-cubes to (d-1)-cubes. The j-th edge cell of a cube
// (in ascending cell-id order) carries sign (-1)^j; an edge cell [u,w] with
// u < w contributes its upper endpoint minus its lower one.
inline SparseIntMatrix cube_boundary_matrix(const Graph& g, const CubeComplex& cx, int d) {
    long rows = cx.count(d - 1), cols = cx.count(d);
    SparseIntMatrix M(static_cast<int>(rows), static_cast<int>(cols));
    if (d <= 0 || d > cx.max_dim()) return M;
    for (size_t ci = 0; ci < cx.cubes[static_cast<size_t>(d)].size(); ++ci) {
        const auto& cube = cx.cubes[static_cast<size_t>(d)][ci];
        int edge_no = 0;
        for (size_t p = 0; p < cube.size(); ++p) {
            if (cube[p] < g.nv()) continue;
            int e = cube[p] - g.nv();
            int u = g.edges[static_cast<size_t>(e)].first;
            int w = g.edges[static_cast<size_t>(e)].second;
            if (u > w) std::swap(u, w);
            Int sign = (edge_no % 2 == 0) ? 1 : -1;
            Int neg = -sign;
            for (auto [endpoint, s] :
                 std::vector<std::pair<int, Int>>{{w, sign}, {u, neg}}) {
                std::vector<int> face = cube;
                face[p] = endpoint;
                std::sort(face.begin(), face.end());
                M.add(cx.index[static_cast<size_t>(d - 1)].at(face), static_cast<int>(ci), s);
            }
            ++edge_no;
        }
    }
    return M;
}

struct BettiList {
    std::vector<long> betti;
    std::vector<std::vector<Int>> torsion;  // per degree
};

inline BettiList cube_betti(const Graph& g, const CubeComplex& cx) {
    BettiList out;
    const int top = cx.max_dim();
    std::vector<SnfResult> snf(static_cast<size_t>(top + 2));
    for (int d = 0; d <= top + 1; ++d)
        snf[static_cast<size_t>(d)] = snf_diagonal(cube_boundary_matrix(g, cx, d));
    for (int d = 0; d <= top; ++d) {
        long b = cx.count(d) - snf[static_cast<size_t>(d)].rank -
                 snf[static_cast<size_t>(d + 1)].rank;
        out.betti.push_back(b);
        std::vector<Int> tor;
        for (const Int& v : snf[static_cast<size_t>(d + 1)].diag)
            if (v > 1) tor.push_back(v);
        out.torsion.push_back(tor);
    }
    while (out.betti.size() > 1 && out.betti.back() == 0 && out.torsion.back().empty()) {
        out.betti.pop_back();
        out.torsion.pop_back();
    }
    return out;
}

struct CrossCheckReport {
    int weight = 0;
    std::vector<long> cube;
    std::vector<long> swiatkowski;
    std::vector<std::vector<Int>> cube_torsion;
    std::vector<std::vector<Int>> swiatkowski_torsion;
    bool match = false;
};

// Compare the discretized-model homology with the Świątkowski pipeline at a
// fixed number of points.
inline CrossCheckReport cross_check(const Graph& g, int k) {
    CrossCheckReport rep;
    rep.weight = k;

    Graph sm = smooth_bivalent(g);
    Graph sub = subdivide_for(sm, k);
    CubeComplex cx = discretized_config_complex(sub, k);
    BettiList cb = cube_betti(sub, cx);
    rep.cube = cb.betti;
    rep.cube_torsion = cb.torsion;

    SwContext ctx(sm);
    int maxdeg = std::max(ctx.complex().max_degree(), 1);
    for (int i = 0; i <= maxdeg; ++i) {
        HomologyPresentation h = ctx.homology(i, k);
        rep.swiatkowski.push_back(h.betti);
        rep.swiatkowski_torsion.push_back(h.torsion);
    }
    while (rep.swiatkowski.size() > 1 && rep.swiatkowski.back() == 0 &&
           rep.swiatkowski_torsion.back().empty()) {
        rep.swiatkowski.pop_back();
        rep.swiatkowski_torsion.pop_back();
    }

    auto padded = [](std::vector<long> v, size_t n) {
        v.resize(n, 0);
        return v;
    };
    auto padded_t = [](std::vector<std::vector<Int>> v, size_t n) {
        v.resize(n);
        return v;
    };
    size_t n = std::max(rep.cube.size(), rep.swiatkowski.size());
    rep.match = padded(rep.cube, n) == padded(rep.swiatkowski, n) &&
                padded_t(rep.cube_torsion, n) == padded_t(rep.swiatkowski_torsion, n);
    return rep;
}

}  // namespace grapeshot

#endif
