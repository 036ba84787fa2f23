#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "grapeshot/oracle.hpp"
#include "helpers.hpp"

using namespace grapeshot;

namespace {

// Independent brute force: count d-cubes by filtering all k-subsets of
// closed cells through pairwise disjointness.
long brute_count(const Graph& g, int k, int dim) {
    int ncells = g.nv() + g.ne();
    std::vector<std::set<int>> occ(static_cast<size_t>(ncells));
    for (int v = 0; v < g.nv(); ++v) occ[static_cast<size_t>(v)] = {v};
    for (int e = 0; e < g.ne(); ++e)
        occ[static_cast<size_t>(g.nv() + e)] = {g.edges[static_cast<size_t>(e)].first,
                                                g.edges[static_cast<size_t>(e)].second};
    long count = 0;
    std::vector<int> sel;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(sel.size()) == k) {
            int d = 0;
            for (int c : sel)
                if (c >= g.nv()) ++d;
            if (d == dim) ++count;
            return;
        }
        for (int c = from; c < ncells; ++c) {
            bool ok = true;
            for (int s : sel)
                for (int x : occ[static_cast<size_t>(s)])
                    if (occ[static_cast<size_t>(c)].count(x)) ok = false;
            if (!ok) continue;
            sel.push_back(c);
            self(self, c + 1);
            sel.pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace

TEST_CASE("subdivision for the discretized model") {
    Graph p = subdivide_for(testing::interval(), 1);
    CHECK(p.ne() == 2);
    Graph q = subdivide_for(testing::interval(), 2);
    CHECK(q.ne() == 3);
    Graph c = subdivide_for(testing::circle(), 2);
    CHECK(c.ne() == 3);
    CHECK(c.nv() == 3);
    CHECK(circumference(c) == 3);
    Graph s = subdivide_for(testing::elementary(0, 3), 2);
    CHECK(s.ne() == 9);
}

TEST_CASE("cube counts match a brute-force enumeration") {
    for (int k = 1; k <= 3; ++k) {
        for (const Graph& base :
             {testing::interval(), testing::elementary(0, 3), testing::circle()}) {
            Graph g = subdivide_for(base, k);
            CubeComplex cx = discretized_config_complex(g, k);
            for (int d = 0; d <= cx.max_dim(); ++d)
                CHECK(cx.count(d) == brute_count(g, k, d));
        }
    }
    SECTION("three-edge path with two points") {
        Graph p = subdivide_for(testing::interval(), 2);
        CubeComplex cx = discretized_config_complex(p, 2);
        CHECK(cx.count(0) == brute_count(p, 2, 0));
        CHECK(cx.count(0) == 6);
        CHECK(cx.count(1) == 6);
        CHECK(cx.count(2) == 1);
    }
    SECTION("zero points is a single empty cube") {
        Graph p = subdivide_for(testing::interval(), 1);
        CubeComplex cx = discretized_config_complex(p, 0);
        CHECK(cx.count(0) == 1);
        BettiList b = cube_betti(p, cx);
        REQUIRE(b.betti.size() == 1);
        CHECK(b.betti[0] == 1);
    }
}

TEST_CASE("cube boundary squares to zero") {
    for (const Graph& base : {testing::elementary(1, 1), testing::theta()}) {
        Graph g = subdivide_for(base, 2);
        CubeComplex cx = discretized_config_complex(g, 2);
        for (int d = 2; d <= cx.max_dim(); ++d) {
            SparseIntMatrix a = cube_boundary_matrix(g, cx, d);
            SparseIntMatrix b = cube_boundary_matrix(g, cx, d - 1);
            // b * a == 0
            for (int c = 0; c < a.ncols; ++c) {
                std::map<int, Int> acc;
                for (auto& [mid, va] : a.col[static_cast<size_t>(c)])
                    for (auto& [row, vb] : b.col[static_cast<size_t>(mid)]) acc[row] += va * vb;
                for (auto& [row, v] : acc) CHECK(v == 0);
            }
        }
    }
}

TEST_CASE("one point recovers the graph") {
    for (const Graph& base : {testing::elementary(1, 1), testing::elementary(2, 0),
                              testing::theta(), testing::tree_two_essential()}) {
        Graph g = subdivide_for(base, 1);
        CubeComplex cx = discretized_config_complex(g, 1);
        BettiList b = cube_betti(g, cx);
        long b1 = base.ne() - base.nv() + 1;  // connected
        REQUIRE(b.betti.size() >= 1);
        CHECK(b.betti[0] == 1);
        CHECK((b.betti.size() > 1 ? b.betti[1] : 0) == b1);
    }
}

TEST_CASE("two points on the interval and the 3-star") {
    Graph iv = subdivide_for(testing::interval(), 2);
    BettiList bi = cube_betti(iv, discretized_config_complex(iv, 2));
    REQUIRE(bi.betti.size() >= 1);
    CHECK(bi.betti[0] == 1);
    CHECK((bi.betti.size() > 1 ? bi.betti[1] : 0) == 0);

    Graph st = subdivide_for(testing::elementary(0, 3), 2);
    BettiList bs = cube_betti(st, discretized_config_complex(st, 2));
    REQUIRE(bs.betti.size() == 2);
    CHECK(bs.betti[0] == 1);
    CHECK(bs.betti[1] == 1);  // equals the closed form at two points
}

TEST_CASE("cross checks against the Świątkowski pipeline") {
    CHECK(cross_check(testing::elementary(1, 1), 2).match);
    CHECK(cross_check(testing::theta(), 2).match);
    CHECK(cross_check(testing::tree_two_essential(), 3).match);
    CHECK(cross_check(testing::elementary(2, 0), 2).match);
    CHECK(cross_check(testing::circle(), 2).match);
}

TEST_CASE("torsion agrees between the two pipelines") {
    // Two points on the complete graph K5: H_1 carries 2-torsion, visible
    // to both the cubical model and the algebraic one.
    Graph k5 = build_graph(
        {"1", "2", "3", "4", "5"},
        {{"a", "1", "2"}, {"b", "1", "3"}, {"c", "1", "4"}, {"d", "1", "5"},
         {"e", "2", "3"}, {"f", "2", "4"}, {"g", "2", "5"}, {"h", "3", "4"},
         {"i", "3", "5"}, {"j", "4", "5"}});
    CrossCheckReport rep = cross_check(k5, 2);
    CHECK(rep.match);
    REQUIRE(rep.cube_torsion.size() >= 2);
    CHECK(rep.cube_torsion[1] == std::vector<Int>{2});
}
