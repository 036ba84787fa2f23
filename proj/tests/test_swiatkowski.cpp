#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "grapeshot/grapes_theory.hpp"
#include "grapeshot/homology.hpp"
#include "grapeshot/swiatkowski.hpp"
#include "helpers.hpp"

using namespace grapeshot;

namespace {

SBasisElement elem(const Monomial& m, std::vector<LocalGen> locals = {}) {
    return SBasisElement{m, std::move(locals)};
}

LocalGen half(int vertex, int h) { return LocalGen{vertex, GenKind::Half, h, 0, 0, 0}; }
LocalGen vert(int vertex) { return LocalGen{vertex, GenKind::Vert, -1, 0, 0, 0}; }

}  // namespace

TEST_CASE("basis enumeration on the loop-and-leaf graph") {
    Graph g = testing::elementary(1, 1);
    SComplex C = SComplex::swiatkowski(g);
    int v = g.vertex_index("v");

    SECTION("(1,2): each half-edge against each degree-1 monomial") {
        auto basis = C.basis(1, 2);
        REQUIRE(basis.size() == 6);
        std::set<SBasisElement> got(basis.begin(), basis.end());
        std::set<SBasisElement> want;
        for (int e = 0; e < 2; ++e)
            for (int h : g.rotation[static_cast<size_t>(v)])
                want.insert(elem(Monomial::var(e), {half(v, h)}));
        CHECK(got == want);
    }
    SECTION("(0,0) is the empty configuration only") {
        auto basis = C.basis(0, 0);
        REQUIRE(basis.size() == 1);
        CHECK(basis[0].is_unit());
    }
    SECTION("(0,2): quadratic monomials and stabilized vertex classes") {
        auto basis = C.basis(0, 2);
        REQUIRE(basis.size() == 5);
        std::set<SBasisElement> got(basis.begin(), basis.end());
        std::set<SBasisElement> want = {
            elem(Monomial::var(0, 2)), elem(Monomial::var(0).times(Monomial::var(1))),
            elem(Monomial::var(1, 2)), elem(Monomial::var(0), {vert(v)}),
            elem(Monomial::var(1), {vert(v)})};
        CHECK(got == want);
    }
    SECTION("deterministic order") {
        auto b1 = C.basis(1, 3);
        auto b2 = C.basis(1, 3);
        CHECK(b1 == b2);
        CHECK(std::is_sorted(b1.begin(), b1.end()));
    }
}

TEST_CASE("boundary of the local generators") {
    Graph g = testing::elementary(1, 1);
    SComplex C = SComplex::swiatkowski(g);
    int v = g.vertex_index("v");
    int h1 = g.rotation[static_cast<size_t>(v)][0];

    // d(h) = e(h) - v
    SChain d = C.boundary(elem(Monomial::one(), {half(v, h1)}));
    SChain want;
    want.add_term(elem(Monomial::var(h1 / 2)), 1);
    want.add_term(elem(Monomial::one(), {vert(v)}), -1);
    CHECK(d == want);

    // d(v) = 0, d(monomial) = 0
    CHECK(C.boundary(elem(Monomial::one(), {vert(v)})).is_zero());
    CHECK(C.boundary(elem(Monomial::var(0, 3))).is_zero());
}

TEST_CASE("boundary of a wedge uses the Koszul sign") {
    Graph g = testing::theta();
    SComplex C = SComplex::swiatkowski(g);
    int u = 0, w = 1;
    int hu = g.rotation[0][0], hw = g.rotation[1][1];
    SBasisElement b = elem(Monomial::one(), {half(u, hu), half(w, hw)});
    // d(hu ^ hw) = (e(hu) - u) ^ hw - hu ^ (e(hw) - w)
    SChain want;
    want.add_term(elem(Monomial::var(hu / 2), {half(w, hw)}), 1);
    want.add_term(elem(Monomial::one(), {vert(u), half(w, hw)}), -1);
    want.add_term(elem(Monomial::var(hw / 2), {half(u, hu)}), -1);
    want.add_term(elem(Monomial::one(), {half(u, hu), vert(w)}), 1);
    CHECK(C.boundary(b) == want);
}

TEST_CASE("boundary matrix of the interval at (1,1) has no columns") {
    SComplex C = SComplex::swiatkowski(testing::interval());
    CHECK(C.basis(1, 1).empty());
    SparseIntMatrix M = C.boundary_matrix(1, 1);
    CHECK(M.ncols == 0);
    CHECK(M.nrows == 1);  // the single degree-1 monomial
}

TEST_CASE("boundary matrix of the 3-star at (1,1)") {
    Graph g = testing::elementary(0, 3);
    SComplex C = SComplex::swiatkowski(g);
    auto dom = C.basis(1, 1);
    auto cod = C.basis(0, 1);
    REQUIRE(dom.size() == 3);
    REQUIRE(cod.size() == 4);  // three edges and the vertex class
    SparseIntMatrix M = C.boundary_matrix(1, 1);
    CHECK(M.nrows == 4);
    CHECK(M.ncols == 3);
    // Each column is e(h_j) - v: two entries, +1 on an edge row, -1 on the
    // vertex row.
    for (int c = 0; c < 3; ++c) {
        REQUIRE(M.col[static_cast<size_t>(c)].size() == 2);
        Int plus = 0, minus = 0;
        for (auto& [r, val] : M.col[static_cast<size_t>(c)]) {
            if (val > 0) plus = val;
            if (val < 0) minus = val;
        }
        CHECK(plus == 1);
        CHECK(minus == -1);
    }
}

TEST_CASE("d^2 = 0 on every slice up to (3,4)") {
    for (const Graph& g : {testing::elementary(1, 1), testing::theta(),
                           testing::two_vertex_grape(), testing::elementary(2, 0)}) {
        SComplex C = SComplex::swiatkowski(smooth_bivalent(g));
        for (int i = 0; i <= 3; ++i)
            for (int k = 0; k <= 4; ++k)
                for (const auto& b : C.basis(i, k)) {
                    CHECK(C.boundary(C.boundary(b)).is_zero());
                }
    }
}

TEST_CASE("boundary preserves weight and drops degree by one") {
    Graph g = testing::two_vertex_grape();
    SComplex C = SComplex::swiatkowski(g);
    for (int i = 1; i <= 2; ++i)
        for (int k = 0; k <= 4; ++k)
            for (const auto& b : C.basis(i, k)) {
                SChain d = C.boundary(b);
                for (auto& [t, c] : d.terms) {
                    CHECK(t.weight() == k);
                    CHECK(t.degree() == i - 1);
                }
            }
}

TEST_CASE("homology of the interval") {
    SwContext ctx(testing::interval());
    for (int k = 0; k <= 5; ++k) {
        CHECK(ctx.homology(0, k).betti == 1);
        CHECK(ctx.homology(1, k).betti == 0);
    }
}

TEST_CASE("homology of the circle uses the closed form") {
    SwContext ctx(testing::circle());
    CHECK(ctx.shape() == GraphShape::Circle);
    for (int k = 1; k <= 4; ++k) {
        CHECK(ctx.homology(0, k).betti == 1);
        CHECK(ctx.homology(1, k).betti == 1);
        CHECK(ctx.homology(2, k).betti == 0);
    }
    CHECK(ctx.homology(1, 0).betti == 0);
    // A subdivided triangle smooths to the circle.
    SwContext tri(testing::triangle());
    CHECK(tri.shape() == GraphShape::Circle);
    CHECK(tri.homology(1, 2).betti == 1);
}

TEST_CASE("elementary grapes vanish above degree 1") {
    for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {2, 1}}) {
        SwContext ctx(testing::elementary(l, m));
        for (int k = 0; k <= 4; ++k)
            for (int i = 2; i <= 3; ++i) {
                HomologyPresentation h = ctx.homology(i, k);
                CHECK(h.betti == 0);
                CHECK(h.torsion.empty());
            }
    }
}

TEST_CASE("first homology of the loop-and-leaf graph at weight 2") {
    SwContext ctx(testing::elementary(1, 1));
    HomologyPresentation h = ctx.homology(1, 2);
    CHECK(h.betti == betti_closed_form(1, 1, 2));
    CHECK(h.betti == 2);
    CHECK(h.torsion.empty());
    REQUIRE(h.representatives.size() == 2);
    for (const auto& rep : h.representatives)
        CHECK(ctx.complex().boundary(rep).is_zero());
}

TEST_CASE("degree-0 homology has rank one for connected graphs") {
    for (const Graph& g : {testing::theta(), testing::two_vertex_grape(),
                           testing::elementary(3, 0), testing::tree_two_essential()}) {
        SwContext ctx(g);
        for (int k = 0; k <= 4; ++k) {
            HomologyPresentation h = ctx.homology(0, k);
            CHECK(h.betti == 1);
            CHECK(h.torsion.empty());
        }
    }
}

TEST_CASE("rational mode agrees with integer mode without torsion") {
    for (const Graph& g : {testing::elementary(1, 2), testing::theta()}) {
        SwContext ctx(g);
        for (int i = 0; i <= 2; ++i)
            for (int k = 0; k <= 3; ++k) {
                HomologyPresentation h = ctx.homology(i, k);
                if (h.torsion.empty()) CHECK(ctx.betti_rational(i, k) == h.betti);
            }
    }
}

TEST_CASE("homology table matches the slice solver") {
    Graph g = testing::two_vertex_grape();
    auto rows = homology_table(g, 2, 3, Ring::Integers, 2);
    SwContext ctx(g);
    for (const auto& r : rows) {
        HomologyPresentation h = ctx.homology(r.degree, r.weight);
        CHECK(r.betti == h.betti);
        CHECK(r.torsion == h.torsion);
    }
}

TEST_CASE("coordinate functional is a left inverse of the representatives") {
    SwContext ctx(testing::elementary(1, 2));
    for (int i = 0; i <= 1; ++i)
        for (int k = 0; k <= 3; ++k) {
            const SliceData& s = ctx.solver().slice(i, k);
            for (long j = 0; j < s.betti; ++j) {
                auto coords = s.coords(s.representative(static_cast<int>(j)));
                for (long r = 0; r < s.betti; ++r)
                    CHECK(coords[static_cast<size_t>(r)] == (r == j ? 1 : 0));
            }
        }
}

TEST_CASE("disconnected graphs are rejected") {
    Graph g = build_graph({"a", "b", "c", "d"}, {{"e1", "a", "b"}, {"e2", "c", "d"}});
    CHECK_THROWS_AS(SwContext(g), GraphError);
}
