#ifndef GRAPESHOT_SWIATKOWSKI_HPP
#define GRAPESHOT_SWIATKOWSKI_HPP

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "grapeshot/grapes.hpp"
#include "grapeshot/graph.hpp"
#include "grapeshot/linalg.hpp"
#include "grapeshot/polyring.hpp"

namespace grapeshot {

// Local generator attached to one essential vertex. Vert and Half are the
// Świątkowski generators; ConeA / ConeAbar extend the complex to the mapping
// cone, indexed by a triple of 1-based half-edge positions i<j<k at the
// vertex.
enum class GenKind : int { Vert = 0, Half = 1, ConeA = 2, ConeAbar = 3 };

struct LocalGen {
    int vertex = -1;
    GenKind kind = GenKind::Vert;
    int h = -1;           // Half: global half-edge id
    int i = 0, j = 0, k = 0;  // ConeA / ConeAbar triple

    int degree() const {
        switch (kind) {
            case GenKind::Vert: return 0;
            case GenKind::Half: return 1;
            case GenKind::ConeA: return 1;
            case GenKind::ConeAbar: return 2;
        }
        return 0;
    }
    int weight() const {
        switch (kind) {
            case GenKind::Vert: return 1;
            case GenKind::Half: return 1;
            case GenKind::ConeA: return 2;
            case GenKind::ConeAbar: return 2;
        }
        return 0;
    }

    auto key() const { return std::make_tuple(vertex, static_cast<int>(kind), h, i, j, k); }
    bool operator==(const LocalGen& o) const { return key() == o.key(); }
    bool operator<(const LocalGen& o) const { return key() < o.key(); }
};

// One Świątkowski (or cone) basis element: an edge monomial wedged with at
// most one local generator per essential vertex, locals kept in vertex order.
struct SBasisElement {
    Monomial mono;
    std::vector<LocalGen> locals;

    int degree() const {
        int d = 0;
        for (const auto& l : locals) d += l.degree();
        return d;
    }
    int weight() const {
        int w = mono.degree();
        for (const auto& l : locals) w += l.weight();
        return w;
    }
    bool operator==(const SBasisElement& o) const {
        return locals == o.locals && mono == o.mono;
    }
    bool operator<(const SBasisElement& o) const {
        if (locals != o.locals) return locals < o.locals;
        return mono < o.mono;
    }
    static SBasisElement unit() { return SBasisElement{}; }
    bool is_unit() const { return locals.empty() && mono.is_one(); }
};

struct SChain {
    std::map<SBasisElement, Int> terms;

    static SChain of(const SBasisElement& b, const Int& c = 1) {
        SChain s;
        s.add_term(b, c);
        return s;
    }
    void add_term(const SBasisElement& b, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(b);
        if (it == terms.end()) {
            terms.emplace(b, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    SChain operator+(const SChain& o) const {
        SChain out = *this;
        for (auto& [b, c] : o.terms) out.add_term(b, c);
        return out;
    }
    SChain operator-(const SChain& o) const {
        SChain out = *this;
        for (auto& [b, c] : o.terms) out.add_term(b, -c);
        return out;
    }
    SChain operator*(const Int& c) const {
        SChain out;
        if (c == 0) return out;
        for (auto& [b, v] : terms) out.terms[b] = v * c;
        return out;
    }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const SChain& o) const { return terms == o.terms; }

    // Multiply by a polynomial in the edge variables.
    SChain scale(const Poly& p) const {
        SChain out;
        for (auto& [m, c] : p.terms)
            for (auto& [b, v] : terms) {
                SBasisElement nb = b;
                nb.mono = b.mono.times(m);
                out.add_term(nb, c * v);
            }
        return out;
    }

    // Wedge with a chain supported on disjoint essential vertices. Factors
    // are multiplied in increasing vertex order, so no Koszul sign appears
    // here; callers must wedge in vertex order.
    SChain wedge_disjoint(const SChain& o) const {
        SChain out;
        for (auto& [b1, c1] : terms)
            for (auto& [b2, c2] : o.terms) {
                SBasisElement nb;
                nb.mono = b1.mono.times(b2.mono);
                nb.locals = b1.locals;
                nb.locals.insert(nb.locals.end(), b2.locals.begin(), b2.locals.end());
                std::sort(nb.locals.begin(), nb.locals.end(),
                          [](const LocalGen& a, const LocalGen& b) {
                              return a.vertex < b.vertex;
                          });
                out.add_term(nb, c1 * c2);
            }
        return out;
    }
};

struct STensorChain {
    std::map<std::pair<SBasisElement, SBasisElement>, Int> terms;

    void add_term(const SBasisElement& a, const SBasisElement& b, const Int& c) {
        if (c == 0) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    STensorChain operator+(const STensorChain& o) const {
        STensorChain out = *this;
        for (auto& [k, c] : o.terms) out.add_term(k.first, k.second, c);
        return out;
    }
    STensorChain operator-(const STensorChain& o) const {
        STensorChain out = *this;
        for (auto& [k, c] : o.terms) out.add_term(k.first, k.second, -c);
        return out;
    }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const STensorChain& o) const { return terms == o.terms; }
};

struct STripleChain {
    std::map<std::tuple<SBasisElement, SBasisElement, SBasisElement>, Int> terms;
    void add_term(const SBasisElement& a, const SBasisElement& b, const SBasisElement& c,
                  const Int& v) {
        if (v == 0) return;
        auto key = std::make_tuple(a, b, c);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, v);
        } else {
            it->second += v;
            if (it->second == 0) terms.erase(it);
        }
    }
    bool operator==(const STripleChain& o) const { return terms == o.terms; }
};

// The bigraded complex: the Świątkowski complex of a graph, or its mapping
// cone over a grapes structure. All chains carry exact integer coefficients.
class SComplex {
  public:
    static SComplex swiatkowski(const Graph& g) {
        SComplex c;
        c.g_ = g;
        for (int v : g.essential_vertices()) {
            VertexGens vg;
            vg.vertex = v;
            vg.halves = g.rotation[static_cast<size_t>(v)];
            std::sort(vg.halves.begin(), vg.halves.end());
            c.vertices_.push_back(std::move(vg));
        }
        return c;
    }

    // Mapping cone: adds, per essential vertex, generators a_{ijk} and
    // abar_{ijk} for all position triples i<j<k, with d(abar) = a - alpha.
    static SComplex mapping_cone(const GrapesStructure& gs) {
        SComplex c;
        c.g_ = gs.graph;
        c.cone_ = true;
        for (const auto& lab : gs.labels) {
            VertexGens vg;
            vg.vertex = lab.vertex;
            vg.halves = c.g_.rotation[static_cast<size_t>(lab.vertex)];
            std::sort(vg.halves.begin(), vg.halves.end());
            vg.labels = lab;
            const int n = lab.positions();
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) vg.triples.push_back({i, j, k});
            c.vertices_.push_back(std::move(vg));
        }
        return c;
    }

    const Graph& graph() const { return g_; }
    bool is_cone() const { return cone_; }
    int essential_count() const { return static_cast<int>(vertices_.size()); }
    int max_degree() const { return essential_count() * (cone_ ? 2 : 1); }

    // All basis elements of the given bigrading, in deterministic order
    // (vertex order, local generator order, then monomial order).
    std::vector<SBasisElement> basis(int degree, int weight) const {
        std::vector<SBasisElement> out;
        if (degree < 0 || weight < 0) return out;
        std::vector<LocalGen> locals;
        enumerate_locals(0, degree, weight, locals, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    SChain boundary(const SBasisElement& b) const {
        SChain out;
        int sign = 1;
        for (size_t pos = 0; pos < b.locals.size(); ++pos) {
            const LocalGen& l = b.locals[pos];
            switch (l.kind) {
                case GenKind::Vert:
                case GenKind::ConeA:
                    break;
                case GenKind::Half: {
                    // d(h) = e(h) - v(h)
                    SBasisElement t1 = b;
                    t1.locals.erase(t1.locals.begin() + static_cast<long>(pos));
                    t1.mono = t1.mono.times(Monomial::var(l.h / 2));
                    out.add_term(t1, sign);
                    SBasisElement t2 = b;
                    t2.locals[pos] = LocalGen{l.vertex, GenKind::Vert, -1, 0, 0, 0};
                    out.add_term(t2, -sign);
                    break;
                }
                case GenKind::ConeAbar: {
                    // d(abar) = a - alpha
                    SBasisElement t1 = b;
                    t1.locals[pos] = LocalGen{l.vertex, GenKind::ConeA, -1, l.i, l.j, l.k};
                    out.add_term(t1, sign);
                    for (const auto& [edge, half, coef] : alpha_terms(l)) {
                        SBasisElement t2 = b;
                        t2.locals[pos] = LocalGen{l.vertex, GenKind::Half, half, 0, 0, 0};
                        t2.mono = t2.mono.times(Monomial::var(edge));
                        out.add_term(t2, -sign * coef);
                    }
                    break;
                }
            }
            if (l.degree() % 2 == 1) sign = -sign;
        }
        return out;
    }

    SChain boundary(const SChain& c) const {
        SChain out;
        for (auto& [b, v] : c.terms) {
            SChain d = boundary(b);
            for (auto& [b2, v2] : d.terms) out.add_term(b2, v * v2);
        }
        return out;
    }

    // Coshuffle comultiplication on one basis element: distribute the
    // monomial with sha* and the local generators over all splittings, with
    // Koszul signs counted among odd-degree generators.
    STensorChain coshuffle(const SBasisElement& b) const {
        struct Partial {
            std::vector<LocalGen> left, right;
            int dl = 0, dr = 0;
            Int coef = 1;
        };
        std::vector<Partial> parts(1);
        for (const auto& l : b.locals) {
            std::vector<Partial> next;
            for (const auto& p : parts) {
                for (const auto& [x, y, c] : local_coproduct(l)) {
                    Partial np = p;
                    int dx = 0, dy = 0;
                    if (x.vertex >= 0) {
                        dx = x.degree();
                        np.left.push_back(x);
                    }
                    if (y.vertex >= 0) {
                        dy = y.degree();
                        np.right.push_back(y);
                    }
                    if ((dx % 2) && (p.dr % 2)) np.coef = -np.coef;
                    np.coef *= c;
                    np.dl += dx;
                    np.dr += dy;
                    next.push_back(std::move(np));
                }
            }
            parts = std::move(next);
        }
        TensorPoly tp = sha_star(b.mono);
        STensorChain out;
        for (const auto& p : parts)
            for (auto& [mk, mc] : tp.terms) {
                SBasisElement lhs{mk.first, p.left};
                SBasisElement rhs{mk.second, p.right};
                out.add_term(lhs, rhs, p.coef * mc);
            }
        return out;
    }

    STensorChain coshuffle(const SChain& c) const {
        STensorChain out;
        for (auto& [b, v] : c.terms) {
            STensorChain t = coshuffle(b);
            for (auto& [k, v2] : t.terms) out.add_term(k.first, k.second, v * v2);
        }
        return out;
    }

    // (d x 1 + 1 x d) with the Koszul sign on the second factor.
    STensorChain tensor_boundary(const STensorChain& t) const {
        STensorChain out;
        for (auto& [key, c] : t.terms) {
            SChain dl = boundary(key.first);
            for (auto& [b, v] : dl.terms) out.add_term(b, key.second, c * v);
            SChain dr = boundary(key.second);
            Int s = (key.first.degree() % 2) ? -1 : 1;
            for (auto& [b, v] : dr.terms) out.add_term(key.first, b, c * v * s);
        }
        return out;
    }

    // Matrix of the boundary from basis (i,k) to basis (i-1,k).
    SparseIntMatrix boundary_matrix(int i, int k) const {
        auto dom = basis(i, k);
        auto cod = basis(i - 1, k);
        std::map<SBasisElement, int> idx;
        for (size_t r = 0; r < cod.size(); ++r) idx.emplace(cod[r], static_cast<int>(r));
        SparseIntMatrix M(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        for (size_t c = 0; c < dom.size(); ++c) {
            SChain d = boundary(dom[c]);
            for (auto& [b, v] : d.terms) M.add(idx.at(b), static_cast<int>(c), v);
        }
        return M;
    }

    std::string to_string(const SBasisElement& b) const {
        std::string s = b.mono.is_one() && !b.locals.empty()
                            ? ""
                            : monomial_to_string(b.mono, g_.enames);
        for (const auto& l : b.locals) {
            if (!s.empty()) s += "*";
            switch (l.kind) {
                case GenKind::Vert: s += g_.vnames[static_cast<size_t>(l.vertex)]; break;
                case GenKind::Half: s += "h(" + g_.half_edge_name(l.h) + ")"; break;
                case GenKind::ConeA:
                    s += "a[" + g_.vnames[static_cast<size_t>(l.vertex)] + ";" +
                         std::to_string(l.i) + std::to_string(l.j) + std::to_string(l.k) + "]";
                    break;
                case GenKind::ConeAbar:
                    s += "abar[" + g_.vnames[static_cast<size_t>(l.vertex)] + ";" +
                         std::to_string(l.i) + std::to_string(l.j) + std::to_string(l.k) + "]";
                    break;
            }
        }
        if (s.empty()) s = "1";
        return s;
    }

    std::string to_string(const SChain& c) const {
        if (c.terms.empty()) return "0";
        std::string s;
        for (auto& [b, v] : c.terms) {
            Int a = v;
            if (s.empty()) {
                if (a < 0) {
                    s += "-";
                    a = -a;
                }
            } else {
                s += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            if (a != 1) s += a.get_str() + "*";
            s += to_string(b);
        }
        return s;
    }

  private:
    struct VertexGens {
        int vertex = -1;
        std::vector<int> halves;                // sorted global half-edge ids
        VertexLabels labels;                    // cone only
        std::vector<std::array<int, 3>> triples;  // cone only
    };

    Graph g_;
    bool cone_ = false;
    std::vector<VertexGens> vertices_;

    // alpha_{ijk} at the triple's vertex: sum over cyclic (x,y,z) of
    // e(h_x) * (h_y - h_z), as (edge, half, coefficient) terms.
    std::vector<std::tuple<int, int, Int>> alpha_terms(const LocalGen& l) const {
        const VertexLabels* lab = nullptr;
        for (const auto& vg : vertices_)
            if (vg.vertex == l.vertex) lab = &vg.labels;
        std::vector<std::tuple<int, int, Int>> out;
        auto h = [&](int pos) { return lab->half_edges[static_cast<size_t>(pos - 1)]; };
        auto e = [&](int pos) { return h(pos) / 2; };
        int i = l.i, j = l.j, k = l.k;
        out.emplace_back(e(i), h(j), 1);
        out.emplace_back(e(i), h(k), -1);
        out.emplace_back(e(j), h(k), 1);
        out.emplace_back(e(j), h(i), -1);
        out.emplace_back(e(k), h(i), 1);
        out.emplace_back(e(k), h(j), -1);
        return out;
    }

    // Coproduct of a single local generator as (left, right, coeff) terms;
    // vertex = -1 marks the unit factor.
    std::vector<std::tuple<LocalGen, LocalGen, Int>> local_coproduct(const LocalGen& l) const {
        LocalGen none;
        std::vector<std::tuple<LocalGen, LocalGen, Int>> out;
        out.emplace_back(l, none, 1);
        out.emplace_back(none, l, 1);
        if (l.kind == GenKind::ConeAbar) {
            const VertexLabels* lab = nullptr;
            for (const auto& vg : vertices_)
                if (vg.vertex == l.vertex) lab = &vg.labels;
            auto hgen = [&](int pos) {
                return LocalGen{l.vertex, GenKind::Half,
                                lab->half_edges[static_cast<size_t>(pos - 1)], 0, 0, 0};
            };
            // H_{ijk} = h_i(x)(h_j - h_k) + h_j(x)(h_k - h_i) + h_k(x)(h_i - h_j),
            // entering the coproduct of abar with a minus sign: the
            // coderivation rule against d(abar) = a - alpha forces it, since
            // Sha(alpha) = alpha(x)1 + 1(x)alpha + (d(x)1 + 1(x)d)H.
            out.emplace_back(hgen(l.i), hgen(l.j), -1);
            out.emplace_back(hgen(l.i), hgen(l.k), 1);
            out.emplace_back(hgen(l.j), hgen(l.k), -1);
            out.emplace_back(hgen(l.j), hgen(l.i), 1);
            out.emplace_back(hgen(l.k), hgen(l.i), -1);
            out.emplace_back(hgen(l.k), hgen(l.j), 1);
        }
        return out;
    }

    void enumerate_locals(size_t vi, int deg_left, int wt_left,
                          std::vector<LocalGen>& locals,
                          std::vector<SBasisElement>& out) const {
        if (deg_left < 0 || wt_left < 0) return;
        if (vi == vertices_.size()) {
            if (deg_left != 0) return;
            append_monomials(locals, wt_left, out);
            return;
        }
        const VertexGens& vg = vertices_[vi];
        // No generator at this vertex.
        enumerate_locals(vi + 1, deg_left, wt_left, locals, out);
        auto try_gen = [&](const LocalGen& l) {
            locals.push_back(l);
            enumerate_locals(vi + 1, deg_left - l.degree(), wt_left - l.weight(), locals, out);
            locals.pop_back();
        };
        try_gen(LocalGen{vg.vertex, GenKind::Vert, -1, 0, 0, 0});
        for (int h : vg.halves) try_gen(LocalGen{vg.vertex, GenKind::Half, h, 0, 0, 0});
        if (cone_)
            for (const auto& t : vg.triples) {
                try_gen(LocalGen{vg.vertex, GenKind::ConeA, -1, t[0], t[1], t[2]});
                try_gen(LocalGen{vg.vertex, GenKind::ConeAbar, -1, t[0], t[1], t[2]});
            }
    }

    void append_monomials(const std::vector<LocalGen>& locals, int degree,
                          std::vector<SBasisElement>& out) const {
        const int ne = g_.ne();
        std::vector<int> exps(static_cast<size_t>(ne), 0);
        auto rec = [&](auto&& self, int var, int left) -> void {
            if (var == ne - 1) {
                exps[static_cast<size_t>(var)] = left;
                Monomial m;
                for (int e = 0; e < ne; ++e)
                    if (exps[static_cast<size_t>(e)] > 0)
                        m.vars.emplace_back(e, exps[static_cast<size_t>(e)]);
                out.push_back(SBasisElement{m, locals});
                return;
            }
            for (int e = 0; e <= left; ++e) {
                exps[static_cast<size_t>(var)] = e;
                self(self, var + 1, left - e);
            }
        };
        if (ne == 0) {
            if (degree == 0) out.push_back(SBasisElement{Monomial::one(), locals});
            return;
        }
        rec(rec, 0, degree);
    }
};

}  // namespace grapeshot

#endif
