#ifndef GRAPESHOT_GRAPH_HPP
#define GRAPESHOT_GRAPH_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grapeshot/common.hpp"

namespace grapeshot {

// Finite multigraph with loops, half-edge structure and a rotation system.
// Immutable after construction; ids are opaque strings, internal indices are
// dense integers. Half-edge 2*e+side lives at the `side` endpoint of edge e.
struct Graph {
    std::vector<std::string> vnames;
    std::vector<std::string> enames;
    std::vector<std::pair<int, int>> edges;     // endpoint vertex indices
    std::vector<std::vector<int>> rotation;     // per vertex, cyclic half-edge order
    int root_vertex = -1;                       // optional oriented root
    int root_edge = -1;
    bool rotation_adjusted = false;             // loop halves were made adjacent

    int nv() const { return static_cast<int>(vnames.size()); }
    int ne() const { return static_cast<int>(enames.size()); }

    int half_edge_edge(int h) const { return h / 2; }
    int half_edge_side(int h) const { return h % 2; }
    int half_edge_vertex(int h) const {
        const auto& e = edges[static_cast<size_t>(h / 2)];
        return (h % 2 == 0) ? e.first : e.second;
    }
    std::string half_edge_name(int h) const {
        return enames[static_cast<size_t>(h / 2)] + ":" + (h % 2 ? "1" : "0");
    }

    bool is_loop(int e) const {
        return edges[static_cast<size_t>(e)].first == edges[static_cast<size_t>(e)].second;
    }

    int valence(int v) const { return static_cast<int>(rotation[static_cast<size_t>(v)].size()); }

    bool is_essential(int v) const { return valence(v) >= 3; }

    std::vector<int> essential_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < nv(); ++v)
            if (is_essential(v)) out.push_back(v);
        return out;
    }

    int vertex_index(const std::string& name) const {
        for (int v = 0; v < nv(); ++v)
            if (vnames[static_cast<size_t>(v)] == name) return v;
        throw GraphError("unknown vertex id '" + name + "'");
    }
    int edge_index(const std::string& name) const {
        for (int e = 0; e < ne(); ++e)
            if (enames[static_cast<size_t>(e)] == name) return e;
        throw GraphError("unknown edge id '" + name + "'");
    }

    bool connected() const {
        if (nv() == 0) return true;
        std::vector<bool> seen(static_cast<size_t>(nv()), false);
        std::vector<int> stack = {0};
        seen[0] = true;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int h : rotation[static_cast<size_t>(v)]) {
                int e = h / 2;
                int w = edges[static_cast<size_t>(e)].first +
                        edges[static_cast<size_t>(e)].second - v;
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        return cnt == nv();
    }
};

struct EdgeSpec {
    std::string id, u, v;
};

// Build a graph from a declaration. Rotation defaults to input edge order at
// each vertex; a provided rotation must list each incident half-edge exactly
// once. The two half-edges of a loop are forced to be adjacent in rotation
// (minimal reorder, flagged in `rotation_adjusted`).
inline Graph build_graph(const std::vector<std::string>& vertices,
                         const std::vector<EdgeSpec>& edge_specs,
                         const std::map<std::string, std::vector<std::string>>* rotation = nullptr,
                         const std::optional<std::pair<std::string, std::string>>& root =
                             std::nullopt) {
    Graph g;
    std::set<std::string> seen_v, seen_e;
    for (const auto& v : vertices) {
        if (!seen_v.insert(v).second) throw GraphError("duplicate vertex id '" + v + "'");
        g.vnames.push_back(v);
    }
    for (const auto& es : edge_specs) {
        if (!seen_e.insert(es.id).second)
            throw GraphError("duplicate edge id '" + es.id + "'");
        if (seen_v.count(es.id))
            throw GraphError("edge id '" + es.id + "' collides with a vertex id");
        if (!seen_v.count(es.u))
            throw GraphError("edge '" + es.id + "' endpoint '" + es.u + "' not declared");
        if (!seen_v.count(es.v))
            throw GraphError("edge '" + es.id + "' endpoint '" + es.v + "' not declared");
        g.enames.push_back(es.id);
        g.edges.emplace_back(g.vertex_index(es.u), g.vertex_index(es.v));
    }
    g.rotation.assign(static_cast<size_t>(g.nv()), {});
    if (rotation == nullptr) {
        for (int e = 0; e < g.ne(); ++e) {
            g.rotation[static_cast<size_t>(g.edges[static_cast<size_t>(e)].first)].push_back(2 * e);
            g.rotation[static_cast<size_t>(g.edges[static_cast<size_t>(e)].second)].push_back(2 * e + 1);
        }
    } else {
        // Map half-edge names ("edge:0" / "edge:1") back to indices.
        std::map<std::string, int> hid;
        for (int e = 0; e < g.ne(); ++e) {
            hid[g.half_edge_name(2 * e)] = 2 * e;
            hid[g.half_edge_name(2 * e + 1)] = 2 * e + 1;
        }
        std::vector<bool> used(static_cast<size_t>(2 * g.ne()), false);
        for (const auto& [vname, hs] : *rotation) {
            int v = g.vertex_index(vname);
            for (const auto& hname : hs) {
                auto it = hid.find(hname);
                if (it == hid.end())
                    throw GraphError("unknown half-edge id '" + hname + "' in rotation");
                int h = it->second;
                if (g.half_edge_vertex(h) != v)
                    throw GraphError("half-edge '" + hname + "' is not incident to '" +
                                     vname + "'");
                if (used[static_cast<size_t>(h)])
                    throw GraphError("half-edge '" + hname + "' listed twice");
                used[static_cast<size_t>(h)] = true;
                g.rotation[static_cast<size_t>(v)].push_back(h);
            }
        }
        for (int h = 0; h < 2 * g.ne(); ++h)
            if (!used[static_cast<size_t>(h)])
                throw GraphError("rotation missing half-edge '" + g.half_edge_name(h) + "'");
    }

    // Loop half-edge pairing: make the two halves of each loop cyclically
    // adjacent, reordering minimally if the input rotation violates this.
    for (int v = 0; v < g.nv(); ++v) {
        auto& rot = g.rotation[static_cast<size_t>(v)];
        const int n = static_cast<int>(rot.size());
        for (int e = 0; e < g.ne(); ++e) {
            if (!g.is_loop(e) || g.edges[static_cast<size_t>(e)].first != v) continue;
            int p0 = -1, p1 = -1;
            for (int i = 0; i < n; ++i) {
                if (rot[static_cast<size_t>(i)] == 2 * e) p0 = i;
                if (rot[static_cast<size_t>(i)] == 2 * e + 1) p1 = i;
            }
            int lo = std::min(p0, p1), hi = std::max(p0, p1);
            bool adjacent = (hi == lo + 1) || (lo == 0 && hi == n - 1);
            if (!adjacent) {
                rot.erase(rot.begin() + hi);
                int first = rot[static_cast<size_t>(lo)];
                int second = first == 2 * e ? 2 * e + 1 : 2 * e;
                rot.insert(rot.begin() + lo + 1, second);
                g.rotation_adjusted = true;
            }
        }
    }

    if (root) {
        g.root_vertex = g.vertex_index(root->first);
        g.root_edge = g.edge_index(root->second);
        const auto& ep = g.edges[static_cast<size_t>(g.root_edge)];
        if (ep.first != g.root_vertex && ep.second != g.root_vertex)
            throw GraphError("root edge '" + root->second + "' is not incident to root vertex");
    }
    return g;
}

// Remove every bivalent vertex by merging its two incident edges. A cycle
// consisting entirely of bivalent vertices becomes a single-vertex loop.
inline Graph smooth_bivalent(Graph g) {
    for (;;) {
        int victim = -1;
        for (int v = 0; v < g.nv(); ++v) {
            if (g.valence(v) != 2) continue;
            const auto& rot = g.rotation[static_cast<size_t>(v)];
            if (rot[0] / 2 == rot[1] / 2) continue;  // lone loop vertex: keep
            victim = v;
            break;
        }
        if (victim < 0) return g;

        const auto& rot = g.rotation[static_cast<size_t>(victim)];
        int ha = rot[0], hb = rot[1];
        int ea = ha / 2, eb = hb / 2;
        if (ea > eb) {
            std::swap(ha, hb);
            std::swap(ea, eb);
        }
        // Far ends of the merged edge: the opposite half-edges of ea and eb.
        int far_a = ha ^ 1, far_b = hb ^ 1;
        int x = g.half_edge_vertex(far_a), y = g.half_edge_vertex(far_b);

        Graph out;
        std::vector<int> vmap(static_cast<size_t>(g.nv()), -1);
        for (int v = 0; v < g.nv(); ++v) {
            if (v == victim) continue;
            vmap[static_cast<size_t>(v)] = out.nv();
            out.vnames.push_back(g.vnames[static_cast<size_t>(v)]);
        }
        // Edge list: ea's slot becomes the merged edge (keeping ea's id), eb
        // is dropped, everything else kept in order.
        std::vector<int> emap(static_cast<size_t>(g.ne()), -1);
        // Map old half-edge id -> new half-edge id for the surviving stubs.
        std::map<int, int> hmap;
        for (int e = 0; e < g.ne(); ++e) {
            if (e == eb) continue;
            int ne_idx = out.ne();
            emap[static_cast<size_t>(e)] = ne_idx;
            out.enames.push_back(g.enames[static_cast<size_t>(e)]);
            if (e == ea) {
                out.edges.emplace_back(vmap[static_cast<size_t>(x)], vmap[static_cast<size_t>(y)]);
                hmap[far_a] = 2 * ne_idx;
                hmap[far_b] = 2 * ne_idx + 1;
            } else {
                const auto& ep = g.edges[static_cast<size_t>(e)];
                out.edges.emplace_back(vmap[static_cast<size_t>(ep.first)],
                                       vmap[static_cast<size_t>(ep.second)]);
                hmap[2 * e] = 2 * ne_idx;
                hmap[2 * e + 1] = 2 * ne_idx + 1;
            }
        }
        out.rotation.assign(static_cast<size_t>(out.nv()), {});
        for (int v = 0; v < g.nv(); ++v) {
            if (v == victim) continue;
            for (int h : g.rotation[static_cast<size_t>(v)])
                out.rotation[static_cast<size_t>(vmap[static_cast<size_t>(v)])].push_back(hmap.at(h));
        }
        if (g.root_vertex >= 0 && g.root_vertex != victim &&
            emap[static_cast<size_t>(g.root_edge)] >= 0) {
            out.root_vertex = vmap[static_cast<size_t>(g.root_vertex)];
            out.root_edge = g.root_edge == eb ? emap[static_cast<size_t>(ea)]
                                              : emap[static_cast<size_t>(g.root_edge)];
        }
        out.rotation_adjusted = g.rotation_adjusted;
        g = std::move(out);
    }
}

// Maximum number of edges in a simple cycle; 0 for a forest. Loops are
// cycles of length 1, parallel edges give cycles of length 2.
inline int circumference(const Graph& g) {
    int best = 0;
    for (int e = 0; e < g.ne(); ++e)
        if (g.is_loop(e)) best = std::max(best, 1);

    const int n = g.nv();
    std::vector<bool> on_path(static_cast<size_t>(n), false);
    std::vector<bool> edge_used(static_cast<size_t>(g.ne()), false);

    // Enumerate simple cycles through their minimal vertex s.
    for (int s = 0; s < n; ++s) {
        auto dfs = [&](auto&& self, int u, int used) -> void {
            for (int h : g.rotation[static_cast<size_t>(u)]) {
                int e = h / 2;
                if (g.is_loop(e) || edge_used[static_cast<size_t>(e)]) continue;
                int w = g.edges[static_cast<size_t>(e)].first +
                        g.edges[static_cast<size_t>(e)].second - u;
                if (w == s) {
                    if (used >= 1) best = std::max(best, used + 1);
                    continue;
                }
                if (w < s || on_path[static_cast<size_t>(w)]) continue;
                on_path[static_cast<size_t>(w)] = true;
                edge_used[static_cast<size_t>(e)] = true;
                self(self, w, used + 1);
                on_path[static_cast<size_t>(w)] = false;
                edge_used[static_cast<size_t>(e)] = false;
            }
        };
        on_path[static_cast<size_t>(s)] = true;
        dfs(dfs, s, 0);
        on_path[static_cast<size_t>(s)] = false;
    }
    return best;
}

inline int topological_circumference(const Graph& g) {
    return circumference(smooth_bivalent(g));
}

// Subdivide every edge into `pieces` segments (new interior vertices).
inline Graph subdivide_edges(const Graph& g, int pieces) {
    if (pieces <= 1) return g;
    std::vector<std::string> vnames = g.vnames;
    std::vector<EdgeSpec> especs;
    for (int e = 0; e < g.ne(); ++e) {
        const std::string& id = g.enames[static_cast<size_t>(e)];
        std::string prev = g.vnames[static_cast<size_t>(g.edges[static_cast<size_t>(e)].first)];
        for (int t = 1; t < pieces; ++t) {
            std::string mid = id + "#" + std::to_string(t);
            vnames.push_back(mid);
            especs.push_back({id + "/" + std::to_string(t), prev, mid});
            prev = mid;
        }
        especs.push_back({id + "/" + std::to_string(pieces), prev,
                          g.vnames[static_cast<size_t>(g.edges[static_cast<size_t>(e)].second)]});
    }
    return build_graph(vnames, especs);
}

}  // namespace grapeshot

#endif
