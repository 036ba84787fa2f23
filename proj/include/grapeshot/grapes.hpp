#ifndef GRAPESHOT_GRAPES_HPP
#define GRAPESHOT_GRAPES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "grapeshot/graph.hpp"

namespace grapeshot {

// Per-essential-vertex labeling data. Position t (0-based) corresponds to the
// label index t+1; `edge_of_pos` gives the 1-based local edge label, and
// `local_edge_to_graph` maps local edge labels to graph edges. For a loop the
// lower-position half-edge is flagged "first", the other "second"; every
// half-edge of a non-loop edge is "first".
struct VertexLabels {
    int vertex = -1;
    std::vector<int> half_edges;          // global half-edge ids, h^v_1, h^v_2, ...
    std::vector<bool> second_flag;        // per position
    std::vector<int> edge_of_pos;         // 1-based local edge label per position
    std::vector<int> local_edge_to_graph; // 1-based: [0] unused
    int nloops = 0;                       // ell(v)
    int nleaves = 0;                      // m(v) = stem valence
    std::vector<int> loop_first_pos;      // 0-based position of loop r's first half
    std::vector<int> loop_graph_edge;     // graph edge of loop r

    int positions() const { return static_cast<int>(half_edges.size()); }
    int local_edges() const { return static_cast<int>(local_edge_to_graph.size()) - 1; }
};

struct GrapesStructure {
    Graph graph;                       // the decomposed graph (unchanged)
    Graph stem;                        // loops removed, same vertex set
    std::vector<int> loops_per_vertex; // ell(v) per graph vertex
    int root_vertex = -1;
    int root_edge = -1;                // graph edge index; -1 in the sporadic case
    bool sporadic = false;             // stem has no edges (bouquet of loops)
    std::vector<VertexLabels> labels;  // one per essential vertex, vertex order

    const VertexLabels& at_vertex(int v) const {
        for (const auto& l : labels)
            if (l.vertex == v) return l;
        throw IndexOutOfRange("vertex " + std::to_string(v) + " is not essential");
    }

    std::vector<int> essential() const {
        std::vector<int> out;
        for (const auto& l : labels) out.push_back(l.vertex);
        return out;
    }
};

// Decompose a bunch of grapes into stem, loop counts, oriented root and the
// local labelings. Requires TC <= 1, at least one essential vertex and no
// bivalent vertices.
inline GrapesStructure decompose_grapes(
    const Graph& g, const std::optional<std::pair<int, int>>& root = std::nullopt) {
    if (!g.connected()) throw GraphError("decompose_grapes requires a connected graph");
    if (topological_circumference(g) >= 2)
        throw NotAGrape("topological circumference >= 2");
    for (int v = 0; v < g.nv(); ++v) {
        if (g.valence(v) != 2) continue;
        const auto& rot = g.rotation[static_cast<size_t>(v)];
        if (rot[0] / 2 == rot[1] / 2) continue;  // lone loop vertex (circle shape)
        throw GraphError("bivalent vertex '" + g.vnames[static_cast<size_t>(v)] +
                         "'; smooth the graph first");
    }
    if (g.essential_vertices().empty())
        throw NoEssentialVertex("interval or circle input; use the closed forms");

    GrapesStructure gs;
    gs.graph = g;
    gs.loops_per_vertex.assign(static_cast<size_t>(g.nv()), 0);

    // Stem: drop loop edges.
    std::vector<int> stem_edges;
    for (int e = 0; e < g.ne(); ++e) {
        if (g.is_loop(e))
            ++gs.loops_per_vertex[static_cast<size_t>(g.edges[static_cast<size_t>(e)].first)];
        else
            stem_edges.push_back(e);
    }
    {
        std::vector<EdgeSpec> especs;
        for (int e : stem_edges)
            especs.push_back({g.enames[static_cast<size_t>(e)],
                              g.vnames[static_cast<size_t>(g.edges[static_cast<size_t>(e)].first)],
                              g.vnames[static_cast<size_t>(g.edges[static_cast<size_t>(e)].second)]});
        gs.stem = build_graph(g.vnames, especs);
    }
    if (static_cast<int>(stem_edges.size()) != g.nv() - 1)
        throw NotAGrape("stem is not a tree");

    gs.sporadic = stem_edges.empty();

    // Root. Default: first stem edge incident to a stem leaf, root vertex the
    // leaf endpoint (preferring a non-essential one).
    if (root) {
        gs.root_vertex = root->first;
        gs.root_edge = root->second;
        if (gs.sporadic) {
            gs.root_edge = -1;
        } else {
            if (g.is_loop(gs.root_edge)) throw GraphError("root edge must be a stem edge");
            const auto& ep = g.edges[static_cast<size_t>(gs.root_edge)];
            if (ep.first != gs.root_vertex && ep.second != gs.root_vertex)
                throw GraphError("root edge is not incident to root vertex");
        }
    } else if (gs.sporadic) {
        gs.root_vertex = g.essential_vertices()[0];
        gs.root_edge = -1;
    } else {
        auto stem_valence = [&](int v) {
            int c = 0;
            for (int e : stem_edges) {
                if (g.edges[static_cast<size_t>(e)].first == v) ++c;
                if (g.edges[static_cast<size_t>(e)].second == v) ++c;
            }
            return c;
        };
        for (int e : stem_edges) {
            const auto& ep = g.edges[static_cast<size_t>(e)];
            bool leaf_u = stem_valence(ep.first) == 1;
            bool leaf_v = stem_valence(ep.second) == 1;
            if (!leaf_u && !leaf_v) continue;
            gs.root_edge = e;
            if (leaf_u && leaf_v)
                gs.root_vertex = !g.is_essential(ep.first) ? ep.first
                                 : !g.is_essential(ep.second) ? ep.second
                                                              : ep.first;
            else
                gs.root_vertex = leaf_u ? ep.first : ep.second;
            break;
        }
    }

    // BFS in the stem from the root vertex: parent_edge[v] = first edge of
    // the path from v toward the root.
    std::vector<int> parent_edge(static_cast<size_t>(g.nv()), -1);
    if (!gs.sporadic) {
        std::vector<bool> seen(static_cast<size_t>(g.nv()), false);
        std::queue<int> q;
        q.push(gs.root_vertex);
        seen[static_cast<size_t>(gs.root_vertex)] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : stem_edges) {
                const auto& ep = g.edges[static_cast<size_t>(e)];
                if (ep.first != v && ep.second != v) continue;
                int w = ep.first + ep.second - v;
                if (seen[static_cast<size_t>(w)]) continue;
                seen[static_cast<size_t>(w)] = true;
                parent_edge[static_cast<size_t>(w)] = e;
                q.push(w);
            }
        }
        parent_edge[static_cast<size_t>(gs.root_vertex)] = gs.root_edge;
    }

    for (int v : g.essential_vertices()) {
        VertexLabels lab;
        lab.vertex = v;
        lab.nloops = gs.loops_per_vertex[static_cast<size_t>(v)];

        const auto& rot = g.rotation[static_cast<size_t>(v)];
        const int n = static_cast<int>(rot.size());
        int start = 0;
        if (!gs.sporadic) {
            int ev = parent_edge[static_cast<size_t>(v)];
            for (int i = 0; i < n; ++i)
                if (rot[static_cast<size_t>(i)] / 2 == ev) {
                    start = i;
                    break;
                }
        } else {
            // No root half-edge to anchor at: start at a loop-pair boundary
            // so no pair wraps around the cyclic order.
            for (int i = 0; i < n; ++i) {
                int prev = rot[static_cast<size_t>((i + n - 1) % n)] / 2;
                if (rot[static_cast<size_t>(i)] / 2 != prev) {
                    start = i;
                    break;
                }
            }
        }
        for (int i = 0; i < n; ++i)
            lab.half_edges.push_back(rot[static_cast<size_t>((start + i) % n)]);

        lab.second_flag.assign(static_cast<size_t>(n), false);
        lab.edge_of_pos.assign(static_cast<size_t>(n), 0);
        lab.local_edge_to_graph.assign(1, -1);  // 1-based
        std::map<int, int> edge_label;          // graph edge -> local label
        for (int i = 0; i < n; ++i) {
            int e = lab.half_edges[static_cast<size_t>(i)] / 2;
            if (i > 0 && lab.half_edges[static_cast<size_t>(i - 1)] / 2 == e)
                lab.second_flag[static_cast<size_t>(i)] = true;
            auto it = edge_label.find(e);
            if (it == edge_label.end()) {
                int idx = static_cast<int>(lab.local_edge_to_graph.size());
                edge_label.emplace(e, idx);
                lab.local_edge_to_graph.push_back(e);
                lab.edge_of_pos[static_cast<size_t>(i)] = idx;
            } else {
                lab.edge_of_pos[static_cast<size_t>(i)] = it->second;
            }
        }
        for (int i = 0; i < n; ++i) {
            int e = lab.half_edges[static_cast<size_t>(i)] / 2;
            if (g.is_loop(e) && !lab.second_flag[static_cast<size_t>(i)]) {
                lab.loop_first_pos.push_back(i);
                lab.loop_graph_edge.push_back(e);
            }
        }
        if (static_cast<int>(lab.loop_first_pos.size()) != lab.nloops)
            throw GraphError("loop half-edges are not paired in rotation at '" +
                             g.vnames[static_cast<size_t>(v)] + "'");
        lab.nleaves = n - 2 * lab.nloops;
        gs.labels.push_back(std::move(lab));
    }
    return gs;
}

// Rebuild a graph from stem plus loop counts. Used by the round-trip
// invariant check; loop ids are regenerated.
inline Graph reassemble_grapes(const GrapesStructure& gs) {
    std::vector<EdgeSpec> especs;
    for (int e = 0; e < gs.stem.ne(); ++e)
        especs.push_back({gs.stem.enames[static_cast<size_t>(e)],
                          gs.stem.vnames[static_cast<size_t>(gs.stem.edges[static_cast<size_t>(e)].first)],
                          gs.stem.vnames[static_cast<size_t>(gs.stem.edges[static_cast<size_t>(e)].second)]});
    for (int v = 0; v < gs.stem.nv(); ++v)
        for (int r = 0; r < gs.loops_per_vertex[static_cast<size_t>(v)]; ++r)
            especs.push_back({"loop." + gs.stem.vnames[static_cast<size_t>(v)] + "." +
                                  std::to_string(r),
                              gs.stem.vnames[static_cast<size_t>(v)],
                              gs.stem.vnames[static_cast<size_t>(v)]});
    return build_graph(gs.stem.vnames, especs);
}

}  // namespace grapeshot

#endif
