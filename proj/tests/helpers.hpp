#ifndef GRAPESHOT_TEST_HELPERS_HPP
#define GRAPESHOT_TEST_HELPERS_HPP

#include <random>

#include "grapeshot/graph.hpp"

namespace testing {

using grapeshot::build_graph;
using grapeshot::Graph;

// Elementary bunch of grapes: one center, `loops` self-loops, `leaves` leaf
// edges; edge ids e1.. for leaves then l1.. for loops, interleaved so the
// root-ward edge comes first.
inline Graph elementary(int loops, int leaves) {
    std::vector<std::string> vs = {"v"};
    std::vector<grapeshot::EdgeSpec> es;
    for (int i = 1; i <= leaves; ++i) {
        vs.push_back("x" + std::to_string(i));
        es.push_back({"e" + std::to_string(i), "v", "x" + std::to_string(i)});
    }
    for (int i = 1; i <= loops; ++i)
        es.push_back({"l" + std::to_string(i), "v", "v"});
    return build_graph(vs, es);
}

inline Graph interval() { return build_graph({"a", "b"}, {{"e", "a", "b"}}); }

inline Graph circle() { return build_graph({"v"}, {{"e", "v", "v"}}); }

inline Graph triangle() {
    return build_graph({"a", "b", "c"},
                       {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}});
}

inline Graph theta() {
    return build_graph({"u", "w"}, {{"e1", "u", "w"}, {"e2", "u", "w"}, {"e3", "u", "w"}});
}

inline Graph theta_leaf() {
    return build_graph({"u", "w", "x"}, {{"e1", "u", "w"},
                                         {"e2", "u", "w"},
                                         {"e3", "u", "w"},
                                         {"e4", "u", "x"}});
}

inline Graph dumbbell() {
    return build_graph({"u", "w"}, {{"s", "u", "w"}, {"lu", "u", "u"}, {"lw", "w", "w"}});
}

// Two essential vertices: u carries two loops, w one loop and a leaf.
inline Graph two_vertex_grape() {
    return build_graph({"u", "w", "x"}, {{"s", "u", "w"},
                                         {"a1", "u", "u"},
                                         {"a2", "u", "u"},
                                         {"b1", "w", "w"},
                                         {"t", "w", "x"}});
}

// Three essential vertices on a stem path, one loop each.
inline Graph three_vertex_grape() {
    return build_graph({"u", "w", "x"}, {{"s1", "u", "w"},
                                         {"s2", "w", "x"},
                                         {"lu", "u", "u"},
                                         {"lw", "w", "w"},
                                         {"lx", "x", "x"}});
}

inline Graph tree_two_essential() {
    return build_graph({"u", "w", "a", "b", "c", "d"}, {{"s", "u", "w"},
                                                        {"e1", "u", "a"},
                                                        {"e2", "u", "b"},
                                                        {"e3", "w", "c"},
                                                        {"e4", "w", "d"}});
}

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

}  // namespace testing

#endif
