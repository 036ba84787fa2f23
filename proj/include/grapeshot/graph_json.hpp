#ifndef GRAPESHOT_GRAPH_JSON_HPP
#define GRAPESHOT_GRAPH_JSON_HPP

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grapeshot/graph.hpp"

namespace grapeshot {

// Graph JSON:
//   {"vertices": [...],
//    "edges": [["id","u","v"], ...],
//    "rotation": {"v": ["e:0", ...]},   // optional
//    "root": ["v0", "e0"]}              // optional
inline Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw GraphError("graph document must be a JSON object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw GraphError("missing or invalid 'vertices' array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw GraphError("missing or invalid 'edges' array");

    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw GraphError("vertex ids must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<EdgeSpec> especs;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
            !e[2].is_string())
            throw GraphError("each edge must be [\"id\",\"u\",\"v\"]");
        especs.push_back({e[0].get<std::string>(), e[1].get<std::string>(),
                          e[2].get<std::string>()});
    }
    std::map<std::string, std::vector<std::string>> rotation;
    const std::map<std::string, std::vector<std::string>>* rot_ptr = nullptr;
    if (j.contains("rotation")) {
        if (!j["rotation"].is_object()) throw GraphError("'rotation' must be an object");
        for (const auto& [v, hs] : j["rotation"].items()) {
            if (!hs.is_array()) throw GraphError("rotation entries must be arrays");
            for (const auto& h : hs) rotation[v].push_back(h.get<std::string>());
        }
        rot_ptr = &rotation;
    }
    std::optional<std::pair<std::string, std::string>> root;
    if (j.contains("root")) {
        const auto& r = j["root"];
        if (!r.is_array() || r.size() != 2 || !r[0].is_string() || !r[1].is_string())
            throw GraphError("'root' must be [\"v0\",\"e0\"]");
        root = std::make_pair(r[0].get<std::string>(), r[1].get<std::string>());
    }
    return build_graph(vertices, especs, rot_ptr, root);
}

inline Graph graph_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw GraphError("JSON parse error in '" + path + "': " + e.what());
    }
    return graph_from_json(j);
}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["vertices"] = g.vnames;
    j["edges"] = nlohmann::json::array();
    for (int e = 0; e < g.ne(); ++e)
        j["edges"].push_back({g.enames[static_cast<size_t>(e)],
                              g.vnames[static_cast<size_t>(g.edges[static_cast<size_t>(e)].first)],
                              g.vnames[static_cast<size_t>(g.edges[static_cast<size_t>(e)].second)]});
    j["rotation"] = nlohmann::json::object();
    for (int v = 0; v < g.nv(); ++v) {
        nlohmann::json arr = nlohmann::json::array();
        for (int h : g.rotation[static_cast<size_t>(v)]) arr.push_back(g.half_edge_name(h));
        j["rotation"][g.vnames[static_cast<size_t>(v)]] = arr;
    }
    if (g.root_vertex >= 0)
        j["root"] = {g.vnames[static_cast<size_t>(g.root_vertex)],
                     g.enames[static_cast<size_t>(g.root_edge)]};
    return j;
}

}  // namespace grapeshot

#endif
