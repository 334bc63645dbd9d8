#ifndef MODSUB_DEMAND_INSTANCE_HPP
#define MODSUB_DEMAND_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "modsub/graph.hpp"

namespace modsub {

// Colored-matching instance. A solution is a matching M in `graph` together
// with a selected set I(M) of isolated vertices disjoint from the matched
// ones, plus a coloring c_M of I(M) and E(M) drawn from the permitted sets,
// such that for each color i exactly demand_isolated[i] selected vertices and
// exactly demand_edges[i] edges carry color i. Permitted edge lists are
// multisets: a color listed m times contributes m distinct ways to color that
// edge (used when a color can be realized by several edge orientations).
struct DemandInstance {
    Graph graph;
    int palette = 0;                                    // colors 0..palette-1
    std::vector<std::vector<int>> permitted_vertices;   // per vertex, sorted set
    std::vector<std::vector<int>> permitted_edges;      // per edge, sorted multiset
    std::vector<std::uint64_t> demand_isolated;         // length palette
    std::vector<std::uint64_t> demand_edges;            // length palette
    int t = 1;                                          // modulus exponent

    void validate() const {
        if (graph.directed()) throw ParseError("demand instances use undirected graphs");
        if (palette < 0) throw ParseError("palette size must be nonnegative");
        if (t < 1 || t > 32) throw ParseError("modulus exponent t must be in [1,32]");
        if (static_cast<int>(permitted_vertices.size()) != graph.vertex_count())
            throw ParseError("permitted_vertices length must equal vertex count");
        if (static_cast<int>(permitted_edges.size()) != graph.edge_count())
            throw ParseError("permitted_edges length must equal edge count");
        if (static_cast<int>(demand_isolated.size()) != palette ||
            static_cast<int>(demand_edges.size()) != palette)
            throw ParseError("demand vectors must have palette length");
        auto check_colors = [&](const std::vector<std::vector<int>>& sets, const char* what,
                                bool allow_repeats) {
            for (const auto& s : sets) {
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (s[i] < 0 || s[i] >= palette)
                        throw ParseError(std::string(what) + ": color id outside palette");
                    if (i > 0 && (allow_repeats ? s[i] < s[i - 1] : s[i] <= s[i - 1]))
                        throw ParseError(std::string(what) + ": permitted lists must be sorted" +
                                         (allow_repeats ? "" : " and duplicate-free"));
                }
            }
        };
        check_colors(permitted_vertices, "permitted_vertices", false);
        check_colors(permitted_edges, "permitted_edges", true);
    }

    // Demands beyond this carry no solutions; such instances count zero.
    bool demands_fit() const {
        return total_isolated_demand() + 2 * total_edge_demand() <=
               static_cast<std::uint64_t>(graph.vertex_count());
    }

    std::uint64_t total_isolated_demand() const {
        std::uint64_t s = 0;
        for (auto d : demand_isolated) s += d;
        return s;
    }

    std::uint64_t total_edge_demand() const {
        std::uint64_t s = 0;
        for (auto d : demand_edges) s += d;
        return s;
    }
};

inline DemandInstance parse_demand_instance(const nlohmann::json& j) {
    DemandInstance inst;
    inst.graph = parse_graph_document(j).graph;
    if (!j.contains("palette") || !j["palette"].is_number_integer())
        throw ParseError("missing or non-integer field 'palette'");
    inst.palette = j["palette"].get<int>();
    if (!j.contains("t") || !j["t"].is_number_integer())
        throw ParseError("missing or non-integer field 't'");
    inst.t = j["t"].get<int>();
    auto get_sets = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array())
            throw ParseError(std::string("missing array field '") + key + "'");
        return j[key].get<std::vector<std::vector<int>>>();
    };
    inst.permitted_vertices = get_sets("permitted_vertices");
    inst.permitted_edges = get_sets("permitted_edges");
    auto get_demands = [&](const char* key) {
        std::vector<std::uint64_t> d(inst.palette, 0);
        if (!j.contains(key)) return d;
        if (!j[key].is_object())
            throw ParseError(std::string("field '") + key + "' must be an object");
        for (auto it = j[key].begin(); it != j[key].end(); ++it) {
            int color = std::stoi(it.key());
            if (color < 0 || color >= inst.palette)
                throw ParseError(std::string(key) + ": color key outside palette");
            d[color] = it.value().get<std::uint64_t>();
        }
        return d;
    };
    inst.demand_isolated = get_demands("D_I");
    inst.demand_edges = get_demands("D_E");
    for (auto& s : inst.permitted_vertices) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    for (auto& s : inst.permitted_edges) std::sort(s.begin(), s.end());
    inst.validate();
    return inst;
}

inline nlohmann::json demand_instance_to_json(const DemandInstance& inst) {
    nlohmann::json j = graph_to_json(inst.graph);
    j["palette"] = inst.palette;
    j["t"] = inst.t;
    j["permitted_vertices"] = inst.permitted_vertices;
    j["permitted_edges"] = inst.permitted_edges;
    nlohmann::json di = nlohmann::json::object(), de = nlohmann::json::object();
    for (int c = 0; c < inst.palette; ++c) {
        if (inst.demand_isolated[c]) di[std::to_string(c)] = inst.demand_isolated[c];
        if (inst.demand_edges[c]) de[std::to_string(c)] = inst.demand_edges[c];
    }
    j["D_I"] = std::move(di);
    j["D_E"] = std::move(de);
    return j;
}

} // namespace modsub

#endif
