#ifndef MODSUB_GRAPH_HPP
#define MODSUB_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "modsub/errors.hpp"

namespace modsub {

// Simple finite graph on vertices 0..n-1. No self-loops, no parallel edges.
// Undirected edges are stored with the smaller endpoint first; edge order in
// `edges` is the insertion (file) order and defines edge indices for edge
// colorings. Immutable after construction.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<std::pair<int, int>> edge_list, bool directed = false)
        : n_(n), directed_(directed) {
        if (n < 0) throw ParseError("vertex count must be nonnegative");
        adj_.assign(static_cast<std::size_t>(n) * n, 0);
        neighbors_.resize(n);
        edges_.reserve(edge_list.size());
        for (auto [u, v] : edge_list) add_edge_internal(u, v);
        for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
        if (directed_) {
            in_neighbors_.resize(n);
            for (auto [u, v] : edges_) in_neighbors_[v].push_back(u);
            for (auto& nb : in_neighbors_) std::sort(nb.begin(), nb.end());
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool directed() const { return directed_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
        return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
    }

    // Undirected: all neighbors. Directed: out-neighbors.
    const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
    const std::vector<int>& in_neighbors(int v) const { return in_neighbors_[v]; }

    int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }

    bool operator==(const Graph& o) const {
        return n_ == o.n_ && directed_ == o.directed_ && edge_set() == o.edge_set();
    }
    bool operator!=(const Graph& o) const { return !(*this == o); }

    std::set<std::pair<int, int>> edge_set() const {
        return {edges_.begin(), edges_.end()};
    }

private:
    void add_edge_internal(int u, int v) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw ParseError("edge endpoint out of range: (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
        if (!directed_ && u > v) std::swap(u, v);
        std::size_t idx = static_cast<std::size_t>(u) * n_ + v;
        if (adj_[idx]) throw ParseError("duplicate edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        adj_[idx] = 1;
        if (!directed_) adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
        edges_.emplace_back(u, v);
        neighbors_[u].push_back(v);
        if (!directed_) neighbors_[v].push_back(u);
    }

    int n_ = 0;
    bool directed_ = false;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<std::vector<int>> in_neighbors_;
};

// A homomorphism c: V(host) -> V(pattern); every host edge must map to a
// pattern edge. Partitions the host into classes V_a = c^{-1}(a).
struct HColoring {
    Graph host;
    Graph pattern;
    std::vector<int> color_of;

    void validate() const {
        if (static_cast<int>(color_of.size()) != host.vertex_count())
            throw ParseError("coloring size does not match host vertex count");
        for (int c : color_of)
            if (c < 0 || c >= pattern.vertex_count())
                throw ParseError("vertex color out of pattern range");
        for (auto [u, v] : host.edges())
            if (!pattern.has_edge(color_of[u], color_of[v]))
                throw ParseError("host edge maps to a pattern non-edge");
    }

    std::vector<std::vector<int>> classes() const {
        std::vector<std::vector<int>> cls(pattern.vertex_count());
        for (int v = 0; v < host.vertex_count(); ++v) cls[color_of[v]].push_back(v);
        return cls;
    }
};

// Edge coloring with palette {0, ..., palette-1}; color_of is indexed by the
// graph's edge order.
struct EdgeColoring {
    Graph graph;
    std::vector<int> color_of;
    int palette = 0;

    void validate() const {
        if (static_cast<int>(color_of.size()) != graph.edge_count())
            throw ParseError("edge coloring size does not match edge count");
        for (int c : color_of)
            if (c < 0 || c >= palette) throw ParseError("edge color outside palette");
    }
};

// An edge subset of a graph with pairwise disjoint edges.
struct Matching {
    std::vector<std::pair<int, int>> edges;

    bool valid_in(const Graph& g) const {
        std::set<int> used;
        for (auto [u, v] : edges) {
            if (!g.has_edge(u, v)) return false;
            if (!used.insert(u).second || !used.insert(v).second) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// JSON serialization.
//
// {"n": int, "directed": bool (default false), "edges": [[u,v], ...],
//  "vertex_colors": [int per vertex] (optional),
//  "edge_colors": [int per edge, file order] (optional)}
// ---------------------------------------------------------------------------

struct GraphDocument {
    Graph graph;
    std::optional<std::vector<int>> vertex_colors;
    std::optional<std::vector<int>> edge_colors;
};

inline GraphDocument parse_graph_document(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("graph document must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("missing or non-integer field 'n'");
    int n = j["n"].get<int>();
    bool directed = false;
    if (j.contains("directed")) {
        if (!j["directed"].is_boolean()) throw ParseError("'directed' must be a boolean");
        directed = j["directed"].get<bool>();
    }
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ParseError("'edges' must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw ParseError("each edge must be a pair of integers");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    GraphDocument doc;
    doc.graph = Graph(n, std::move(edges), directed);
    if (j.contains("vertex_colors")) {
        auto vc = j["vertex_colors"].get<std::vector<int>>();
        if (static_cast<int>(vc.size()) != n)
            throw ParseError("'vertex_colors' length must equal n");
        doc.vertex_colors = std::move(vc);
    }
    if (j.contains("edge_colors")) {
        auto ec = j["edge_colors"].get<std::vector<int>>();
        if (ec.size() != doc.graph.edges().size())
            throw ParseError("'edge_colors' length must equal number of edges");
        doc.edge_colors = std::move(ec);
    }
    return doc;
}

inline Graph parse_graph(const std::string& bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_graph_document(j).graph;
}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["directed"] = g.directed();
    auto arr = nlohmann::json::array();
    for (auto [u, v] : g.edges()) arr.push_back({u, v});
    j["edges"] = std::move(arr);
    return j;
}

inline std::string serialize_graph(const Graph& g) { return graph_to_json(g).dump(); }

// ---------------------------------------------------------------------------
// Elementary operations.
// ---------------------------------------------------------------------------

struct InducedSubgraph {
    Graph graph;
    std::vector<int> old_of_new;     // new label -> old label, ascending
    std::map<int, int> new_of_old;   // old label -> new label
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::set<int> s;
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw ParseError("induced_subgraph: vertex out of range");
        s.insert(v);
    }
    InducedSubgraph out;
    out.old_of_new.assign(s.begin(), s.end());
    for (int i = 0; i < static_cast<int>(out.old_of_new.size()); ++i)
        out.new_of_old[out.old_of_new[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (s.count(u) && s.count(v))
            edges.emplace_back(out.new_of_old[u], out.new_of_old[v]);
    out.graph = Graph(static_cast<int>(out.old_of_new.size()), std::move(edges), g.directed());
    return out;
}

inline InducedSubgraph delete_vertices(const Graph& g, const std::vector<int>& vertices) {
    std::set<int> del;
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw ParseError("delete_vertices: vertex out of range");
        del.insert(v);
    }
    // Deliberately not implemented via induced_subgraph; the two are checked
    // against each other in tests.
    InducedSubgraph out;
    std::vector<int> keep;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!del.count(v)) keep.push_back(v);
    out.old_of_new = keep;
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) out.new_of_old[keep[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (!del.count(u) && !del.count(v))
            edges.emplace_back(out.new_of_old[u], out.new_of_old[v]);
    out.graph = Graph(static_cast<int>(keep.size()), std::move(edges), g.directed());
    return out;
}

inline bool is_connected(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
        if (g.directed()) {
            for (int w : g.in_neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
    }
    return reached == n;
}

// Closed walk u_0, ..., u_k = u_0 traversing every edge exactly once.
// Hierholzer's algorithm with lowest-index tie-breaking, so the output is
// deterministic. Requires a connected graph with all degrees even.
inline std::vector<int> eulerian_tour(const Graph& g) {
    if (g.directed()) throw ParseError("eulerian_tour: undirected graphs only");
    int n = g.vertex_count();
    if (n == 0) throw ParseError("eulerian_tour: empty graph");
    if (!is_connected(g)) throw Error("eulerian_tour: graph is not connected");
    for (int v = 0; v < n; ++v)
        if (g.degree(v) % 2 != 0)
            throw Error("eulerian_tour: vertex " + std::to_string(v) + " has odd degree");

    // next_ptr[v] walks v's sorted neighbor list; used edges are skipped.
    std::vector<std::size_t> next_ptr(n, 0);
    std::map<std::pair<int, int>, int> remaining;
    for (auto [u, v] : g.edges()) remaining[{u, v}] = 1;
    auto take = [&](int u, int v) -> bool {
        auto key = std::minmax(u, v);
        auto it = remaining.find({key.first, key.second});
        if (it == remaining.end() || it->second == 0) return false;
        it->second = 0;
        return true;
    };

    std::vector<int> stack = {0};
    std::vector<int> tour;
    while (!stack.empty()) {
        int v = stack.back();
        bool advanced = false;
        while (next_ptr[v] < g.neighbors(v).size()) {
            int w = g.neighbors(v)[next_ptr[v]];
            if (take(v, w)) {
                stack.push_back(w);
                advanced = true;
                break;
            }
            ++next_ptr[v];
        }
        if (!advanced) {
            tour.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(tour.begin(), tour.end());
    if (static_cast<int>(tour.size()) != g.edge_count() + 1)
        throw InternalCheckFailure("eulerian_tour: traversal did not cover all edges");
    return tour;
}

} // namespace modsub

#endif
