#ifndef MODSUB_REDUCTIONS_HPP
#define MODSUB_REDUCTIONS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "modsub/graph.hpp"
#include "modsub/oracles.hpp"

namespace modsub {

// One transformed instance plus the relation its counts promise to satisfy.
struct ReductionOutput {
    Graph graph;
    std::optional<EdgeColoring> edge_coloring;
    std::map<std::string, long long> parameter_map;
    std::string contract;  // "equal" or "congruent mod q"
};

// ---------------------------------------------------------------------------
// Colorful subgraphs of a 3-regular pattern -> edge-colorful matchings, for
// odd moduli.
// ---------------------------------------------------------------------------

namespace detail {

// Position (1-based) of b in the ascending neighbor list of a.
inline int incidence_index(const Graph& pattern, int a, int b) {
    const auto& nb = pattern.neighbors(a);
    for (std::size_t i = 0; i < nb.size(); ++i)
        if (nb[i] == b) return static_cast<int>(i) + 1;
    throw Error("incidence_index: vertices are not adjacent");
}

} // namespace detail

// Standalone consistency gadget: externals 0,1,2 and q gadget vertices.
// Vertex 1 and 2 see all gadget vertices, vertex 0 the first (q+1)/2.
inline Graph consistency_gadget(int q) {
    std::vector<std::pair<int, int>> edges;
    for (int g = 0; g < q; ++g) {
        if (g < (q + 1) / 2) edges.emplace_back(0, 3 + g);
        edges.emplace_back(1, 3 + g);
        edges.emplace_back(2, 3 + g);
    }
    return Graph(3 + q, edges);
}

// Matchings of g grouped by which designated external vertices they cover.
inline std::map<std::uint32_t, std::uint64_t> matchings_by_covered_externals(
    const Graph& g, const std::vector<int>& externals) {
    std::vector<int> ext_index(g.vertex_count(), -1);
    for (std::size_t i = 0; i < externals.size(); ++i) ext_index[externals[i]] = static_cast<int>(i);
    std::map<std::uint32_t, std::uint64_t> result;
    std::vector<char> used(g.vertex_count(), 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t idx, std::uint32_t mask) {
        ++result[mask];
        for (std::size_t i = idx; i < g.edges().size(); ++i) {
            auto [u, v] = g.edges()[i];
            if (used[u] || used[v]) continue;
            used[u] = used[v] = 1;
            std::uint32_t m2 = mask;
            if (ext_index[u] >= 0) m2 |= 1u << ext_index[u];
            if (ext_index[v] >= 0) m2 |= 1u << ext_index[v];
            rec(i + 1, m2);
            used[u] = used[v] = 0;
        }
    };
    rec(0, 0);
    return result;
}

// Standalone AND gadget for odd q: externals 0 and 1 joined by a direct edge
// and a 3-edge path, with q-2 pendant leaves on each external. Removing
// neither or one external leaves 0 edges mod q; removing both leaves exactly
// one edge.
inline Graph and_gadget(int q) {
    std::vector<std::pair<int, int>> edges;
    edges.emplace_back(0, 1);  // direct
    edges.emplace_back(0, 2);  // path 0-2-3-1
    edges.emplace_back(2, 3);
    edges.emplace_back(1, 3);
    int next = 4;
    for (int i = 0; i < q - 2; ++i) edges.emplace_back(0, next++);
    for (int i = 0; i < q - 2; ++i) edges.emplace_back(1, next++);
    return Graph(next, edges);
}

inline std::uint64_t edges_after_removal(const Graph& g, const std::vector<int>& removed) {
    std::vector<char> gone(g.vertex_count(), 0);
    for (int v : removed) gone[v] = 1;
    std::uint64_t count = 0;
    for (auto [u, v] : g.edges())
        if (!gone[u] && !gone[v]) ++count;
    return count;
}

// Builds the edge-colored matching instance whose edge-colorful matching
// count is congruent, modulo odd q, to the number of vertex-colorful pattern
// copies in the host. The pattern must be 3-regular.
inline ReductionOutput build_colmatch_instance(const Graph& pattern, const Graph& host,
                                               const HColoring& col, int q) {
    if (q < 3 || q % 2 == 0) throw Error("build_colmatch_instance: q must be odd and >= 3");
    for (int v = 0; v < pattern.vertex_count(); ++v)
        if (pattern.degree(v) != 3)
            throw Error("build_colmatch_instance: pattern must be 3-regular");
    col.validate();
    if (col.pattern != pattern || col.host != host)
        throw Error("build_colmatch_instance: coloring does not reference these graphs");

    int k = pattern.vertex_count();
    int n = host.vertex_count();
    int vertex_block = 3 + q;
    int and_block = 2 + 2 * (q - 2);
    auto external_id = [&](int u, int i) { return u * vertex_block + (i - 1); };
    auto gadget_id = [&](int u, int g) { return u * vertex_block + 3 + g; };
    int and_base = n * vertex_block;

    // Colors: (CONS, a, i) for a in V(pattern), i in {1,2,3}, then (AND, ab)
    // per pattern edge.
    auto cons_color = [&](int a, int i) { return a * 3 + (i - 1); };
    std::map<std::pair<int, int>, int> and_color;
    for (int e = 0; e < pattern.edge_count(); ++e) and_color[pattern.edges()[e]] = 3 * k + e;
    int palette = 3 * k + pattern.edge_count();

    std::vector<std::pair<int, int>> edges;
    std::vector<int> colors;
    auto add_edge = [&](int u, int v, int c) {
        edges.emplace_back(u, v);
        colors.push_back(c);
    };

    for (int u = 0; u < n; ++u) {
        int a = col.color_of[u];
        for (int g = 0; g < q; ++g) {
            if (g < (q + 1) / 2) add_edge(external_id(u, 1), gadget_id(u, g), cons_color(a, 1));
            add_edge(external_id(u, 2), gadget_id(u, g), cons_color(a, 2));
            add_edge(external_id(u, 3), gadget_id(u, g), cons_color(a, 3));
        }
    }
    for (int e = 0; e < host.edge_count(); ++e) {
        auto [u, v] = host.edges()[e];
        int a = col.color_of[u], b = col.color_of[v];
        int i = detail::incidence_index(pattern, a, b);
        int j = detail::incidence_index(pattern, b, a);
        int ui = external_id(u, i), vj = external_id(v, j);
        auto key = std::minmax(a, b);
        int c = and_color.at({key.first, key.second});
        int base = and_base + e * and_block;
        int x = base, y = base + 1;
        add_edge(ui, vj, c);
        add_edge(ui, x, c);
        add_edge(x, y, c);
        add_edge(vj, y, c);
        for (int l = 0; l < q - 2; ++l) add_edge(ui, base + 2 + l, c);
        for (int l = 0; l < q - 2; ++l) add_edge(vj, base + 2 + (q - 2) + l, c);
    }

    ReductionOutput out;
    out.graph = Graph(n * vertex_block + host.edge_count() * and_block, edges);
    out.edge_coloring = EdgeColoring{out.graph, colors, palette};
    out.edge_coloring->validate();
    out.parameter_map["q"] = q;
    out.parameter_map["colors"] = palette;
    out.parameter_map["pattern_vertices"] = k;
    out.contract = "congruent mod " + std::to_string(q);
    return out;
}

// The five fixed extension-count congruences of the consistency gadget plus
// the four AND-gadget edge counts. Throws on the first violation.
inline void check_colmatch_gadget_contracts(int q) {
    Graph cons = consistency_gadget(q);
    auto by_subset = matchings_by_covered_externals(cons, {0, 1, 2});
    auto expect = [&](std::uint32_t mask, std::uint64_t residue) {
        if (by_subset[mask] % static_cast<std::uint64_t>(q) != residue)
            throw InternalCheckFailure("consistency gadget count off at mask " +
                                       std::to_string(mask) + ": " +
                                       std::to_string(by_subset[mask]));
    };
    expect(0b000, 1);
    expect(0b111, 1);
    expect(0b010, 0);  // external 2 alone
    expect(0b100, 0);  // external 3 alone
    expect(0b110, 0);  // externals 2 and 3

    Graph andg = and_gadget(q);
    std::uint64_t qq = static_cast<std::uint64_t>(q);
    if (edges_after_removal(andg, {}) % qq != 0)
        throw InternalCheckFailure("AND gadget: full edge count not divisible");
    if (edges_after_removal(andg, {0}) % qq != 0 || edges_after_removal(andg, {1}) % qq != 0)
        throw InternalCheckFailure("AND gadget: one-removed edge count not divisible");
    if (edges_after_removal(andg, {0, 1}) != 1)
        throw InternalCheckFailure("AND gadget: both-removed edge count is not 1");
}

// Exact edge-colorful matching count for instances shaped like
// build_colmatch_instance output, where unit enumeration is hopeless (the
// count is typically astronomical). Factors over the consistency components
// and the per-color AND availability; the structural facts the factoring
// rests on are re-derived from the instance and asserted, not assumed.
inline oracles::Count colmatch_count_structured(const Graph& g, const EdgeColoring& ec,
                                                int cons_colors) {
    ec.validate();
    if (ec.graph != g) throw Error("edge coloring does not reference this graph");
    if (cons_colors % 3 != 0) throw Error("consistency colors come in triples");
    int classes = cons_colors / 3;

    // Split edges into consistency and AND parts.
    std::vector<int> comp(g.vertex_count(), -1);
    std::vector<std::vector<int>> cons_adj(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (ec.color_of[e] < cons_colors) {
            auto [u, v] = g.edges()[e];
            cons_adj[u].push_back(v);
            cons_adj[v].push_back(u);
        }
    }
    // Consistency components.
    int comp_count = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (comp[v] != -1 || cons_adj[v].empty()) continue;
        std::vector<int> stack = {v};
        comp[v] = comp_count;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : cons_adj[x])
                if (comp[w] == -1) {
                    comp[w] = comp_count;
                    stack.push_back(w);
                }
        }
        ++comp_count;
    }

    struct ConsComponent {
        int cls = -1;
        std::vector<int> vertices;
        int external[3] = {-1, -1, -1};  // vertex playing role i+1
    };
    std::vector<ConsComponent> gadgets(comp_count);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (comp[v] >= 0) gadgets[comp[v]].vertices.push_back(v);
    // Every consistency component carries one class; a vertex whose
    // consistency edges all share one color is a candidate external for that
    // color's role.
    std::vector<int> vertex_role(g.vertex_count(), -2);  // -2 unset, -1 mixed
    for (int e = 0; e < g.edge_count(); ++e) {
        int c = ec.color_of[e];
        if (c >= cons_colors) continue;
        auto [u, v] = g.edges()[e];
        ConsComponent& gc = gadgets[comp[u]];
        if (gc.cls == -1) gc.cls = c / 3;
        if (gc.cls != c / 3)
            throw InternalCheckFailure("consistency component mixes classes");
        for (int x : {u, v}) {
            if (vertex_role[x] == -2)
                vertex_role[x] = c;
            else if (vertex_role[x] != c)
                vertex_role[x] = -1;
        }
    }
    // The role-i external of a component is its unique vertex whose
    // consistency edges all carry color (cls, i); interior gadget vertices
    // always see at least two colors.
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (comp[v] < 0 || vertex_role[v] < 0) continue;
        ConsComponent& gc = gadgets[comp[v]];
        int role = vertex_role[v] % 3;
        if (gc.external[role] != -1)
            throw InternalCheckFailure("two externals share a role");
        gc.external[role] = v;
    }
    // Every vertex incident to AND edges sees exactly one AND color, so
    // cross-color conflicts can only pass through consistency externals.
    std::vector<int> and_color_at(g.vertex_count(), -1);
    std::map<int, std::vector<int>> edges_of_color;
    for (int e = 0; e < g.edge_count(); ++e) {
        int c = ec.color_of[e];
        if (c < cons_colors) continue;
        edges_of_color[c].push_back(e);
        auto [u, v] = g.edges()[e];
        for (int x : {u, v}) {
            if (and_color_at[x] != -1 && and_color_at[x] != c)
                throw InternalCheckFailure("vertex sees two AND colors");
            and_color_at[x] = c;
            if (comp[x] >= 0 && vertex_role[x] < 0)
                throw InternalCheckFailure("external has mixed consistency colors");
        }
    }
    std::vector<std::vector<int>> by_class(classes);
    for (int ci = 0; ci < comp_count; ++ci) {
        if (gadgets[ci].cls < 0) throw InternalCheckFailure("component without class");
        by_class[gadgets[ci].cls].push_back(ci);
    }

    // Per-component matchings grouped by covered external roles.
    std::vector<std::map<std::uint32_t, std::uint64_t>> m_table(comp_count);
    for (int ci = 0; ci < comp_count; ++ci) {
        const ConsComponent& gc = gadgets[ci];
        std::vector<std::pair<int, int>> sub_edges;
        std::map<int, int> local;
        for (int v : gc.vertices) {
            local[v] = static_cast<int>(local.size());
        }
        for (int e = 0; e < g.edge_count(); ++e) {
            if (ec.color_of[e] >= cons_colors) continue;
            auto [u, v] = g.edges()[e];
            if (comp[u] == ci) sub_edges.emplace_back(local.at(u), local.at(v));
        }
        Graph sub(static_cast<int>(local.size()), sub_edges);
        std::vector<int> externals;
        for (int role = 0; role < 3; ++role) {
            if (gc.external[role] < 0)
                throw InternalCheckFailure("component missing an external");
            externals.push_back(local.at(gc.external[role]));
        }
        m_table[ci] = matchings_by_covered_externals(sub, externals);
    }

    // Enumerate role assignments class by class: for each class, each of the
    // three roles is covered by exactly one member component.
    oracles::Count total = 0;
    std::set<int> consumed;  // externals consumed by consistency matchings
    std::function<void(int, oracles::Count)> assign = [&](int cls, oracles::Count weight) {
        if (cls == classes) {
            oracles::Count ways = weight;
            for (const auto& [color, eids] : edges_of_color) {
                std::uint64_t avail = 0;
                for (int e : eids) {
                    auto [u, v] = g.edges()[e];
                    if (!consumed.count(u) && !consumed.count(v)) ++avail;
                }
                ways *= avail;
                if (ways == 0) return;
            }
            total += ways;
            return;
        }
        const auto& members = by_class[cls];
        std::size_t count = members.size();
        std::vector<int> pick(3);
        std::function<void(int)> roles = [&](int role) {
            if (role == 3) {
                oracles::Count w = weight;
                std::vector<int> newly;
                for (std::size_t mi = 0; mi < count && w != 0; ++mi) {
                    std::uint32_t mask = 0;
                    for (int r = 0; r < 3; ++r)
                        if (pick[r] == static_cast<int>(mi)) mask |= 1u << r;
                    auto it = m_table[members[mi]].find(mask);
                    std::uint64_t m = it == m_table[members[mi]].end() ? 0 : it->second;
                    w *= m;
                    for (int r = 0; r < 3; ++r)
                        if (mask & (1u << r)) newly.push_back(gadgets[members[mi]].external[r]);
                }
                if (w != 0) {
                    for (int v : newly) consumed.insert(v);
                    assign(cls + 1, w);
                    for (int v : newly) consumed.erase(v);
                }
                return;
            }
            for (std::size_t mi = 0; mi < count; ++mi) {
                pick[role] = static_cast<int>(mi);
                roles(role + 1);
            }
        };
        roles(0);
    };
    // A color with no edges at all admits no colorful matching.
    for (int cls = 0; cls < classes; ++cls)
        if (by_class[cls].empty()) return 0;
    for (int c = cons_colors; c < ec.palette; ++c)
        if (!edges_of_color.count(c)) return 0;
    assign(0, 1);
    return total;
}

// ---------------------------------------------------------------------------
// Edge-colorful matchings by inclusion-exclusion over color subsets.
// ---------------------------------------------------------------------------

inline oracles::Count colmatch_via_inclusion_exclusion(const Graph& g, const EdgeColoring& ec,
                                                       const Limits& lim = Limits{}) {
    ec.validate();
    if (ec.graph != g) throw Error("edge coloring does not reference this graph");
    int k = ec.palette;
    if (k > 20) throw CapExceeded("inclusion-exclusion limited to 20 colors");
    oracles::Count total = 0;
    for (std::uint32_t drop = 0; drop < (1u << k); ++drop) {
        std::vector<std::pair<int, int>> kept;
        for (int e = 0; e < g.edge_count(); ++e)
            if (!(drop & (1u << ec.color_of[e]))) kept.push_back(g.edges()[e]);
        Graph sub(g.vertex_count(), kept);
        oracles::Count m = oracles::count_k_matchings(sub, k, lim);
        if (__builtin_popcount(drop) % 2 == 0)
            total += m;
        else
            total -= m;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Vertex-colorful subgraphs of a 4-regular pattern -> directed paths of
// flexible length.
// ---------------------------------------------------------------------------

// Layered digraph built along an Eulerian tour of the pattern. Canonical
// source-sink paths of length 2k+4 correspond to colorful pattern copies;
// all other paths in the admissible window pair up, so counts agree mod 2.
// When the pattern has a trivial automorphism group the instance is recorded
// as rigid.
inline ReductionOutput vcsub_to_directed_flexpath(const Graph& pattern, const Graph& host,
                                                  const HColoring& col,
                                                  const Limits& lim = Limits{}) {
    for (int v = 0; v < pattern.vertex_count(); ++v)
        if (pattern.degree(v) != 4)
            throw Error("vcsub_to_directed_flexpath: pattern must be 4-regular");
    if (!is_connected(pattern)) throw Error("vcsub_to_directed_flexpath: pattern must be connected");
    col.validate();
    if (col.pattern != pattern || col.host != host)
        throw Error("vcsub_to_directed_flexpath: coloring does not reference these graphs");

    std::vector<int> tour = eulerian_tour(pattern);
    int k = pattern.edge_count();  // tour positions 0..k
    auto classes = col.classes();

    // Vertex (tag, x): tag 0 holds class of tour[0]; tags 1..k hold the two
    // classes of tour step i; tags k+1 and k+2 hold the class of tour[k].
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> edges;
    int next = 0;
    auto vertex = [&](int tag, int x) {
        auto it = id.find({tag, x});
        if (it == id.end()) it = id.emplace(std::make_pair(tag, x), next++).first;
        return it->second;
    };
    int s = next++;
    int t = next++;
    auto add = [&](int a, int b) { edges.emplace_back(a, b); };

    for (int x : classes[tour[0]]) add(s, vertex(0, x));
    for (int x : classes[tour[0]]) add(vertex(0, x), vertex(1, x));          // M_0
    for (int i = 1; i <= k; ++i) {                                           // G_i
        int left_class = tour[i - 1], right_class = tour[i];
        for (auto [x, y] : host.edges()) {
            int cx = col.color_of[x], cy = col.color_of[y];
            if (cx == left_class && cy == right_class) add(vertex(i, x), vertex(i, y));
            else if (cy == left_class && cx == right_class) add(vertex(i, y), vertex(i, x));
        }
    }
    for (int i = 1; i <= k; ++i)                                             // M_i
        for (int x : classes[tour[i]]) add(vertex(i, x), vertex(i + 1, x));
    for (int x : classes[tour[k]]) add(vertex(k + 1, x), vertex(k + 2, x));  // M_{k+1}
    for (int x : classes[tour[k]]) add(vertex(k + 2, x), t);

    // Bidirected matchings between repeats of the same pattern vertex on the
    // tour, and between the leading and trailing dangling matchings.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            if (tour[i] == tour[j]) pairs.emplace_back(i, j);
    pairs.emplace_back(0, k + 1);
    for (auto [i, j] : pairs) {
        int cls = i == 0 ? tour[0] : tour[i];
        for (int x : classes[cls]) {
            add(vertex(i, x), vertex(j, x));
            add(vertex(j, x), vertex(i, x));
            add(vertex(i + 1, x), vertex(j + 1, x));
            add(vertex(j + 1, x), vertex(i + 1, x));
        }
    }

    ReductionOutput out;
    out.graph = Graph(next, edges, true);
    out.parameter_map["k"] = k;
    out.parameter_map["blocks"] = 2 * k + 2;
    out.parameter_map["k_prime"] = 2 * k + 4;
    out.parameter_map["f_k_prime"] = 4 * k + 8;
    out.parameter_map["s"] = s;
    out.parameter_map["t"] = t;
    bool rigid = oracles::count_aut(pattern, lim) == 1;
    out.parameter_map["pattern_rigid"] = rigid ? 1 : 0;
    out.contract = "congruent mod 2";
    return out;
}

// ---------------------------------------------------------------------------
// Flexible-length to fixed-length directed paths.
// ---------------------------------------------------------------------------

// Appends a tail path v_1..v_{k'-k} reachable by shortcuts from t; every
// admissible path length picks exactly one landing point, so counts are
// preserved exactly.
inline ReductionOutput flexpath_to_fixed(const Graph& g, int s, int t, int k, long long fk) {
    if (!g.directed()) throw Error("flexpath_to_fixed: directed graphs only");
    if (s < 0 || t < 0 || s >= g.vertex_count() || t >= g.vertex_count())
        throw Error("flexpath_to_fixed: endpoint out of range");
    if (fk < k) throw Error("flexpath_to_fixed: f(k) < k");
    long long k_prime = fk + 1;
    int extra = static_cast<int>(k_prime - k);
    int n = g.vertex_count();
    std::vector<std::pair<int, int>> edges = g.edges();
    for (int j = 0; j < extra; ++j) {
        edges.emplace_back(t, n + j);
        if (j + 1 < extra) edges.emplace_back(n + j, n + j + 1);
    }
    ReductionOutput out;
    out.graph = Graph(n + extra, edges, true);
    out.parameter_map["k_prime"] = k_prime;
    out.parameter_map["s_prime"] = s;
    out.parameter_map["t_prime"] = n + extra - 1;
    out.contract = "equal";
    return out;
}

// ---------------------------------------------------------------------------
// Directed fixed-length paths to undirected fixed-length paths.
// ---------------------------------------------------------------------------

// Vertex v splits into v' = 2v and v'' = 2v+1; arcs become (k+1)-edge paths
// from u'' to v'. Directed s,t-paths of length k match undirected paths of
// length k(k+2) between s' and t'. Arcs into s and out of t are dropped
// first; no simple s,t-path uses them, and without this the reversed t,s
// paths would satisfy the same length budget in the undirected instance.
inline ReductionOutput directed_to_undirected(const Graph& g, int s, int t, int k) {
    if (!g.directed()) throw Error("directed_to_undirected: directed graphs only");
    if (s < 0 || t < 0 || s >= g.vertex_count() || t >= g.vertex_count())
        throw Error("directed_to_undirected: endpoint out of range");
    if (k < 1) throw Error("directed_to_undirected: k must be positive");
    int n = g.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(2 * v, 2 * v + 1);  // type 1
    int next = 2 * n;
    for (auto [u, v] : g.edges()) {  // type 2: u'' to v' through k fresh vertices
        if (v == s || u == t) continue;
        int prev = 2 * u + 1;
        for (int i = 0; i < k; ++i) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, 2 * v);
    }
    ReductionOutput out;
    out.graph = Graph(next, edges, false);
    out.parameter_map["k_prime"] = static_cast<long long>(k) * (k + 2);
    out.parameter_map["s_prime"] = 2 * s;
    out.parameter_map["t_prime"] = 2 * t;
    out.contract = "equal";
    return out;
}

// ---------------------------------------------------------------------------
// Randomized decision from a modular counting oracle.
// ---------------------------------------------------------------------------

struct DecisionResult {
    bool found = false;
    int rounds_run = 0;
    std::uint64_t seed = 0;
};

// Repeatedly subsamples host edges with probability 1/2 and queries the
// residue oracle; answers yes iff any query is nonzero. Never errs on
// no-instances; misses yes-instances with probability at most
// (1 - 2^-|E(pattern)|)^rounds.
inline DecisionResult randomized_colorful_decision(
    const Graph& pattern, const Graph& host, const HColoring& col, int q,
    const std::function<std::uint64_t(const Graph&, const HColoring&)>& residue_oracle,
    int rounds_factor = 10, std::uint64_t seed = 0) {
    if (q < 2) throw Error("randomized_colorful_decision: q must be at least 2");
    col.validate();
    if (col.pattern != pattern || col.host != host)
        throw Error("randomized_colorful_decision: coloring does not reference these graphs");
    if (pattern.edge_count() > 24)
        throw CapExceeded("randomized_colorful_decision: pattern has too many edges");
    long long rounds = static_cast<long long>(rounds_factor)
                       << pattern.edge_count();
    DecisionResult result;
    result.seed = seed;
    std::mt19937_64 rng(seed);
    for (long long round = 0; round < rounds; ++round) {
        std::vector<std::pair<int, int>> kept;
        for (auto e : host.edges())
            if (rng() & 1) kept.push_back(e);
        Graph sub(host.vertex_count(), kept);
        HColoring subcol{sub, pattern, col.color_of};
        ++result.rounds_run;
        if (residue_oracle(sub, subcol) != 0) {
            result.found = true;
            return result;
        }
    }
    return result;
}

} // namespace modsub

#endif
