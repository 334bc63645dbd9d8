#ifndef MODSUB_ORACLES_HPP
#define MODSUB_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "modsub/demand_instance.hpp"
#include "modsub/errors.hpp"
#include "modsub/graph.hpp"
#include "modsub/polyring.hpp"

// Brute-force reference counters. Everything here is deliberately naive and
// exponential; size caps turn runaway inputs into errors instead of hangs.
namespace modsub::oracles {

using Count = boost::multiprecision::cpp_int;

namespace detail {

inline void check_pair_caps(const Graph& pattern, const Graph& host, const Limits& lim) {
    if (pattern.vertex_count() > lim.max_pattern_vertices)
        throw CapExceeded("pattern exceeds cap of " +
                          std::to_string(lim.max_pattern_vertices) + " vertices");
    if (host.vertex_count() > lim.max_host_vertices)
        throw CapExceeded("host exceeds cap of " + std::to_string(lim.max_host_vertices) +
                          " vertices");
}

// Pattern vertex order for backtracking: breadth-first from the highest
// degree vertex so most placements are adjacency-constrained.
inline std::vector<int> embedding_order(const Graph& pattern) {
    int h = pattern.vertex_count();
    std::vector<int> order;
    std::vector<char> placed(h, 0);
    while (static_cast<int>(order.size()) < h) {
        int best = -1;
        for (int v = 0; v < h; ++v) {
            if (placed[v]) continue;
            if (best == -1 || pattern.degree(v) > pattern.degree(best)) best = v;
        }
        std::vector<int> queue = {best};
        placed[best] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.erase(queue.begin());
            order.push_back(v);
            for (int w : pattern.neighbors(v)) {
                if (!placed[w]) {
                    placed[w] = 1;
                    queue.push_back(w);
                }
            }
            if (pattern.directed()) {
                for (int w : pattern.in_neighbors(v)) {
                    if (!placed[w]) {
                        placed[w] = 1;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    return order;
}

template <typename Callback>
void enumerate_embeddings_rec(const Graph& pattern, const Graph& host,
                              const std::vector<int>& order, std::size_t depth,
                              std::vector<int>& image, std::vector<char>& used,
                              Callback&& cb) {
    if (depth == order.size()) {
        cb(image);
        return;
    }
    int u = order[depth];
    for (int v = 0; v < host.vertex_count(); ++v) {
        if (used[v]) continue;
        bool ok = true;
        for (std::size_t d = 0; d < depth && ok; ++d) {
            int p = order[d];
            if (pattern.has_edge(u, p) && !host.has_edge(v, image[p])) ok = false;
            if (pattern.has_edge(p, u) && !host.has_edge(image[p], v)) ok = false;
        }
        if (!ok) continue;
        image[u] = v;
        used[v] = 1;
        enumerate_embeddings_rec(pattern, host, order, depth + 1, image, used, cb);
        used[v] = 0;
        image[u] = -1;
    }
}

// Calls cb once per injective homomorphism pattern -> host, with image[u]
// giving the host vertex of pattern vertex u.
template <typename Callback>
void enumerate_embeddings(const Graph& pattern, const Graph& host, Callback&& cb) {
    if (pattern.directed() != host.directed())
        throw Error("embedding enumeration: directedness mismatch");
    if (pattern.vertex_count() > host.vertex_count()) return;
    auto order = embedding_order(pattern);
    std::vector<int> image(pattern.vertex_count(), -1);
    std::vector<char> used(host.vertex_count(), 0);
    enumerate_embeddings_rec(pattern, host, order, 0, image, used, cb);
}

} // namespace detail

inline Count count_emb(const Graph& pattern, const Graph& host,
                       const Limits& lim = Limits{}) {
    detail::check_pair_caps(pattern, host, lim);
    Count c = 0;
    detail::enumerate_embeddings(pattern, host, [&](const std::vector<int>&) { ++c; });
    return c;
}

// For finite simple graphs every injective endomorphism is an automorphism,
// so |Aut(H)| = |Emb(H,H)|.
inline Count count_aut(const Graph& pattern, const Limits& lim = Limits{}) {
    Limits self = lim;
    self.max_host_vertices = std::max(self.max_host_vertices, self.max_pattern_vertices);
    return count_emb(pattern, pattern, self);
}

// Number of pattern-isomorphic subgraphs, computed two ways that must agree:
// as Emb/Aut with exact divisibility, and by collecting distinct embedding
// images. Disagreement means an enumeration bug and is fatal.
inline Count count_sub(const Graph& pattern, const Graph& host,
                       const Limits& lim = Limits{}) {
    detail::check_pair_caps(pattern, host, lim);
    Count embeddings = 0;
    std::set<std::vector<int>> images;
    std::vector<int> key;
    detail::enumerate_embeddings(pattern, host, [&](const std::vector<int>& image) {
        ++embeddings;
        key.clear();
        std::vector<int> verts(image);
        std::sort(verts.begin(), verts.end());
        key.insert(key.end(), verts.begin(), verts.end());
        key.push_back(-1);
        std::vector<std::pair<int, int>> es;
        for (auto [a, b] : pattern.edges()) {
            int u = image[a], v = image[b];
            if (!pattern.directed() && u > v) std::swap(u, v);
            es.emplace_back(u, v);
        }
        std::sort(es.begin(), es.end());
        for (auto [u, v] : es) {
            key.push_back(u);
            key.push_back(v);
        }
        images.insert(key);
    });
    Count autos = count_aut(pattern, lim);
    if (embeddings % autos != 0)
        throw InternalCheckFailure("count_sub: embedding count not divisible by |Aut|");
    Count by_division = embeddings / autos;
    Count by_images = static_cast<Count>(images.size());
    if (by_division != by_images)
        throw InternalCheckFailure("count_sub: division route and image route disagree");
    return by_division;
}

// Subgraphs using one vertex per color class that the coloring maps
// isomorphically onto the pattern. Per choice of representatives there is at
// most one such subgraph, present iff every pattern edge is realized.
inline Count count_colorful_sub(const Graph& pattern, const Graph& host,
                                const HColoring& col, const Limits& lim = Limits{}) {
    detail::check_pair_caps(pattern, host, lim);
    col.validate();
    if (col.host != host || col.pattern != pattern)
        throw ParseError("count_colorful_sub: coloring does not reference these graphs");
    auto classes = col.classes();
    int k = pattern.vertex_count();
    std::vector<int> chosen(k, -1);
    Count total = 0;
    std::function<void(int)> rec = [&](int a) {
        if (a == k) {
            ++total;
            return;
        }
        for (int v : classes[a]) {
            bool ok = true;
            for (int b = 0; b < a && ok; ++b)
                if (pattern.has_edge(a, b) && !host.has_edge(v, chosen[b])) ok = false;
            if (!ok) continue;
            chosen[a] = v;
            rec(a + 1);
            chosen[a] = -1;
        }
    };
    rec(0);
    return total;
}

inline Count count_k_matchings(const Graph& g, int k, const Limits& lim = Limits{}) {
    if (g.vertex_count() > lim.max_host_vertices)
        throw CapExceeded("count_k_matchings: host exceeds vertex cap");
    if (k < 0) return 0;
    const auto& edges = g.edges();
    std::vector<char> used(g.vertex_count(), 0);
    Count total = 0;
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
        if (left == 0) {
            ++total;
            return;
        }
        if (edges.size() - idx < static_cast<std::size_t>(left)) return;
        for (std::size_t i = idx; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if (used[u] || used[v]) continue;
            used[u] = used[v] = 1;
            rec(i + 1, left - 1);
            used[u] = used[v] = 0;
        }
    };
    rec(0, k);
    return total;
}

// Matchings using each palette color exactly once. Fail-first search: always
// branch on the unfilled color with the fewest currently available edges.
inline Count count_edge_colorful_matchings(const Graph& g, const EdgeColoring& ec,
                                           const Limits& lim = Limits{},
                                           std::uint64_t node_budget = 200000000ULL) {
    ec.validate();
    if (ec.graph != g) throw ParseError("edge coloring does not reference this graph");
    if (g.vertex_count() > lim.max_host_vertices)
        throw CapExceeded("count_edge_colorful_matchings: host exceeds vertex cap");
    int k = ec.palette;
    std::vector<std::vector<int>> by_color(k);
    for (int i = 0; i < g.edge_count(); ++i) by_color[ec.color_of[i]].push_back(i);
    std::vector<char> used(g.vertex_count(), 0);
    std::vector<char> done(k, 0);
    std::uint64_t nodes = 0;
    Count total = 0;
    std::function<void(int)> rec = [&](int filled) {
        if (++nodes > node_budget)
            throw CapExceeded("count_edge_colorful_matchings: node budget exhausted");
        if (filled == k) {
            ++total;
            return;
        }
        int best = -1, best_avail = -1;
        for (int c = 0; c < k; ++c) {
            if (done[c]) continue;
            int avail = 0;
            for (int ei : by_color[c]) {
                auto [u, v] = g.edges()[ei];
                if (!used[u] && !used[v]) ++avail;
            }
            if (best == -1 || avail < best_avail) {
                best = c;
                best_avail = avail;
            }
            if (avail == 0) break;
        }
        if (best_avail == 0) return;
        done[best] = 1;
        for (int ei : by_color[best]) {
            auto [u, v] = g.edges()[ei];
            if (used[u] || used[v]) continue;
            used[u] = used[v] = 1;
            rec(filled + 1);
            used[u] = used[v] = 0;
        }
        done[best] = 0;
    };
    rec(0);
    return total;
}

// Exact count of demand-satisfying colored matchings: every matching of the
// demanded size, every selected isolated-vertex set, every permissible
// coloring with exact per-color multiplicities. Enumeration scans vertices in
// order; the lowest uncovered vertex is matched, selected as isolated, or
// left out, with budgets pruning dead branches early.
inline Count count_demand_matchings_bruteforce(const DemandInstance& inst,
                                               const Limits& lim = Limits{}) {
    inst.validate();
    if (inst.graph.vertex_count() > lim.max_host_vertices)
        throw CapExceeded("count_demand_matchings_bruteforce: host exceeds vertex cap");
    const Graph& g = inst.graph;
    int n = g.vertex_count();
    std::uint64_t need_edges = inst.total_edge_demand();
    std::uint64_t need_iso = inst.total_isolated_demand();
    if (need_iso + 2 * need_edges > static_cast<std::uint64_t>(n)) return 0;
    std::uint64_t leftover = n - need_iso - 2 * need_edges;

    std::map<std::pair<int, int>, int> edge_index;
    for (int i = 0; i < g.edge_count(); ++i) edge_index[g.edges()[i]] = i;

    std::vector<int> picked_edges, picked_iso;
    std::vector<std::uint64_t> rem_i, rem_e;
    Count total = 0;

    std::function<Count(std::size_t)> color_count = [&](std::size_t pos) -> Count {
        if (pos == picked_edges.size() + picked_iso.size()) return 1;
        Count ways = 0;
        if (pos < picked_edges.size()) {
            for (int c : inst.permitted_edges[picked_edges[pos]]) {
                if (rem_e[c] == 0) continue;
                --rem_e[c];
                ways += color_count(pos + 1);
                ++rem_e[c];
            }
        } else {
            int v = picked_iso[pos - picked_edges.size()];
            for (int c : inst.permitted_vertices[v]) {
                if (rem_i[c] == 0) continue;
                --rem_i[c];
                ways += color_count(pos + 1);
                ++rem_i[c];
            }
        }
        return ways;
    };

    std::vector<char> covered(n, 0);
    std::uint64_t edges_left = need_edges, iso_left = need_iso, out_left = leftover;
    std::function<void(int)> scan = [&](int v) {
        while (v < n && covered[v]) ++v;
        if (v == n) {
            if (edges_left == 0 && iso_left == 0) {
                // All color demands are consumed exactly when every element
                // is colored; zero-remainder is checked by the budgets.
                rem_i = inst.demand_isolated;
                rem_e = inst.demand_edges;
                total += color_count(0);
            }
            return;
        }
        covered[v] = 1;
        if (iso_left > 0) {
            --iso_left;
            picked_iso.push_back(v);
            scan(v + 1);
            picked_iso.pop_back();
            ++iso_left;
        }
        if (out_left > 0) {
            --out_left;
            scan(v + 1);
            ++out_left;
        }
        if (edges_left > 0) {
            for (int w : g.neighbors(v)) {
                if (covered[w]) continue;
                covered[w] = 1;
                --edges_left;
                auto key = std::minmax(v, w);
                picked_edges.push_back(edge_index.at({key.first, key.second}));
                scan(v + 1);
                picked_edges.pop_back();
                ++edges_left;
                covered[w] = 0;
            }
        }
        covered[v] = 0;
    };
    scan(0);
    return total;
}

// Simple s,t-paths with lo <= length <= hi. A path stops the moment it hits t.
inline Count count_st_paths(const Graph& g, int s, int t, int lo, int hi,
                            const Limits& lim = Limits{}) {
    if (s < 0 || t < 0 || s >= g.vertex_count() || t >= g.vertex_count())
        throw ParseError("count_st_paths: endpoint out of range");
    if (lo > hi) throw ParseError("count_st_paths: lo > hi");
    if (hi > lim.max_path_length)
        throw CapExceeded("count_st_paths: length bound exceeds cap");
    if (g.vertex_count() > lim.max_host_vertices)
        throw CapExceeded("count_st_paths: host exceeds vertex cap");
    Count total = 0;
    if (s == t) return (lo <= 0 && 0 <= hi) ? 1 : 0;
    std::vector<char> visited(g.vertex_count(), 0);
    visited[s] = 1;
    std::function<void(int, int)> dfs = [&](int v, int len) {
        if (v == t) {
            if (len >= lo) ++total;
            return;
        }
        if (len == hi) return;
        for (int w : g.neighbors(v)) {
            if (visited[w]) continue;
            visited[w] = 1;
            dfs(w, len + 1);
            visited[w] = 0;
        }
    };
    dfs(s, 0);
    return total;
}

// Unanchored k-edge simple paths counted as subgraphs. Each is found once
// from each end, hence the halving.
inline Count count_k_paths(const Graph& g, int k, const Limits& lim = Limits{}) {
    if (g.directed()) throw ParseError("count_k_paths: undirected graphs only");
    if (k > lim.max_path_length) throw CapExceeded("count_k_paths: length exceeds cap");
    if (g.vertex_count() > lim.max_host_vertices)
        throw CapExceeded("count_k_paths: host exceeds vertex cap");
    if (k < 0) return 0;
    if (k == 0) return g.vertex_count();
    Count directed_total = 0;
    std::vector<char> visited(g.vertex_count(), 0);
    std::function<void(int, int)> dfs = [&](int v, int len) {
        if (len == k) {
            ++directed_total;
            return;
        }
        for (int w : g.neighbors(v)) {
            if (visited[w]) continue;
            visited[w] = 1;
            dfs(w, len + 1);
            visited[w] = 0;
        }
    };
    for (int s = 0; s < g.vertex_count(); ++s) {
        visited[s] = 1;
        dfs(s, 0);
        visited[s] = 0;
    }
    if (directed_total % 2 != 0)
        throw InternalCheckFailure("count_k_paths: odd traversal total");
    return directed_total / 2;
}

// Hafnian by direct expansion over all perfect pairings, in the polynomial
// ring the matrix lives in.
inline ModPoly hafnian_bruteforce(const PolyMatrix& a, const Limits& lim = Limits{}) {
    if (a.dim() % 2 != 0) throw Error("hafnian: odd dimension");
    if (a.dim() > lim.max_hafnian_dim)
        throw CapExceeded("hafnian: dimension exceeds cap of " +
                          std::to_string(lim.max_hafnian_dim));
    if (!a.symmetric()) throw Error("hafnian: matrix is not symmetric");
    if (!a.zero_diagonal()) throw Error("hafnian: nonzero diagonal");
    return modsub::detail::hafnian_expansion(a);
}

} // namespace modsub::oracles

#endif
