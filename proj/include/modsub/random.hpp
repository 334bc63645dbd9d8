#ifndef MODSUB_RANDOM_HPP
#define MODSUB_RANDOM_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "modsub/demand_instance.hpp"
#include "modsub/graph.hpp"
#include "modsub/polyring.hpp"

// Seeded instance generators shared by the test suites and the CLI's verify
// and bench subcommands. All sampling goes through raw engine draws (never
// std::uniform_int_distribution) so corpora are stable across standard
// library implementations.
namespace modsub::gen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

inline bool coin(Rng& rng, unsigned percent) { return below(rng, 100) < percent; }

inline Graph random_graph(int n, unsigned edge_percent, Rng& rng, bool directed = false) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            if (coin(rng, edge_percent)) edges.emplace_back(u, v);
        }
    return Graph(n, std::move(edges), directed);
}

// Union (XOR) of random simple cycles; all degrees even by construction.
// Retries until connected.
inline Graph random_connected_even_graph(int n, Rng& rng) {
    if (n < 3) throw Error("random_connected_even_graph: need at least 3 vertices");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<std::pair<int, int>> acc;
        int cycles = 1 + static_cast<int>(below(rng, 3));
        for (int c = 0; c < cycles; ++c) {
            int len = 3 + static_cast<int>(below(rng, n - 2));
            std::vector<int> verts(n);
            std::iota(verts.begin(), verts.end(), 0);
            for (int i = n - 1; i > 0; --i)
                std::swap(verts[i], verts[below(rng, static_cast<std::uint64_t>(i) + 1)]);
            verts.resize(len);
            for (int i = 0; i < len; ++i) {
                int u = verts[i], v = verts[(i + 1) % len];
                auto key = std::minmax(u, v);
                auto it = acc.find(key);
                if (it == acc.end())
                    acc.insert(key);
                else
                    acc.erase(it);
            }
        }
        Graph g(n, {acc.begin(), acc.end()});
        if (g.edge_count() > 0 && is_connected(g)) return g;
    }
    throw Error("random_connected_even_graph: retries exhausted");
}

// Configuration model with rejection of loops and parallel edges.
inline Graph random_regular_graph(int n, int degree, Rng& rng) {
    if (n * degree % 2 != 0) throw Error("random_regular_graph: n*degree must be even");
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int d = 0; d < degree; ++d) stubs.push_back(v);
        for (std::size_t i = stubs.size() - 1; i > 0; --i)
            std::swap(stubs[i], stubs[below(rng, i + 1)]);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) ok = false;
            auto key = std::minmax(u, v);
            if (ok && !edges.insert(key).second) ok = false;
        }
        if (!ok) continue;
        Graph g(n, {edges.begin(), edges.end()});
        if (is_connected(g)) return g;
    }
    throw Error("random_regular_graph: retries exhausted");
}

// Host colored by the pattern: class sizes in [1, max_class], candidate edges
// only between classes that are adjacent in the pattern.
inline HColoring random_colored_host(const Graph& pattern, int max_class,
                                     unsigned edge_percent, Rng& rng) {
    int k = pattern.vertex_count();
    std::vector<int> color_of;
    for (int a = 0; a < k; ++a) {
        int size = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(max_class)));
        for (int i = 0; i < size; ++i) color_of.push_back(a);
    }
    int n = static_cast<int>(color_of.size());
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (pattern.has_edge(color_of[u], color_of[v]) && coin(rng, edge_percent))
                edges.emplace_back(u, v);
    HColoring col;
    col.pattern = pattern;
    col.host = Graph(n, std::move(edges));
    col.color_of = std::move(color_of);
    col.validate();
    return col;
}

inline EdgeColoring random_edge_coloring(const Graph& g, int palette, Rng& rng) {
    EdgeColoring ec;
    ec.graph = g;
    ec.palette = palette;
    for (int i = 0; i < g.edge_count(); ++i)
        ec.color_of.push_back(static_cast<int>(below(rng, palette)));
    return ec;
}

inline DemandInstance random_demand_instance(int max_n, int max_palette, int t, Rng& rng) {
    int n = static_cast<int>(below(rng, max_n + 1));
    int palette = 1 + static_cast<int>(below(rng, max_palette));
    DemandInstance inst;
    inst.graph = random_graph(n, 40 + static_cast<unsigned>(below(rng, 40)), rng);
    inst.palette = palette;
    inst.t = t;
    auto random_subset = [&](unsigned keep_percent) {
        std::vector<int> s;
        for (int c = 0; c < palette; ++c)
            if (coin(rng, keep_percent)) s.push_back(c);
        return s;
    };
    for (int v = 0; v < n; ++v) inst.permitted_vertices.push_back(random_subset(60));
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        std::vector<int> colors = random_subset(70);
        // Occasional repeats exercise orientation multiplicities.
        if (!colors.empty() && coin(rng, 25))
            colors.push_back(colors[below(rng, colors.size())]);
        std::sort(colors.begin(), colors.end());
        inst.permitted_edges.push_back(std::move(colors));
    }
    inst.demand_isolated.assign(palette, 0);
    inst.demand_edges.assign(palette, 0);
    // Bias demands toward satisfiable totals; leave room for zero counts.
    int iso_budget = static_cast<int>(below(rng, n / 2 + 2));
    int edge_budget = static_cast<int>(below(rng, n / 2 + 1));
    for (int i = 0; i < iso_budget && i < n; ++i)
        ++inst.demand_isolated[below(rng, palette)];
    for (int i = 0; i < edge_budget && 2 * (i + 1) + iso_budget <= n; ++i)
        ++inst.demand_edges[below(rng, palette)];
    inst.validate();
    return inst;
}

inline ModPoly random_linear_form(int t, int r, Rng& rng, unsigned zero_percent = 30) {
    ModPoly p(t, r);
    if (coin(rng, zero_percent)) return p;
    std::uint64_t msk = (std::uint64_t{1} << t) - 1;
    if (coin(rng, 30)) p.add_term(ModPoly::Exponents(r, 0), rng() & msk);
    for (int i = 0; i < r; ++i) {
        if (coin(rng, 55)) {
            ModPoly::Exponents e(r, 0);
            e[i] = 1;
            p.add_term(e, rng() & msk);
        }
    }
    return p;
}

inline ModPoly random_poly(int t, int r, int max_terms, std::uint64_t max_exp, Rng& rng) {
    ModPoly p(t, r);
    int terms = static_cast<int>(below(rng, max_terms + 1));
    std::uint64_t msk = (std::uint64_t{1} << t) - 1;
    for (int i = 0; i < terms; ++i) {
        ModPoly::Exponents e(r);
        for (int j = 0; j < r; ++j) e[j] = below(rng, max_exp + 1);
        p.add_term(e, rng() & msk);
    }
    return p;
}

inline PolyMatrix random_linear_polymatrix(int n, int t, int r, Rng& rng) {
    PolyMatrix a(n, t, r);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ModPoly p = random_linear_form(t, r, rng);
            a.set(i, j, p);
            a.set(j, i, p);
        }
    return a;
}

} // namespace modsub::gen

#endif
