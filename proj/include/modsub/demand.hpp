#ifndef MODSUB_DEMAND_HPP
#define MODSUB_DEMAND_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "modsub/demand_instance.hpp"
#include "modsub/graph.hpp"
#include "modsub/hafnian.hpp"

namespace modsub {

enum class Parity { Even = 0, Odd = 1 };

inline Parity natural_parity(int n) { return n % 2 ? Parity::Odd : Parity::Even; }

// Attachment gadget: internal graph plus designated port vertices. For every
// externally consumed port subset P, the remaining internal vertices admit
// exactly one perfect matching when |P| has the gadget's parity and none
// otherwise.
struct AbsorberGadget {
    Parity parity = Parity::Even;
    Graph internal;
    std::vector<int> port_vertex;  // port j attaches at port_vertex[j]

    int ports() const { return static_cast<int>(port_vertex.size()); }
};

// Perfect matchings of g avoiding the removed vertices.
inline std::uint64_t count_perfect_matchings(const Graph& g,
                                             const std::vector<char>& removed) {
    std::vector<char> covered = removed;
    std::function<std::uint64_t(int)> rec = [&](int from) -> std::uint64_t {
        int v = from;
        while (v < g.vertex_count() && covered[v]) ++v;
        if (v == g.vertex_count()) return 1;
        std::uint64_t total = 0;
        covered[v] = 1;
        for (int w : g.neighbors(v)) {
            if (covered[w]) continue;
            covered[w] = 1;
            total += rec(v + 1);
            covered[w] = 0;
        }
        covered[v] = 0;
        return total;
    };
    return rec(0);
}

namespace detail {

// Chain of m-2 triangles joined in a line; m ports of degree 2: two on the
// first triangle, one per middle triangle, two on the last. m >= 3.
inline AbsorberGadget triangle_chain(int m) {
    AbsorberGadget g;
    int triangles = m - 2;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < triangles; ++i) {
        int a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
        edges.emplace_back(a, b);
        edges.emplace_back(a, c);
        edges.emplace_back(b, c);
        if (i > 0) edges.emplace_back(3 * (i - 1) + 2, a);
    }
    g.internal = Graph(3 * triangles, edges);
    if (m == 3) {
        g.port_vertex = {0, 1, 2};
    } else {
        g.port_vertex = {0, 1};
        for (int i = 1; i + 1 < triangles; ++i) g.port_vertex.push_back(3 * i + 1);
        g.port_vertex.push_back(3 * (triangles - 1) + 1);
        g.port_vertex.push_back(3 * (triangles - 1) + 2);
    }
    g.parity = natural_parity(m);
    return g;
}

inline AbsorberGadget with_pendant_on_last_port(AbsorberGadget g) {
    int w = g.port_vertex.back();
    g.port_vertex.pop_back();
    std::vector<std::pair<int, int>> edges = g.internal.edges();
    int p = g.internal.vertex_count();
    edges.emplace_back(w, p);
    g.internal = Graph(p + 1, edges);
    g.parity = g.parity == Parity::Odd ? Parity::Even : Parity::Odd;
    return g;
}

inline AbsorberGadget demote_last_port(AbsorberGadget g) {
    g.port_vertex.pop_back();
    return g;
}

inline AbsorberGadget build_natural_absorber(int n) {
    if (n == 1) {
        AbsorberGadget g;
        g.internal = Graph(1, {});
        g.port_vertex = {0};
        g.parity = Parity::Odd;
        return g;
    }
    if (n == 2) {
        AbsorberGadget g;
        g.internal = Graph(2, {{0, 1}});
        g.port_vertex = {0, 1};
        g.parity = Parity::Even;
        return g;
    }
    if (n % 2 == 1) return triangle_chain(n);
    // Even port count: odd chain on n+1 ports with a pendant forcing the
    // last port internally.
    return with_pendant_on_last_port(triangle_chain(n + 1));
}

} // namespace detail

inline void check_absorber_invariant(const AbsorberGadget& g) {
    int p = g.ports();
    if (p > 20) throw CapExceeded("absorber invariant check limited to 20 ports");
    for (std::uint32_t subset = 0; subset < (1u << p); ++subset) {
        std::vector<char> removed(g.internal.vertex_count(), 0);
        int size = 0;
        for (int j = 0; j < p; ++j)
            if (subset & (1u << j)) {
                removed[g.port_vertex[j]] = 1;
                ++size;
            }
        std::uint64_t pm = count_perfect_matchings(g.internal, removed);
        bool match = (size % 2) == (g.parity == Parity::Odd ? 1 : 0);
        std::uint64_t expected = match ? 1 : 0;
        if (pm != expected)
            throw InternalCheckFailure("absorber invariant violated at subset size " +
                                       std::to_string(size) + ": " + std::to_string(pm) +
                                       " extensions");
    }
}

// Both parities exist for every n >= 1. The natural parity (matching n mod 2)
// comes from the triangle chain, with a pendant edge supplying even port
// counts. The opposite parity reuses the natural gadget on n+1 ports with its
// last port kept internal.
inline AbsorberGadget build_absorber(Parity parity, int n) {
    if (n < 1) throw Error("build_absorber: need at least one port");
    AbsorberGadget g = parity == natural_parity(n)
                           ? detail::build_natural_absorber(n)
                           : detail::demote_last_port(detail::build_natural_absorber(n + 1));
    g.parity = parity;
    if (g.ports() != n) throw InternalCheckFailure("absorber has wrong port count");
    if (n <= 8) check_absorber_invariant(g);
    return g;
}

namespace detail {

inline const AbsorberGadget& cached_absorber(Parity parity, int n) {
    static std::map<std::pair<int, int>, AbsorberGadget> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(parity), n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_absorber(parity, n)).first;
    return it->second;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Reduction to perfect-matching instances.
// ---------------------------------------------------------------------------

// Lifts a demand instance to at most one perfect-matching instance over the
// graph plus an absorber: vertex permissions become empty, isolated-vertex
// demands move onto the port edges. Colors permitted on both vertices and
// edges get a mirror color for their port-edge role, and vertices left out of
// the matching are absorbed under a reserved color. The demand totals of the
// emitted instance force every counted matching to be perfect, and the
// demand-matching count of the input equals the sum of the outputs' counts.
struct PerfectLift {
    std::vector<DemandInstance> instances;
    // Legend for the extended palette of each emitted instance.
    std::vector<int> mirror_of;  // original color -> mirror id, or -1
    int unselected_color = -1;   // reserved absorption color, or -1
    int gadget_color = -1;       // internal gadget edge color, or -1
};

inline PerfectLift reduce_to_perfect(const DemandInstance& inst) {
    inst.validate();
    PerfectLift lift;
    lift.mirror_of.assign(inst.palette, -1);

    const int n = inst.graph.vertex_count();
    std::uint64_t ti = inst.total_isolated_demand();
    std::uint64_t te = inst.total_edge_demand();

    std::vector<char> vertex_permitted(inst.palette, 0), edge_permitted(inst.palette, 0);
    for (const auto& s : inst.permitted_vertices)
        for (int c : s) vertex_permitted[c] = 1;
    for (const auto& s : inst.permitted_edges)
        for (int c : s) edge_permitted[c] = 1;
    for (int c = 0; c < inst.palette; ++c) {
        if (inst.demand_isolated[c] > 0 && !vertex_permitted[c]) return lift;
        if (inst.demand_edges[c] > 0 && !edge_permitted[c]) return lift;
    }
    if (ti + 2 * te > static_cast<std::uint64_t>(n)) return lift;
    std::uint64_t unselected = static_cast<std::uint64_t>(n) - ti - 2 * te;

    if (n == 0) {
        DemandInstance out;
        out.graph = Graph(0, {});
        out.palette = inst.palette;
        out.demand_isolated.assign(inst.palette, 0);
        out.demand_edges = inst.demand_edges;  // all zero here
        out.t = inst.t;
        lift.instances.push_back(std::move(out));
        return lift;
    }

    const AbsorberGadget& gadget = detail::cached_absorber(natural_parity(n), n);
    int gadget_n = gadget.internal.vertex_count();

    int next_id = inst.palette;
    for (int c = 0; c < inst.palette; ++c)
        if (vertex_permitted[c] && edge_permitted[c]) lift.mirror_of[c] = next_id++;
    if (unselected > 0) lift.unselected_color = next_id++;
    if (gadget.internal.edge_count() > 0) lift.gadget_color = next_id++;
    int palette = next_id;

    // Consumed ports = n - 2*te, so the gadget-internal edge count of any
    // counted perfect matching is fixed.
    std::uint64_t consumed = static_cast<std::uint64_t>(n) - 2 * te;
    if ((static_cast<std::uint64_t>(gadget_n) - consumed) % 2 != 0)
        throw InternalCheckFailure("absorber parity mismatch");
    std::uint64_t internal_edges = (static_cast<std::uint64_t>(gadget_n) - consumed) / 2;

    DemandInstance out;
    std::vector<std::pair<int, int>> edges = inst.graph.edges();
    out.permitted_edges = inst.permitted_edges;
    for (int v = 0; v < n; ++v) {
        edges.emplace_back(v, n + gadget.port_vertex[v]);
        std::vector<int> colors;
        for (int c : inst.permitted_vertices[v])
            colors.push_back(lift.mirror_of[c] >= 0 ? lift.mirror_of[c] : c);
        if (lift.unselected_color >= 0) colors.push_back(lift.unselected_color);
        std::sort(colors.begin(), colors.end());
        out.permitted_edges.push_back(std::move(colors));
    }
    for (auto [a, b] : gadget.internal.edges()) {
        edges.emplace_back(n + a, n + b);
        out.permitted_edges.push_back({lift.gadget_color});
    }
    out.graph = Graph(n + gadget_n, std::move(edges));
    out.palette = palette;
    out.t = inst.t;
    out.permitted_vertices.assign(out.graph.vertex_count(), {});
    out.demand_isolated.assign(palette, 0);
    out.demand_edges.assign(palette, 0);
    for (int c = 0; c < inst.palette; ++c) {
        if (lift.mirror_of[c] >= 0) {
            out.demand_edges[c] = inst.demand_edges[c];
            out.demand_edges[lift.mirror_of[c]] = inst.demand_isolated[c];
        } else {
            out.demand_edges[c] = inst.demand_isolated[c] + inst.demand_edges[c];
        }
    }
    if (lift.unselected_color >= 0) out.demand_edges[lift.unselected_color] = unselected;
    if (lift.gadget_color >= 0) out.demand_edges[lift.gadget_color] = internal_edges;
    lift.instances.push_back(std::move(out));
    return lift;
}

// ---------------------------------------------------------------------------
// Modular counting pipeline.
// ---------------------------------------------------------------------------

inline std::uint64_t count_demand_matchings_mod(
    const DemandInstance& inst, HafnianBackend backend = HafnianBackend::Expansion,
    const Limits& lim = Limits{}) {
    PerfectLift lift = reduce_to_perfect(inst);
    std::uint64_t modulus = std::uint64_t{1} << inst.t;
    std::uint64_t acc = 0;
    for (const DemandInstance& pm : lift.instances) {
        int nn = pm.graph.vertex_count();
        // A perfect matching colored with exact multiplicities needs the
        // demand total to be exactly half the vertex count.
        std::uint64_t total = pm.total_edge_demand();
        if (total * 2 != static_cast<std::uint64_t>(nn)) continue;

        // Variables: colors with positive demand. A permitted color with
        // zero demand can never be used, so edges lose that option.
        std::vector<int> var_of(pm.palette, -1);
        ModPoly::Exponents target;
        for (int c = 0; c < pm.palette; ++c) {
            if (pm.demand_edges[c] > 0) {
                var_of[c] = static_cast<int>(target.size());
                target.push_back(pm.demand_edges[c]);
            }
        }
        int r = static_cast<int>(target.size());
        PolyMatrix a(nn, pm.t, r);
        for (int ei = 0; ei < pm.graph.edge_count(); ++ei) {
            auto [u, v] = pm.graph.edges()[ei];
            ModPoly entry(pm.t, r);
            for (int c : pm.permitted_edges[ei])
                if (var_of[c] >= 0)
                    entry += ModPoly::variable(pm.t, r, var_of[c]);
            a.set(u, v, entry);
            a.set(v, u, entry);
        }
        ModPoly haf = hafnian_mod(a, backend,
                                  backend == HafnianBackend::Expansion ? &target : nullptr,
                                  lim);
        acc = (acc + haf.coefficient_of(target)) % modulus;
    }
    return acc;
}

} // namespace modsub

#endif
