#ifndef MODSUB_MODCOUNT_HPP
#define MODSUB_MODCOUNT_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "modsub/demand.hpp"
#include "modsub/graph.hpp"
#include "modsub/oracles.hpp"
#include "modsub/splitting.hpp"

namespace modsub {

// Color ids over a rigid set R: vertex colors are subsets of R (as bitmasks
// over R in ascending order), edge colors are unordered pairs of subsets with
// the smaller mask first. Ids enumerate masks first, then pairs.
struct ColorScheme {
    std::vector<int> r_sorted;
    std::uint32_t mask_count = 1;  // 2^|R|

    explicit ColorScheme(std::vector<int> r) : r_sorted(std::move(r)) {
        std::sort(r_sorted.begin(), r_sorted.end());
        if (r_sorted.size() > 10)
            throw CapExceeded("color scheme limited to |R| <= 10");
        mask_count = 1u << r_sorted.size();
    }

    int palette() const {
        long long m = mask_count;
        return static_cast<int>(m + m * (m + 1) / 2);
    }

    int vertex_color(std::uint32_t mask) const { return static_cast<int>(mask); }

    int edge_color(std::uint32_t a, std::uint32_t b) const {
        if (a > b) std::swap(a, b);
        long long m = mask_count;
        long long offset = static_cast<long long>(a) * m - static_cast<long long>(a) * (a - 1) / 2;
        return static_cast<int>(m + offset + (b - a));
    }

    bool is_vertex_color(int id) const { return id < static_cast<int>(mask_count); }

    std::pair<std::uint32_t, std::uint32_t> decode_edge_color(int id) const {
        long long m = mask_count;
        long long rest = id - m;
        std::uint32_t a = 0;
        while (true) {
            long long row = m - a;
            if (rest < row) break;
            rest -= row;
            ++a;
        }
        return {a, static_cast<std::uint32_t>(a + rest)};
    }
};

// Representatives of the orbits of Emb(H[R], G[S]) under composition with
// restricted pattern automorphisms. Every orbit has size |Aut(H)|_R|, the
// number of distinct restrictions.
struct OrbitReps {
    std::vector<int> subset;                  // S, ascending
    std::vector<std::vector<int>> reps;       // each maps R-index -> host vertex
    std::size_t orbit_size = 0;
    std::size_t total_embeddings = 0;
};

namespace detail {

// Distinct restrictions of pattern automorphisms to R, as permutations of
// R-indices.
inline std::set<std::vector<int>> automorphism_restrictions(const Graph& pattern,
                                                            const std::vector<int>& r_sorted,
                                                            const Limits& lim) {
    if (pattern.vertex_count() > lim.max_pattern_vertices)
        throw CapExceeded("automorphism enumeration: pattern exceeds vertex cap");
    std::vector<int> index_of(pattern.vertex_count(), -1);
    for (std::size_t i = 0; i < r_sorted.size(); ++i) index_of[r_sorted[i]] = static_cast<int>(i);
    std::set<std::vector<int>> restrictions;
    oracles::detail::enumerate_embeddings(pattern, pattern, [&](const std::vector<int>& f) {
        std::vector<int> rho(r_sorted.size());
        for (std::size_t i = 0; i < r_sorted.size(); ++i) {
            int image = f[r_sorted[i]];
            if (image < 0 || index_of[image] < 0)
                throw Error("an automorphism moves the set; it is not rigid");
            rho[i] = index_of[image];
        }
        restrictions.insert(rho);
    });
    return restrictions;
}

inline std::vector<std::vector<int>> embeddings_into_subset(const Graph& pattern,
                                                            const std::vector<int>& r_sorted,
                                                            const Graph& host,
                                                            const std::vector<int>& subset) {
    auto hr = induced_subgraph(pattern, r_sorted);
    auto gs = induced_subgraph(host, subset);
    std::vector<std::vector<int>> result;
    oracles::detail::enumerate_embeddings(hr.graph, gs.graph, [&](const std::vector<int>& f) {
        std::vector<int> sigma(r_sorted.size());
        for (std::size_t i = 0; i < r_sorted.size(); ++i) {
            // hr relabels R ascending, so local index i is pattern vertex
            // r_sorted[i]; map the image back to host labels.
            sigma[i] = gs.old_of_new[f[i]];
        }
        result.push_back(std::move(sigma));
    });
    std::sort(result.begin(), result.end());
    return result;
}

inline OrbitReps orbit_reps_from(const Graph& pattern, const std::vector<int>& r_sorted,
                                 const Graph& host, const std::vector<int>& subset,
                                 const std::set<std::vector<int>>& restrictions) {
    OrbitReps out;
    out.subset = subset;
    auto embeddings = embeddings_into_subset(pattern, r_sorted, host, subset);
    out.total_embeddings = embeddings.size();
    out.orbit_size = restrictions.size();
    std::set<std::vector<int>> pending(embeddings.begin(), embeddings.end());
    while (!pending.empty()) {
        std::vector<int> sigma = *pending.begin();  // lexicographically least
        std::set<std::vector<int>> orbit;
        for (const auto& rho : restrictions) {
            std::vector<int> composed(sigma.size());
            for (std::size_t i = 0; i < sigma.size(); ++i) composed[i] = sigma[rho[i]];
            if (!pending.count(composed))
                throw InternalCheckFailure("orbit member missing from embedding set");
            orbit.insert(std::move(composed));
        }
        if (orbit.size() != restrictions.size())
            throw InternalCheckFailure("orbit size differs from restriction count");
        for (const auto& member : orbit) pending.erase(member);
        out.reps.push_back(std::move(sigma));
    }
    if (out.reps.size() * out.orbit_size != out.total_embeddings)
        throw InternalCheckFailure("orbits do not partition the embedding set");
    return out;
}

} // namespace detail

inline OrbitReps enumerate_orbit_reps(const Graph& pattern, const std::vector<int>& rigid_set,
                                      const Graph& host, const std::vector<int>& subset,
                                      const Limits& lim = Limits{}) {
    if (rigid_set.size() != subset.size())
        throw Error("enumerate_orbit_reps: |S| must equal |R|");
    std::vector<int> r_sorted = rigid_set;
    std::sort(r_sorted.begin(), r_sorted.end());
    auto restrictions = detail::automorphism_restrictions(pattern, r_sorted, lim);
    return detail::orbit_reps_from(pattern, r_sorted, host, subset, restrictions);
}

// Colored-matching instance over G-S for one representative embedding sigma.
// Permitted colors record which R-neighborhoods a host vertex or edge can
// realize; demands record how many of each the pattern minus R requires.
inline DemandInstance build_demand_instance(const Graph& pattern,
                                            const std::vector<int>& rigid_set,
                                            const Graph& host, const std::vector<int>& subset,
                                            const std::vector<int>& sigma, int t) {
    std::vector<int> r_sorted = rigid_set;
    std::sort(r_sorted.begin(), r_sorted.end());
    ColorScheme scheme(r_sorted);
    if (sigma.size() != r_sorted.size())
        throw Error("build_demand_instance: sigma arity mismatch");

    auto rest = delete_vertices(host, subset);
    DemandInstance inst;
    inst.graph = rest.graph;
    inst.palette = scheme.palette();
    inst.t = t;

    int m = rest.graph.vertex_count();
    std::vector<std::uint32_t> nv_mask(m, 0);
    for (int nv = 0; nv < m; ++nv) {
        int v = rest.old_of_new[nv];
        for (std::size_t i = 0; i < r_sorted.size(); ++i)
            if (host.has_edge(v, sigma[i])) nv_mask[nv] |= 1u << i;
    }
    auto submasks_ascending = [](std::uint32_t mask) {
        std::vector<std::uint32_t> subs;
        std::uint32_t s = mask;
        while (true) {
            subs.push_back(s);
            if (s == 0) break;
            s = (s - 1) & mask;
        }
        std::sort(subs.begin(), subs.end());
        return subs;
    };
    for (int nv = 0; nv < m; ++nv) {
        std::vector<int> colors;
        for (std::uint32_t sub : submasks_ascending(nv_mask[nv]))
            colors.push_back(scheme.vertex_color(sub));
        inst.permitted_vertices.push_back(std::move(colors));
    }
    // One multiset entry per ordered realization (A at u, B at v); a pair
    // realizable in both orientations appears twice. This is what makes the
    // correspondence with pattern copies one-to-one: the pair color alone
    // does not remember which endpoint carries which neighborhood.
    for (auto [u, v] : rest.graph.edges()) {
        std::vector<int> colors;
        for (std::uint32_t a : submasks_ascending(nv_mask[u]))
            for (std::uint32_t b : submasks_ascending(nv_mask[v]))
                colors.push_back(scheme.edge_color(a, b));
        std::sort(colors.begin(), colors.end());
        inst.permitted_edges.push_back(std::move(colors));
    }

    inst.demand_isolated.assign(inst.palette, 0);
    inst.demand_edges.assign(inst.palette, 0);
    std::vector<char> in_r(pattern.vertex_count(), 0);
    for (int v : r_sorted) in_r[v] = 1;
    std::vector<int> index_of(pattern.vertex_count(), -1);
    for (std::size_t i = 0; i < r_sorted.size(); ++i) index_of[r_sorted[i]] = static_cast<int>(i);
    auto pattern_mask = [&](int w) {
        std::uint32_t mask = 0;
        for (int x : pattern.neighbors(w))
            if (in_r[x]) mask |= 1u << index_of[x];
        return mask;
    };
    for (int w = 0; w < pattern.vertex_count(); ++w) {
        if (in_r[w]) continue;
        bool isolated = true;
        for (int x : pattern.neighbors(w))
            if (!in_r[x]) isolated = false;
        if (isolated) ++inst.demand_isolated[scheme.vertex_color(pattern_mask(w))];
    }
    for (auto [w, x] : pattern.edges())
        if (!in_r[w] && !in_r[x])
            ++inst.demand_edges[scheme.edge_color(pattern_mask(w), pattern_mask(x))];
    inst.validate();
    return inst;
}

struct ModCountContribution {
    std::vector<int> subset;
    std::vector<int> sigma;
    std::uint64_t value = 0;
};

struct ModCountResult {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 2;
    RigidSplit split;
    std::vector<ModCountContribution> contributions;  // filled on request
};

// Counts pattern-isomorphic subgraphs of the host modulo 2^t: for every
// candidate image S of the rigid set and every orbit representative, add the
// demand-matching count of the residual instance.
inline ModCountResult modcount_detailed(const Graph& pattern, const Graph& host, int t,
                                        HafnianBackend backend = HafnianBackend::Expansion,
                                        bool keep_contributions = false,
                                        const Limits& lim = Limits{}) {
    if (t < 1 || t > 32) throw Error("modcount: t must be in [1,32]");
    if (pattern.directed() || host.directed())
        throw Error("modcount: undirected graphs only");
    ModCountResult result;
    result.modulus = std::uint64_t{1} << t;
    result.split = rigidize(pattern);
    const std::vector<int>& r = result.split.rigid_set;
    int n = host.vertex_count();
    int k = static_cast<int>(r.size());
    if (k > n) return result;

    auto restrictions = detail::automorphism_restrictions(pattern, r, lim);

    // Lexicographic subset enumeration keeps runs deterministic and
    // restartable.
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
        OrbitReps reps = detail::orbit_reps_from(pattern, r, host, subset, restrictions);
        for (const auto& sigma : reps.reps) {
            DemandInstance inst = build_demand_instance(pattern, r, host, subset, sigma, t);
            std::uint64_t value = count_demand_matchings_mod(inst, backend, lim);
            result.residue = (result.residue + value) % result.modulus;
            if (keep_contributions)
                result.contributions.push_back({subset, sigma, value});
        }
        if (k == 0) break;
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    return result;
}

inline std::uint64_t modcount(const Graph& pattern, const Graph& host, int t,
                              HafnianBackend backend = HafnianBackend::Expansion,
                              const Limits& lim = Limits{}) {
    return modcount_detailed(pattern, host, t, backend, false, lim).residue;
}

} // namespace modsub

#endif
