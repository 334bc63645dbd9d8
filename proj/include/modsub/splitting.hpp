#ifndef MODSUB_SPLITTING_HPP
#define MODSUB_SPLITTING_HPP

#include <set>
#include <vector>

#include "modsub/graph.hpp"
#include "modsub/oracles.hpp"

namespace modsub {

// Output of rigidize: a splitting set R that every pattern automorphism maps
// onto itself, plus the intermediate sets the algorithm went through.
struct RigidSplit {
    Graph pattern;
    int split_number = 0;         // s
    std::vector<int> minimum_set; // S, lexicographically least of size s
    std::vector<int> low_degree;  // D, vertices of degree <= s+1
    std::vector<int> extended;    // T, closure of S through D
    std::vector<int> rigid_set;   // R, T minus small components of H[T cap D]
};

namespace detail {

inline bool splits_to_matching(const Graph& g, const std::vector<char>& removed) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (removed[v]) continue;
        int deg = 0;
        for (int w : g.neighbors(v))
            if (!removed[w]) ++deg;
        if (deg > 1) return false;
    }
    return true;
}

// Enumerates size-k subsets in lexicographic order; returns the first that
// splits g into a matching, or nullopt.
inline bool first_splitting_set(const Graph& g, int k, std::vector<int>& out) {
    int n = g.vertex_count();
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    std::vector<char> removed(n, 0);
    if (k > n) return false;
    while (true) {
        std::fill(removed.begin(), removed.end(), 0);
        for (int v : comb) removed[v] = 1;
        if (splits_to_matching(g, removed)) {
            out = comb;
            return true;
        }
        int i = k - 1;
        while (i >= 0 && comb[i] == n - k + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
}

} // namespace detail

// Minimum number of vertices whose removal leaves maximum degree <= 1,
// together with the lexicographically least witness set.
inline std::pair<int, std::vector<int>> matching_split_number(const Graph& g) {
    for (int k = 0; k <= g.vertex_count(); ++k) {
        std::vector<int> witness;
        if (detail::first_splitting_set(g, k, witness)) return {k, witness};
    }
    throw InternalCheckFailure("matching_split_number: no splitting set found");
}

// Three steps: find a minimum splitting set S; extend it through low-degree
// vertices to a closure T; drop components of H[T cap D] with at most two
// vertices. The result is invariant under every automorphism of the pattern.
inline RigidSplit rigidize(const Graph& pattern) {
    RigidSplit out;
    out.pattern = pattern;
    auto [s, small] = matching_split_number(pattern);
    out.split_number = s;
    out.minimum_set = small;

    int n = pattern.vertex_count();
    std::vector<char> in_d(n, 0);
    for (int v = 0; v < n; ++v)
        if (pattern.degree(v) <= s + 1) in_d[v] = 1;
    for (int v = 0; v < n; ++v)
        if (in_d[v]) out.low_degree.push_back(v);

    // Closure: while some edge leaves T at a low-degree T-vertex, pull the
    // other endpoint in. Ascending scans repeated to a fixpoint; the fixpoint
    // set does not depend on the scan order.
    std::vector<char> in_t(n, 0);
    for (int v : small) in_t[v] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u) {
            if (!in_t[u] || !in_d[u]) continue;
            for (int w : pattern.neighbors(u)) {
                if (!in_t[w]) {
                    in_t[w] = 1;
                    changed = true;
                }
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (in_t[v]) out.extended.push_back(v);

    // Components of H[T cap D]; those with <= 2 vertices leave R.
    std::vector<char> in_r = in_t;
    std::vector<int> comp(n, -1);
    int comp_id = 0;
    for (int v = 0; v < n; ++v) {
        if (!(in_t[v] && in_d[v]) || comp[v] != -1) continue;
        std::vector<int> stack = {v}, members;
        comp[v] = comp_id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int w : pattern.neighbors(x)) {
                if (in_t[w] && in_d[w] && comp[w] == -1) {
                    comp[w] = comp_id;
                    stack.push_back(w);
                }
            }
        }
        if (members.size() <= 2)
            for (int x : members) in_r[x] = 0;
        ++comp_id;
    }
    for (int v = 0; v < n; ++v)
        if (in_r[v]) out.rigid_set.push_back(v);
    return out;
}

// True iff every automorphism of the pattern maps R onto R.
inline bool check_rigidity(const Graph& pattern, const std::vector<int>& r,
                           const Limits& lim = Limits{}) {
    if (pattern.vertex_count() > lim.max_pattern_vertices)
        throw CapExceeded("check_rigidity: pattern exceeds vertex cap");
    std::set<int> rset(r.begin(), r.end());
    bool rigid = true;
    oracles::detail::enumerate_embeddings(pattern, pattern, [&](const std::vector<int>& f) {
        if (!rigid) return;
        for (int v : r) {
            if (!rset.count(f[v])) {
                rigid = false;
                return;
            }
        }
    });
    return rigid;
}

} // namespace modsub

#endif
