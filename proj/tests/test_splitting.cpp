#include <catch2/catch_amalgamated.hpp>

#include "modsub/random.hpp"
#include "modsub/splitting.hpp"

using namespace modsub;

namespace {
Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}
Graph star(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph(leaves + 1, e);
}
Graph from_mask(int n, std::uint32_t mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask & (1u << bit)) edges.emplace_back(u, v);
    return Graph(n, edges);
}
bool is_splitting_set(const Graph& g, const std::vector<int>& r) {
    std::vector<char> removed(g.vertex_count(), 0);
    for (int v : r) removed[v] = 1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (removed[v]) continue;
        int deg = 0;
        for (int w : g.neighbors(v))
            if (!removed[w]) ++deg;
        if (deg > 1) return false;
    }
    return true;
}
} // namespace

TEST_CASE("matching_split_number on fixed graphs") {
    auto [s0, w0] = matching_split_number(complete(2));
    CHECK(s0 == 0);
    CHECK(w0.empty());

    auto [s1, w1] = matching_split_number(star(4));
    CHECK(s1 == 1);
    CHECK(w1 == std::vector<int>{0});

    auto [s2, w2] = matching_split_number(complete(4));
    CHECK(s2 == 2);
    CHECK(w2 == std::vector<int>{0, 1});

    auto [s3, w3] = matching_split_number(Graph(3, {}));
    CHECK(s3 == 0);
}

TEST_CASE("rigidize traces on fixed graphs") {
    RigidSplit k2 = rigidize(complete(2));
    CHECK(k2.rigid_set.empty());
    CHECK(k2.split_number == 0);

    RigidSplit s4 = rigidize(star(4));
    CHECK(s4.split_number == 1);
    CHECK(s4.minimum_set == std::vector<int>{0});
    CHECK(s4.low_degree == std::vector<int>{1, 2, 3, 4});  // center degree 4 > s+1
    CHECK(s4.extended == std::vector<int>{0});
    CHECK(s4.rigid_set == std::vector<int>{0});

    RigidSplit k4 = rigidize(complete(4));
    CHECK(k4.split_number == 2);
    CHECK(k4.low_degree == std::vector<int>{0, 1, 2, 3});
    CHECK(k4.extended == std::vector<int>{0, 1, 2, 3});
    CHECK(k4.rigid_set == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("check_rigidity on fixed cases") {
    CHECK(check_rigidity(complete(4), {0, 1, 2, 3}));
    Graph p3(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(check_rigidity(p3, {0}));
    CHECK(check_rigidity(star(4), {0}));
    CHECK(check_rigidity(p3, {}));

    Limits tiny;
    tiny.max_pattern_vertices = 2;
    CHECK_THROWS_AS(check_rigidity(p3, {0}, tiny), CapExceeded);
}

TEST_CASE("rigidize output is rigid and splitting, exhaustively to n=5") {
    long long bad = 0;
    for (int n = 0; n <= 5; ++n) {
        int pairs = n * (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            Graph g = from_mask(n, mask);
            RigidSplit rs = rigidize(g);
            if (!is_splitting_set(g, rs.rigid_set)) ++bad;
            if (!check_rigidity(g, rs.rigid_set)) ++bad;
            std::size_t s = static_cast<std::size_t>(rs.split_number);
            if (rs.extended.size() > s + 2 * s * (s + 1)) ++bad;
        }
    }
    REQUIRE(bad == 0);
}

TEST_CASE("rigidize is deterministic and closure is scan-order independent") {
    gen::Rng rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(gen::below(rng, 8));
        Graph g = gen::random_graph(n, 20 + static_cast<unsigned>(gen::below(rng, 60)), rng);
        RigidSplit a = rigidize(g);
        RigidSplit b = rigidize(g);
        REQUIRE(a.rigid_set == b.rigid_set);
        REQUIRE(a.extended == b.extended);

        // Descending-scan closure reaches the same fixpoint.
        int s = a.split_number;
        std::vector<char> in_t(n, 0), in_d(n, 0);
        for (int v : a.minimum_set) in_t[v] = 1;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) <= s + 1) in_d[v] = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u = n - 1; u >= 0; --u) {
                if (!in_t[u] || !in_d[u]) continue;
                for (int w : g.neighbors(u))
                    if (!in_t[w]) in_t[w] = changed = true;
            }
        }
        std::vector<int> t_desc;
        for (int v = 0; v < n; ++v)
            if (in_t[v]) t_desc.push_back(v);
        REQUIRE(t_desc == a.extended);
    }
}
