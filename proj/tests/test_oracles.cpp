#include <catch2/catch_amalgamated.hpp>

#include "modsub/oracles.hpp"
#include "modsub/random.hpp"

using namespace modsub;
using namespace modsub::oracles;

namespace {
Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}
Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, e);
}
Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    return Graph(n, e);
}
} // namespace

TEST_CASE("count_emb on fixed pairs") {
    CHECK(count_emb(complete(2), complete(3)) == 6);
    CHECK(count_emb(complete(3), complete(3)) == 6);
    CHECK(count_emb(path(3), complete(4)) == 24);
    CHECK(count_emb(complete(4), complete(3)) == 0);
}

TEST_CASE("count_aut on fixed patterns") {
    CHECK(count_aut(path(3)) == 2);
    CHECK(count_aut(complete(4)) == 24);
    CHECK(count_aut(cycle(5)) == 10);
}

TEST_CASE("count_sub on fixed pairs") {
    CHECK(count_sub(complete(2), complete(3)) == 3);
    Graph two_edges(4, {{0, 1}, {2, 3}});
    CHECK(count_sub(two_edges, complete(4)) == 3);
    CHECK(count_sub(complete(4), complete(5)) == 5);
}

TEST_CASE("count_emb equals count_sub times count_aut on random pairs") {
    gen::Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int hn = 1 + static_cast<int>(gen::below(rng, 5));
        int gn = 1 + static_cast<int>(gen::below(rng, 7));
        Graph h = gen::random_graph(hn, 30 + static_cast<unsigned>(gen::below(rng, 50)), rng);
        Graph g = gen::random_graph(gn, 30 + static_cast<unsigned>(gen::below(rng, 50)), rng);
        Count sub = count_sub(h, g);  // internally cross-checks both routes
        REQUIRE(count_emb(h, g) == sub * count_aut(h));
    }
}

TEST_CASE("count_colorful_sub") {
    Graph k3 = complete(3);
    HColoring ident{k3, k3, {0, 1, 2}};
    CHECK(count_colorful_sub(k3, k3, ident) == 1);

    Graph k3_minus(3, {{0, 1}, {1, 2}});
    HColoring ident2{k3_minus, k3, {0, 1, 2}};
    CHECK(count_colorful_sub(k3, k3_minus, ident2) == 0);

    Graph k22(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    Graph k2 = complete(2);
    HColoring sides{k22, k2, {0, 0, 1, 1}};
    CHECK(count_colorful_sub(k2, k22, sides) == 4);

    HColoring invalid{k3, k2, {0, 1, 0}};
    CHECK_THROWS_AS(count_colorful_sub(k2, k3, invalid), ParseError);
}

TEST_CASE("count_k_matchings") {
    CHECK(count_k_matchings(complete(4), 2) == 3);
    CHECK(count_k_matchings(complete(4), 1) == 6);
    CHECK(count_k_matchings(complete(3), 2) == 0);
    CHECK(count_k_matchings(complete(3), 0) == 1);
}

TEST_CASE("count_edge_colorful_matchings") {
    Graph disjoint(4, {{0, 1}, {2, 3}});
    EdgeColoring rb{disjoint, {0, 1}, 2};
    CHECK(count_edge_colorful_matchings(disjoint, rb) == 1);

    Graph k3 = complete(3);
    EdgeColoring rrb{k3, {0, 0, 1}, 2};
    CHECK(count_edge_colorful_matchings(k3, rrb) == 0);

    Graph p4 = path(4);
    EdgeColoring rbb{p4, {0, 1, 1}, 2};
    CHECK(count_edge_colorful_matchings(p4, rbb) == 1);
}

TEST_CASE("count_demand_matchings_bruteforce on fixed instances") {
    DemandInstance single;
    single.graph = Graph(2, {{0, 1}});
    single.palette = 1;
    single.permitted_vertices = {{}, {}};
    single.permitted_edges = {{0}};
    single.demand_isolated = {0};
    single.demand_edges = {1};
    single.t = 3;
    CHECK(count_demand_matchings_bruteforce(single) == 1);

    DemandInstance p3;
    p3.graph = path(3);
    p3.palette = 2;  // 0 = w (vertices), 1 = r (edges)
    p3.permitted_vertices = {{0}, {0}, {0}};
    p3.permitted_edges = {{1}, {1}};
    p3.demand_isolated = {1, 0};
    p3.demand_edges = {0, 1};
    p3.t = 2;
    CHECK(count_demand_matchings_bruteforce(p3) == 2);

    DemandInstance empty;
    empty.graph = Graph(0, {});
    empty.palette = 1;
    empty.demand_isolated = {0};
    empty.demand_edges = {0};
    CHECK(count_demand_matchings_bruteforce(empty) == 1);
}

TEST_CASE("count_st_paths") {
    CHECK(count_st_paths(complete(3), 0, 1, 1, 1) == 1);
    CHECK(count_st_paths(complete(3), 0, 1, 2, 2) == 1);
    CHECK(count_st_paths(complete(4), 0, 1, 1, 3) == 5);
    CHECK(count_st_paths(complete(4), 0, 0, 0, 3) == 1);
    CHECK_THROWS_AS(count_st_paths(complete(3), 0, 1, 2, 1), ParseError);
}

TEST_CASE("count_k_paths") {
    CHECK(count_k_paths(complete(3), 2) == 3);
    CHECK(count_k_paths(complete(3), 1) == 3);
    CHECK(count_k_paths(path(4), 3) == 1);
}

TEST_CASE("st-path totals match unanchored path counts") {
    gen::Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(gen::below(rng, 6));
        Graph g = gen::random_graph(n, 40 + static_cast<unsigned>(gen::below(rng, 40)), rng);
        for (int k = 1; k <= 4; ++k) {
            Count total = 0;
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t)
                    if (s != t) total += count_st_paths(g, s, t, k, k);
            REQUIRE(total % 2 == 0);
            REQUIRE(total / 2 == count_k_paths(g, k));
        }
    }
}

TEST_CASE("hafnian_bruteforce on fixed matrices") {
    PolyMatrix one_pair(2, 3, 1);
    ModPoly a = ModPoly::variable(3, 1, 0);
    one_pair.set(0, 1, a);
    one_pair.set(1, 0, a);
    CHECK(hafnian_bruteforce(one_pair) == a);

    PolyMatrix ones(4, 2, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) ones.set(i, j, ModPoly::constant(2, 0, 1));
    CHECK(hafnian_bruteforce(ones) == ModPoly::constant(2, 0, 3));

    // Cycle weights: a12 = a34 = X1, a23 = a14 = X2.
    PolyMatrix c4(4, 2, 2);
    ModPoly x1 = ModPoly::variable(2, 2, 0), x2 = ModPoly::variable(2, 2, 1);
    auto set_sym = [&](int i, int j, const ModPoly& p) {
        c4.set(i, j, p);
        c4.set(j, i, p);
    };
    set_sym(0, 1, x1);
    set_sym(2, 3, x1);
    set_sym(1, 2, x2);
    set_sym(0, 3, x2);
    CHECK(hafnian_bruteforce(c4) == x1 * x1 + x2 * x2);
}

TEST_CASE("hafnian_bruteforce input validation") {
    PolyMatrix odd(3, 1, 0);
    CHECK_THROWS_WITH(hafnian_bruteforce(odd), Catch::Matchers::ContainsSubstring("odd"));

    PolyMatrix asym(2, 1, 1);
    asym.set(0, 1, ModPoly::variable(1, 1, 0));
    CHECK_THROWS_WITH(hafnian_bruteforce(asym),
                      Catch::Matchers::ContainsSubstring("symmetric"));

    PolyMatrix diag(2, 1, 0);
    diag.set(0, 0, ModPoly::constant(1, 0, 1));
    CHECK_THROWS_WITH(hafnian_bruteforce(diag),
                      Catch::Matchers::ContainsSubstring("diagonal"));
}

TEST_CASE("hafnian of a block-diagonal matrix is the product of block hafnians") {
    gen::Rng rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        int t = 1 + static_cast<int>(gen::below(rng, 3));
        int r = static_cast<int>(gen::below(rng, 3));
        int n1 = 2 * (1 + static_cast<int>(gen::below(rng, 2)));
        int n2 = 2 * (1 + static_cast<int>(gen::below(rng, 2)));
        PolyMatrix a = gen::random_linear_polymatrix(n1, t, r, rng);
        PolyMatrix b = gen::random_linear_polymatrix(n2, t, r, rng);
        PolyMatrix block(n1 + n2, t, r);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n1; ++j) block.set(i, j, a.at(i, j));
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < n2; ++j) block.set(n1 + i, n1 + j, b.at(i, j));
        REQUIRE(hafnian_bruteforce(block) == hafnian_bruteforce(a) * hafnian_bruteforce(b));
    }
}

TEST_CASE("size caps are enforced") {
    Limits tiny;
    tiny.max_host_vertices = 4;
    CHECK_THROWS_AS(count_emb(complete(2), complete(5), tiny), CapExceeded);
    tiny = Limits{};
    tiny.max_pattern_vertices = 3;
    CHECK_THROWS_AS(count_sub(complete(4), complete(5), tiny), CapExceeded);
    Limits paths;
    paths.max_path_length = 3;
    CHECK_THROWS_AS(count_st_paths(complete(4), 0, 1, 0, 10, paths), CapExceeded);
    PolyMatrix big(18, 1, 0);
    CHECK_THROWS_AS(hafnian_bruteforce(big), CapExceeded);
}
