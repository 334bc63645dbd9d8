#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "modsub/random.hpp"
#include "modsub/reductions.hpp"

using namespace modsub;
using oracles::Count;

namespace {
Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}
Graph load_fixture(const std::string& name) {
    std::ifstream f(std::string(MODSUB_FIXTURE_DIR) + "/" + name);
    REQUIRE(f.good());
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_graph(text);
}
HColoring identity_coloring(const Graph& h) {
    std::vector<int> ident(h.vertex_count());
    std::iota(ident.begin(), ident.end(), 0);
    return HColoring{h, h, ident};
}
} // namespace

TEST_CASE("consistency gadget extension counts") {
    // Residues mod q for the five constrained subsets, all q in {3,5,7}.
    for (int q : {3, 5, 7}) {
        Graph gadget = consistency_gadget(q);
        auto counts = matchings_by_covered_externals(gadget, {0, 1, 2});
        CHECK(counts[0b000] == 1);
        CHECK(counts[0b111] % q == 1);
        CHECK(counts[0b010] % q == 0);
        CHECK(counts[0b100] % q == 0);
        CHECK(counts[0b110] % q == 0);
        CHECK_NOTHROW(check_colmatch_gadget_contracts(q));
    }
    // Raw values for q=3 pin the construction itself.
    auto c3 = matchings_by_covered_externals(consistency_gadget(3), {0, 1, 2});
    CHECK(c3[0b000] == 1);
    CHECK(c3[0b111] == 4);
    CHECK(c3[0b010] == 3);
    CHECK(c3[0b110] == 6);
}

TEST_CASE("AND gadget edge counts") {
    for (int q : {3, 5, 7}) {
        Graph a = and_gadget(q);
        CHECK(edges_after_removal(a, {}) == 2 * static_cast<std::uint64_t>(q));
        CHECK(edges_after_removal(a, {0}) == static_cast<std::uint64_t>(q));
        CHECK(edges_after_removal(a, {1}) == static_cast<std::uint64_t>(q));
        CHECK(edges_after_removal(a, {0, 1}) == 1);
    }
    Graph a5 = and_gadget(5);
    CHECK(a5.edge_count() == 10);
}

TEST_CASE("structured colorful-matching count matches plain enumeration") {
    Graph k4 = complete(4);
    HColoring ident = identity_coloring(k4);
    Limits lim = Limits::unbounded();
    for (int q : {3, 5}) {
        ReductionOutput out = build_colmatch_instance(k4, k4, ident, q);
        Count dfs = oracles::count_edge_colorful_matchings(out.graph, *out.edge_coloring, lim);
        Count fac = colmatch_count_structured(out.graph, *out.edge_coloring, 12);
        REQUIRE(dfs == fac);
    }
    // A host missing one pattern edge: both routes see zero.
    Graph host(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    HColoring col{host, k4, {0, 1, 2, 3}};
    ReductionOutput out = build_colmatch_instance(k4, host, col, 3);
    CHECK(oracles::count_edge_colorful_matchings(out.graph, *out.edge_coloring, lim) == 0);
    CHECK(colmatch_count_structured(out.graph, *out.edge_coloring, 12) == 0);
}

TEST_CASE("colmatch reduction: identity instance congruence") {
    Graph k4 = complete(4);
    HColoring ident = identity_coloring(k4);
    Limits lim = Limits::unbounded();
    ReductionOutput out = build_colmatch_instance(k4, k4, ident, 3);
    CHECK(oracles::count_colorful_sub(k4, k4, ident, lim) == 1);
    CHECK(oracles::count_edge_colorful_matchings(out.graph, *out.edge_coloring, lim) % 3 == 1);
    CHECK(out.parameter_map["colors"] == 3 * 4 + 3 * 4 / 2);
}

TEST_CASE("colmatch reduction: end-to-end congruence for K4 patterns") {
    Graph k4 = complete(4);
    Limits lim = Limits::unbounded();
    gen::Rng rng(2718);
    int done = 0, nonzero = 0;
    while (done < 24) {
        HColoring col = gen::random_colored_host(k4, 2, 70 + static_cast<unsigned>(gen::below(rng, 30)), rng);
        int q = done % 4 == 3 ? 5 : 3;
        ReductionOutput out = build_colmatch_instance(k4, col.host, col, q);
        Count lhs = oracles::count_colorful_sub(k4, col.host, col, lim);
        Count rhs = colmatch_count_structured(out.graph, *out.edge_coloring, 12);
        REQUIRE(lhs % q == rhs % q);
        if (lhs > 0) ++nonzero;
        ++done;
    }
    CHECK(nonzero >= 5);

    CHECK_THROWS_WITH(build_colmatch_instance(k4, k4, identity_coloring(k4), 4),
                      Catch::Matchers::ContainsSubstring("odd"));
    Graph k3 = complete(3);
    CHECK_THROWS_WITH(build_colmatch_instance(k3, k3, identity_coloring(k3), 3),
                      Catch::Matchers::ContainsSubstring("3-regular"));
}

TEST_CASE("inclusion-exclusion matches direct colorful matching counts") {
    gen::Rng rng(1066);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(gen::below(rng, 5));
        int k = 1 + static_cast<int>(gen::below(rng, 4));
        Graph g = gen::random_graph(n, 30 + static_cast<unsigned>(gen::below(rng, 50)), rng);
        EdgeColoring ec = gen::random_edge_coloring(g, k, rng);
        REQUIRE(colmatch_via_inclusion_exclusion(g, ec) ==
                oracles::count_edge_colorful_matchings(g, ec));
    }
}

TEST_CASE("flexible to fixed length path reduction is exactly parsimonious") {
    // Pinned example: k=2, f(k)=4.
    Graph g(3, {{0, 1}, {1, 2}}, true);
    ReductionOutput out = flexpath_to_fixed(g, 0, 2, 2, 4);
    CHECK(out.parameter_map["k_prime"] == 5);
    CHECK(out.graph.vertex_count() == 6);  // three new tail vertices
    CHECK(out.contract == "equal");

    Graph arc(2, {{0, 1}}, true);
    ReductionOutput single = flexpath_to_fixed(arc, 0, 1, 1, 1);
    CHECK(single.parameter_map["k_prime"] == 2);
    CHECK(oracles::count_st_paths(single.graph, 0,
                                  static_cast<int>(single.parameter_map["t_prime"]), 2, 2) == 1);

    CHECK_THROWS_WITH(flexpath_to_fixed(arc, 0, 1, 3, 2),
                      Catch::Matchers::ContainsSubstring("f(k) < k"));

    gen::Rng rng(9009);
    Limits lim = Limits::unbounded();
    for (int trial = 0; trial < 50; ++trial) {
        int n = 3 + static_cast<int>(gen::below(rng, 5));
        Graph d = gen::random_graph(n, 25 + static_cast<unsigned>(gen::below(rng, 40)), rng, true);
        int s = static_cast<int>(gen::below(rng, n));
        int t = static_cast<int>(gen::below(rng, n));
        if (s == t) t = (t + 1) % n;
        int k = 1 + static_cast<int>(gen::below(rng, 3));
        long long fk = k + static_cast<long long>(gen::below(rng, 3));
        ReductionOutput r = flexpath_to_fixed(d, s, t, k, fk);
        Count flexible = oracles::count_st_paths(d, s, t, k, static_cast<int>(fk), lim);
        Count fixed = oracles::count_st_paths(r.graph, s,
                                              static_cast<int>(r.parameter_map["t_prime"]),
                                              static_cast<int>(r.parameter_map["k_prime"]),
                                              static_cast<int>(r.parameter_map["k_prime"]), lim);
        REQUIRE(flexible == fixed);
    }
}

TEST_CASE("directed to undirected path reduction is exactly parsimonious") {
    CHECK(directed_to_undirected(Graph(2, {{0, 1}}, true), 0, 1, 2).parameter_map["k_prime"] == 8);

    ReductionOutput single = directed_to_undirected(Graph(2, {{0, 1}}, true), 0, 1, 1);
    CHECK(single.parameter_map["k_prime"] == 3);
    CHECK(oracles::count_st_paths(single.graph, 0, 2, 3, 3) == 1);
    CHECK(oracles::count_st_paths(Graph(2, {{0, 1}}, true), 0, 1, 1, 1) == 1);

    gen::Rng rng(7777);
    Limits lim = Limits::unbounded();
    for (int trial = 0; trial < 50; ++trial) {
        int n = 3 + static_cast<int>(gen::below(rng, 4));
        Graph d = gen::random_graph(n, 30 + static_cast<unsigned>(gen::below(rng, 40)), rng, true);
        int s = static_cast<int>(gen::below(rng, n));
        int t = static_cast<int>(gen::below(rng, n));
        if (s == t) t = (t + 1) % n;
        int k = 1 + static_cast<int>(gen::below(rng, 3));
        ReductionOutput r = directed_to_undirected(d, s, t, k);
        Count directed = oracles::count_st_paths(d, s, t, k, k, lim);
        Count undirected = oracles::count_st_paths(
            r.graph, static_cast<int>(r.parameter_map["s_prime"]),
            static_cast<int>(r.parameter_map["t_prime"]),
            static_cast<int>(r.parameter_map["k_prime"]),
            static_cast<int>(r.parameter_map["k_prime"]), lim);
        REQUIRE(directed == undirected);
    }
}

TEST_CASE("layered path reduction: parameters and rigid fixture") {
    Graph h = load_fixture("rigid_4regular_10.json");
    Limits lim = Limits::unbounded();
    REQUIRE(oracles::count_aut(h, lim) == 1);
    int k = h.edge_count();
    CHECK(k == 20);

    HColoring ident = identity_coloring(h);
    ReductionOutput out = vcsub_to_directed_flexpath(h, h, ident, lim);
    CHECK(out.parameter_map["k_prime"] == 2 * k + 4);
    CHECK(out.parameter_map["f_k_prime"] == 4 * k + 8);
    CHECK(out.parameter_map["pattern_rigid"] == 1);

    // Exact equality on the identity-colored rigid fixture.
    Count lhs = oracles::count_colorful_sub(h, h, ident, lim);
    Count rhs = oracles::count_st_paths(out.graph, static_cast<int>(out.parameter_map["s"]),
                                        static_cast<int>(out.parameter_map["t"]),
                                        static_cast<int>(out.parameter_map["k_prime"]),
                                        static_cast<int>(out.parameter_map["f_k_prime"]), lim);
    CHECK(lhs == 1);
    CHECK(rhs == 1);

    CHECK_THROWS_WITH(vcsub_to_directed_flexpath(complete(4), complete(4),
                                                 identity_coloring(complete(4)), lim),
                      Catch::Matchers::ContainsSubstring("4-regular"));
}

TEST_CASE("layered path reduction: parity on perturbed hosts") {
    Graph h = load_fixture("rigid_4regular_10.json");
    Limits lim = Limits::unbounded();
    int nonzero = 0;
    for (unsigned seed = 1; seed <= 8; ++seed) {
        gen::Rng rng(seed);
        // Host = pattern plus one duplicated vertex with a partial edge set.
        int dup = static_cast<int>(gen::below(rng, h.vertex_count()));
        std::vector<std::pair<int, int>> edges = h.edges();
        int nv = h.vertex_count();
        std::vector<int> colors(h.vertex_count());
        std::iota(colors.begin(), colors.end(), 0);
        colors.push_back(dup);
        for (int w : h.neighbors(dup))
            if (gen::coin(rng, 70)) edges.emplace_back(std::min(nv, w), std::max(nv, w));
        Graph host(nv + 1, edges);
        HColoring col{host, h, colors};
        col.validate();
        ReductionOutput out = vcsub_to_directed_flexpath(h, host, col, lim);
        Count lhs = oracles::count_colorful_sub(h, host, col, lim);
        Count rhs = oracles::count_st_paths(out.graph, static_cast<int>(out.parameter_map["s"]),
                                            static_cast<int>(out.parameter_map["t"]),
                                            static_cast<int>(out.parameter_map["k_prime"]),
                                            static_cast<int>(out.parameter_map["f_k_prime"]), lim);
        REQUIRE(lhs % 2 == rhs % 2);
        if (rhs > 1) ++nonzero;
    }
    CHECK(nonzero >= 4);  // the parity check must see real path populations
}

TEST_CASE("layered path reduction on a symmetric pattern still matches parity") {
    // K5 is 4-regular with 10 edges and a large automorphism group; the
    // parity contract does not need rigidity.
    Graph k5 = complete(5);
    Limits lim = Limits::unbounded();
    HColoring ident = identity_coloring(k5);
    ReductionOutput out = vcsub_to_directed_flexpath(k5, k5, ident, lim);
    CHECK(out.parameter_map["k"] == 10);
    CHECK(out.parameter_map["blocks"] == 22);
    CHECK(out.parameter_map["k_prime"] == 24);
    CHECK(out.parameter_map["f_k_prime"] == 48);
    CHECK(out.parameter_map["pattern_rigid"] == 0);
    oracles::Count lhs = oracles::count_colorful_sub(k5, k5, ident, lim);
    oracles::Count rhs = oracles::count_st_paths(out.graph,
                                                 static_cast<int>(out.parameter_map["s"]),
                                                 static_cast<int>(out.parameter_map["t"]), 24, 48, lim);
    CHECK(lhs == 1);
    CHECK(rhs % 2 == 1);
}

TEST_CASE("randomized decision from a residue oracle") {
    Graph p3(3, {{0, 1}, {1, 2}});
    auto oracle = [](const Graph& host, const HColoring& col) -> std::uint64_t {
        return static_cast<std::uint64_t>(
            oracles::count_colorful_sub(col.pattern, host, col) % 5);
    };
    auto oracle_for = [&](const Graph&) { return oracle; };

    // Round budget: factor * 2^edges.
    {
        Graph no_copy(6, {});
        HColoring col{no_copy, p3, {0, 0, 1, 1, 2, 2}};
        DecisionResult res = randomized_colorful_decision(p3, no_copy, col, 5, oracle, 10, 1);
        CHECK(res.rounds_run == 40);  // 10 * 2^2
        Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
        HColoring tri{Graph(3, {}), k3, {0, 1, 2}};
        DecisionResult res3 = randomized_colorful_decision(k3, tri.host, tri, 5,
                                                           oracle_for(k3), 10, 1);
        CHECK(res3.rounds_run == 80);  // 10 * 2^3
    }

    // Soundness: hosts with no colorful copy always answer no.
    gen::Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        HColoring col = gen::random_colored_host(p3, 2, 50, rng);
        if (oracles::count_colorful_sub(p3, col.host, col) != 0) continue;
        DecisionResult res =
            randomized_colorful_decision(p3, col.host, col, 5, oracle, 2, 1000 + trial);
        REQUIRE_FALSE(res.found);
    }

    // Completeness: a planted copy is found with seeded randomness.
    int found = 0, trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
        // Host: planted P3 copy in classes of size 2, no other edges.
        Graph host(6, {{0, 2}, {2, 4}});
        HColoring col{host, p3, {0, 0, 1, 1, 2, 2}};
        col.validate();
        DecisionResult res =
            randomized_colorful_decision(p3, host, col, 5, oracle, 10, 500 + trial);
        if (res.found) ++found;
    }
    CHECK(found == trials);  // rounds = 10 * 2^2 = 40, miss odds (3/4)^40
}
