#include <catch2/catch_amalgamated.hpp>

#include "modsub/gf2poly.hpp"
#include "modsub/hafnian.hpp"
#include "modsub/random.hpp"

using namespace modsub;

TEST_CASE("gf2 polynomial arithmetic") {
    Gf2Poly a = Gf2Poly::monomial(3) + Gf2Poly::monomial(1) + Gf2Poly::one();
    Gf2Poly b = Gf2Poly::monomial(2) + Gf2Poly::one();
    Gf2Poly prod = a * b;
    CHECK((prod + a * b).is_zero());
    CHECK(prod.divexact(b) == a);
    CHECK(prod.divexact(a) == b);
    CHECK_THROWS_AS((prod + Gf2Poly::one()).divexact(a), InternalCheckFailure);

    Gf2Poly sq = a * a;
    CHECK(sq.sqrt() == a);
    CHECK_THROWS_AS((sq + Gf2Poly::monomial(1)).sqrt(), InternalCheckFailure);

    // Cross word boundaries.
    Gf2Poly big = Gf2Poly::monomial(130) + Gf2Poly::monomial(63);
    CHECK((big * big).sqrt() == big);
}

TEST_CASE("gf2 determinant on fixed matrices") {
    // [[0,1],[1,0]] has determinant -1 = 1 over GF(2).
    std::vector<std::vector<Gf2Poly>> m(2, std::vector<Gf2Poly>(2));
    m[0][1] = Gf2Poly::one();
    m[1][0] = Gf2Poly::one();
    CHECK(gf2_determinant(m) == Gf2Poly::one());

    // Singular matrix.
    std::vector<std::vector<Gf2Poly>> z(2, std::vector<Gf2Poly>(2));
    CHECK(gf2_determinant(z).is_zero());
}

TEST_CASE("hafnian backends on fixed matrices") {
    PolyMatrix pair2(2, 3, 0);
    pair2.set(0, 1, ModPoly::constant(3, 0, 1));
    pair2.set(1, 0, ModPoly::constant(3, 0, 1));
    CHECK(hafnian_mod(pair2) == ModPoly::constant(3, 0, 1));
    CHECK(hafnian_mod(pair2, HafnianBackend::KroneckerExpansion) ==
          ModPoly::constant(3, 0, 1));

    PolyMatrix ones(4, 2, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) ones.set(i, j, ModPoly::constant(2, 0, 1));
    for (auto b : {HafnianBackend::Expansion, HafnianBackend::KroneckerExpansion})
        CHECK(hafnian_mod(ones, b) == ModPoly::constant(2, 0, 3));

    PolyMatrix c4(4, 1, 2);
    ModPoly x1 = ModPoly::variable(1, 2, 0), x2 = ModPoly::variable(1, 2, 1);
    auto set_sym = [&](int i, int j, const ModPoly& p) {
        c4.set(i, j, p);
        c4.set(j, i, p);
    };
    set_sym(0, 1, x1);
    set_sym(2, 3, x1);
    set_sym(1, 2, x2);
    set_sym(0, 3, x2);
    ModPoly expected = x1 * x1 + x2 * x2;
    CHECK(hafnian_mod(c4, HafnianBackend::Gf2Pfaffian) == expected);
    CHECK(hafnian_mod(c4, HafnianBackend::Expansion) == expected);
}

TEST_CASE("hafnian backend errors") {
    PolyMatrix a(2, 2, 1);
    ModPoly x = ModPoly::variable(2, 1, 0);
    a.set(0, 1, x);
    a.set(1, 0, x);
    CHECK_THROWS_WITH(hafnian_mod(a, HafnianBackend::Gf2Pfaffian),
                      Catch::Matchers::ContainsSubstring("t=1"));
    CHECK_THROWS_WITH(hafnian_mod(a, HafnianBackend::External),
                      Catch::Matchers::ContainsSubstring("slot"));

    PolyMatrix odd(3, 1, 0);
    CHECK_THROWS_WITH(hafnian_mod(odd), Catch::Matchers::ContainsSubstring("odd"));

    PolyMatrix quad(2, 1, 1);
    ModPoly xsq = ModPoly::parse("X1^2", 1, 1);
    quad.set(0, 1, xsq);
    quad.set(1, 0, xsq);
    CHECK_THROWS_WITH(hafnian_mod(quad, HafnianBackend::KroneckerExpansion),
                      Catch::Matchers::ContainsSubstring("linear-form"));
}

TEST_CASE("all enabled backends agree with the expansion oracle") {
    gen::Rng rng(90210);
    int done = 0;
    while (done < 200) {
        int t = 1 + static_cast<int>(gen::below(rng, 3));
        int r = static_cast<int>(gen::below(rng, 4));
        int n = 2 * static_cast<int>(gen::below(rng, 5));
        PolyMatrix a = gen::random_linear_polymatrix(n, t, r, rng);
        ModPoly reference = oracles::hafnian_bruteforce(a);
        REQUIRE(hafnian_mod(a, HafnianBackend::KroneckerExpansion) == reference);
        if (t == 1)
            REQUIRE(hafnian_mod(a, HafnianBackend::Gf2Pfaffian) == reference);
        ++done;
    }
}

TEST_CASE("hafnian is invariant under simultaneous row/column permutation") {
    gen::Rng rng(1618);
    for (int trial = 0; trial < 40; ++trial) {
        int t = 1 + static_cast<int>(gen::below(rng, 3));
        int r = static_cast<int>(gen::below(rng, 3));
        int n = 2 * (1 + static_cast<int>(gen::below(rng, 3)));
        PolyMatrix a = gen::random_linear_polymatrix(n, t, r, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[gen::below(rng, static_cast<std::uint64_t>(i) + 1)]);
        PolyMatrix b(n, t, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b.set(i, j, a.at(perm[i], perm[j]));
        REQUIRE(oracles::hafnian_bruteforce(a) == oracles::hafnian_bruteforce(b));
    }
}

TEST_CASE("targeted pruning leaves the targeted coefficient intact") {
    gen::Rng rng(5050);
    for (int trial = 0; trial < 40; ++trial) {
        int t = 1 + static_cast<int>(gen::below(rng, 3));
        int r = 1 + static_cast<int>(gen::below(rng, 3));
        int n = 2 * (1 + static_cast<int>(gen::below(rng, 3)));
        PolyMatrix a = gen::random_linear_polymatrix(n, t, r, rng);
        ModPoly full = hafnian_mod(a);
        ModPoly::Exponents target(r);
        for (int i = 0; i < r; ++i) target[i] = gen::below(rng, n / 2 + 1);
        ModPoly pruned = hafnian_mod(a, HafnianBackend::Expansion, &target);
        REQUIRE(pruned.coefficient_of(target) == full.coefficient_of(target));
    }
}
