#ifndef MODSUB_HAFNIAN_HPP
#define MODSUB_HAFNIAN_HPP

#include <string>

#include "modsub/gf2poly.hpp"
#include "modsub/oracles.hpp"
#include "modsub/polyring.hpp"

namespace modsub {

enum class HafnianBackend {
    Expansion,           // direct pairing expansion (reference route)
    KroneckerExpansion,  // pack to univariate, expand, unpack
    Gf2Pfaffian,         // t=1 only: sqrt of the Kronecker-packed determinant
    External,            // reserved slot, not implemented
};

inline HafnianBackend parse_backend(const std::string& name) {
    if (name == "expansion") return HafnianBackend::Expansion;
    if (name == "kronecker") return HafnianBackend::KroneckerExpansion;
    if (name == "gf2") return HafnianBackend::Gf2Pfaffian;
    if (name == "external") return HafnianBackend::External;
    throw ParseError("unknown hafnian backend '" + name + "'");
}

inline std::string backend_name(HafnianBackend b) {
    switch (b) {
        case HafnianBackend::Expansion: return "expansion";
        case HafnianBackend::KroneckerExpansion: return "kronecker";
        case HafnianBackend::Gf2Pfaffian: return "gf2";
        case HafnianBackend::External: return "external";
    }
    return "?";
}

namespace detail {

inline void check_hafnian_input(const PolyMatrix& a) {
    if (a.dim() % 2 != 0) throw Error("hafnian: odd dimension");
    if (!a.symmetric()) throw Error("hafnian: matrix is not symmetric");
    if (!a.zero_diagonal()) throw Error("hafnian: nonzero diagonal");
}

inline void check_linear_entries(const PolyMatrix& a, const char* backend) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!a.at(i, j).is_linear_form())
                throw Error(std::string(backend) + " backend requires linear-form entries");
}

inline std::uint64_t kronecker_base(const PolyMatrix& a) {
    // The hafnian of a linear-form matrix has individual degrees at most n/2,
    // so packing with base n/2 + 1 stays invertible.
    return static_cast<std::uint64_t>(a.dim()) / 2 + 1;
}

inline ModPoly hafnian_kronecker(const PolyMatrix& a) {
    check_linear_entries(a, "kronecker");
    std::uint64_t base = kronecker_base(a);
    int r = a.variables();
    unsigned __int128 packed_bound = 1;
    for (int i = 0; i < r; ++i) {
        packed_bound *= base;
        if (packed_bound > (unsigned __int128)1 << 40)
            throw CapExceeded("kronecker backend: packed degree bound too large");
    }
    PolyMatrix packed(a.dim(), a.modulus_exponent(), 1);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            packed.set(i, j, kronecker(a.at(i, j), base));
    ModPoly uni = hafnian_expansion(packed);
    return kronecker_inverse(uni, base, r);
}

inline Gf2Poly to_gf2(const ModPoly& p) {
    if (p.variables() != 1) throw Error("gf2 conversion needs univariate input");
    Gf2Poly out;
    for (const auto& [e, c] : p.terms())
        if (c & 1) out.flip_bit(e[0]);
    return out;
}

// Parity route: over GF(2) the hafnian of a zero-diagonal symmetric matrix
// coincides with the Pfaffian, whose square is the determinant. The
// determinant of the packed matrix is computed fraction-free and its square
// root is read off the even exponents.
inline ModPoly hafnian_gf2(const PolyMatrix& a) {
    if (a.modulus_exponent() != 1)
        throw Error("gf2 backend is only valid for t=1");
    check_linear_entries(a, "gf2");
    std::uint64_t base = kronecker_base(a);
    int n = a.dim(), r = a.variables();
    unsigned __int128 packed_bound = 1;
    for (int i = 0; i < r; ++i) {
        packed_bound *= base;
        if (packed_bound > (unsigned __int128)1 << 24)
            throw CapExceeded("gf2 backend: packed degree bound too large");
    }
    std::vector<std::vector<Gf2Poly>> m(n, std::vector<Gf2Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = to_gf2(kronecker(a.at(i, j), base));
    Gf2Poly det = gf2_determinant(std::move(m));
    Gf2Poly root = det.sqrt();
    ModPoly uni(1, 1);
    for (std::uint64_t e : root.exponents()) uni.add_term({e}, 1);
    return kronecker_inverse(uni, base, r);
}

} // namespace detail

// Hafnian over Z_{2^t}[X_1..X_r]. With `target` set, monomials that exceed
// the target exponent vector in any coordinate are pruned during the
// expansion; only the coefficient at (or below) the target survives intact.
// The expansion backend refuses matrices above the dimension cap unless a
// target is given, since targeted pruning is what keeps large instances
// tractable.
inline ModPoly hafnian_mod(const PolyMatrix& a,
                           HafnianBackend backend = HafnianBackend::Expansion,
                           const ModPoly::Exponents* target = nullptr,
                           const Limits& lim = Limits{}) {
    detail::check_hafnian_input(a);
    switch (backend) {
        case HafnianBackend::Expansion:
            if (target == nullptr && a.dim() > lim.max_hafnian_dim)
                throw CapExceeded("hafnian expansion: dimension exceeds cap of " +
                                  std::to_string(lim.max_hafnian_dim));
            return modsub::detail::hafnian_expansion(a, target);
        case HafnianBackend::KroneckerExpansion:
            if (a.dim() > lim.max_hafnian_dim)
                throw CapExceeded("hafnian kronecker: dimension exceeds cap");
            return detail::hafnian_kronecker(a);
        case HafnianBackend::Gf2Pfaffian:
            return detail::hafnian_gf2(a);
        case HafnianBackend::External:
            throw Error("external hafnian backend is a slot, not an implementation");
    }
    throw Error("unreachable");
}

} // namespace modsub

#endif
