#ifndef MODSUB_POLYRING_HPP
#define MODSUB_POLYRING_HPP

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modsub/errors.hpp"

namespace modsub {

// Sparse multivariate polynomial over Z_{2^t} in variables X1..Xr.
// Coefficients are kept reduced; zero terms are never stored. Term order is
// ascending lexicographic on exponent vectors, which fixes serialization.
class ModPoly {
public:
    using Exponents = std::vector<std::uint64_t>;
    using TermMap = std::map<Exponents, std::uint64_t>;

    ModPoly() : ModPoly(1, 0) {}

    ModPoly(int t, int r) : t_(t), r_(r) {
        if (t < 1 || t > 32) throw Error("modulus exponent t must be in [1,32]");
        if (r < 0) throw Error("variable count must be nonnegative");
    }

    static ModPoly constant(int t, int r, std::uint64_t c) {
        ModPoly p(t, r);
        p.add_term(Exponents(r, 0), c);
        return p;
    }

    static ModPoly variable(int t, int r, int index, std::uint64_t coeff = 1) {
        if (index < 0 || index >= r) throw Error("variable index out of range");
        ModPoly p(t, r);
        Exponents e(r, 0);
        e[index] = 1;
        p.add_term(e, coeff);
        return p;
    }

    int modulus_exponent() const { return t_; }
    int variables() const { return r_; }
    std::uint64_t modulus() const { return std::uint64_t{1} << t_; }
    std::uint64_t mask() const { return modulus() - 1; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Exponents& e, std::uint64_t coeff) {
        if (static_cast<int>(e.size()) != r_)
            throw Error("exponent vector has wrong length");
        coeff &= mask();
        if (coeff == 0) return;
        auto [it, fresh] = terms_.emplace(e, coeff);
        if (!fresh) {
            it->second = (it->second + coeff) & mask();
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::uint64_t coefficient_of(const Exponents& e) const {
        if (static_cast<int>(e.size()) != r_)
            throw Error("exponent vector has wrong length");
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    // Largest exponent of any single variable across all terms.
    std::uint64_t max_individual_degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_)
            for (auto x : e) d = std::max(d, x);
        return d;
    }

    std::uint64_t max_total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool is_linear_form() const { return max_total_degree() <= 1; }

    void check_same_ring(const ModPoly& o) const {
        if (t_ != o.t_ || r_ != o.r_)
            throw Error("mismatched ring parameters (t=" + std::to_string(t_) + ",r=" +
                        std::to_string(r_) + " vs t=" + std::to_string(o.t_) + ",r=" +
                        std::to_string(o.r_) + ")");
    }

    ModPoly& operator+=(const ModPoly& o) {
        check_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    friend ModPoly operator+(ModPoly a, const ModPoly& b) { return a += b; }

    // Product, optionally pruning result monomials whose exponent exceeds
    // `cap` in any coordinate. Pruned monomials cannot contribute to any
    // coefficient at or below the cap, so targeted coefficient extraction is
    // unaffected.
    ModPoly mul(const ModPoly& o, const Exponents* cap = nullptr) const {
        check_same_ring(o);
        ModPoly out(t_, r_);
        Exponents e(r_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                bool keep = true;
                for (int i = 0; i < r_; ++i) {
                    e[i] = ea[i] + eb[i];
                    if (cap && e[i] > (*cap)[i]) {
                        keep = false;
                        break;
                    }
                }
                if (keep) out.add_term(e, (ca * cb) & mask());
            }
        }
        return out;
    }

    ModPoly& operator*=(const ModPoly& o) { return *this = mul(o); }
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) { return a.mul(b); }

    bool operator==(const ModPoly& o) const {
        return t_ == o.t_ && r_ == o.r_ && terms_ == o.terms_;
    }
    bool operator!=(const ModPoly& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += "+";
            bool has_var = false;
            std::string vars;
            for (int i = 0; i < r_; ++i) {
                if (e[i] == 0) continue;
                if (has_var) vars += "*";
                vars += "X" + std::to_string(i + 1);
                if (e[i] > 1) vars += "^" + std::to_string(e[i]);
                has_var = true;
            }
            if (!has_var) {
                out += std::to_string(c);
            } else if (c == 1) {
                out += vars;
            } else {
                out += std::to_string(c) + "*" + vars;
            }
        }
        return out;
    }

    // Accepts sums of terms like "3", "X2", "2*X1^2*X3", with optional '-'
    // (interpreted as the additive inverse mod 2^t) and whitespace.
    static ModPoly parse(const std::string& text, int t, int r) {
        ModPoly p(t, r);
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        auto read_uint = [&]() -> std::uint64_t {
            std::uint64_t v = 0;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
                ++i;
            }
            if (i == start) throw ParseError("polynomial: expected a number at position " +
                                             std::to_string(i));
            return v;
        };
        skip_ws();
        if (i == text.size()) throw ParseError("polynomial: empty input");
        bool first = true;
        while (true) {
            skip_ws();
            if (i == text.size()) break;
            bool negative = false;
            if (text[i] == '+' || text[i] == '-') {
                if (first) throw ParseError("polynomial: leading sign not allowed");
                negative = text[i] == '-';
                ++i;
                skip_ws();
            } else if (!first) {
                throw ParseError("polynomial: expected '+' or '-' between terms");
            }
            first = false;
            std::uint64_t coeff = 1;
            bool saw_any = false;
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff = read_uint();
                saw_any = true;
            }
            Exponents e(r, 0);
            while (true) {
                skip_ws();
                if (i < text.size() && text[i] == '*') {
                    ++i;
                    skip_ws();
                }
                if (i >= text.size() || (text[i] != 'X' && text[i] != 'x')) break;
                ++i;
                std::uint64_t idx = read_uint();
                if (idx < 1 || idx > static_cast<std::uint64_t>(r))
                    throw ParseError("polynomial: variable X" + std::to_string(idx) +
                                     " outside X1..X" + std::to_string(r));
                std::uint64_t exp = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    exp = read_uint();
                }
                e[idx - 1] += exp;
                saw_any = true;
            }
            if (!saw_any) throw ParseError("polynomial: empty term");
            std::uint64_t msk = (std::uint64_t{1} << t) - 1;
            coeff &= msk;
            if (negative) coeff = (msk + 1 - coeff) & msk;
            p.add_term(e, coeff);
        }
        return p;
    }

private:
    int t_;
    int r_;
    TermMap terms_;
};

// Square matrix of polynomials sharing one ring.
class PolyMatrix {
public:
    PolyMatrix(int n, int t, int r)
        : n_(n), t_(t), r_(r), entries_(static_cast<std::size_t>(n) * n, ModPoly(t, r)) {
        if (n < 0) throw Error("matrix dimension must be nonnegative");
    }

    int dim() const { return n_; }
    int modulus_exponent() const { return t_; }
    int variables() const { return r_; }

    ModPoly& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const ModPoly& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * n_ + j];
    }

    void set(int i, int j, ModPoly p) {
        p.check_same_ring(ModPoly(t_, r_));
        at(i, j) = std::move(p);
    }

    bool symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool zero_diagonal() const {
        for (int i = 0; i < n_; ++i)
            if (!at(i, i).is_zero()) return false;
        return true;
    }

    std::uint64_t max_entry_degree() const {
        std::uint64_t d = 0;
        for (const auto& p : entries_) d = std::max(d, p.max_individual_degree());
        return d;
    }

private:
    int n_, t_, r_;
    std::vector<ModPoly> entries_;
};

// ---------------------------------------------------------------------------
// Kronecker substitution: X1^e1 * X2^e2 * ... * Xr^er -> X^(e1 + e2*B + ...).
// Invertible on polynomials whose individual degrees stay below B.
// ---------------------------------------------------------------------------

inline ModPoly kronecker(const ModPoly& p, std::uint64_t base) {
    if (base < 1) throw Error("kronecker: base must be positive");
    ModPoly out(p.modulus_exponent(), 1);
    for (const auto& [e, c] : p.terms()) {
        unsigned __int128 packed = 0;
        unsigned __int128 weight = 1;
        for (int i = 0; i < p.variables(); ++i) {
            if (e[i] >= base)
                throw Error("kronecker: exponent " + std::to_string(e[i]) +
                            " not below base " + std::to_string(base));
            packed += weight * e[i];
            weight *= base;
            if (weight > (unsigned __int128)UINT64_MAX && i + 1 < p.variables())
                throw Error("kronecker: packed exponent overflows");
        }
        if (packed > (unsigned __int128)UINT64_MAX)
            throw Error("kronecker: packed exponent overflows");
        out.add_term({static_cast<std::uint64_t>(packed)}, c);
    }
    return out;
}

inline ModPoly kronecker_inverse(const ModPoly& p, std::uint64_t base, int r) {
    if (p.variables() != 1) throw Error("kronecker_inverse: input must be univariate");
    if (base < 1) throw Error("kronecker_inverse: base must be positive");
    // Degree bound base^r - 1; if base^r overflows 64 bits every representable
    // exponent is decodable anyway.
    unsigned __int128 bound = 1;
    bool bounded = true;
    for (int i = 0; i < r; ++i) {
        bound *= base;
        if (bound > (unsigned __int128)UINT64_MAX) {
            bounded = false;
            break;
        }
    }
    ModPoly out(p.modulus_exponent(), r);
    for (const auto& [e, c] : p.terms()) {
        std::uint64_t x = e[0];
        if (bounded && x >= static_cast<std::uint64_t>(bound))
            throw Error("kronecker_inverse: degree " + std::to_string(x) +
                        " at or above base^r");
        ModPoly::Exponents dec(r, 0);
        for (int i = 0; i < r; ++i) {
            dec[i] = x % base;
            x /= base;
        }
        if (x != 0)
            throw Error("kronecker_inverse: degree does not decompose in base " +
                        std::to_string(base));
        out.add_term(dec, c);
    }
    return out;
}

namespace detail {

// Pairing expansion of the Hafnian: fix the lowest live index, pair it with
// every live partner with a nonzero entry, recurse on the rest. With a cap,
// products are pruned against the target exponent vector.
inline ModPoly hafnian_expansion_rec(const PolyMatrix& a, std::vector<int>& alive,
                                     const ModPoly::Exponents* cap) {
    if (alive.empty()) return ModPoly::constant(a.modulus_exponent(), a.variables(), 1);
    ModPoly total(a.modulus_exponent(), a.variables());
    int i0 = alive.front();
    for (std::size_t pos = 1; pos < alive.size(); ++pos) {
        int j = alive[pos];
        const ModPoly& entry = a.at(i0, j);
        if (entry.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(alive.size() - 2);
        for (std::size_t q = 1; q < alive.size(); ++q)
            if (q != pos) rest.push_back(alive[q]);
        ModPoly sub = hafnian_expansion_rec(a, rest, cap);
        total += entry.mul(sub, cap);
    }
    return total;
}

inline ModPoly hafnian_expansion(const PolyMatrix& a, const ModPoly::Exponents* cap = nullptr) {
    std::vector<int> alive(a.dim());
    for (int i = 0; i < a.dim(); ++i) alive[i] = i;
    return hafnian_expansion_rec(a, alive, cap);
}

} // namespace detail

} // namespace modsub

#endif
