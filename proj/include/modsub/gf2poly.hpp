#ifndef MODSUB_GF2POLY_HPP
#define MODSUB_GF2POLY_HPP

#include <cstdint>
#include <vector>

#include "modsub/errors.hpp"

namespace modsub {

// Dense univariate polynomial over GF(2), bit-packed. Used by the
// determinant route of the parity Hafnian backend.
class Gf2Poly {
public:
    Gf2Poly() = default;

    static Gf2Poly one() {
        Gf2Poly p;
        p.set_bit(0);
        return p;
    }

    static Gf2Poly monomial(std::uint64_t e) {
        Gf2Poly p;
        p.set_bit(e);
        return p;
    }

    bool is_zero() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool get_bit(std::uint64_t e) const {
        std::size_t w = e / 64;
        return w < words_.size() && ((words_[w] >> (e % 64)) & 1);
    }

    void set_bit(std::uint64_t e) {
        std::size_t w = e / 64;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (e % 64);
    }

    void flip_bit(std::uint64_t e) {
        std::size_t w = e / 64;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] ^= std::uint64_t{1} << (e % 64);
        trim();
    }

    // Degree of the zero polynomial is reported as -1.
    long long degree() const {
        for (std::size_t w = words_.size(); w-- > 0;) {
            if (words_[w]) {
                for (int b = 63; b >= 0; --b)
                    if ((words_[w] >> b) & 1)
                        return static_cast<long long>(w) * 64 + b;
            }
        }
        return -1;
    }

    friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
        Gf2Poly out;
        out.words_.resize(std::max(a.words_.size(), b.words_.size()), 0);
        for (std::size_t i = 0; i < out.words_.size(); ++i) {
            std::uint64_t w = 0;
            if (i < a.words_.size()) w ^= a.words_[i];
            if (i < b.words_.size()) w ^= b.words_[i];
            out.words_[i] = w;
        }
        out.trim();
        return out;
    }

    friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Gf2Poly out;
        out.words_.assign(a.words_.size() + b.words_.size(), 0);
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            std::uint64_t wa = a.words_[i];
            while (wa) {
                int bit = __builtin_ctzll(wa);
                wa &= wa - 1;
                std::uint64_t shift = i * 64 + bit;
                std::size_t word_shift = shift / 64;
                int bit_shift = static_cast<int>(shift % 64);
                for (std::size_t j = 0; j < b.words_.size(); ++j) {
                    std::uint64_t w = b.words_[j];
                    if (!w) continue;
                    out.words_[j + word_shift] ^= w << bit_shift;
                    if (bit_shift)
                        out.words_[j + word_shift + 1] ^= w >> (64 - bit_shift);
                }
            }
        }
        out.trim();
        return out;
    }

    // Exact quotient; throws if the division leaves a remainder.
    Gf2Poly divexact(const Gf2Poly& divisor) const {
        if (divisor.is_zero()) throw Error("gf2: division by zero polynomial");
        Gf2Poly rem = *this;
        Gf2Poly quot;
        long long dd = divisor.degree();
        long long rd = rem.degree();
        while (rd >= dd) {
            std::uint64_t shift = static_cast<std::uint64_t>(rd - dd);
            quot.set_bit(shift);
            // rem ^= divisor << shift
            std::size_t word_shift = shift / 64;
            int bit_shift = static_cast<int>(shift % 64);
            if (rem.words_.size() < divisor.words_.size() + word_shift + 1)
                rem.words_.resize(divisor.words_.size() + word_shift + 1, 0);
            for (std::size_t j = 0; j < divisor.words_.size(); ++j) {
                std::uint64_t w = divisor.words_[j];
                if (!w) continue;
                rem.words_[j + word_shift] ^= w << bit_shift;
                if (bit_shift) rem.words_[j + word_shift + 1] ^= w >> (64 - bit_shift);
            }
            rem.trim();
            rd = rem.degree();
        }
        if (!rem.is_zero())
            throw InternalCheckFailure("gf2: division was expected to be exact");
        return quot;
    }

    // For p with only even exponents, returns q with q(X)^2 = p(X).
    // Frobenius square root: coefficient of X^(2i) moves to X^i.
    Gf2Poly sqrt() const {
        Gf2Poly out;
        long long d = degree();
        for (long long e = 0; e <= d; ++e) {
            if (get_bit(static_cast<std::uint64_t>(e))) {
                if (e % 2 != 0)
                    throw InternalCheckFailure("gf2: polynomial is not a perfect square");
                out.set_bit(static_cast<std::uint64_t>(e) / 2);
            }
        }
        return out;
    }

    bool operator==(const Gf2Poly& o) const {
        Gf2Poly a = *this, b = o;
        a.trim();
        b.trim();
        return a.words_ == b.words_;
    }

    std::vector<std::uint64_t> exponents() const {
        std::vector<std::uint64_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                int bit = __builtin_ctzll(x);
                x &= x - 1;
                out.push_back(w * 64 + bit);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }
    std::vector<std::uint64_t> words_;
};

// Fraction-free (Bareiss) determinant over GF(2)[X], with row pivoting.
// Every division along the way is exact; a failed division means a bug.
inline Gf2Poly gf2_determinant(std::vector<std::vector<Gf2Poly>> m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("gf2_determinant: matrix is not square");
    if (n == 0) return Gf2Poly::one();
    Gf2Poly prev_pivot = Gf2Poly::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t pivot_row = k;
            while (pivot_row < n && m[pivot_row][k].is_zero()) ++pivot_row;
            if (pivot_row == n) return {};  // singular, determinant 0
            std::swap(m[k], m[pivot_row]);  // sign change is invisible in GF(2)
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Gf2Poly num = m[k][k] * m[i][j] + m[i][k] * m[k][j];
                m[i][j] = num.divexact(prev_pivot);
            }
            m[i][k] = Gf2Poly();
        }
        prev_pivot = m[k][k];
    }
    return m[n - 1][n - 1];
}

} // namespace modsub

#endif
