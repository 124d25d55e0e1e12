#ifndef QUASIFORM_SRC_GF64_HPP
#define QUASIFORM_SRC_GF64_HPP

// Arithmetic in GF(2^64) = GF(2)[x] / (x^64 + x^4 + x^3 + x + 1), used to
// specialize polynomials at random points for exact rank and degree bounds.

#include <cstdint>
#include <vector>

#include "quasiform/gf2poly.hpp"

namespace qf::gf64
{

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    // Four-bit windows of b.
    std::uint64_t tlo[16];
    std::uint64_t thi[16];
    tlo[0] = 0;
    thi[0] = 0;
    for (int i = 1; i < 16; ++i) {
        const int bit = 31 - __builtin_clz(static_cast<unsigned>(i));
        const int rest = i ^ (1 << bit);
        tlo[i] = tlo[rest] ^ (a << bit);
        thi[i] = thi[rest] ^ (bit == 0 ? 0 : a >> (64 - bit));
    }
    for (int s = 60; s >= 0; s -= 4) {
        const unsigned w = static_cast<unsigned>((b >> s) & 15U);
        if (s != 60) {
            hi = (hi << 4) | (lo >> 60);
            lo <<= 4;
        }
        lo ^= tlo[w];
        hi ^= thi[w];
    }
    lo ^= hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
    const std::uint64_t over = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    lo ^= over ^ (over << 1) ^ (over << 3) ^ (over << 4);
    return lo;
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e != 0) {
        if (e & 1U) {
            r = mul(r, a);
        }
        e >>= 1U;
        if (e != 0) {
            a = mul(a, a);
        }
    }
    return r;
}

inline std::uint64_t inv(std::uint64_t a)
{
    return pow(a, ~std::uint64_t{1});
}

inline std::uint64_t evaluate(const Poly &p, const std::vector<std::uint64_t> &point)
{
    std::uint64_t sum = 0;
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        std::uint64_t prod = 1;
        for (std::size_t v = 0; v < p.width(); ++v) {
            const Poly::Exponent e = p.exponent(t, v);
            if (e != 0) {
                prod = mul(prod, pow(point[v], e));
            }
        }
        sum ^= prod;
    }
    return sum;
}

/// Coefficients (index = power of var) of p with every other variable specialized.
inline std::vector<std::uint64_t> univariate_image(const Poly &p, std::size_t var,
                                                   const std::vector<std::uint64_t> &point)
{
    std::vector<std::uint64_t> c(p.degree_in(var) + 1, 0);
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        std::uint64_t prod = 1;
        for (std::size_t v = 0; v < p.width(); ++v) {
            const Poly::Exponent e = p.exponent(t, v);
            if (e != 0 && v != var) {
                prod = mul(prod, pow(point[v], e));
            }
        }
        c[p.exponent(t, var)] ^= prod;
    }
    return c;
}

/// Degree of the gcd of two univariate polynomials (coefficient vectors with nonzero tops).
inline std::size_t gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b)
{
    auto strip = [](std::vector<std::uint64_t> &x) {
        while (!x.empty() && x.back() == 0) {
            x.pop_back();
        }
    };
    strip(a);
    strip(b);
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    while (!b.empty()) {
        const std::uint64_t lb = inv(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t f = mul(a.back(), lb);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) {
                a[k + shift] ^= mul(f, b[k]);
            }
            strip(a);
            if (a.empty()) {
                break;
            }
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

} // namespace qf::gf64

#endif
