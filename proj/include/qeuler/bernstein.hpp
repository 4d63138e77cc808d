#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qeuler/errors.hpp"
#include "qeuler/ratfunc.hpp"

namespace qeuler {

struct BernsteinIndex {
    std::size_t k;
    std::size_t n;

    BernsteinIndex(std::size_t k_, std::size_t n_) : k(k_), n(n_) {
        if (k > n)
            throw index_error("Bernstein index k = " + std::to_string(k) + " exceeds degree n = " +
                              std::to_string(n));
    }
};

/// B_{k,n}(x) = C(n,k) x^k (1-x)^{n-k}, expanded.
inline XPoly bernstein_basis(BernsteinIndex idx) {
    const std::size_t m = idx.n - idx.k;
    // (1-x)^m by repeated convolution with (1 - x).
    std::vector<Rational> tail{Rational(1)};
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> next(tail.size() + 1);
        for (std::size_t j = 0; j < tail.size(); ++j) {
            next[j] += tail[j];
            next[j + 1] -= tail[j];
        }
        tail = std::move(next);
    }
    const Rational c(binomial(idx.n, idx.k));
    std::vector<RatFunc> coeffs(idx.k, RatFunc());
    for (const auto& t : tail) coeffs.emplace_back(c * t);
    return XPoly(std::move(coeffs));
}

inline XPoly bernstein_basis(std::size_t k, std::size_t n) { return bernstein_basis(BernsteinIndex(k, n)); }

/// sum_k samples[k] * B_{k,n}(x), where samples[k] = f(k/n).
inline XPoly bernstein_operator(std::span<const Rational> samples, std::size_t n) {
    if (n < 1) throw arity_error("Bernstein operator needs order n >= 1");
    if (samples.size() != n + 1)
        throw arity_error("Bernstein operator of order " + std::to_string(n) + " needs " +
                          std::to_string(n + 1) + " samples, got " + std::to_string(samples.size()));
    XPoly r;
    for (std::size_t k = 0; k <= n; ++k) {
        if (samples[k].is_zero()) continue;
        r += bernstein_basis(k, n).scaled(RatFunc(samples[k]));
    }
    return r;
}

}  // namespace qeuler
