#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qeuler/errors.hpp"
#include "qeuler/ratfunc.hpp"
#include "qeuler/serialize.hpp"

namespace qeuler {

/// Memoized q-Euler numbers E_{n,q}, their images under q -> 1/q, and
/// Frobenius-Euler numbers H_n(u).
///
/// E_{n,q} are the Taylor coefficients of 2/(q e^t + 1). Expanding the
/// umbral recurrence q(E_q + 1)^n + E_{n,q} = 0 (n >= 1) and solving for the
/// top term gives
///
///     E_{0,q} = 2/(1+q),   E_{n,q} = -(q/(1+q)) * sum_{l<n} C(n,l) E_{l,q}.
///
/// H_n(u) are the coefficients of (1-u)/(e^t - u); clearing the denominator
/// gives H_0 = 1, H_n = (1/(u-1)) * sum_{l<n} C(n,l) H_l.
///
/// All accessors are safe to call from several threads; values are returned
/// by copy.
class EulerCache {
public:
    static constexpr std::size_t default_n_max = 64;

    explicit EulerCache(std::size_t n_max = default_n_max) : n_max_(n_max) {}

    std::size_t n_max() const { return n_max_; }

    RatFunc number(std::size_t n) {
        std::lock_guard lock(mu_);
        extend(n);
        return numbers_[n];
    }

    /// E_{n,q^{-1}}.
    RatFunc number_inv(std::size_t n) {
        std::lock_guard lock(mu_);
        extend(n);
        while (inverted_.size() <= n) inverted_.push_back(numbers_[inverted_.size()].invert_q());
        return inverted_[n];
    }

    RatFunc frobenius(std::size_t n, const RatFunc& u) {
        check(n);
        const RatFunc u_minus_one = u - RatFunc(1);
        if (u_minus_one.is_zero()) throw domain_error("Frobenius-Euler numbers are undefined at u = 1");
        std::lock_guard lock(mu_);
        auto& seq = frobenius_[to_json(u).dump()];
        if (seq.empty()) seq.emplace_back(1);
        const RatFunc scale = u_minus_one.inverse();
        for (std::size_t m = seq.size(); m <= n; ++m) {
            RatFunc s;
            for (std::size_t l = 0; l < m; ++l) s += seq[l].scaled(Rational(binomial(m, l)));
            seq.push_back(s * scale);
        }
        return seq[n];
    }

private:
    void check(std::size_t n) const {
        if (n > n_max_)
            throw domain_error("index " + std::to_string(n) + " exceeds the Euler cache limit " +
                               std::to_string(n_max_));
    }

    // Caller holds mu_.
    void extend(std::size_t n) {
        check(n);
        const RatFunc q = RatFunc::q();
        const RatFunc one_plus_q = q + RatFunc(1);
        if (numbers_.empty()) numbers_.push_back(RatFunc(2) / one_plus_q);
        const RatFunc factor = -(q / one_plus_q);
        for (std::size_t m = numbers_.size(); m <= n; ++m) {
            RatFunc s;
            for (std::size_t l = 0; l < m; ++l) s += numbers_[l].scaled(Rational(binomial(m, l)));
            numbers_.push_back(factor * s);
        }
    }

    std::size_t n_max_;
    std::mutex mu_;
    std::vector<RatFunc> numbers_;
    std::vector<RatFunc> inverted_;
    std::map<std::string, std::vector<RatFunc>> frobenius_;
};

/// Process-wide cache used by the free functions below.
inline EulerCache& default_euler_cache() {
    static EulerCache cache;
    return cache;
}

inline RatFunc euler_number_q(std::size_t n) { return default_euler_cache().number(n); }

/// E_{n,q^{-1}}, i.e. euler_number_q(n) with q replaced by 1/q.
inline RatFunc euler_number_q_inv(std::size_t n) { return default_euler_cache().number_inv(n); }

/// E_{n,q}(x) = sum_l C(n,l) x^{n-l} E_{l,q}.
inline XPoly euler_poly_q(std::size_t n) {
    std::vector<RatFunc> c(n + 1);
    for (std::size_t l = 0; l <= n; ++l) c[n - l] = euler_number_q(l).scaled(Rational(binomial(n, l)));
    return XPoly(std::move(c));
}

inline RatFunc frobenius_euler(std::size_t n, const RatFunc& u) { return default_euler_cache().frobenius(n, u); }

/// Classical Euler numbers from E_0 = 1 and (E+1)^n + E_n = 0 for n > 0,
/// i.e. 2 E_n = -sum_{l<n} C(n,l) E_l. Computed independently of E_{n,q}.
inline Rational classical_euler_number(std::size_t n) {
    std::vector<Rational> e{Rational(1)};
    for (std::size_t m = 1; m <= n; ++m) {
        Rational s;
        for (std::size_t l = 0; l < m; ++l) s += Rational(binomial(m, l)) * e[l];
        e.push_back(-s / Rational(2));
    }
    return e[n];
}

}  // namespace qeuler
