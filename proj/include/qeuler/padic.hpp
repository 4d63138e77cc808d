#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qeuler/errors.hpp"
#include "qeuler/euler.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_odd_prime(std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw domain_error("p must be an odd prime, got " + std::to_string(p));
}

inline BigInt ipow(const BigInt& base, unsigned e) {
    return boost::multiprecision::pow(base, e);
}

/// base^e mod m for e >= 0, with 0^0 = 1.
inline BigInt powmod(const BigInt& base, std::uint64_t e, const BigInt& m) {
    BigInt r = 1 % m;
    BigInt b = base % m;
    while (e) {
        if (e & 1u) r = (r * b) % m;
        e >>= 1u;
        if (e) b = (b * b) % m;
    }
    return r;
}

/// Reduce any integer into [0, m).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r.sign() < 0) r += m;
    return r;
}

/// Residue class in Z/p^M for an odd prime p: a truncated p-adic integer.
class PAdic {
public:
    PAdic(std::uint64_t p, unsigned precision, const BigInt& value = 0)
        : p_(p), precision_(precision) {
        require_odd_prime(p);
        if (precision < 1) throw domain_error("p-adic precision must be at least 1");
        modulus_ = ipow(BigInt(p), precision);
        residue_ = mod_floor(value, modulus_);
    }

    std::uint64_t p() const { return p_; }
    unsigned precision() const { return precision_; }
    const BigInt& modulus() const { return modulus_; }
    const BigInt& residue() const { return residue_; }

    /// v_p of the residue, capped at the precision (zero has valuation M).
    unsigned valuation() const { return valuation_of(residue_); }

    PAdic operator+(const PAdic& o) const { return with(residue_ + o.residue_); }
    PAdic operator-(const PAdic& o) const { return with(residue_ - o.residue_); }
    PAdic operator*(const PAdic& o) const { return with(residue_ * o.residue_); }
    PAdic operator-() const { return with(-residue_); }

    friend bool operator==(const PAdic& a, const PAdic& b) {
        return a.p_ == b.p_ && a.precision_ == b.precision_ && a.residue_ == b.residue_;
    }

    unsigned valuation_of(BigInt v) const {
        v = mod_floor(v, modulus_);
        if (v == 0) return precision_;
        unsigned k = 0;
        while (v % p_ == 0) {
            v /= p_;
            ++k;
        }
        return k;
    }

private:
    PAdic with(const BigInt& v) const {
        PAdic r = *this;
        r.residue_ = mod_floor(v, modulus_);
        return r;
    }

    std::uint64_t p_;
    unsigned precision_;
    BigInt modulus_;
    BigInt residue_;
};

/// Modular inverse by the extended Euclidean algorithm; a must be a unit mod m.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = mod_floor(a, m), r1 = m;
    BigInt s0 = 1, s1 = 0;
    while (r1 != 0) {
        BigInt qt = r0 / r1;
        BigInt t = r0 - qt * r1;
        r0 = r1;
        r1 = t;
        t = s0 - qt * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw non_unit_error("not invertible modulo " + m.str());
    return mod_floor(s0, m);
}

/// Image of r in Z/p^M; the denominator must be a p-adic unit.
inline PAdic padic_from_rational(const Rational& r, std::uint64_t p, unsigned precision) {
    require_odd_prime(p);
    if (r.den() % p == 0)
        throw non_unit_error("denominator of " + r.to_string() + " is divisible by p = " + std::to_string(p));
    PAdic base(p, precision);
    return PAdic(p, precision, r.num() * mod_inverse(r.den(), base.modulus()));
}

/// |1 - q0|_p < 1, i.e. p divides q0 - 1.
inline void require_q_near_one(long long q0, std::uint64_t p) {
    BigInt d = BigInt(q0) - 1;
    if (mod_floor(d, BigInt(p)) != 0)
        throw domain_error("q0 = " + std::to_string(q0) + " violates |1 - q0|_p < 1 for p = " +
                           std::to_string(p));
}

/// sum_{y=0}^{p^N-1} (-1)^y f(y) mod p^M for an integrand given as residues.
/// Even and odd terms are accumulated separately and subtracted at the end.
inline PAdic fermionic_sum(const std::function<BigInt(std::uint64_t)>& f, std::uint64_t p, unsigned depth,
                           unsigned precision) {
    PAdic zero(p, precision);
    if (depth < 1) throw domain_error("truncation depth N must be at least 1");
    const BigInt& mod = zero.modulus();
    const std::uint64_t terms = static_cast<std::uint64_t>(ipow(BigInt(p), depth));
    BigInt even = 0, odd = 0;
    for (std::uint64_t y = 0; y < terms; ++y) {
        BigInt v = f(y) % mod;
        if (y % 2 == 0) {
            even += v;
            if (even >= mod) even -= mod;
        } else {
            odd += v;
            if (odd >= mod) odd -= mod;
        }
    }
    return PAdic(p, precision, even - odd);
}

/// Truncated fermionic integral of q0^y (x0 + y)^n at depth N, mod p^M.
inline PAdic fermionic_partial_sum(unsigned n, std::uint64_t x0, long long q0, std::uint64_t p, unsigned depth,
                                   unsigned precision) {
    require_odd_prime(p);
    require_q_near_one(q0, p);
    PAdic zero(p, precision);
    const BigInt mod = zero.modulus();
    const BigInt q = mod_floor(BigInt(q0), mod);
    BigInt q_pow = 1;  // q0^y, advanced once per term
    std::uint64_t next = 0;
    return fermionic_sum(
        [&](std::uint64_t y) {
            // Terms arrive in order y = 0, 1, 2, ...
            while (next < y) {
                q_pow = (q_pow * q) % mod;
                ++next;
            }
            BigInt base = BigInt(x0 + y) % mod;
            return BigInt((q_pow * powmod(base, n, mod)) % mod);
        },
        p, depth, precision);
}

struct ConvergenceRow {
    unsigned depth;    // N
    BigInt partial;    // S_N residue
    unsigned valuation;  // v_p(S_N - target), capped at M
};

struct ConvergenceReport {
    unsigned n = 0;
    std::uint64_t x0 = 0;
    std::uint64_t p = 3;
    long long q0 = 4;
    unsigned precision = 1;
    BigInt target;
    std::vector<ConvergenceRow> rows;  // ascending in depth

    bool non_decreasing() const {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].valuation < rows[i - 1].valuation) return false;
        return true;
    }

    /// Smallest depth at which the valuation reaches the precision cap.
    std::optional<unsigned> depth_reaching_cap() const {
        for (const auto& r : rows)
            if (r.valuation >= precision) return r.depth;
        return std::nullopt;
    }

    nlohmann::json to_json() const {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& r : rows) rs.push_back({{"N", r.depth}, {"S", r.partial.str()}, {"val", r.valuation}});
        return {{"p", p}, {"M", precision}, {"q0", q0}, {"n", n}, {"x0", x0}, {"target", target.str()}, {"rows", rs}};
    }
};

/// E_{n,q}(x0) at q = q0 as an element of Z/p^M: the limit the truncated
/// sums should approach.
inline PAdic witt_target(unsigned n, std::uint64_t x0, long long q0, std::uint64_t p, unsigned precision) {
    const RatFunc at_x0 = euler_poly_q(n).eval(RatFunc(Rational(BigInt(x0))));
    return padic_from_rational(at_x0.eval(Rational(BigInt(q0))), p, precision);
}

inline ConvergenceReport witt_convergence_check(unsigned n, std::uint64_t x0, std::uint64_t p, long long q0,
                                                unsigned precision, unsigned max_depth) {
    require_odd_prime(p);
    require_q_near_one(q0, p);
    if (max_depth < 1) throw domain_error("maximum depth must be at least 1");
    ConvergenceReport rep;
    rep.n = n;
    rep.x0 = x0;
    rep.p = p;
    rep.q0 = q0;
    rep.precision = precision;
    const PAdic target = witt_target(n, x0, q0, p, precision);
    rep.target = target.residue();
    for (unsigned depth = 1; depth <= max_depth; ++depth) {
        PAdic s = fermionic_partial_sum(n, x0, q0, p, depth, precision);
        rep.rows.push_back({depth, s.residue(), (s - target).valuation()});
    }
    return rep;
}

/// Slack c in the lower bound v_N >= N - c for the Witt sums. Frozen from a
/// brute-force pass over n <= 4, x0 in {0,1,2}, p in {3,5,7}, q0 = 1 + p,
/// N <= 6, M = 8 (see tests/test_padic.cpp, WittCalibration).
inline constexpr unsigned witt_depth_slack = 0;

/// Slack for the shift check: v_p(lhs - rhs) >= N - c. Frozen from a pass
/// over m <= 4, shifts 1..4, p in {3,5,7}, q0 in {1, 1 + p}, N <= 4, M = 8
/// (tests/test_padic.cpp, ShiftCalibration).
inline constexpr unsigned shift_depth_slack = 0;

/// Numeric check of I(f_k) = (-1)^k I(f) + 2 sum_{l<k} (-1)^{k-1-l} f(l)
/// for f(x) = q0^x x^m and f_k(x) = f(x + k), with I truncated at depth N.
struct ShiftCheckResult {
    unsigned m;
    unsigned shift;
    long long q0;
    std::uint64_t p;
    unsigned depth;
    PAdic lhs;
    PAdic rhs;
    unsigned valuation;  // v_p(lhs - rhs), capped at M

    bool equal() const { return valuation >= lhs.precision(); }
};

inline ShiftCheckResult shift_identity_check_numeric(unsigned m, unsigned shift, long long q0, std::uint64_t p,
                                                     unsigned depth, unsigned precision) {
    if (shift < 1) throw domain_error("shift must be a positive integer");
    require_odd_prime(p);
    require_q_near_one(q0, p);
    PAdic zero(p, precision);
    const BigInt mod = zero.modulus();
    const BigInt q = mod_floor(BigInt(q0), mod);
    auto f = [&](std::uint64_t x) {
        return BigInt((powmod(q, x, mod) * powmod(BigInt(x), m, mod)) % mod);
    };
    PAdic lhs = fermionic_sum([&](std::uint64_t y) { return f(y + shift); }, p, depth, precision);
    PAdic base = fermionic_sum(f, p, depth, precision);
    PAdic rhs = (shift % 2 == 0) ? base : -base;
    for (unsigned l = 0; l < shift; ++l) {
        PAdic term(p, precision, 2 * f(l));
        rhs = ((shift - 1 - l) % 2 == 0) ? rhs + term : rhs - term;
    }
    return {m, shift, q0, p, depth, lhs, rhs, (lhs - rhs).valuation()};
}

}  // namespace qeuler
