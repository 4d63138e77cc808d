#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qeuler/bernstein.hpp"
#include "qeuler/errors.hpp"
#include "qeuler/euler.hpp"
#include "qeuler/ratfunc.hpp"
#include "qeuler/serialize.hpp"

namespace qeuler {

// ---------------------------------------------------------------------------
// Moment oracle
// ---------------------------------------------------------------------------

/// Integrand q^{qshift} * q^{qsign * x} * poly(x) for the fermionic integral.
struct IntegrandExpr {
    int qsign = 1;    // +1 or -1
    long qshift = 0;  // constant prefactor exponent
    XPoly poly;
};

/// Fermionic integral of an integrand, reduced through the moments
///   int q^x x^j dmu = E_{j,q},   int q^{-x} x^j dmu = E_{j,q^{-1}}.
/// Uses nothing but these moments and linearity.
inline RatFunc moment_reduce(const IntegrandExpr& expr) {
    if (expr.qsign != 1 && expr.qsign != -1) throw domain_error("integrand q-exponent sign must be +1 or -1");
    RatFunc sum;
    const auto& c = expr.poly.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j].is_zero()) continue;
        const RatFunc moment = expr.qsign > 0 ? euler_number_q(j) : euler_number_q_inv(j);
        sum += c[j] * moment;
    }
    if (expr.qshift != 0) sum *= RatFunc::q_pow(expr.qshift);
    return sum;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

enum class IdentityId {
    eq2_symbolic,
    eq9_frobenius,
    thm1_reflection,
    thm2_value_at_two,
    thm3_integral,
    eq14_bernstein_moment,
    eq15_symmetry,
    thm4,
    cor5,
    thm6,
    cor7,
    thm8,
    cor9,
};

struct IdentityInfo {
    IdentityId id;
    std::string_view name;
    std::string_view alias;
    std::string_view params;  // parameter layout
    std::string_view statement;
};

inline constexpr std::array<IdentityInfo, 13> identity_registry{{
    {IdentityId::eq2_symbolic, "eq2_symbolic", "eq2", "[m, shift]",
     "I(f_s) = (-1)^s I(f) + 2 sum_{l<s} (-1)^{s-1-l} f(l), f(x) = q^x x^m"},
    {IdentityId::eq9_frobenius, "eq9_frobenius", "eq9", "[n]", "E_{n,q} = 2/(1+q) H_n(-1/q)"},
    {IdentityId::thm1_reflection, "thm1_reflection", "thm1", "[n]", "(-1)^n E_{n,1/q}(x) = q E_{n,q}(1-x)"},
    {IdentityId::thm2_value_at_two, "thm2_value_at_two", "thm2", "[n]", "q E_{n,q}(2) = 2 + E_{n,q}/q, n >= 1"},
    {IdentityId::thm3_integral, "thm3_integral", "thm3", "[n]",
     "I(q^{-x}(1-x)^n) = 2 + I(q^x x^n)/q, n >= 1"},
    {IdentityId::eq14_bernstein_moment, "eq14_bernstein_moment", "eq14", "[n, k]",
     "I(q^x B_{k,n}) = C(n,k) sum_j C(n-k,j) (-1)^j E_{k+j,q}"},
    {IdentityId::eq15_symmetry, "eq15_symmetry", "eq15", "[n, k]", "B_{k,n}(x) = B_{n-k,n}(1-x)"},
    {IdentityId::thm4, "thm4", "thm4", "[n, k]", "I(q^{1-x} B_{k,n}), n > k"},
    {IdentityId::cor5, "cor5", "cor5", "[n, k]", "sum_j C(n-k,j)(-1)^j E_{k+j,1/q}, n > k"},
    {IdentityId::thm6, "thm6", "thm6", "[n, m, k]", "I(q^{1-x} B_{k,n} B_{k,m}), n + m > 2k"},
    {IdentityId::cor7, "cor7", "cor7", "[n, m, k]", "sum_j C(n+m-2k,j)(-1)^j E_{j+2k,1/q}, n + m > 2k"},
    {IdentityId::thm8, "thm8", "thm8", "[n_1, ..., n_s, k]", "I(q^{1-x} prod_i B_{k,n_i}), sum n_i > sk"},
    {IdentityId::cor9, "cor9", "cor9", "[n_1, ..., n_s, k]",
     "sum_j C(N-sk,j)(-1)^j E_{j+sk,1/q}, N = sum n_i > sk"},
}};

inline const IdentityInfo& identity_info(IdentityId id) {
    return identity_registry[static_cast<std::size_t>(id)];
}

inline std::string identity_name(IdentityId id) { return std::string(identity_info(id).name); }

/// Accepts a full registry name ("thm2_value_at_two") or its alias ("thm2").
inline std::optional<IdentityId> parse_identity(std::string_view s) {
    for (const auto& e : identity_registry)
        if (s == e.name || s == e.alias) return e.id;
    return std::nullopt;
}

using Params = std::vector<long>;

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

namespace detail {

inline Rational sign(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

inline Rational binom(long n, long k) {
    if (n < 0 || k < 0) return Rational(0);
    return Rational(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
}

inline RatFunc E(long n) { return euler_number_q(static_cast<std::size_t>(n)); }
inline RatFunc E_inv(long n) { return euler_number_q_inv(static_cast<std::size_t>(n)); }

inline const RatFunc& q() {
    static const RatFunc v = RatFunc::q();
    return v;
}
inline const RatFunc& q_inv() {
    static const RatFunc v = RatFunc::q_pow(-1);
    return v;
}

inline XPoly x_pow(std::size_t k) { return XPoly::monomial(RatFunc(1), k); }

/// (a*x + b)^n over Q(q).
inline XPoly affine_pow(const RatFunc& a, const RatFunc& b, std::size_t n) {
    return pow(XPoly(std::vector<RatFunc>{b, a}), static_cast<unsigned>(n));
}

inline XPoly one_minus_x_pow(std::size_t n) { return affine_pow(RatFunc(-1), RatFunc(1), n); }

inline long sum(const Params& p, std::size_t count) {
    return std::accumulate(p.begin(), p.begin() + static_cast<long>(count), 0L);
}

}  // namespace detail

/// Right-hand side of the symbolic shift equation for f(x) = q^x x^m.
inline RatFunc eq2_rhs(long m, long shift) {
    using namespace detail;
    RatFunc r = E(m).scaled(sign(shift));
    for (long l = 0; l < shift; ++l) {
        // 2 (-1)^{s-1-l} q^l l^m with 0^0 = 1.
        Rational lm = pow(Rational(l), static_cast<unsigned>(m));
        r += RatFunc::q_pow(l).scaled(Rational(2) * sign(shift - 1 - l) * lm);
    }
    return r;
}

inline RatFunc eq9_rhs(long n) {
    using namespace detail;
    const RatFunc u = -q_inv();
    return RatFunc(2) / (q() + RatFunc(1)) * frobenius_euler(static_cast<std::size_t>(n), u);
}

inline XPoly thm1_rhs(long n) {
    return xpoly_compose_affine(euler_poly_q(static_cast<std::size_t>(n)), RatFunc(-1), RatFunc(1))
        .scaled(detail::q());
}

inline RatFunc thm2_rhs(long n) { return RatFunc(2) + detail::E(n) * detail::q_inv(); }
inline RatFunc thm3_rhs(long n) { return thm2_rhs(n); }

inline RatFunc eq14_rhs(long n, long k) {
    using namespace detail;
    RatFunc s;
    for (long j = 0; j <= n - k; ++j) s += E(k + j).scaled(binom(n - k, j) * sign(j));
    return s.scaled(binom(n, k));
}

/// Bernstein moment under q^{1-x}. `positive_branch` selects the k > 0 formula regardless of k.
inline RatFunc thm4_rhs(long n, long k, bool positive_branch) {
    using namespace detail;
    if (!positive_branch) return RatFunc(2) * q() + E(n);
    RatFunc s;
    for (long j = 0; j <= k; ++j) s += E(n - j).scaled(binom(k, j) * sign(k - j));
    return s.scaled(binom(n, k));
}
inline RatFunc thm4_rhs(long n, long k) { return thm4_rhs(n, k, k > 0); }

inline RatFunc cor5_rhs(long n, long k, bool positive_branch) {
    using namespace detail;
    if (!positive_branch) return RatFunc(2) + q_inv() * E(n);
    RatFunc s;
    for (long j = 0; j <= k; ++j) s += (q_inv() * E(n - j)).scaled(binom(k, j) * sign(k - j));
    return s;
}
inline RatFunc cor5_rhs(long n, long k) { return cor5_rhs(n, k, k > 0); }

inline RatFunc thm6_rhs(long n, long m, long k, bool positive_branch) {
    using namespace detail;
    if (!positive_branch) return RatFunc(2) * q() + E(n + m);
    RatFunc s;
    for (long j = 0; j <= 2 * k; ++j) s += E(n + m - j).scaled(binom(2 * k, j) * sign(j + 2 * k));
    return s.scaled(binom(n, k) * binom(m, k));
}
inline RatFunc thm6_rhs(long n, long m, long k) { return thm6_rhs(n, m, k, k > 0); }

inline RatFunc cor7_rhs(long n, long m, long k, bool positive_branch) {
    using namespace detail;
    if (!positive_branch) return RatFunc(2) + q_inv() * E(n + m);
    RatFunc s;
    for (long j = 0; j <= 2 * k; ++j) s += E(n + m - j).scaled(binom(2 * k, j) * sign(j + 2 * k));
    return q_inv() * s;
}
inline RatFunc cor7_rhs(long n, long m, long k) { return cor7_rhs(n, m, k, k > 0); }

inline RatFunc thm8_rhs(const std::vector<long>& ns, long k, bool positive_branch) {
    using namespace detail;
    const long total = std::accumulate(ns.begin(), ns.end(), 0L);
    const long s = static_cast<long>(ns.size());
    if (!positive_branch) return RatFunc(2) * q() + E(total);
    Rational prod(1);
    for (long ni : ns) prod *= binom(ni, k);
    RatFunc sum;
    for (long j = 0; j <= s * k; ++j) sum += E(total - j).scaled(binom(s * k, j) * sign(s * k + j));
    return sum.scaled(prod);
}
inline RatFunc thm8_rhs(const std::vector<long>& ns, long k) { return thm8_rhs(ns, k, k > 0); }

inline RatFunc cor9_rhs(const std::vector<long>& ns, long k, bool positive_branch) {
    using namespace detail;
    const long total = std::accumulate(ns.begin(), ns.end(), 0L);
    const long s = static_cast<long>(ns.size());
    if (!positive_branch) return RatFunc(2) + q_inv() * E(total);
    RatFunc sum;
    for (long j = 0; j <= s * k; ++j) sum += E(total - j).scaled(binom(s * k, j) * sign(s * k + j));
    return q_inv() * sum;
}
inline RatFunc cor9_rhs(const std::vector<long>& ns, long k) { return cor9_rhs(ns, k, k > 0); }

// ---------------------------------------------------------------------------
// Oracle sides
// ---------------------------------------------------------------------------

/// Product of B_{k,n_i}(x) over the given degrees.
inline XPoly bernstein_product(const std::vector<long>& ns, long k) {
    XPoly r(RatFunc(1));
    for (long ni : ns) r = r * bernstein_basis(static_cast<std::size_t>(k), static_cast<std::size_t>(ni));
    return r;
}

/// x^a (1-x)^b.
inline XPoly monomial_times_one_minus_x(long a, long b) {
    return detail::x_pow(static_cast<std::size_t>(a)) * detail::one_minus_x_pow(static_cast<std::size_t>(b));
}

/// Integral of q^{1-x} prod_i B_{k,n_i}(x) through the moment oracle.
inline RatFunc bernstein_product_integral(const std::vector<long>& ns, long k) {
    return moment_reduce({-1, 1, bernstein_product(ns, k)});
}

/// (-1)^n E_{n,1/q}(x) as the Witt integral int q^{-y} (x+y)^n dmu(y),
/// reduced coefficientwise in x.
inline XPoly thm1_lhs(long n) {
    using namespace detail;
    std::vector<RatFunc> c(static_cast<std::size_t>(n) + 1);
    for (long l = 0; l <= n; ++l)
        c[static_cast<std::size_t>(n - l)] = moment_reduce({-1, 0, x_pow(static_cast<std::size_t>(l))})
                                                 .scaled(sign(n) * binom(n, l));
    return XPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

using IdentityValue = std::variant<RatFunc, XPoly>;

inline nlohmann::json to_json(const IdentityValue& v) {
    return std::visit([](const auto& x) { return qeuler::to_json(x); }, v);
}

inline std::string to_string(const IdentityValue& v) {
    return std::visit(
        [](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, RatFunc>)
                return x.to_string();
            else
                return qeuler::to_string(x);
        },
        v);
}

struct VerificationResult {
    IdentityId id;
    Params params;
    IdentityValue lhs;
    IdentityValue rhs;
    IdentityValue difference;
    bool equal = false;
    // Secondary check: both sides agree after substituting q = 3.
    bool sample_agrees = false;
};

/// Empty string when the parameters satisfy the identity's hypotheses,
/// otherwise the violated condition.
inline std::string side_condition_violation(IdentityId id, const Params& p) {
    auto arity = [&](std::size_t want) -> std::string {
        if (p.size() != want)
            return "expected " + std::to_string(want) + " parameters, got " + std::to_string(p.size());
        for (long v : p)
            if (v < 0) return "parameters must be non-negative";
        return {};
    };
    std::string e;
    switch (id) {
        case IdentityId::eq2_symbolic:
            if (!(e = arity(2)).empty()) return e;
            if (p[1] < 1) return "shift must be >= 1";
            return {};
        case IdentityId::eq9_frobenius:
        case IdentityId::thm1_reflection:
            return arity(1);
        case IdentityId::thm2_value_at_two:
        case IdentityId::thm3_integral:
            if (!(e = arity(1)).empty()) return e;
            if (p[0] < 1) return "n must be >= 1";
            return {};
        case IdentityId::eq14_bernstein_moment:
        case IdentityId::eq15_symmetry:
            if (!(e = arity(2)).empty()) return e;
            if (p[1] > p[0]) return "k must not exceed n";
            return {};
        case IdentityId::thm4:
        case IdentityId::cor5:
            if (!(e = arity(2)).empty()) return e;
            if (p[0] <= p[1]) return "requires n > k";
            return {};
        case IdentityId::thm6:
        case IdentityId::cor7:
            if (!(e = arity(3)).empty()) return e;
            if (p[2] > std::min(p[0], p[1])) return "k must not exceed n or m";
            if (p[0] + p[1] <= 2 * p[2]) return "requires n + m > 2k";
            return {};
        case IdentityId::thm8:
        case IdentityId::cor9: {
            if (p.size() < 2) return "expected n_1, ..., n_s, k with s >= 1";
            for (long v : p)
                if (v < 0) return "parameters must be non-negative";
            const std::size_t s = p.size() - 1;
            const long k = p.back();
            for (std::size_t i = 0; i < s; ++i)
                if (p[i] < k) return "k must not exceed any n_i";
            if (detail::sum(p, s) <= static_cast<long>(s) * k) return "requires n_1 + ... + n_s > s k";
            return {};
        }
    }
    return "unknown identity";
}

namespace detail {

template <typename V>
bool sample_agrees(const V& a, const V& b) {
    const Rational q0(3);
    try {
        if constexpr (std::is_same_v<V, RatFunc>)
            return a.eval(q0) == b.eval(q0);
        else
            return eval_q(a, q0) == eval_q(b, q0);
    } catch (const pole_error&) {
        return false;
    }
}

template <typename V>
VerificationResult make_result(IdentityId id, const Params& p, V lhs, V rhs, bool extra_ok = true) {
    V diff = lhs - rhs;
    const bool eq = diff.is_zero() && extra_ok;
    const bool sampled = sample_agrees(lhs, rhs);
    return {id, p, std::move(lhs), std::move(rhs), std::move(diff), eq, sampled};
}

}  // namespace detail

/// Both sides of an identity without checking side conditions. Used directly
/// for exploratory evaluation outside the stated hypotheses.
inline VerificationResult evaluate_identity(IdentityId id, const Params& p) {
    using namespace detail;
    auto st = [](long v) { return static_cast<std::size_t>(v); };
    switch (id) {
        case IdentityId::eq2_symbolic: {
            const long m = p[0], s = p[1];
            // q^s * q^x * (x + s)^m
            XPoly shifted = affine_pow(RatFunc(1), RatFunc(Rational(s)), st(m));
            return make_result(id, p, moment_reduce({1, s, shifted}), eq2_rhs(m, s));
        }
        case IdentityId::eq9_frobenius:
            return make_result(id, p, moment_reduce({1, 0, x_pow(st(p[0]))}), eq9_rhs(p[0]));
        case IdentityId::thm1_reflection:
            return make_result(id, p, thm1_lhs(p[0]), thm1_rhs(p[0]));
        case IdentityId::thm2_value_at_two: {
            // q * E_{n,q}(2) via Witt: q * int q^y (y + 2)^n dmu(y)
            RatFunc lhs = q() * moment_reduce({1, 0, affine_pow(RatFunc(1), RatFunc(2), st(p[0]))});
            return make_result(id, p, lhs, thm2_rhs(p[0]));
        }
        case IdentityId::thm3_integral: {
            RatFunc lhs = moment_reduce({-1, 0, one_minus_x_pow(st(p[0]))});
            RatFunc rhs_oracle = RatFunc(2) + q_inv() * moment_reduce({1, 0, x_pow(st(p[0]))});
            RatFunc rhs = thm3_rhs(p[0]);
            const bool forms_agree = rhs_oracle == rhs;
            return make_result(id, p, lhs, rhs, forms_agree);
        }
        case IdentityId::eq14_bernstein_moment:
            return make_result(id, p, moment_reduce({1, 0, bernstein_basis(st(p[1]), st(p[0]))}),
                               eq14_rhs(p[0], p[1]));
        case IdentityId::eq15_symmetry: {
            XPoly rhs = xpoly_compose_affine(bernstein_basis(st(p[0] - p[1]), st(p[0])), RatFunc(-1), RatFunc(1));
            return make_result(id, p, bernstein_basis(st(p[1]), st(p[0])), rhs);
        }
        case IdentityId::thm4:
            return make_result(id, p, bernstein_product_integral({p[0]}, p[1]), thm4_rhs(p[0], p[1]));
        case IdentityId::cor5:
            return make_result(id, p, moment_reduce({-1, 0, monomial_times_one_minus_x(p[1], p[0] - p[1])}),
                               cor5_rhs(p[0], p[1]));
        case IdentityId::thm6:
            return make_result(id, p, bernstein_product_integral({p[0], p[1]}, p[2]), thm6_rhs(p[0], p[1], p[2]));
        case IdentityId::cor7: {
            const long n = p[0], m = p[1], k = p[2];
            return make_result(id, p, moment_reduce({-1, 0, monomial_times_one_minus_x(2 * k, n + m - 2 * k)}),
                               cor7_rhs(n, m, k));
        }
        case IdentityId::thm8:
        case IdentityId::cor9: {
            const std::vector<long> ns(p.begin(), p.end() - 1);
            const long k = p.back();
            if (id == IdentityId::thm8) return make_result(id, p, bernstein_product_integral(ns, k), thm8_rhs(ns, k));
            const long s = static_cast<long>(ns.size());
            const long total = std::accumulate(ns.begin(), ns.end(), 0L);
            return make_result(id, p, moment_reduce({-1, 0, monomial_times_one_minus_x(s * k, total - s * k)}),
                               cor9_rhs(ns, k));
        }
    }
    throw precondition_error("unknown identity");
}

/// Checks one registry identity. The left side always comes from the moment
/// oracle applied to the raw integrand; the right side from the closed form.
/// Throws precondition_error when the parameters violate the hypotheses.
inline VerificationResult verify_identity(IdentityId id, const Params& p) {
    const std::string why = side_condition_violation(id, p);
    if (!why.empty()) throw precondition_error(identity_name(id) + ": " + why);
    return evaluate_identity(id, p);
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

/// Per-identity parameter bounds. Defaults are the acceptance ranges.
struct SuiteRanges {
    std::set<IdentityId> ids;
    long eq2_m_max = 6;
    long eq2_shift_max = 4;
    long eq9_n_max = 10;
    long thm1_n_max = 8;
    long thm23_n_max = 8;   // thm2, thm3
    long bern_n_max = 8;    // eq14, thm4, cor5
    long eq15_n_max = 10;
    long thm6_n_max = 6;    // bound on both n and m for thm6, cor7
    long thm8_s_max = 3;
    long thm8_ni_max = 4;
    std::optional<long> k_max;
    bool consistency = true;

    static SuiteRanges all() {
        SuiteRanges r;
        for (const auto& e : identity_registry) r.ids.insert(e.id);
        return r;
    }
};

struct ExploratoryCase {
    IdentityId id;
    Params params;
    std::string reason;
    bool equal;
};

struct ConsistencyCheck {
    std::string name;
    Params params;
    bool passed;
};

/// Whether the k > 0 closed form, evaluated at k = 0, matches the k = 0 form.
struct BranchNote {
    IdentityId id;
    Params params;
    bool branches_coincide;
};

struct IdentityTally {
    IdentityId id;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

struct SuiteReport {
    std::vector<IdentityTally> by_identity;  // registry order, selected ids only
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::vector<VerificationResult> failures;
    std::vector<ExploratoryCase> exploratory;
    std::vector<ConsistencyCheck> consistency;
    std::vector<BranchNote> branch_notes;
    // Coefficient ratio of the two-factor product expansion of 2/(q e^t + 1)
    // to E_{n,q}; a ratio of 1 means the product is normalized like E_{n,q}.
    std::vector<std::pair<long, RatFunc>> frobenius_normalization;

    std::size_t consistency_failures() const {
        return static_cast<std::size_t>(
            std::count_if(consistency.begin(), consistency.end(), [](const auto& c) { return !c.passed; }));
    }
    bool ok() const { return failed == 0 && consistency_failures() == 0; }

    nlohmann::json to_json() const {
        using nlohmann::json;
        json fails = json::array();
        for (const auto& f : failures)
            fails.push_back({{"id", identity_name(f.id)},
                             {"params", f.params},
                             {"lhs", qeuler::to_json(f.lhs)},
                             {"rhs", qeuler::to_json(f.rhs)},
                             {"diff", qeuler::to_json(f.difference)}});
        json expl = json::array();
        for (const auto& e : exploratory)
            expl.push_back({{"id", identity_name(e.id)}, {"params", e.params}, {"reason", e.reason}, {"equal", e.equal}});
        json cons_fail = json::array();
        for (const auto& c : consistency)
            if (!c.passed) cons_fail.push_back({{"name", c.name}, {"params", c.params}});
        json branches = json::array();
        for (const auto& b : branch_notes)
            branches.push_back(
                {{"id", identity_name(b.id)}, {"params", b.params}, {"branches_coincide", b.branches_coincide}});
        json tallies = json::array();
        for (const auto& t : by_identity)
            tallies.push_back({{"id", identity_name(t.id)},
                               {"cases", t.cases},
                               {"passed", t.passed},
                               {"failed", t.failed},
                               {"skipped", t.skipped}});
        json frob = json::array();
        for (const auto& [n, ratio] : frobenius_normalization)
            frob.push_back({{"n", n}, {"ratio", qeuler::to_json(ratio)}, {"ratio_text", ratio.to_string()}});
        return {{"cases", cases},
                {"passed", passed},
                {"failed", failed},
                {"skipped", skipped},
                {"failures", fails},
                {"by_identity", tallies},
                {"consistency", {{"checks", consistency.size()}, {"failed", consistency_failures()}, {"failures", cons_fail}}},
                {"exploratory", expl},
                {"branch_notes", branches},
                {"frobenius_normalization", frob}};
    }
};

namespace detail {

inline void cartesian(std::size_t s, long lo, long hi, Params& cur, std::vector<Params>& out) {
    if (cur.size() == s) {
        out.push_back(cur);
        return;
    }
    for (long v = lo; v <= hi; ++v) {
        cur.push_back(v);
        cartesian(s, lo, hi, cur, out);
        cur.pop_back();
    }
}

inline long kcap(const SuiteRanges& r, long k) { return r.k_max ? std::min(*r.k_max, k) : k; }

}  // namespace detail

/// All parameter tuples the suite visits for one identity, in lexicographic
/// order. Tuples may still violate side conditions; those are skipped.
inline std::vector<Params> enumerate_params(IdentityId id, const SuiteRanges& r) {
    using detail::kcap;
    std::vector<Params> out;
    switch (id) {
        case IdentityId::eq2_symbolic:
            for (long m = 0; m <= r.eq2_m_max; ++m)
                for (long s = 0; s <= r.eq2_shift_max; ++s) out.push_back({m, s});
            break;
        case IdentityId::eq9_frobenius:
            for (long n = 0; n <= r.eq9_n_max; ++n) out.push_back({n});
            break;
        case IdentityId::thm1_reflection:
            for (long n = 0; n <= r.thm1_n_max; ++n) out.push_back({n});
            break;
        case IdentityId::thm2_value_at_two:
        case IdentityId::thm3_integral:
            for (long n = 0; n <= r.thm23_n_max; ++n) out.push_back({n});
            break;
        case IdentityId::eq14_bernstein_moment:
        case IdentityId::thm4:
        case IdentityId::cor5:
            for (long n = 0; n <= r.bern_n_max; ++n)
                for (long k = 0; k <= kcap(r, n); ++k) out.push_back({n, k});
            break;
        case IdentityId::eq15_symmetry:
            for (long n = 0; n <= r.eq15_n_max; ++n)
                for (long k = 0; k <= kcap(r, n); ++k) out.push_back({n, k});
            break;
        case IdentityId::thm6:
        case IdentityId::cor7:
            for (long n = 0; n <= r.thm6_n_max; ++n)
                for (long m = 0; m <= r.thm6_n_max; ++m)
                    for (long k = 0; k <= kcap(r, std::min(n, m)); ++k) out.push_back({n, m, k});
            break;
        case IdentityId::thm8:
        case IdentityId::cor9:
            for (long s = 1; s <= r.thm8_s_max; ++s) {
                std::vector<Params> ns;
                Params cur;
                detail::cartesian(static_cast<std::size_t>(s), 0, r.thm8_ni_max, cur, ns);
                for (auto& t : ns) {
                    const long lo = *std::min_element(t.begin(), t.end());
                    for (long k = 0; k <= kcap(r, lo); ++k) {
                        Params p = t;
                        p.push_back(k);
                        out.push_back(std::move(p));
                    }
                }
            }
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline bool selected(const SuiteRanges& r, std::initializer_list<IdentityId> ids) {
    for (auto id : ids)
        if (r.ids.count(id)) return true;
    return false;
}

inline void run_consistency(const SuiteRanges& r, SuiteReport& rep) {
    using I = IdentityId;
    // Reflection at x = -1 followed by the value at two gives the closed form
    // of the q^{-x}(1-x)^n integral.
    if (selected(r, {I::thm1_reflection, I::thm2_value_at_two, I::thm3_integral})) {
        const long hi = std::max({r.thm1_n_max, r.thm23_n_max});
        for (long n = 1; n <= std::min(hi, 8L); ++n) {
            const RatFunc refl_at_minus_one = thm1_lhs(n).eval(RatFunc(-1));
            const RatFunc via_thm2 = thm1_rhs(n).eval(RatFunc(-1));
            const bool ok = refl_at_minus_one == via_thm2 && via_thm2 == thm2_rhs(n) &&
                            thm2_rhs(n) == thm3_rhs(n) &&
                            moment_reduce({-1, 0, one_minus_x_pow(static_cast<std::size_t>(n))}) == thm3_rhs(n);
            rep.consistency.push_back({"reflection_chain", {n}, ok});
        }
    }
    // q -> 1/q carries the q^x Bernstein moments onto the q^{1-x} family.
    if (selected(r, {I::eq14_bernstein_moment, I::thm4, I::cor5})) {
        for (long n = 1; n <= std::min(r.bern_n_max, 8L); ++n)
            for (long k = 0; k < n; ++k) {
                if (r.k_max && k > *r.k_max) break;
                const RatFunc mirrored = eq14_rhs(n, k).invert_q();
                const bool ok = q() * mirrored == thm4_rhs(n, k) &&
                                mirrored == cor5_rhs(n, k).scaled(binom(n, k)) &&
                                mirrored == moment_reduce({-1, 0, bernstein_basis(static_cast<std::size_t>(k),
                                                                                  static_cast<std::size_t>(n))});
                rep.consistency.push_back({"eq14_thm4_mirror", {n, k}, ok});
            }
    }
    // The s-fold formulas must collapse to the single and double ones.
    if (selected(r, {I::thm8, I::cor9})) {
        const long hi = r.thm8_ni_max;
        for (long n = 1; n <= hi; ++n)
            for (long k = 0; k < n; ++k) {
                if (r.k_max && k > *r.k_max) break;
                const bool ok = thm8_rhs({n}, k) == thm4_rhs(n, k) && cor9_rhs({n}, k) == cor5_rhs(n, k) &&
                                bernstein_product_integral({n}, k) == moment_reduce({-1, 1, bernstein_basis(
                                                                                                static_cast<std::size_t>(k),
                                                                                                static_cast<std::size_t>(n))});
                rep.consistency.push_back({"thm8_s1_is_thm4", {n, k}, ok});
            }
        if (r.thm8_s_max >= 2)
            for (long n = 0; n <= hi; ++n)
                for (long m = 0; m <= hi; ++m)
                    for (long k = 0; k <= std::min(n, m); ++k) {
                        if (r.k_max && k > *r.k_max) break;
                        if (n + m <= 2 * k) continue;
                        const bool ok = thm8_rhs({n, m}, k) == thm6_rhs(n, m, k) &&
                                        cor9_rhs({n, m}, k) == cor7_rhs(n, m, k);
                        rep.consistency.push_back({"thm8_s2_is_thm6", {n, m, k}, ok});
                    }
    }
}

inline void run_branch_notes(const SuiteRanges& r, SuiteReport& rep) {
    using I = IdentityId;
    if (r.ids.count(I::thm4) || r.ids.count(I::cor5))
        for (long n = 1; n <= r.bern_n_max; ++n) {
            if (r.ids.count(I::thm4)) rep.branch_notes.push_back({I::thm4, {n, 0}, thm4_rhs(n, 0, true) == thm4_rhs(n, 0, false)});
            if (r.ids.count(I::cor5)) rep.branch_notes.push_back({I::cor5, {n, 0}, cor5_rhs(n, 0, true) == cor5_rhs(n, 0, false)});
        }
    if (r.ids.count(I::thm6) || r.ids.count(I::cor7))
        for (long n = 0; n <= r.thm6_n_max; ++n)
            for (long m = 0; m <= r.thm6_n_max; ++m) {
                if (n + m == 0) continue;
                if (r.ids.count(I::thm6))
                    rep.branch_notes.push_back({I::thm6, {n, m, 0}, thm6_rhs(n, m, 0, true) == thm6_rhs(n, m, 0, false)});
                if (r.ids.count(I::cor7))
                    rep.branch_notes.push_back({I::cor7, {n, m, 0}, cor7_rhs(n, m, 0, true) == cor7_rhs(n, m, 0, false)});
            }
    if (r.ids.count(I::thm8) || r.ids.count(I::cor9))
        for (long s = 1; s <= r.thm8_s_max; ++s) {
            std::vector<Params> ns;
            Params cur;
            cartesian(static_cast<std::size_t>(s), 0, r.thm8_ni_max, cur, ns);
            for (const auto& t : ns) {
                if (std::accumulate(t.begin(), t.end(), 0L) == 0) continue;
                Params p = t;
                p.push_back(0);
                if (r.ids.count(I::thm8))
                    rep.branch_notes.push_back({I::thm8, p, thm8_rhs(t, 0, true) == thm8_rhs(t, 0, false)});
                if (r.ids.count(I::cor9))
                    rep.branch_notes.push_back({I::cor9, p, cor9_rhs(t, 0, true) == cor9_rhs(t, 0, false)});
            }
        }
}

}  // namespace detail

/// Coefficient ratio between the two-factor product 2/(e^t + 1/q) * 2/(1+q),
/// expanded via Frobenius-Euler numbers, and E_{n,q}. The product is
/// (4q/(1+q)^2) H_n(-1/q) coefficientwise.
inline RatFunc product_frobenius_ratio(long n) {
    using namespace detail;
    const RatFunc one_plus_q = q() + RatFunc(1);
    const RatFunc product = RatFunc(4) * q() / (one_plus_q * one_plus_q) *
                            frobenius_euler(static_cast<std::size_t>(n), -q_inv());
    const RatFunc e = E(n);
    if (e.is_zero()) return product.is_zero() ? RatFunc(1) : RatFunc();
    return product / e;
}

/// Runs every selected identity over its enumerated parameters. Tuples that
/// violate side conditions are counted as skipped and evaluated in the
/// exploratory bucket, never asserted.
inline SuiteReport run_suite(const SuiteRanges& ranges) {
    SuiteReport rep;
    for (const auto& info : identity_registry) {
        if (!ranges.ids.count(info.id)) continue;
        IdentityTally tally{info.id};
        for (const auto& p : enumerate_params(info.id, ranges)) {
            const std::string why = side_condition_violation(info.id, p);
            if (!why.empty()) {
                ++tally.skipped;
                rep.exploratory.push_back({info.id, p, why, evaluate_identity(info.id, p).equal});
                continue;
            }
            VerificationResult res = verify_identity(info.id, p);
            ++tally.cases;
            if (res.equal) {
                ++tally.passed;
            } else {
                ++tally.failed;
                rep.failures.push_back(std::move(res));
            }
        }
        rep.cases += tally.cases;
        rep.passed += tally.passed;
        rep.failed += tally.failed;
        rep.skipped += tally.skipped;
        rep.by_identity.push_back(tally);
    }
    if (ranges.consistency) detail::run_consistency(ranges, rep);
    detail::run_branch_notes(ranges, rep);
    if (ranges.ids.count(IdentityId::eq9_frobenius))
        for (long n = 0; n <= ranges.eq9_n_max; ++n) rep.frobenius_normalization.emplace_back(n, product_frobenius_ratio(n));
    return rep;
}

}  // namespace qeuler
