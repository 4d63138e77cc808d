#include <gtest/gtest.h>

#include "qeuler/identities.hpp"
#include "qeuler/padic.hpp"

using namespace qeuler;

namespace {

const RatFunc q = RatFunc::q();
const RatFunc one_plus_q = q + RatFunc(1);

RatFunc as_ratfunc(const IdentityValue& v) { return std::get<RatFunc>(v); }

}  // namespace

TEST(MomentReduce, Examples) {
    for (unsigned n = 0; n <= 6; ++n)
        EXPECT_EQ(moment_reduce({1, 0, XPoly::monomial(RatFunc(1), n)}), euler_number_q(n));

    const XPoly one_minus_x({RatFunc(1), RatFunc(-1)});
    const RatFunc expected = (RatFunc(2) * q * q + RatFunc(4) * q) / (one_plus_q * one_plus_q);
    EXPECT_EQ(moment_reduce({-1, 0, one_minus_x}), expected);

    const RatFunc shifted = moment_reduce({-1, 1, bernstein_basis(0, 1)});
    EXPECT_EQ(shifted, q * expected);
    EXPECT_EQ(shifted, RatFunc(2) * q + euler_number_q(1));

    EXPECT_THROW(moment_reduce({0, 0, one_minus_x}), domain_error);
}

// The oracle is checked against truncated fermionic sums, an independent
// numeric route: sum_{y < p^N} (-1)^y q0^{s y} poly(y) mod p^M.
TEST(MomentReduce, AgreesWithTruncatedPadicSums) {
    const std::uint64_t p = 5;
    const long long q0 = 6;
    const unsigned M = 3, N = 4;
    PAdic base(p, M);
    const BigInt mod = base.modulus();
    const BigInt q_inv = mod_inverse(BigInt(q0), mod);

    struct Case {
        int sign;
        long shift;
        XPoly poly;
    };
    std::vector<Case> cases{
        {1, 0, bernstein_basis(1, 3)},
        {-1, 1, bernstein_basis(2, 4)},
        {-1, 0, bernstein_basis(1, 2) * bernstein_basis(1, 3)},
        {1, 2, pow(XPoly({RatFunc(2), RatFunc(1)}), 3)},
    };
    for (const auto& c : cases) {
        const Rational exact = moment_reduce({c.sign, c.shift, c.poly}).eval(Rational(q0));
        const PolyQ at_q0 = eval_q(c.poly, Rational(q0));
        PAdic sum = fermionic_sum(
            [&](std::uint64_t y) {
                BigInt qy = powmod(c.sign > 0 ? BigInt(q0) : q_inv, y, mod);
                BigInt poly_y = padic_from_rational(at_q0.eval(Rational(BigInt(y))), p, M).residue();
                return BigInt((qy * poly_y) % mod);
            },
            p, N, M);
        PAdic prefactor(p, M, c.shift >= 0 ? powmod(BigInt(q0), c.shift, mod) : BigInt(1));
        EXPECT_EQ(prefactor * sum, padic_from_rational(exact, p, M));
    }
}

TEST(Registry, NamesAndAliases) {
    EXPECT_EQ(identity_registry.size(), 13u);
    EXPECT_EQ(parse_identity("thm2"), IdentityId::thm2_value_at_two);
    EXPECT_EQ(parse_identity("thm2_value_at_two"), IdentityId::thm2_value_at_two);
    EXPECT_EQ(parse_identity("eq14"), IdentityId::eq14_bernstein_moment);
    EXPECT_EQ(parse_identity("cor9"), IdentityId::cor9);
    EXPECT_FALSE(parse_identity("bogus").has_value());
    for (const auto& e : identity_registry) EXPECT_EQ(parse_identity(e.name), e.id);
}

TEST(VerifyIdentity, Examples) {
    const RatFunc both = (RatFunc(2) * q * q + RatFunc(4) * q) / (one_plus_q * one_plus_q);
    auto t2 = verify_identity(IdentityId::thm2_value_at_two, {1});
    EXPECT_TRUE(t2.equal);
    EXPECT_EQ(as_ratfunc(t2.lhs), both);
    EXPECT_EQ(as_ratfunc(t2.rhs), both);

    auto t1 = verify_identity(IdentityId::thm1_reflection, {0});
    EXPECT_TRUE(t1.equal);
    EXPECT_EQ(std::get<XPoly>(t1.lhs), XPoly(RatFunc(2) * q / one_plus_q));

    auto t4 = verify_identity(IdentityId::thm4, {1, 0});
    EXPECT_TRUE(t4.equal);
    EXPECT_EQ(as_ratfunc(t4.lhs), RatFunc(2) * q + euler_number_q(1));
}

TEST(VerifyIdentity, ResultInvariants) {
    for (const auto& e : identity_registry) {
        Params p;
        switch (e.id) {
            case IdentityId::eq2_symbolic: p = {3, 2}; break;
            case IdentityId::thm6:
            case IdentityId::cor7: p = {3, 2, 1}; break;
            case IdentityId::thm8:
            case IdentityId::cor9: p = {2, 3, 1, 1}; break;
            case IdentityId::eq9_frobenius:
            case IdentityId::thm1_reflection:
            case IdentityId::thm2_value_at_two:
            case IdentityId::thm3_integral: p = {4}; break;
            default: p = {5, 2}; break;
        }
        auto r = verify_identity(e.id, p);
        EXPECT_TRUE(r.equal) << e.name;
        EXPECT_TRUE(r.sample_agrees) << e.name;
        const bool diff_zero = std::visit([](const auto& d) { return d.is_zero(); }, r.difference);
        EXPECT_EQ(r.equal, diff_zero);
    }
}

TEST(VerifyIdentity, PreconditionErrors) {
    EXPECT_THROW(verify_identity(IdentityId::thm4, {3, 3}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::cor5, {2, 3}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::thm2_value_at_two, {0}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::thm3_integral, {0}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::eq2_symbolic, {2, 0}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::thm6, {1, 1, 1}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::thm8, {2, 2, 1, 2}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::thm8, {1}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::eq9_frobenius, {1, 2}), precondition_error);
    EXPECT_THROW(verify_identity(IdentityId::eq15_symmetry, {-1, 0}), precondition_error);
}

TEST(VerifyIdentity, DetectsAWrongClosedForm) {
    // Dropping the 2q term of the k = 0 branch must be caught.
    RatFunc lhs = bernstein_product_integral({3}, 0);
    EXPECT_NE(lhs, euler_number_q(3));
    EXPECT_EQ(lhs, thm4_rhs(3, 0));
}

TEST(VerifyIdentity, ShiftEquationSmallCase) {
    // m = 1, shift = 1: q E_{1,q}(1) = -E_{1,q} + 2 * 0
    auto r = verify_identity(IdentityId::eq2_symbolic, {1, 1});
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(as_ratfunc(r.rhs), -euler_number_q(1));
    // m = 0, shift = 2: q^2 E_0 = E_0 + 2(q - 1)
    auto s = verify_identity(IdentityId::eq2_symbolic, {0, 2});
    EXPECT_EQ(as_ratfunc(s.lhs), q * q * euler_number_q(0));
    EXPECT_TRUE(s.equal);
}

TEST(RunSuite, EmptyRanges) {
    SuiteRanges r;
    auto rep = run_suite(r);
    EXPECT_EQ(rep.cases, 0u);
    EXPECT_EQ(rep.skipped, 0u);
    EXPECT_TRUE(rep.failures.empty());
    EXPECT_TRUE(rep.consistency.empty());
}

TEST(RunSuite, ViolatingTuplesAreSkippedNotFailed) {
    SuiteRanges r;
    r.ids = {IdentityId::thm4, IdentityId::thm2_value_at_two};
    r.bern_n_max = 3;
    r.thm23_n_max = 2;
    auto rep = run_suite(r);
    // thm4: (n, k) with k <= n <= 3 is 10 tuples, 4 with n = k
    // thm2: n in {0, 1, 2}, n = 0 skipped
    EXPECT_EQ(rep.cases, 6u + 2u);
    EXPECT_EQ(rep.skipped, 4u + 1u);
    EXPECT_EQ(rep.failed, 0u);
    ASSERT_EQ(rep.exploratory.size(), 5u);
    for (const auto& e : rep.exploratory) EXPECT_FALSE(e.reason.empty());
    ASSERT_EQ(rep.by_identity.size(), 2u);
    EXPECT_EQ(rep.by_identity[0].id, IdentityId::thm2_value_at_two);
}

TEST(RunSuite, DeterministicOrdering) {
    SuiteRanges r;
    r.thm8_s_max = 2;
    r.thm8_ni_max = 2;
    auto ps = enumerate_params(IdentityId::thm8, r);
    EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
    auto again = enumerate_params(IdentityId::thm8, r);
    EXPECT_EQ(ps, again);
}

TEST(RunSuite, ValueAtTwoSingleCase) {
    SuiteRanges r;
    r.ids = {IdentityId::thm2_value_at_two};
    r.thm23_n_max = 1;
    auto rep = run_suite(r);
    EXPECT_EQ(rep.cases, 1u);
    EXPECT_EQ(rep.passed, 1u);
}

TEST(RunSuite, BranchNotesAreInformational) {
    SuiteRanges r;
    r.ids = {IdentityId::thm4};
    r.bern_n_max = 4;
    auto rep = run_suite(r);
    EXPECT_TRUE(rep.ok());
    ASSERT_FALSE(rep.branch_notes.empty());
    // The k > 0 formula at k = 0 gives E_{n,q}, not 2q + E_{n,q}.
    for (const auto& b : rep.branch_notes) EXPECT_FALSE(b.branches_coincide);
}

TEST(RunSuite, FrobeniusNormalizationRatio) {
    // The two-factor product differs from 2/(q e^t + 1) by 2q/(1+q).
    for (long n = 0; n <= 6; ++n) EXPECT_EQ(product_frobenius_ratio(n), RatFunc(2) * q / one_plus_q);
}

TEST(RunSuite, JsonShape) {
    SuiteRanges r;
    r.ids = {IdentityId::eq15_symmetry};
    r.eq15_n_max = 2;
    auto j = run_suite(r).to_json();
    EXPECT_EQ(j.at("cases"), 6);
    EXPECT_EQ(j.at("passed"), 6);
    EXPECT_EQ(j.at("failed"), 0);
    EXPECT_EQ(j.at("skipped"), 0);
    EXPECT_TRUE(j.at("failures").is_array());
}
