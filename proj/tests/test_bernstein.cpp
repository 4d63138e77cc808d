#include <gtest/gtest.h>

#include "qeuler/bernstein.hpp"

using namespace qeuler;

namespace {

XPoly xpoly(std::initializer_list<long> c) {
    std::vector<RatFunc> v;
    for (long x : c) v.emplace_back(Rational(x));
    return XPoly(std::move(v));
}

// Direct value C(n,k) x^k (1-x)^{n-k} at a rational point.
Rational bernstein_value(unsigned k, unsigned n, const Rational& x) {
    return Rational(binomial(n, k)) * pow(x, k) * pow(Rational(1) - x, n - k);
}

}  // namespace

TEST(BernsteinBasis, Examples) {
    EXPECT_EQ(bernstein_basis(0, 1), xpoly({1, -1}));
    EXPECT_EQ(bernstein_basis(1, 2), xpoly({0, 2, -2}));
    XPoly sum;
    for (unsigned k = 0; k <= 3; ++k) sum += bernstein_basis(k, 3);
    EXPECT_EQ(sum, xpoly({1}));
    EXPECT_EQ(bernstein_basis(0, 0), xpoly({1}));
}

TEST(BernsteinBasis, IndexError) {
    EXPECT_THROW(bernstein_basis(3, 2), index_error);
    EXPECT_THROW(BernsteinIndex(1, 0), index_error);
}

TEST(BernsteinBasis, MatchesPointwiseFormula) {
    const std::vector<Rational> pts{make_rational(1, 3), make_rational(-2, 5), Rational(2), make_rational(7, 4)};
    for (unsigned n = 0; n <= 8; ++n)
        for (unsigned k = 0; k <= n; ++k)
            for (const auto& x : pts)
                EXPECT_EQ(bernstein_basis(k, n).eval(RatFunc(x)), RatFunc(bernstein_value(k, n, x)));
}

TEST(BernsteinBasis, SymmetryUnderReflection) {
    for (unsigned n = 0; n <= 10; ++n)
        for (unsigned k = 0; k <= n; ++k)
            EXPECT_EQ(xpoly_compose_affine(bernstein_basis(k, n), RatFunc(-1), RatFunc(1)), bernstein_basis(n - k, n));
}

TEST(BernsteinBasis, PartitionOfUnity) {
    for (unsigned n = 0; n <= 10; ++n) {
        XPoly sum;
        for (unsigned k = 0; k <= n; ++k) sum += bernstein_basis(k, n);
        EXPECT_EQ(sum, xpoly({1})) << n;
    }
}

TEST(BernsteinBasis, DegreeAndZeroOrders) {
    for (unsigned n = 1; n <= 10; ++n)
        for (unsigned k = 0; k <= n; ++k) {
            XPoly b = bernstein_basis(k, n);
            EXPECT_EQ(b.degree(), static_cast<long>(n));
            EXPECT_EQ(b.low_order(), k);
            if (k < n) {
                EXPECT_TRUE(b.eval(RatFunc(1)).is_zero());
                // order n - k at x = 1: low order of b(1 - x) is n - k
                EXPECT_EQ(xpoly_compose_affine(b, RatFunc(-1), RatFunc(1)).low_order(), n - k);
            }
        }
}

TEST(BernsteinOperator, Examples) {
    std::vector<Rational> ones(4, Rational(1));
    EXPECT_EQ(bernstein_operator(ones, 3), xpoly({1}));
    std::vector<Rational> id{Rational(0), make_rational(1, 3), make_rational(2, 3), Rational(1)};
    EXPECT_EQ(bernstein_operator(id, 3), xpoly({0, 1}));
    std::vector<Rational> lin{Rational(0), Rational(1)};
    EXPECT_EQ(bernstein_operator(lin, 1), xpoly({0, 1}));
}

TEST(BernsteinOperator, ReproducesLinearFunctions) {
    for (unsigned n = 1; n <= 6; ++n) {
        std::vector<Rational> c, x;
        for (unsigned k = 0; k <= n; ++k) {
            c.emplace_back(5);
            x.push_back(make_rational(k, n));
        }
        EXPECT_EQ(bernstein_operator(c, n), xpoly({5}));
        EXPECT_EQ(bernstein_operator(x, n), xpoly({0, 1}));
    }
}

TEST(BernsteinOperator, SquareGainsVarianceTerm) {
    // B_n(x^2) = x^2 + x(1-x)/n
    for (unsigned n = 1; n <= 6; ++n) {
        std::vector<Rational> s;
        for (unsigned k = 0; k <= n; ++k) s.push_back(pow(make_rational(k, n), 2));
        RatFunc inv_n(make_rational(1, n));
        XPoly expected({RatFunc(), inv_n, RatFunc(1) - inv_n});
        EXPECT_EQ(bernstein_operator(s, n), expected);
    }
}

TEST(BernsteinOperator, ArityErrors) {
    std::vector<Rational> three(3, Rational(1));
    EXPECT_THROW(bernstein_operator(three, 3), arity_error);
    EXPECT_THROW(bernstein_operator(std::vector<Rational>{Rational(1)}, 0), arity_error);
}
