#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "qeuler/errors.hpp"
#include "qeuler/poly.hpp"
#include "qeuler/rational.hpp"

namespace qeuler {

/// Polynomial in q over Q.
using PolyQ = Poly<Rational>;

inline std::string to_string(const PolyQ& p, const std::string& var = "q") {
    return to_string(p, var, [](const Rational& c) { return c.to_string(); });
}

/// Element of Q(q) in canonical form: gcd(num, den) = 1, den monic, zero is 0/1.
/// Canonical form makes equality structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT implicit
    RatFunc(int c) : RatFunc(Rational(c)) {}                    // NOLINT implicit
    RatFunc(PolyQ p) : num_(std::move(p)), den_(Rational(1)) {}  // NOLINT implicit

    RatFunc(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw zero_division_error("rational function with zero denominator");
        normalize();
    }

    /// The indeterminate q.
    static RatFunc q() { return RatFunc(PolyQ::var()); }
    /// q^e for any integer e.
    static RatFunc q_pow(long e) {
        if (e >= 0) return RatFunc(PolyQ::monomial(Rational(1), static_cast<std::size_t>(e)));
        RatFunc r;
        r.num_ = PolyQ(Rational(1));
        r.den_ = PolyQ::monomial(Rational(1), static_cast<std::size_t>(-e));
        return r;
    }

    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    /// True when the value does not depend on q.
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant element; meaningful only when is_constant().
    Rational constant_value() const { return num_.constant_term(); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) {
            if (a.den_.is_constant()) return RatFunc::raw(a.num_ + b.num_, a.den_);
            return RatFunc(a.num_ + b.num_, a.den_);
        }
        // Reduced inputs: any common factor of the sum and b_den*a_den/g divides g.
        PolyQ g = gcd(a.den_, b.den_);
        if (g.is_constant()) {
            return RatFunc::reduced_with(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_,
                                         PolyQ(Rational(1)));
        }
        PolyQ ad = a.den_.divmod(g).first;
        PolyQ bd = b.den_.divmod(g).first;
        return RatFunc::reduced_with(a.num_ * bd + b.num_ * ad, ad * b.den_, g);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b.scaled(a.constant_value());
        if (b.is_constant()) return a.scaled(b.constant_value());
        PolyQ g1 = gcd(a.num_, b.den_);
        PolyQ g2 = gcd(b.num_, a.den_);
        PolyQ an = g1.is_constant() ? a.num_ : a.num_.divmod(g1).first;
        PolyQ bd = g1.is_constant() ? b.den_ : b.den_.divmod(g1).first;
        PolyQ bn = g2.is_constant() ? b.num_ : b.num_.divmod(g2).first;
        PolyQ ad = g2.is_constant() ? a.den_ : a.den_.divmod(g2).first;
        return RatFunc::monic_den(an * bn, ad * bd);
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const {
        if (is_zero()) throw zero_division_error("rational function division by zero");
        return RatFunc::monic_den(den_, num_);
    }

    RatFunc scaled(const Rational& s) const {
        if (s.is_zero()) return {};
        RatFunc r = *this;
        r.num_ = r.num_.scaled(s);
        return r;
    }

    /// f(1/q): reverse both coefficient sequences, restore the degree
    /// difference as a power of q, renormalize.
    RatFunc invert_q() const {
        if (is_constant()) return *this;
        const long shift = den_.degree() - num_.degree();
        PolyQ n = num_.reversed();
        PolyQ d = den_.reversed();
        if (shift > 0) n = n.shifted(static_cast<std::size_t>(shift));
        if (shift < 0) d = d.shifted(static_cast<std::size_t>(-shift));
        return RatFunc(std::move(n), std::move(d));
    }

    /// Exact value at q = q0; throws pole_error at a root of the denominator.
    Rational eval(const Rational& q0) const {
        Rational d = den_.eval(q0);
        if (d.is_zero()) throw pole_error("rational function has a pole at q = " + q0.to_string());
        return num_.eval(q0) / d;
    }

    std::string to_string() const {
        if (den_.is_constant()) return qeuler::to_string(num_);
        return "(" + qeuler::to_string(num_) + ")/(" + qeuler::to_string(den_) + ")";
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) {
        return os << f.to_string();
    }

private:
    struct raw_tag {};
    RatFunc(raw_tag, PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {}

    // Already coprime and monic.
    static RatFunc raw(PolyQ num, PolyQ den) {
        if (num.is_zero()) return {};
        return RatFunc(raw_tag{}, std::move(num), std::move(den));
    }

    // Already coprime; only the leading coefficient of den needs fixing.
    static RatFunc monic_den(PolyQ num, PolyQ den) {
        if (num.is_zero()) return {};
        Rational lc = den.leading();
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
        return RatFunc(raw_tag{}, std::move(num), std::move(den));
    }

    // Any common factor of num and den divides `hint`.
    static RatFunc reduced_with(PolyQ num, PolyQ den, const PolyQ& hint) {
        if (num.is_zero()) return {};
        if (!hint.is_constant()) {
            PolyQ g = gcd(num, hint);
            if (!g.is_constant()) {
                num = num.divmod(g).first;
                den = den.divmod(g).first;
            }
        }
        return monic_den(std::move(num), std::move(den));
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = PolyQ(Rational(1));
            return;
        }
        PolyQ g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        Rational lc = den_.leading();
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    PolyQ num_;
    PolyQ den_;
};

/// Canonical num/den in Q(q); throws on a zero denominator.
inline RatFunc ratfun_normalize(PolyQ num, PolyQ den) { return RatFunc(std::move(num), std::move(den)); }

/// Polynomial in x with coefficients in Q(q).
using XPoly = Poly<RatFunc>;

inline std::string to_string(const XPoly& p, const std::string& var = "x") {
    return to_string(p, var, [](const RatFunc& c) {
        if (c.den().is_constant() && c.num().size() <= 1) return c.to_string();
        return "(" + c.to_string() + ")";
    });
}

/// P(a*x + b), expanded and canonical.
inline XPoly xpoly_compose_affine(const XPoly& p, const RatFunc& a, const RatFunc& b) {
    return p.compose_affine(a, b);
}

/// Apply q -> 1/q to every coefficient.
inline XPoly invert_q(const XPoly& p) {
    std::vector<RatFunc> c;
    c.reserve(p.size());
    for (const auto& x : p.coeffs()) c.push_back(x.invert_q());
    return XPoly(std::move(c));
}

/// Substitute q = q0 in every coefficient.
inline Poly<Rational> eval_q(const XPoly& p, const Rational& q0) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& x : p.coeffs()) c.push_back(x.eval(q0));
    return Poly<Rational>(std::move(c));
}

}  // namespace qeuler
