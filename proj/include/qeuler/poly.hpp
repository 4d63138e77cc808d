#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qeuler/errors.hpp"

namespace qeuler {

// Dense univariate polynomial over a field C. Index i holds the coefficient
// of t^i. The zero polynomial is the empty sequence and the last stored
// coefficient is always nonzero.
//
// C must provide is_zero(), the field operations, and construction from int.
template <typename C>
class Poly {
public:
    using coeff_type = C;

    Poly() = default;
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(const C& constant) {  // NOLINT implicit: constants embed
        if (!constant.is_zero()) c_.push_back(constant);
    }
    Poly(int constant) : Poly(C(constant)) {}  // NOLINT implicit

    static Poly monomial(const C& coeff, std::size_t power) {
        if (coeff.is_zero()) return {};
        Poly p;
        p.c_.assign(power + 1, C(0));
        p.c_[power] = coeff;
        return p;
    }
    /// The generator t.
    static Poly var() { return monomial(C(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// Degree, or -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }

    const std::vector<C>& coeffs() const { return c_; }
    /// Coefficient of t^i; zero past the degree.
    C operator[](std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
    const C& leading() const { return c_.back(); }
    C constant_term() const { return (*this)[0]; }

    /// Index of the lowest nonzero coefficient; size() for zero.
    std::size_t low_order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return i;
        return c_.size();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    Poly scaled(const C& s) const {
        if (s.is_zero()) return {};
        Poly r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    /// Multiply by t^k.
    Poly shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.c_.assign(k, C(0));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    Poly monic() const {
        if (is_zero() || leading() == C(1)) return *this;
        return scaled(C(1) / leading());
    }

    /// Coefficients in reverse order (t^deg * p(1/t)).
    Poly reversed() const {
        std::vector<C> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    /// Euclidean division; throws on a zero divisor.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw zero_division_error("polynomial division by zero");
        if (degree() < d.degree()) return {Poly{}, *this};
        std::vector<C> rem = c_;
        std::vector<C> quo(c_.size() - d.c_.size() + 1, C(0));
        const C lead_inv = C(1) / d.leading();
        const std::size_t dn = d.c_.size();
        for (std::size_t i = quo.size(); i-- > 0;) {
            C& top = rem[i + dn - 1];
            if (top.is_zero()) continue;
            C f = top * lead_inv;
            for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= f * d.c_[j];
            quo[i] = std::move(f);
        }
        rem.resize(dn - 1);
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    /// Horner evaluation at a point of any ring that C embeds into.
    template <typename V>
    V eval(const V& at) const {
        V r = V(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * at + V(c_[i]);
        return r;
    }

    /// p(a*t + b), expanded.
    Poly compose_affine(const C& a, const C& b) const {
        const Poly lin({b, a});
        Poly r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + Poly(c_[i]);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<C> c_;
};

template <typename C>
Poly<C> pow(const Poly<C>& base, unsigned e) {
    Poly<C> r = Poly<C>(C(1));
    Poly<C> b = base;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

/// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
template <typename C>
Poly<C> gcd(Poly<C> a, Poly<C> b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) return a.monic();
    if (b.is_constant()) return Poly<C>(C(1));
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        Poly<C> r = a.divmod(b).second.monic();
        a = std::move(b);
        b = std::move(r);
        if (b.is_constant() && !b.is_zero()) return Poly<C>(C(1));
    }
    return a;
}

/// Render with the given variable name, highest power first, e.g. "2*q^2 - q + 1".
template <typename C, typename Fmt>
std::string to_string(const Poly<C>& p, const std::string& var, Fmt&& fmt_coeff) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        const C& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        std::string s = fmt_coeff(c);
        bool neg = !s.empty() && s[0] == '-';
        if (neg) s.erase(0, 1);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0) {
            out += s;
            continue;
        }
        if (s != "1") out += s + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace qeuler
