#pragma once

// JSON forms of the exact types. All integers travel as decimal strings.
//   Rational: {"num": "-3", "den": "4"}
//   PolyQ:    [Rational, ...]   (index i = coefficient of q^i, zero is [])
//   RatFunc:  {"num": PolyQ, "den": PolyQ}
//   XPoly:    [RatFunc, ...]    (index i = coefficient of x^i)

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qeuler/ratfunc.hpp"

namespace qeuler {

using json = nlohmann::json;

inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer string");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad integer string: " + s);
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer string: " + s);
    return BigInt(s);
}

inline json to_json(const Rational& r) { return json{{"num", r.num().str()}, {"den", r.den().str()}}; }

inline json to_json(const PolyQ& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

inline json to_json(const RatFunc& f) { return json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline json to_json(const XPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

inline Rational rational_from_json(const json& j) {
    return make_rational(parse_bigint(j.at("num").get<std::string>()),
                         parse_bigint(j.at("den").get<std::string>()));
}

inline PolyQ polyq_from_json(const json& j) {
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(rational_from_json(e));
    return PolyQ(std::move(c));
}

inline RatFunc ratfunc_from_json(const json& j) {
    return ratfun_normalize(polyq_from_json(j.at("num")), polyq_from_json(j.at("den")));
}

inline XPoly xpoly_from_json(const json& j) {
    std::vector<RatFunc> c;
    for (const auto& e : j) c.push_back(ratfunc_from_json(e));
    return XPoly(std::move(c));
}

}  // namespace qeuler
