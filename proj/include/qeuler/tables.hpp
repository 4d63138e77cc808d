#pragma once

// Tabular export of E_{n,q}, E_n = E_{n,1} and H_n(-1/q) in JSON, CSV and
// LaTeX (tabular environment only, no preamble).

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qeuler/euler.hpp"
#include "qeuler/serialize.hpp"

namespace qeuler {

enum class TableFormat { json, csv, latex };

inline std::string latex(const Rational& r) {
    if (r.is_integer()) return r.num().str();
    const bool neg = r.sign() < 0;
    BigInt n = neg ? BigInt(-r.num()) : r.num();
    return std::string(neg ? "-" : "") + "\\frac{" + n.str() + "}{" + r.den().str() + "}";
}

inline std::string latex(const PolyQ& p, const std::string& var = "q") {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Rational& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        const Rational a = neg ? -c : c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (i == 0 || !a.is_one()) out += latex(a);
        if (i >= 1) out += var;
        if (i > 1) out += "^{" + std::to_string(i) + "}";
    }
    return out;
}

inline std::string latex(const RatFunc& f) {
    if (f.den().is_constant()) return latex(f.num());
    return "\\frac{" + latex(f.num()) + "}{" + latex(f.den()) + "}";
}

struct EulerTableRow {
    std::size_t n;
    RatFunc e_q;         // E_{n,q}
    Rational e_at_one;   // E_{n,q} at q = 1
    RatFunc frobenius;   // H_n(-1/q)
};

inline std::vector<EulerTableRow> euler_table(std::size_t n_max) {
    std::vector<EulerTableRow> rows;
    const RatFunc u = -RatFunc::q_pow(-1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        RatFunc e = euler_number_q(n);
        rows.push_back({n, e, e.eval(Rational(1)), frobenius_euler(n, u)});
    }
    return rows;
}

inline nlohmann::json euler_table_json(const std::vector<EulerTableRow>& rows) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows)
        a.push_back({{"n", r.n},
                     {"E_q", to_json(r.e_q)},
                     {"E_q_text", r.e_q.to_string()},
                     {"E_at_q1", to_json(r.e_at_one)},
                     {"H_minus_inv_q", to_json(r.frobenius)}});
    return {{"rows", a}};
}

inline void write_euler_table(std::ostream& os, const std::vector<EulerTableRow>& rows, TableFormat fmt) {
    switch (fmt) {
        case TableFormat::json:
            os << euler_table_json(rows).dump(2) << '\n';
            break;
        case TableFormat::csv:
            os << "n,E_nq,E_n_q1,H_n_minus_inv_q\n";
            for (const auto& r : rows)
                os << r.n << ",\"" << r.e_q.to_string() << "\"," << r.e_at_one.to_string() << ",\""
                   << r.frobenius.to_string() << "\"\n";
            break;
        case TableFormat::latex:
            os << "\\begin{tabular}{r|c|c|c}\n";
            os << "$n$ & $E_{n,q}$ & $E_n$ & $H_n(-q^{-1})$ \\\\\n\\hline\n";
            for (const auto& r : rows)
                os << r.n << " & $" << latex(r.e_q) << "$ & $" << latex(r.e_at_one) << "$ & $"
                   << latex(r.frobenius) << "$ \\\\\n";
            os << "\\end{tabular}\n";
            break;
    }
}

}  // namespace qeuler
