#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qeuler/identities.hpp"
#include "qeuler/padic.hpp"
#include "qeuler/tables.hpp"

namespace qeuler::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2, io_error = 3 };

struct CliConfig {
    std::string subcommand;
    long n_max = -1;  // -1: subcommand default
    long m_max = -1;
    long k_max = -1;
    long s_max = -1;
    std::vector<std::string> ids;
    bool all = false;
    long long p = 3;
    long precision = 3;
    long depth = 6;
    std::optional<long long> q0;
    std::optional<long long> x0;
    std::string format = "json";
    std::string out;
};

inline std::optional<TableFormat> parse_format(const std::string& s) {
    if (s == "json") return TableFormat::json;
    if (s == "csv") return TableFormat::csv;
    if (s == "latex") return TableFormat::latex;
    return std::nullopt;
}

/// Sends the rendered text to --out or to `out`.
inline int emit(const CliConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
    if (cfg.out.empty() || cfg.out == "-") {
        out << text;
        return ok;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open output file " << cfg.out << '\n';
        return io_error;
    }
    f << text;
    f.flush();
    if (!f) {
        err << "error: failed writing " << cfg.out << '\n';
        return io_error;
    }
    return ok;
}

inline int cmd_table(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto fmt = parse_format(cfg.format);
    if (!fmt) {
        err << "error: unknown format " << cfg.format << '\n';
        return usage_error;
    }
    const long n_max = cfg.n_max < 0 ? 10 : cfg.n_max;
    std::ostringstream os;
    write_euler_table(os, euler_table(static_cast<std::size_t>(n_max)), *fmt);
    return emit(cfg, os.str(), out, err);
}

inline std::string registry_listing() {
    std::string s;
    for (const auto& e : identity_registry) {
        s += "  " + std::string(e.name);
        if (e.alias != e.name) s += " (" + std::string(e.alias) + ")";
        s += "  " + std::string(e.params) + "  " + std::string(e.statement) + "\n";
    }
    return s;
}

/// Suite ranges from flags. Unset flags keep the acceptance defaults.
inline SuiteRanges suite_ranges(const CliConfig& cfg, const std::set<IdentityId>& ids) {
    SuiteRanges r;
    r.ids = ids;
    if (cfg.n_max >= 0)
        r.eq9_n_max = r.thm1_n_max = r.thm23_n_max = r.bern_n_max = r.eq15_n_max = cfg.n_max;
    if (cfg.m_max >= 0) r.thm6_n_max = r.eq2_m_max = cfg.m_max;
    if (cfg.k_max >= 0) r.k_max = cfg.k_max;
    if (cfg.s_max >= 0) r.thm8_s_max = cfg.s_max;
    return r;
}

inline void write_suite(std::ostream& os, const SuiteReport& rep, TableFormat fmt) {
    switch (fmt) {
        case TableFormat::json:
            os << rep.to_json().dump(2) << '\n';
            break;
        case TableFormat::csv:
            os << "id,cases,passed,failed,skipped\n";
            for (const auto& t : rep.by_identity)
                os << identity_name(t.id) << ',' << t.cases << ',' << t.passed << ',' << t.failed << ','
                   << t.skipped << '\n';
            os << "consistency," << rep.consistency.size() << ','
               << rep.consistency.size() - rep.consistency_failures() << ',' << rep.consistency_failures()
               << ",0\n";
            break;
        case TableFormat::latex:
            os << "\\begin{tabular}{l|r|r|r|r}\n";
            os << "identity & cases & passed & failed & skipped \\\\\n\\hline\n";
            for (const auto& t : rep.by_identity) {
                std::string name = identity_name(t.id);
                std::string escaped;
                for (char c : name) escaped += (c == '_') ? std::string("\\_") : std::string(1, c);
                os << "\\texttt{" << escaped << "} & " << t.cases << " & " << t.passed << " & " << t.failed
                   << " & " << t.skipped << " \\\\\n";
            }
            os << "\\end{tabular}\n";
            break;
    }
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto fmt = parse_format(cfg.format);
    if (!fmt) {
        err << "error: unknown format " << cfg.format << '\n';
        return usage_error;
    }
    std::set<IdentityId> ids;
    for (const auto& s : cfg.ids) {
        auto id = parse_identity(s);
        if (!id) {
            err << "error: unknown identity '" << s << "'. Registry:\n" << registry_listing();
            return usage_error;
        }
        ids.insert(*id);
    }
    if (cfg.all || cfg.ids.empty())
        for (const auto& e : identity_registry) ids.insert(e.id);

    const SuiteReport rep = run_suite(suite_ranges(cfg, ids));
    std::ostringstream os;
    write_suite(os, rep, *fmt);
    const int rc = emit(cfg, os.str(), out, err);
    if (rc != ok) return rc;
    return rep.ok() ? ok : check_failed;
}

struct PadicRun {
    std::vector<ConvergenceReport> reports;
    std::vector<ShiftCheckResult> shifts;
    std::vector<std::string> violations;
};

/// Every report must be non-decreasing, satisfy v_N >= min(M, N - c), and
/// reach the cap by depth M + c when the run is deep enough.
inline std::vector<std::string> convergence_violations(const ConvergenceReport& r) {
    std::vector<std::string> v;
    const std::string tag = "n=" + std::to_string(r.n) + " x0=" + std::to_string(r.x0);
    if (!r.non_decreasing()) v.push_back(tag + ": valuations decrease");
    for (const auto& row : r.rows) {
        const long floor_ = std::min<long>(r.precision, static_cast<long>(row.depth) - witt_depth_slack);
        if (static_cast<long>(row.valuation) < floor_)
            v.push_back(tag + ": v_" + std::to_string(row.depth) + " = " + std::to_string(row.valuation) +
                        " below bound " + std::to_string(floor_));
    }
    const unsigned bound = r.precision + witt_depth_slack;
    if (!r.rows.empty() && r.rows.back().depth >= bound) {
        auto hit = r.depth_reaching_cap();
        if (!hit || *hit > bound) v.push_back(tag + ": cap not reached by depth " + std::to_string(bound));
    }
    return v;
}

inline PadicRun padic_run(const CliConfig& cfg) {
    const auto p = static_cast<std::uint64_t>(cfg.p);
    const long long q0 = cfg.q0.value_or(cfg.p + 1);
    const unsigned M = static_cast<unsigned>(cfg.precision);
    const unsigned depth = static_cast<unsigned>(cfg.depth);
    const long n_max = cfg.n_max < 0 ? 4 : cfg.n_max;
    const long m_max = cfg.m_max < 0 ? 2 : cfg.m_max;
    std::vector<std::uint64_t> xs;
    if (cfg.x0)
        xs.push_back(static_cast<std::uint64_t>(*cfg.x0));
    else
        xs = {0, 1, 2};

    PadicRun run;
    for (long n = 0; n <= n_max; ++n)
        for (auto x : xs) {
            run.reports.push_back(witt_convergence_check(static_cast<unsigned>(n), x, p, q0, M, depth));
            for (auto& s : convergence_violations(run.reports.back())) run.violations.push_back(s);
        }
    // The shift checks use the largest depth that stays cheap; the bound only
    // needs N >= M + c to demand exact agreement mod p^M.
    const unsigned shift_depth = std::min<unsigned>(depth, M + shift_depth_slack);
    for (long m = 0; m <= m_max; ++m)
        for (unsigned s = 1; s <= 3; ++s) {
            auto res = shift_identity_check_numeric(static_cast<unsigned>(m), s, q0, p, shift_depth, M);
            const long floor_ = std::min<long>(M, static_cast<long>(shift_depth) - shift_depth_slack);
            if (static_cast<long>(res.valuation) < floor_)
                run.violations.push_back("shift m=" + std::to_string(m) + " k=" + std::to_string(s) +
                                         ": valuation " + std::to_string(res.valuation) + " below bound " +
                                         std::to_string(floor_));
            run.shifts.push_back(std::move(res));
        }
    return run;
}

inline nlohmann::json padic_json(const PadicRun& run) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : run.reports) reps.push_back(r.to_json());
    nlohmann::json shifts = nlohmann::json::array();
    for (const auto& s : run.shifts)
        shifts.push_back({{"m", s.m},
                          {"shift", s.shift},
                          {"N", s.depth},
                          {"lhs", s.lhs.residue().str()},
                          {"rhs", s.rhs.residue().str()},
                          {"val", s.valuation}});
    return {{"ok", run.violations.empty()},
            {"slack", witt_depth_slack},
            {"reports", reps},
            {"shift_checks", shifts},
            {"violations", run.violations}};
}

inline int cmd_padic(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto fmt = parse_format(cfg.format);
    if (!fmt) {
        err << "error: unknown format " << cfg.format << '\n';
        return usage_error;
    }
    if (cfg.p < 3 || !is_prime(static_cast<std::uint64_t>(cfg.p))) {
        err << "error: --p must be an odd prime, got " << cfg.p << '\n';
        return usage_error;
    }
    if (cfg.precision < 1 || cfg.depth < 1) {
        err << "error: --precision and --depth must be at least 1\n";
        return usage_error;
    }
    if (cfg.x0 && *cfg.x0 < 0) {
        err << "error: --x0 must be non-negative\n";
        return usage_error;
    }
    const long long q0 = cfg.q0.value_or(cfg.p + 1);
    try {
        require_q_near_one(q0, static_cast<std::uint64_t>(cfg.p));
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    const PadicRun run = padic_run(cfg);
    std::ostringstream os;
    switch (*fmt) {
        case TableFormat::json:
            os << padic_json(run).dump(2) << '\n';
            break;
        case TableFormat::csv:
            os << "p,q0,M,n,x0,target,N,S,val\n";
            for (const auto& r : run.reports)
                for (const auto& row : r.rows)
                    os << r.p << ',' << r.q0 << ',' << r.precision << ',' << r.n << ',' << r.x0 << ','
                       << r.target.str() << ',' << row.depth << ',' << row.partial.str() << ',' << row.valuation
                       << '\n';
            break;
        case TableFormat::latex:
            os << "\\begin{tabular}{r|r|r|r|l}\n";
            os << "$n$ & $x_0$ & target & cap depth & $v_N$ \\\\\n\\hline\n";
            for (const auto& r : run.reports) {
                os << r.n << " & " << r.x0 << " & " << r.target.str() << " & ";
                auto hit = r.depth_reaching_cap();
                os << (hit ? std::to_string(*hit) : std::string("--")) << " & ";
                for (std::size_t i = 0; i < r.rows.size(); ++i) os << (i ? ", " : "") << r.rows[i].valuation;
                os << " \\\\\n";
            }
            os << "\\end{tabular}\n";
            break;
    }
    for (const auto& v : run.violations) err << "violation: " << v << '\n';
    const int rc = emit(cfg, os.str(), out, err);
    if (rc != ok) return rc;
    return run.violations.empty() ? ok : check_failed;
}

/// Parses argv and dispatches. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact q-Euler numbers, Bernstein identities and fermionic p-adic sums"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json, csv or latex")->check(CLI::IsMember({"json", "csv", "latex"}));
        sub->add_option("--out", cfg.out, "output file (default: stdout)");
    };

    auto* table = app.add_subcommand("table", "E_{n,q}, E_n at q = 1 and H_n(-1/q) for n <= n-max");
    table->add_option("--n-max", cfg.n_max, "largest n (default 10)")->check(CLI::NonNegativeNumber);
    add_common(table);

    auto* verify = app.add_subcommand("verify", "run the identity suite");
    verify->add_option("--id", cfg.ids, "identity to run (repeatable; default all)");
    verify->add_flag("--all", cfg.all, "run every registry identity");
    verify->add_option("--n-max", cfg.n_max, "bound on n for single-index and (n,k) identities")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--m-max", cfg.m_max, "bound on n, m for the two-factor identities and m for the shift")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--k-max", cfg.k_max, "cap on k")->check(CLI::NonNegativeNumber);
    verify->add_option("--s-max", cfg.s_max, "largest number of Bernstein factors")->check(CLI::NonNegativeNumber);
    add_common(verify);

    auto* padic = app.add_subcommand("padic", "truncated fermionic sums against the Witt formula");
    padic->add_option("--p", cfg.p, "odd prime (default 3)");
    padic->add_option("--precision", cfg.precision, "M: work modulo p^M (default 3)");
    padic->add_option("--depth", cfg.depth, "N_max: deepest truncation p^N (default 6)");
    padic->add_option("--n-max", cfg.n_max, "largest power n (default 4)")->check(CLI::NonNegativeNumber);
    padic->add_option("--m-max", cfg.m_max, "largest power m in the shift checks (default 2)")
        ->check(CLI::NonNegativeNumber);
    padic->add_option("--q0", cfg.q0, "integer q0 with p | q0 - 1 (default 1 + p)");
    padic->add_option("--x0", cfg.x0, "single evaluation point (default 0, 1, 2)");
    add_common(padic);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (table->parsed()) return cmd_table(cfg, out, err);
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        if (padic->parsed()) return cmd_padic(cfg, out, err);
    } catch (const qeuler::error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

}  // namespace qeuler::cli
