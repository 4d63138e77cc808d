#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace qeuler;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qeuler");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(CliTable, JsonRows) {
    auto r = run_cli({"table", "--n-max", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_EQ(j.at("rows").size(), 3u);
    const RatFunc e0 = ratfunc_from_json(j["rows"][0]["E_q"]);
    EXPECT_EQ(e0, RatFunc(2) / (RatFunc::q() + RatFunc(1)));
    for (std::size_t n = 0; n < 3; ++n) {
        EXPECT_EQ(ratfunc_from_json(j["rows"][n]["E_q"]), euler_number_q(n));
        EXPECT_EQ(rational_from_json(j["rows"][n]["E_at_q1"]), classical_euler_number(n));
        EXPECT_EQ(j["rows"][n]["n"], n);
    }
}

TEST(CliTable, CsvSingleRow) {
    auto r = run_cli({"table", "--n-max", "0", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n,E_nq,E_n_q1,H_n_minus_inv_q\n0,\"(2)/(q + 1)\",1,\"1\"\n");
}

TEST(CliTable, LatexFragment) {
    auto r = run_cli({"table", "--n-max", "10", "--format", "latex"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("\\begin{tabular}", 0), 0u);
    EXPECT_NE(r.out.find("\\end{tabular}"), std::string::npos);
    EXPECT_EQ(r.out.find("\\documentclass"), std::string::npos);
    // q = 1 column holds the classical values
    EXPECT_NE(r.out.find("1 & $\\frac{-2q}{q^{2} + 2q + 1}$ & $-\\frac{1}{2}$"), std::string::npos);
    EXPECT_NE(r.out.find("$-\\frac{31}{2}$"), std::string::npos);
    EXPECT_NE(r.out.find("$\\frac{17}{8}$"), std::string::npos);
}

TEST(CliTable, UnwritableOutput) {
    auto r = run_cli({"table", "--out", "/nonexistent-dir/x/table.json"});
    EXPECT_EQ(r.code, 3);
}

TEST(CliTable, WritesFile) {
    auto path = std::filesystem::temp_directory_path() / "qeuler_table_test.csv";
    auto r = run_cli({"table", "--n-max", "1", "--format", "csv", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_GT(std::filesystem::file_size(path), 0u);
    std::filesystem::remove(path);
}

TEST(CliVerify, AllPasses) {
    auto r = run_cli({"verify", "--all", "--n-max", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("failed"), 0);
    EXPECT_GT(j.at("cases").get<int>(), 0);
    EXPECT_EQ(j.at("consistency").at("failed"), 0);
}

TEST(CliVerify, SingleValueAtTwoCase) {
    auto r = run_cli({"verify", "--id", "thm2", "--n-max", "1"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("cases"), 1);
    EXPECT_EQ(j.at("failed"), 0);
}

TEST(CliVerify, UnknownIdentity) {
    auto r = run_cli({"verify", "--id", "bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("thm2_value_at_two"), std::string::npos);
    EXPECT_NE(r.err.find("cor9"), std::string::npos);
}

TEST(CliVerify, CsvAndLatex) {
    auto c = run_cli({"verify", "--id", "eq15", "--n-max", "3", "--format", "csv"});
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("eq15_symmetry,10,10,0,0"), std::string::npos);
    auto l = run_cli({"verify", "--id", "eq15", "--n-max", "3", "--format", "latex"});
    ASSERT_EQ(l.code, 0);
    EXPECT_NE(l.out.find("\\texttt{eq15\\_symmetry} & 10 & 10 & 0 & 0"), std::string::npos);
}

TEST(CliPadic, DefaultRunSucceeds) {
    auto r = run_cli({"padic", "--p", "3", "--precision", "3", "--depth", "5", "--n-max", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_TRUE(j.at("ok").get<bool>());
    EXPECT_EQ(j.at("reports").size(), 9u);  // n in 0..2, x0 in 0..2
    EXPECT_EQ(j["reports"][0]["target"], "22");
}

TEST(CliPadic, UsageErrors) {
    EXPECT_EQ(run_cli({"padic", "--p", "4"}).code, 2);
    EXPECT_EQ(run_cli({"padic", "--p", "2"}).code, 2);
    EXPECT_EQ(run_cli({"padic", "--p", "9"}).code, 2);
    EXPECT_EQ(run_cli({"padic", "--p", "3", "--q0", "2"}).code, 2);
    EXPECT_EQ(run_cli({"padic", "--p", "3", "--depth", "0"}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
}

TEST(CliPadic, CsvRows) {
    auto r = run_cli({"padic", "--p", "5", "--precision", "2", "--depth", "3", "--n-max", "1", "--x0", "2",
                      "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    EXPECT_EQ(lines, 1 + 2 * 3);
}

TEST(CliDeterminism, IdenticalFlagsGiveIdenticalOutput) {
    auto a = run_cli({"verify", "--id", "thm6", "--m-max", "3"});
    auto b = run_cli({"verify", "--id", "thm6", "--m-max", "3"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, 0);
}

// Exit codes of the installed binary, including the process boundary.
TEST(CliBinary, ExitCodes) {
    const char* bin = std::getenv("QEULER_CLI");
    if (!bin) GTEST_SKIP() << "QEULER_CLI not set";
    auto status = [&](const std::string& args) {
        int rc = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    EXPECT_EQ(status("table --n-max 2"), 0);
    EXPECT_EQ(status("verify --id bogus"), 2);
    EXPECT_EQ(status("padic --p 4"), 2);
    EXPECT_EQ(status("table --out /nonexistent-dir/x.json"), 3);
}
