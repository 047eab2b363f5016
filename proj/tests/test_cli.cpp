// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace stackel::cli;
using nlohmann::json;

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "stackel");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args, int expected_code = kExitPass) {
    const Outcome o = invoke(std::move(args));
    EXPECT_EQ(o.code, expected_code) << o.err;
    return json::parse(o.out);
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

TEST(Classify, DiagonalMatrix) {
    const json r = invoke_json({"classify", "--c", "[[2,0,0],[0,1,0],[0,0,0]]"});
    EXPECT_EQ(r["variant"], "A");
    EXPECT_EQ(r["epsilon"], -1);
    EXPECT_NEAR(r["p"].get<double>(), std::sqrt(3.0), 1e-14);
    EXPECT_EQ(r["verdict"], "pass");
    EXPECT_TRUE(r["lambda_cosmo"].is_null());
}

TEST(Classify, LambdaReportedWhenXiGiven) {
    const json r = invoke_json({"classify", "--c", "[[2,0,0],[0,1,0],[0,0,0]]", "--xi", "-1"});
    EXPECT_DOUBLE_EQ(r["lambda_cosmo"].get<double>(), -0.5);
    EXPECT_EQ(invoke({"classify", "--c", "[[2,0,0],[0,1,0],[0,0,0]]", "--xi", "2"}).code,
              kExitConfig);
}

TEST(Classify, SingleJordanBlockIsNumericalFailure) {
    const Outcome o = invoke({"classify", "--c", "[[1,1,0],[0,1,1],[0,0,1]]"});
    EXPECT_EQ(o.code, kExitFail);
    EXPECT_NE(o.err.find("canonical"), std::string::npos);
}

TEST(Verify, IsotropicFamilyOnShortDomain) {
    const json r = invoke_json({"verify", "--family", "3", "--lambda", "0", "--tau", "0.2:2",
                                "--points", "50"});
    EXPECT_EQ(r["verdict"], "pass");
    EXPECT_LT(r["residual_max"].get<double>(), 1e-7);
    EXPECT_EQ(r["residuals"]["tau"].size(), 50u);
    for (const char* field : {"variant", "epsilon", "p", "lambda_cosmo", "residual_max",
                              "ricci_scalar_dev", "verdict"}) {
        EXPECT_TRUE(r.contains(field)) << field;
    }
}

TEST(Verify, UserMatrixAndFiniteDifferencePath) {
    const json a = invoke_json({"verify", "--c", "[[2,1,0],[0,2,0],[0,0,3]]"});
    EXPECT_EQ(a["variant"], "C");
    EXPECT_EQ(a["verdict"], "pass");
    const json b = invoke_json({"verify", "--family", "4", "--fd", "--points", "20"});
    EXPECT_EQ(b["verdict"], "pass");
    EXPECT_EQ(b["config"]["path"], "finite_difference");
}

TEST(Verify, TooTightToleranceFails) {
    const Outcome o = invoke({"verify", "--family", "1", "--tol", "1e-30"});
    EXPECT_EQ(o.code, kExitFail);
    EXPECT_EQ(json::parse(o.out)["verdict"], "fail");
}

TEST(Solve, ReportsSubsystemChecks) {
    const json r = invoke_json({"solve", "--c", "[[0.5,0.2,0],[0.2,1,0],[0,0,-0.3]]"});
    std::vector<std::string> names;
    for (const auto& c : r["checks"]) names.push_back(c["name"]);
    EXPECT_EQ(names, (std::vector<std::string>{"eta_system", "phi_r1", "phi_r2", "first_integral",
                                               "kappa_consistency"}));
    EXPECT_EQ(r["verdict"], "pass");
}

TEST(Catalog, ListsAllFamilies) {
    const json r = invoke_json({"catalog"});
    ASSERT_EQ(r["families"].size(), 10u);
    for (const auto& f : r["families"]) {
        EXPECT_FALSE(f["params"].empty());
        EXPECT_FALSE(f["constraint"].get<std::string>().empty());
    }
}

TEST(Sweep, DiagonalFamilyGrid) {
    const Outcome o = invoke({"sweep", "--family", "1", "--params", "a1=0.5|1|2,a2=0|1",
                              "--lambda", "0", "--format", "csv"});
    EXPECT_EQ(o.code, kExitPass) << o.out;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 8u);
    EXPECT_EQ(l[0], "index,a1,a2,epsilon,p,lambda_cosmo,residual_max,ricci_scalar_dev,verdict,error");
    for (std::size_t i = 1; i <= 6; ++i) EXPECT_NE(l[i].find(",pass,"), std::string::npos) << l[i];
    EXPECT_EQ(l[7].rfind("worst,", 0), 0u);
}

TEST(Sweep, RotationFamilyReportsInvariants) {
    const json r = invoke_json({"sweep", "--family", "4", "--params", "a=pi/6|pi/4|pi/3"});
    ASSERT_EQ(r["rows"].size(), 3u);
    double c = 0.0;
    for (const auto& s : stackel::family_spec(4).slots) {
        if (s.name == "c") c = s.default_value;
    }
    for (const auto& row : r["rows"]) {
        const double a = row["params"]["a"];
        EXPECT_EQ(row["epsilon"], 1);
        EXPECT_NEAR(row["p"].get<double>(), std::sqrt(3.0 * std::sin(a) * std::sin(a) - c * c),
                    1e-12);
        EXPECT_EQ(row["verdict"], "pass");
    }
}

TEST(Sweep, EmptyRangeGivesHeaderOnly) {
    const Outcome o = invoke({"sweep", "--family", "1", "--params", "a1=0:1:0", "--format", "csv"});
    EXPECT_EQ(o.code, kExitPass);
    EXPECT_EQ(lines(o.out).size(), 1u);
}

TEST(Sweep, PerSampleErrorsStayInRow) {
    const json r = invoke_json({"sweep", "--family", "4", "--params", "c=0.5|3"}, kExitFail);
    ASSERT_EQ(r["rows"].size(), 2u);
    EXPECT_EQ(r["rows"][0]["verdict"], "pass");
    EXPECT_EQ(r["rows"][1]["verdict"], "error");
    EXPECT_FALSE(r["rows"][1]["error"].get<std::string>().empty());
}

TEST(Sweep, SampleLimit) {
    EXPECT_EQ(invoke({"sweep", "--family", "1", "--params", "a1=0:1:101,a2=0:1:100"}).code,
              kExitConfig);
}

TEST(Discrepancies, PrintsLedger) {
    const json r = invoke_json({"discrepancies"});
    EXPECT_GE(r["discrepancies"].size(), 4u);
}

TEST(ExitCodes, ConfigErrorsNameTheField) {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"classify"}, "[c]"},
        {{"bogus"}, "[command]"},
        {{"classify", "--c", "[[1,0],[0,1]]"}, "[c]"},
        {{"verify", "--family", "3", "--points", "5"}, "[points]"},
        {{"verify", "--family", "12"}, "[family]"},
        {{"verify", "--family", "1", "--c", "[[1,0,0],[0,1,0],[0,0,1]]"}, "[c]"},
        {{"verify", "--family", "1", "--tau", "2:1"}, "[tau]"},
        {{"verify", "--family", "1", "--signs", "1,1"}, "[signs]"},
        {{"verify", "--family", "1", "--format", "csv"}, "[format]"},
        {{"verify", "--family", "1", "--params", "a1=1|2"}, "[params]"},
        {{"discrepancies", "--tau", "0:1"}, "[tau]"},
    };
    for (const auto& [args, tag] : cases) {
        const Outcome o = invoke(args);
        EXPECT_EQ(o.code, kExitConfig) << args.front() << ' ' << o.err;
        EXPECT_NE(o.err.find(tag), std::string::npos) << o.err;
    }
}

TEST(ExitCodes, MathInputErrorsCarryModule) {
    const Outcome constraint = invoke({"verify", "--family", "4", "--params", "c=3"});
    EXPECT_EQ(constraint.code, kExitConfig);
    EXPECT_NE(constraint.err.find("[assembly]"), std::string::npos);
    const Outcome signature = invoke({"verify", "--family", "1", "--signs", "-1,-1,1"});
    EXPECT_EQ(signature.code, kExitConfig);
    EXPECT_NE(signature.err.find("[assembly]"), std::string::npos);
}

TEST(ExitCodes, HelpIsSuccess) {
    const Outcome o = invoke({"--help"});
    EXPECT_EQ(o.code, kExitPass);
    EXPECT_NE(o.out.find("--family"), std::string::npos);
}

TEST(Parsing, Values) {
    EXPECT_NEAR(parse_value("pi/3", "x"), std::numbers::pi / 3, 1e-16);
    EXPECT_NEAR(parse_value("2pi/3", "x"), 2 * std::numbers::pi / 3, 1e-15);
    EXPECT_NEAR(parse_value("-pi", "x"), -std::numbers::pi, 1e-16);
    EXPECT_EQ(parse_value("1e-3", "x"), 1e-3);
    EXPECT_THROW((void)parse_value("abc", "x"), ConfigError);
    EXPECT_THROW((void)parse_value("1.5x", "x"), ConfigError);
    EXPECT_THROW((void)parse_value("inf", "x"), ConfigError);
}

TEST(Parsing, ParamsListsAndRanges) {
    const auto p = parse_params("a1=0:1:3,a2=pi/6|pi/3");
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].first, "a1");
    EXPECT_EQ(p[0].second, (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(p[1].second.size(), 2u);
    EXPECT_THROW((void)parse_params("a1"), ConfigError);
    EXPECT_THROW((void)parse_params("a1=1,a1=2"), ConfigError);
    EXPECT_THROW((void)parse_params("a1=0:1:2.5"), ConfigError);
}

TEST(Parsing, MatrixTauSigns) {
    const auto m = parse_matrix("[[1,2,3],[4,5,6],[7,8,9]]");
    EXPECT_EQ(m(1, 2), 6.0);
    EXPECT_THROW((void)parse_matrix("[[1,2,3],[4,5,6]]"), ConfigError);
    EXPECT_THROW((void)parse_matrix("[[1,2,\"x\"],[4,5,6],[7,8,9]]"), ConfigError);
    EXPECT_EQ(parse_tau("0.2:pi"), (std::array<double, 2>{0.2, std::numbers::pi}));
    const auto s = parse_signs("-1,1,1");
    EXPECT_EQ(s.e1, -1);
    EXPECT_THROW((void)parse_signs("1,0,1"), ConfigError);
}

TEST(Report, JsonRoundTrip) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"verify", "--family", "5", "--points", "12"},
          std::vector<std::string>{"classify", "--c", "[[1,0,0],[0,0,-1],[0,1,0]]"},
          std::vector<std::string>{"sweep", "--family", "8", "--params", "b=-1|1"},
          std::vector<std::string>{"catalog"}, std::vector<std::string>{"discrepancies"}}) {
        const Outcome o = invoke(args);
        const json j = json::parse(o.out);
        const RunReport parsed = report_from_json(j);
        EXPECT_EQ(to_json(parsed), j) << args.front();
        EXPECT_EQ(report_from_json(to_json(parsed)), parsed) << args.front();
    }
}

TEST(Report, DeterministicApartFromWallTime) {
    std::vector<const char*> argv{"stackel", "verify", "--family", "6", "--points", "20"};
    std::ostringstream sink;
    const auto cfg = parse_args(static_cast<int>(argv.size()), argv.data(), sink);
    ASSERT_TRUE(cfg.has_value());
    RunReport a = run(*cfg);
    RunReport b = run(*cfg);
    a.wall_time_s = b.wall_time_s = 0.0;
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Report, WrittenToFile) {
    const std::string path = std::string(STACKEL_TEST_TMPDIR) + "/cli_report.json";
    const Outcome o = invoke({"verify", "--family", "2", "--out", path});
    EXPECT_EQ(o.code, kExitPass);
    std::ifstream in(path);
    ASSERT_TRUE(in.good());
    const json j = json::parse(in);
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["config"]["out"], path);
}

TEST(Report, VerdictFollowsChecks) {
    RunReport r;
    r.checks.push_back({"a", 1.0, 2.0, true});
    r.finalise();
    EXPECT_EQ(r.verdict, "pass");
    r.checks.push_back({"b", 3.0, 2.0, false});
    r.finalise();
    EXPECT_EQ(r.verdict, "fail");
    RunReport s;
    s.rows.push_back({});
    s.rows.back().verdict = "error";
    s.finalise();
    EXPECT_EQ(s.verdict, "fail");
}

}  // namespace
