#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dbr/cli_commands.hpp"

using namespace dbr;
using namespace dbr::cli;

namespace {

CommonOptions deterministic() {
    CommonOptions o;
    o.deterministic = true;
    return o;
}

json eval_json(const json& sym, std::vector<std::string> z, int m, int* code) {
    std::ostringstream os;
    *code = cmd_eval(sym, z, m, deterministic(), os);
    return json::parse(os.str());
}

SamplerSpec small_boundary() {
    SamplerSpec s;
    s.count = 200;
    s.levels = 2;
    return s;
}

}  // namespace

TEST(CliEval, IdentitySymbolHasUnitNormAndCondition) {
    int code = -1;
    const auto j = eval_json(json::parse(R"({"zeros": [[0, 0]]})"), {"0.5+0i"}, 0, &code);
    EXPECT_EQ(code, ok);
    ASSERT_EQ(j.at("probes").size(), 1u);
    const auto& p = j.at("probes")[0];
    EXPECT_NEAR(p.at("norm_sq_fd").get<double>(), 1.0, 1e-6);
    EXPECT_NEAR(p.at("condition_value").get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(p.at("norm_sq_series").get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(p.at("cross_check_ok").get<bool>());
}

TEST(CliEval, PointOutsideDiskIsReported) {
    int code = -1;
    const auto j = eval_json(json::parse(R"({"zeros": [[0, 0]]})"), {"0.5+0i", "1.5+0i", "x"}, 0, &code);
    EXPECT_EQ(code, error);
    EXPECT_EQ(j.at("probes").size(), 1u);
    ASSERT_EQ(j.at("errors").size(), 2u);
    EXPECT_EQ(j.at("errors")[0].at("z"), "1.5+0i");
    EXPECT_EQ(j.at("errors")[1].at("z"), "x");
}

TEST(CliEval, RegistrySymbolNearBoundary) {
    int code = -1;
    const auto j = eval_json(json("theorem_c_default"), {"0.99+0i"}, 0, &code);
    EXPECT_EQ(code, ok);
    EXPECT_TRUE(std::isfinite(j.at("probes")[0].at("condition_value").get<double>()));
}

TEST(CliEval, HeaderFields) {
    int code = -1;
    const auto j = eval_json(json::parse(R"({"zeros": [[0.2, 0.1]]})"), {"0.1+0.1i"}, 1, &code);
    for (const char* k : {"command", "library", "version", "seed", "tolerances", "jobs", "spec", "wall_clock_seconds"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j.at("command"), "eval");
    EXPECT_EQ(j.at("library"), library_name);
    EXPECT_EQ(j.at("version"), library_version);
    EXPECT_EQ(j.at("wall_clock_seconds").get<double>(), 0.0);
    EXPECT_EQ(j.at("tolerances").at("quadrature").get<double>(), 1e-8);
    EXPECT_EQ(j.at("spec").at("m"), 1);
}

TEST(CliScan, IdentitySymbolRowsHaveUnitNorm) {
    std::ostringstream csv;
    const auto r = cmd_scan(json::parse(R"({"zeros": [[0, 0]]})"), "nt:c=1", 0, small_boundary(), deterministic(), csv);
    EXPECT_EQ(r.exit_code, ok);
    EXPECT_EQ(r.report.probes.size(), 399u);
    for (const auto& p : r.report.probes) EXPECT_NEAR(p.norm_sq_fd, 1.0, 1e-5);
    std::istringstream in(csv.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 400u);
    EXPECT_EQ(r.summary.at("command"), "scan");
    EXPECT_TRUE(r.summary.at("scan").at("verdicts").at("sup_bounded").at("value").get<bool>());
}

TEST(CliScan, UnknownRegionNamesTheForms) {
    std::ostringstream csv;
    try {
        cmd_scan(json::parse(R"({"zeros": [[0, 0]]})"), "cone:1", 0, small_boundary(), deterministic(), csv);
        FAIL();
    } catch (const ParseError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("nt:"), std::string::npos) << what;
        EXPECT_NE(what.find("rho:"), std::string::npos) << what;
    }
}

TEST(CliScan, OutputIndependentOfJobs) {
    std::ostringstream a, b;
    CommonOptions o1 = deterministic(), o4 = deterministic();
    o4.jobs = 4;
    const auto r1 = cmd_scan(json("theorem_c_default"), "rho:power:c=1,gamma=2", 0, small_boundary(), o1, a);
    const auto r4 = cmd_scan(json("theorem_c_default"), "rho:power:c=1,gamma=2", 0, small_boundary(), o4, b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(r1.summary.at("scan").dump(), r4.summary.at("scan").dump());
}

TEST(CliExperiment, TheoremCDiscrepancyNearTwo) {
    const auto r = cmd_experiment(json::parse(R"({"experiment": "theorem_c"})"), deterministic());
    EXPECT_EQ(r.exit_code, ok);
    for (double v : r.report.series.at("discrepancy_re")) EXPECT_NEAR(v, 2.0, 0.1);
    EXPECT_TRUE(r.document.at("report").at("passed").get<bool>());
    EXPECT_EQ(r.document.at("command"), "experiment");
}

TEST(CliExperiment, TheoremCFromDataFile) {
    const auto spec = load_json_argument(std::string(DBR_DATA_DIR) + "/theorem_c.json");
    EXPECT_EQ(cmd_experiment(spec, deterministic()).exit_code, ok);
}

TEST(CliExperiment, TheoremABlaschkeSquareBounded) {
    const auto r = cmd_experiment(json::parse(R"({"experiment": "theorem_a", "symbol": {"zeros": [[0, 0], [0, 0]]}})"), deterministic());
    EXPECT_TRUE(r.report.passed());
    // The verdict uses the exact series. The m = 1 stencil cannot resolve an O(1) norm
    // below 1 - |z| ~ 1e-4, so the finite-difference cross-check fails there and the
    // run reports numeric warnings.
    EXPECT_EQ(r.exit_code, numeric_warning);
    EXPECT_GT(r.document.at("report").at("scans").at("scan").at("cross_check_failures").get<int>(), 0);
    EXPECT_EQ(r.report.scalars.at("bounded_i"), 1.0);
    EXPECT_EQ(r.report.scalars.at("bounded_iii"), 1.0);
}

TEST(CliExperiment, TheoremBRefusesUnboundedSymbol) {
    const json spec = json::parse(R"({"experiment": "theorem_b", "symbol": {"atoms": [{"theta": 0, "mass": 1}]}, "m": 0})");
    try {
        cmd_experiment(spec, deterministic());
        FAIL();
    } catch (const ContractError& e) {
        EXPECT_STREQ(e.what(), "precondition: Theorem A verdict bounded");
    }
}

TEST(CliExperiment, UnknownExperiment) {
    EXPECT_THROW(cmd_experiment(json::parse(R"({"experiment": "theorem_e"})"), deterministic()), ParseError);
    EXPECT_THROW(cmd_experiment(json::parse(R"({"symbol": "theorem_c_default"})"), deterministic()), ParseError);
}

TEST(CliExperiment, SidecarCsvWritten) {
    const auto dir = std::filesystem::temp_directory_path() / "dbr_cli_sidecar";
    std::filesystem::create_directories(dir);
    const auto out = (dir / "c.csv").string();
    json spec = {{"experiment", "theorem_c"}, {"out", out}};
    const auto r = cmd_experiment(spec, deterministic());
    ASSERT_EQ(r.document.at("csv_sidecars").size(), 1u);
    EXPECT_TRUE(std::filesystem::exists(out));
    std::filesystem::remove_all(dir);
}

TEST(CliIdentities, SeededSuitePasses) {
    std::ostringstream os;
    IdentitySuiteConfig cfg;
    EXPECT_EQ(cmd_identities(cfg, os), ok) << os.str();
    const auto results = run_identity_suite(cfg);
    for (const auto& r : results) EXPECT_TRUE(r.pass) << r.name << " " << r.max_error;
    EXPECT_LE(results.front().max_error, 1e-14);
    EXPECT_EQ(os.str().find("failed identity"), std::string::npos);
}

TEST(CliIdentities, ZeroCountRejected) {
    std::ostringstream os;
    IdentitySuiteConfig cfg;
    cfg.count = 0;
    EXPECT_THROW(cmd_identities(cfg, os), ContractError);
}

TEST(CliIdentities, InjectedFaultIsNamed) {
    for (const char* name : {"magic_formula", "decomposition", "localization_estimate", "calc_lemma", "s_function_series"}) {
        std::ostringstream os;
        IdentitySuiteConfig cfg;
        cfg.count = 200;
        cfg.fault = name;
        EXPECT_EQ(cmd_identities(cfg, os), error) << name;
        EXPECT_NE(os.str().find(std::string("failed identity: ") + name), std::string::npos) << os.str();
    }
}

TEST(CliIdentities, UnknownFaultRejected) {
    std::ostringstream os;
    IdentitySuiteConfig cfg;
    cfg.fault = "nope";
    EXPECT_THROW(cmd_identities(cfg, os), ContractError);
}
