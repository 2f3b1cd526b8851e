#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbr/cli_commands.hpp"

namespace {

struct SamplerFlags {
    std::optional<std::string> kind, side;
    std::optional<double> start, end, extend;
    std::optional<int> count, levels, angles;

    void add(CLI::App* app) {
        app->add_option("--kind", kind, "sampler kind: boundary, radial or grid");
        app->add_option("--side", side, "boundary side: upper or lower");
        app->add_option("--start", start, "coarsest main coordinate");
        app->add_option("--end", end, "finest main coordinate");
        app->add_option("--count", count, "points on the coarsest level");
        app->add_option("--levels", levels, "number of dyadic refinement levels");
        app->add_option("--extend", extend, "per-level extension of the end point");
        app->add_option("--angles", angles, "grid sampler: angles per radius");
    }

    dbr::SamplerSpec apply(dbr::SamplerSpec s) const {
        if (kind) s.kind = dbr::parse_sampler_kind(*kind);
        if (side) s.side = dbr::parse_side(*side);
        if (start) s.start = *start;
        if (end) s.end = *end;
        if (extend) s.extend = *extend;
        if (count) s.count = *count;
        if (levels) s.levels = *levels;
        if (angles) s.angles = *angles;
        s.validate();
        return s;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw dbr::Error("cannot write '" + path + "'");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel norms, approach-region conditions and boundary experiments for de Branges-Rovnyak spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dbr::library_version));

    dbr::cli::CommonOptions common;
    std::string symbol, region = "nt:c=1", out, report;
    int m = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", common.tolerance, "quadrature tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--jobs", common.jobs, "worker threads")->check(CLI::Range(1, 1024));
        sub->add_option("--seed", common.seed, "seed recorded in the report");
        sub->add_flag("--deterministic", common.deterministic, "report zero wall-clock");
    };

    auto* eval = app.add_subcommand("eval", "probe kernel norms and condition values at points");
    std::vector<std::string> points;
    eval->add_option("--symbol", symbol, "symbol spec: registry name, inline JSON or path")->required();
    eval->add_option("--z", points, "points a+bi (repeatable)")->required();
    eval->add_option("--m", m, "derivative order 0..4");
    eval->add_option("--out", out, "JSON output path (default stdout)");
    add_common(eval);

    auto* scan = app.add_subcommand("scan", "sample an approach region and write the probe CSV");
    SamplerFlags sampler;
    scan->add_option("--symbol", symbol, "symbol spec: registry name, inline JSON or path")->required();
    scan->add_option("--region", region, "nt:c=<c>, rho:power:c=<c>,gamma=<g> or rho:table:<path>");
    scan->add_option("--m", m, "derivative order 0..4");
    scan->add_option("--out", out, "CSV output path (default stdout)");
    scan->add_option("--report", report, "JSON summary path");
    sampler.add(scan);
    add_common(scan);

    auto* experiment = app.add_subcommand("experiment", "run an experiment spec");
    std::string spec;
    experiment->add_option("spec", spec, "experiment spec: inline JSON or path")->required();
    experiment->add_option("--out", out, "JSON report path (default stdout)");
    add_common(experiment);

    auto* identities = app.add_subcommand("identities", "randomized identity suite");
    dbr::IdentitySuiteConfig icfg;
    identities->add_option("--seed", icfg.seed, "generator seed");
    identities->add_option("--count", icfg.count, "samples per identity")->check(CLI::PositiveNumber);
    identities->add_option("--inject-fault", icfg.fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? dbr::cli::ok : dbr::cli::error;
    }

    try {
        if (*eval) {
            std::ostringstream os;
            const int rc = dbr::cli::cmd_eval(dbr::symbol_argument(symbol), points, m, common, os);
            if (out.empty())
                std::cout << os.str();
            else
                write_text(out, os.str());
            return rc;
        }
        if (*scan) {
            const auto s = sampler.apply(dbr::SamplerSpec{});
            std::ostringstream csv;
            auto res = dbr::cli::cmd_scan(dbr::symbol_argument(symbol), region, m, s, common, csv);
            if (out.empty())
                std::cout << csv.str();
            else
                write_text(out, csv.str());
            // The summary goes to stdout unless stdout already carries the CSV.
            if (!report.empty())
                write_text(report, res.summary.dump(2) + "\n");
            else if (!out.empty())
                std::cout << res.summary.dump(2) << '\n';
            return res.exit_code;
        }
        if (*experiment) {
            auto res = dbr::cli::cmd_experiment(dbr::load_json_argument(spec), common);
            const std::string doc = res.document.dump(2) + "\n";
            if (out.empty())
                std::cout << doc;
            else
                write_text(out, doc);
            for (const auto& c : res.report.clauses)
                std::cerr << (c.pass ? "pass " : "FAIL ") << c.name << ": evidence " << dbr::format_double(c.evidence) << ", threshold "
                          << dbr::format_double(c.threshold) << " (" << c.rule << ")\n";
            return res.exit_code;
        }
        if (*identities) return dbr::cli::cmd_identities(icfg, std::cout);
    } catch (const dbr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dbr::cli::error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dbr::cli::error;
    }
    return dbr::cli::error;
}
