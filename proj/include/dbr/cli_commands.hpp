#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dbr/conditions.hpp"
#include "dbr/experiments.hpp"
#include "dbr/identities.hpp"
#include "dbr/spec_io.hpp"
#include "dbr/version.hpp"

namespace dbr::cli {

enum ExitCode : int { ok = 0, error = 1, numeric_warning = 2 };

struct CommonOptions {
    double tolerance = 1e-8;
    int max_panels = 1 << 14;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool deterministic = false;  // report zero wall-clock so JSON output is reproducible

    QuadratureConfig quad() const {
        QuadratureConfig q;
        q.tolerance = tolerance;
        q.max_panels = max_panels;
        q.validate();
        return q;
    }
};

/// Measures wall-clock from construction.
class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline json report_header(const std::string& command, const json& spec, const CommonOptions& o, double wall) {
    return {{"command", command},
            {"library", library_name},
            {"version", library_version},
            {"seed", o.seed},
            {"tolerances", {{"quadrature", o.tolerance}, {"max_panels", o.max_panels}}},
            {"jobs", o.jobs},
            {"spec", spec},
            {"wall_clock_seconds", o.deterministic ? 0.0 : wall}};
}

inline void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

/// Probes at each listed point; unparsable or out-of-disk points are reported and make the exit code 1.
inline int cmd_eval(const json& symbol_spec, const std::vector<std::string>& points, int m, const CommonOptions& o, std::ostream& out) {
    Stopwatch clock;
    const Symbol sym = symbol_from_json(symbol_spec, o.quad());
    const MeasureM M = MeasureM::from_symbol(sym);
    const KernelOrder order(m);
    ProbeOptions po;
    po.quad = o.quad();

    std::vector<json> results(points.size());
    std::vector<std::string> failures(points.size());
    parallel_for(points.size(), o.jobs, [&](std::size_t i) {
        try {
            const cplx z = parse_complex(points[i]);
            if (!(std::abs(z) < 1.0)) throw DomainError("|z| >= 1");
            results[i] = to_json(make_probe(sym, M, DiskPoint::from_complex(z), order, po));
        } catch (const Error& e) {
            failures[i] = e.what();
        }
    });
    json probes = json::array(), errors = json::array();
    bool warned = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!failures[i].empty()) {
            errors.push_back({{"z", points[i]}, {"error", failures[i]}});
        } else {
            warned = warned || results[i]["fd_warning"].get<bool>() || !results[i]["cross_check_ok"].get<bool>();
            probes.push_back(results[i]);
        }
    }
    json spec = {{"symbol", symbol_spec}, {"z", points}, {"m", m}};
    json rep = report_header("eval", spec, o, clock.seconds());
    rep["probes"] = probes;
    rep["errors"] = errors;
    write_json(out, rep);
    if (!errors.empty()) return error;
    return warned ? numeric_warning : ok;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanOutcome {
    ScanReport report;
    json summary;
    int exit_code = ok;
};

/// Runs sup_scan and writes the CSV; the JSON summary is returned for an optional sidecar.
inline ScanOutcome cmd_scan(const json& symbol_spec, const std::string& region_spec, int m, const SamplerSpec& sampler, const CommonOptions& o,
                            std::ostream& csv) {
    Stopwatch clock;
    const Symbol sym = symbol_from_json(symbol_spec, o.quad());
    const ApproachRegion region = parse_region(region_spec);
    ScanOptions so;
    so.jobs = o.jobs;
    so.probe.quad = o.quad();
    ScanOutcome res;
    res.report = sup_scan(sym, region, KernelOrder(m), sampler, so);
    write_scan_csv(csv, res.report.probes);
    json spec = {{"symbol", symbol_spec}, {"region", region_spec}, {"m", m}, {"path", to_json(sampler)}};
    res.summary = report_header("scan", spec, o, clock.seconds());
    res.summary["scan"] = to_json(res.report);
    res.exit_code = (res.report.fd_warnings + res.report.cross_check_failures) > 0 ? numeric_warning : ok;
    return res;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

inline SamplerSpec default_path_sampler() {
    SamplerSpec s;
    s.kind = SamplerKind::radial;
    s.start = 0.1;
    s.end = 1e-6;
    s.count = 12;
    s.levels = 1;
    return s;
}

inline TheoremCSpec theorem_c_spec_from_json(const json& exp) {
    TheoremCSpec spec;
    if (exp.contains("region")) {
        const auto region = parse_region(exp.at("region").get<std::string>());
        if (!region.rho_function()) throw ParseError("experiment.region: the counterexample needs a rho region (rho:power:... or rho:table:...)");
        spec.rho = *region.rho_function();
    }
    if (exp.contains("theorem_c")) {
        const auto& t = exp.at("theorem_c");
        if (t.contains("rho")) spec.rho = detail::rho_value(t.at("rho"), "experiment.theorem_c.rho");
        if (t.contains("x_seq")) spec.x_seq = t.at("x_seq").get<std::vector<double>>();
        if (t.contains("count")) spec.count = detail::integer(t.at("count"), "experiment.theorem_c.count");
    }
    if (exp.contains("symbol") && !(exp.at("symbol").is_string() && exp.at("symbol").get<std::string>() == "theorem_c_default"))
        throw ParseError("experiment.symbol: theorem_c builds its own symbol; use \"theorem_c_default\" or omit the field");
    return spec;
}

struct ExperimentOutcome {
    ExperimentReport report;
    json document;
    int exit_code = ok;
};

/// Dispatches an experiment spec; CSV sidecars (the probes of each scan) go to spec["out"].
inline ExperimentOutcome cmd_experiment(const json& exp, const CommonOptions& o) {
    Stopwatch clock;
    if (!exp.is_object()) throw ParseError("experiment spec: expected an object");
    const auto& kind_json = detail::require(exp, "experiment", "experiment spec");
    if (!kind_json.is_string()) throw ParseError("experiment spec.experiment: expected a string");
    const std::string kind = kind_json.get<std::string>();
    ExperimentOptions eo;
    eo.jobs = o.jobs;
    eo.quad = o.quad();
    const int m = exp.contains("m") ? detail::integer(exp.at("m"), "experiment.m") : (kind == "theorem_a" ? 1 : 0);

    ExperimentOutcome res;
    if (kind == "theorem_c") {
        TheoremCOptions tc;
        tc.common = eo;
        res.report = run_theorem_c(theorem_c_spec_from_json(exp), tc);
    } else if (kind == "theorem_a" || kind == "theorem_b" || kind == "theorem_d") {
        const Symbol sym = symbol_from_json(detail::require(exp, "symbol", "experiment spec"), eo.quad);
        const ApproachRegion region = parse_region(exp.value("region", std::string("nt:c=1")));
        if (kind == "theorem_a") {
            const SamplerSpec s = exp.contains("path") ? sampler_from_json(exp.at("path"), default_probe_sampler()) : default_probe_sampler();
            res.report = run_theorem_a_probe(sym, region, KernelOrder(m), s, eo);
        } else {
            const SamplerSpec s = exp.contains("path") ? sampler_from_json(exp.at("path"), default_path_sampler()) : default_path_sampler();
            const SamplerSpec a = exp.contains("a_path") ? sampler_from_json(exp.at("a_path"), default_probe_sampler()) : default_probe_sampler();
            const auto path = sample_level(region, s, s.levels - 1);
            if (kind == "theorem_b")
                res.report = run_theorem_b_probe(sym, region, KernelOrder(m), path, eo, a);
            else
                res.report = run_theorem_d_probe(sym, region, path, eo, a);
        }
    } else {
        throw ParseError("experiment spec.experiment: unknown experiment '" + kind + "' (theorem_a, theorem_b, theorem_c, theorem_d)");
    }

    json sidecars = json::array();
    if (exp.contains("out")) {
        const std::string base = exp.at("out").get<std::string>();
        for (std::size_t i = 0; i < res.report.scans.size(); ++i) {
            std::string path = base;
            if (i > 0) {
                const auto dot = base.rfind('.');
                const std::string suffix = "." + res.report.scans[i].first;
                path = dot == std::string::npos ? base + suffix : base.substr(0, dot) + suffix + base.substr(dot);
            }
            std::ofstream f(path, std::ios::binary);
            if (!f) throw Error("cannot write '" + path + "'");
            write_scan_csv(f, res.report.scans[i].second.probes);
            sidecars.push_back({{"scan", res.report.scans[i].first}, {"csv", path}});
        }
    }
    res.document = report_header("experiment", exp, o, clock.seconds());
    res.document["report"] = to_json(res.report);
    res.document["csv_sidecars"] = sidecars;
    res.exit_code = (!res.report.passed() || res.report.numeric_warnings() > 0) ? numeric_warning : ok;
    return res;
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

/// Prints one row per identity; exit code 1 when any identity fails.
inline int cmd_identities(const IdentitySuiteConfig& cfg, std::ostream& out) {
    const auto results = run_identity_suite(cfg);
    out << "seed " << cfg.seed << ", count " << cfg.count << ", library " << library_name << " " << library_version << '\n';
    out << std::left << std::setw(24) << "identity" << std::setw(12) << "measure" << std::setw(10) << "samples" << std::setw(16) << "max_error"
        << std::setw(12) << "threshold" << "result\n";
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        out << std::left << std::setw(24) << r.name << std::setw(12) << r.measure << std::setw(10) << r.samples << std::setw(16)
            << format_double(r.max_error).substr(0, 14) << std::setw(12) << format_double(r.threshold) << (r.pass ? "pass" : "FAIL") << '\n';
    }
    for (const auto& r : results)
        if (!r.pass) out << "failed identity: " << r.name << '\n';
    return all ? ok : error;
}

}  // namespace dbr::cli
