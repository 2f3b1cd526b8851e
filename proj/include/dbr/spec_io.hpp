#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbr/conditions.hpp"
#include "dbr/experiments.hpp"
#include "dbr/regions.hpp"
#include "dbr/symbol.hpp"

namespace dbr {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Complex literals
// ---------------------------------------------------------------------------

namespace detail {

inline double parse_real(std::string_view s, const std::string& whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("malformed complex literal '" + whole + "' (expected a+bi)");
    return v;
}

}  // namespace detail

/// Parses "a+bi", "a-bi", a plain real "a" or a pure imaginary "bi"; locale independent.
inline cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.empty()) throw ParseError("empty complex literal");
    if (s.back() != 'i') return {detail::parse_real(s, text), 0.0};
    s.pop_back();
    // The sign separating the parts is the last +/- not following an exponent marker.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
        return {0.0, detail::parse_real(s, text)};
    }
    const std::string im = s.substr(split);
    const double b = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : detail::parse_real(im, text);
    return {detail::parse_real(std::string_view(s).substr(0, split), text), b};
}

inline std::string format_complex(cplx z) {
    const bool neg = std::signbit(z.imag());
    return format_double(z.real()) + (neg ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
}

// ---------------------------------------------------------------------------
// Symbol specs
// ---------------------------------------------------------------------------

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

inline int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<int>();
}

inline double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

inline cplx complex_value(const json& j, const std::string& where) {
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2) return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
    if (j.is_number()) return {j.get<double>(), 0.0};
    throw ParseError(where + ": expected [re, im] or \"a+bi\"");
}

inline RhoFunction rho_value(const json& j, const std::string& where) {
    try {
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            if (s.rfind("table:", 0) == 0) return RhoFunction::table_from_file(s.substr(6));
            return *parse_region("rho:" + s).rho_function();
        }
        const std::string type = require(j, "type", where).get<std::string>();
        if (type == "power") return RhoFunction::power(number_or(j, "c", 1.0, where), number_or(j, "gamma", 2.0, where));
        if (type == "table") {
            if (j.contains("path")) return RhoFunction::table_from_file(j.at("path").get<std::string>());
            return RhoFunction::table(require(j, "x", where).get<std::vector<double>>(), require(j, "y", where).get<std::vector<double>>());
        }
        throw ParseError(where + ".type: unknown rho type '" + type + "' (power, table)");
    } catch (const ConstructionError& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const json::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline OuterLogDensity::Component outer_component(const json& j, const std::string& where) {
    const auto& t = require(j, "type", where);
    if (!t.is_string()) throw ParseError(where + ".type: expected a string");
    const std::string type = t.get<std::string>();
    if (type == "zero") return OuterLogDensity::Constant{0.0};
    if (type == "constant") return OuterLogDensity::Constant{number(require(j, "value", where), where + ".value")};
    if (type == "power_cusp")
        return OuterLogDensity::PowerCusp{number(require(j, "alpha", where), where + ".alpha"), normalize_angle(number_or(j, "theta0", 0.0, where)),
                                          number_or(j, "scale", 1.0, where)};
    if (type == "table") {
        const auto& v = require(j, "values", where);
        if (!v.is_array()) throw ParseError(where + ".values: expected an array");
        std::vector<double> vals;
        for (std::size_t i = 0; i < v.size(); ++i) vals.push_back(number(v[i], where + ".values[" + std::to_string(i) + "]"));
        return OuterLogDensity::Table{std::move(vals)};
    }
    throw ParseError(where + ".type: unknown outer type '" + type + "' (zero, constant, power_cusp, table)");
}

inline BlaschkeData zero_family(const json& j, const std::string& where) {
    const std::string type = require(j, "type", where).get<std::string>();
    std::optional<ZeroFamily> fam;
    try {
        if (type == "theorem_c") {
            const RhoFunction rho = j.contains("rho") ? rho_value(j.at("rho"), where + ".rho") : RhoFunction::power(1.0, 2.0);
            fam = ZeroFamily::on_rho_curve(rho, number_or(j, "x0", 0.25, where), number_or(j, "ratio", 0.25, where));
        } else if (type == "geometric") {
            fam = ZeroFamily::geometric(number(require(j, "delta0", where), where + ".delta0"), number(require(j, "delta_ratio", where), where + ".delta_ratio"),
                                        number(require(j, "angle0", where), where + ".angle0"), number(require(j, "angle_ratio", where), where + ".angle_ratio"));
        } else {
            throw ParseError(where + ".type: unknown zero family '" + type + "' (theorem_c, geometric)");
        }
        if (j.contains("count")) return fam->take(integer(j.at("count"), where + ".count"));
        const json t = j.value("truncation", json::object());
        return fam->truncate(number_or(t, "tolerance", 1e-12, where + ".truncation"), number_or(t, "min_distance", 1e-8, where + ".truncation"));
    } catch (const ConstructionError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

}  // namespace detail

inline constexpr const char* symbol_registry_names = "theorem_c_default, collapse_default";

inline bool is_registry_symbol(const std::string& name) { return name == "theorem_c_default" || name == "collapse_default"; }

inline Symbol registry_symbol(const std::string& name) {
    if (name == "theorem_c_default") return theorem_c_default_symbol();
    if (name == "collapse_default") return collapse_default_symbol();
    throw ParseError("unknown registry symbol '" + name + "' (" + symbol_registry_names + ")");
}

/// Builds a Symbol from its JSON description (or a registry name given as a JSON string).
inline Symbol symbol_from_json(const json& j, const QuadratureConfig& quad = {}) {
    if (j.is_string()) return registry_symbol(j.get<std::string>());
    if (!j.is_object()) throw ParseError("symbol: expected an object or a registry name");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::vector<std::string> known = {"zeros", "zero_family", "atoms", "outer", "certificate", "name"};
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) throw ParseError("symbol: unknown field '" + it.key() + "'");
    }
    BlaschkeData zeros;
    if (j.contains("zero_family")) zeros = detail::zero_family(j.at("zero_family"), "symbol.zero_family");
    if (j.contains("zeros")) {
        const auto& z = j.at("zeros");
        if (!z.is_array()) throw ParseError("symbol.zeros: expected an array");
        for (std::size_t i = 0; i < z.size(); ++i) {
            const std::string where = "symbol.zeros[" + std::to_string(i) + "]";
            const cplx a = detail::complex_value(z[i], where);
            if (!(std::abs(a) < 1.0)) throw ParseError(where + ": zero must lie in the open disk");
            zeros.zeros.push_back(DiskPoint::from_complex(a));
        }
    }
    SingularAtoms atoms;
    if (j.contains("atoms")) {
        const auto& a = j.at("atoms");
        if (!a.is_array()) throw ParseError("symbol.atoms: expected an array");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string where = "symbol.atoms[" + std::to_string(i) + "]";
            atoms.atoms.push_back({normalize_angle(detail::number(detail::require(a[i], "theta", where), where + ".theta")),
                                   detail::number(detail::require(a[i], "mass", where), where + ".mass")});
        }
    }
    std::vector<OuterLogDensity::Component> parts;
    if (j.contains("outer")) {
        const auto& o = j.at("outer");
        if (o.is_array()) {
            for (std::size_t i = 0; i < o.size(); ++i) parts.push_back(detail::outer_component(o[i], "symbol.outer[" + std::to_string(i) + "]"));
        } else {
            parts.push_back(detail::outer_component(o, "symbol.outer"));
        }
    }
    std::optional<double> cert;
    if (j.contains("certificate")) cert = detail::number(j.at("certificate"), "symbol.certificate");
    try {
        return Symbol(std::move(zeros), std::move(atoms), OuterLogDensity(std::move(parts), cert), quad);
    } catch (const ConstructionError& e) {
        throw ParseError(std::string("symbol: ") + e.what());
    }
}

/// Parses JSON text, reporting the line and column of syntax errors.
inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()) && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// A JSON document given as a file path or inline text (starting with '{' or '[').
inline json load_json_argument(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json_text(arg, "<inline>");
    return parse_json_text(read_file(arg), arg);
}

/// --symbol value: registry name, inline JSON or path to a JSON file.
inline json symbol_argument(const std::string& arg) {
    if (is_registry_symbol(arg)) return json(arg);
    return load_json_argument(arg);
}

// ---------------------------------------------------------------------------
// Sampler specs
// ---------------------------------------------------------------------------

inline SamplerKind parse_sampler_kind(const std::string& s) {
    if (s == "boundary") return SamplerKind::boundary;
    if (s == "radial") return SamplerKind::radial;
    if (s == "grid") return SamplerKind::grid;
    throw ParseError("unknown sampler kind '" + s + "' (boundary, radial, grid)");
}

inline PathSide parse_side(const std::string& s) {
    if (s == "upper") return PathSide::upper;
    if (s == "lower") return PathSide::lower;
    if (s == "radial") return PathSide::radial;
    throw ParseError("unknown side '" + s + "' (upper, lower)");
}

inline std::string to_string(SamplerKind k) {
    switch (k) {
        case SamplerKind::boundary: return "boundary";
        case SamplerKind::radial: return "radial";
        case SamplerKind::grid: return "grid";
    }
    return "?";
}

inline std::string to_string(PathSide s) {
    switch (s) {
        case PathSide::upper: return "upper";
        case PathSide::lower: return "lower";
        case PathSide::radial: return "radial";
    }
    return "?";
}

inline SamplerSpec sampler_from_json(const json& j, SamplerSpec base) {
    if (!j.is_object()) throw ParseError("path: expected an object");
    const std::string w = "path";
    if (j.contains("kind")) base.kind = parse_sampler_kind(j.at("kind").get<std::string>());
    if (j.contains("side")) base.side = parse_side(j.at("side").get<std::string>());
    base.start = detail::number_or(j, "start", base.start, w);
    base.end = detail::number_or(j, "end", base.end, w);
    if (j.contains("count")) base.count = detail::integer(j.at("count"), w + ".count");
    if (j.contains("levels")) base.levels = detail::integer(j.at("levels"), w + ".levels");
    base.extend = detail::number_or(j, "extend", base.extend, w);
    if (j.contains("angles")) base.angles = detail::integer(j.at("angles"), w + ".angles");
    base.inward_step = detail::number_or(j, "inward_step", base.inward_step, w);
    base.min_distance = detail::number_or(j, "min_distance", base.min_distance, w);
    base.validate();
    return base;
}

inline json to_json(const SamplerSpec& s) {
    return {{"kind", to_string(s.kind)}, {"side", to_string(s.side)}, {"start", s.start}, {"end", s.end}, {"count", s.count},
            {"levels", s.levels}, {"extend", s.extend}, {"angles", s.angles}, {"inward_step", s.inward_step}, {"min_distance", s.min_distance}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace detail {
/// JSON has no infinities; they are written as strings.
inline json real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline json reals(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(real(x));
    return a;
}
}  // namespace detail

inline json to_json(const KernelProbe& p) {
    json j = {{"z", format_complex(p.z)},
              {"one_minus_mod", detail::real(p.one_minus_modulus)},
              {"arg_z", detail::real(p.arg)},
              {"m", p.m.value()},
              {"norm_sq_fd", detail::real(p.norm_sq_fd)},
              {"fd_error_est", detail::real(p.fd_error_est)},
              {"fd_warning", p.fd_warning},
              {"condition_value", detail::real(p.condition_value)},
              {"localized_value", detail::real(p.localized_value)},
              {"cross_check_tolerance", p.cross_check_tolerance},
              {"cross_check_ok", p.cross_check_ok}};
    j["norm_sq_series"] = p.norm_sq_series ? detail::real(*p.norm_sq_series) : json(nullptr);
    j["norm_sq_zero_free"] = p.norm_sq_zero_free ? detail::real(*p.norm_sq_zero_free) : json(nullptr);
    return j;
}

inline json to_json(const Verdict& v) {
    return {{"value", v.value}, {"evidence", detail::real(v.evidence)}, {"threshold", v.threshold}, {"rule", v.rule}};
}

/// Scan summary; probes are included only on request (CSV carries them).
inline json to_json(const ScanReport& r, bool with_probes = false) {
    json levels = json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"level", l.level}, {"points", l.points}, {"sup_condition", detail::real(l.sup_condition)}, {"sup_localized", detail::real(l.sup_localized)}});
    json j = {{"points", r.probes.size()},
              {"sup_value", detail::real(r.sup_value)},
              {"levels", levels},
              {"condition_trend", detail::reals(r.condition_trend)},
              {"condition_differences", detail::reals(r.condition_differences)},
              {"localized_trend", detail::reals(r.localized_trend)},
              {"localized_differences", detail::reals(r.localized_differences)},
              {"verdicts", {{"sup_bounded", to_json(r.sup_bounded)}, {"localized_to_zero", to_json(r.localized_to_zero)}, {"limit_exists", to_json(r.limit_exists)}}},
              {"fd_warnings", r.fd_warnings},
              {"cross_check_failures", r.cross_check_failures}};
    if (with_probes) {
        json p = json::array();
        for (const auto& k : r.probes) p.push_back(to_json(k));
        j["probes"] = p;
    }
    return j;
}

inline json to_json(const ExperimentReport& r) {
    json clauses = json::array();
    for (const auto& c : r.clauses)
        clauses.push_back({{"name", c.name}, {"pass", c.pass}, {"evidence", detail::real(c.evidence)}, {"threshold", c.threshold}, {"rule", c.rule}});
    json scalars = json::object();
    for (const auto& [k, v] : r.scalars) scalars[k] = detail::real(v);
    json series = json::object();
    for (const auto& [k, v] : r.series) series[k] = detail::reals(v);
    json scans = json::object();
    for (const auto& [k, s] : r.scans) scans[k] = to_json(s);
    return {{"experiment", r.experiment}, {"passed", r.passed()}, {"clauses", clauses}, {"scalars", scalars},
            {"series", series},           {"scans", scans},       {"notes", r.notes}};
}

}  // namespace dbr
