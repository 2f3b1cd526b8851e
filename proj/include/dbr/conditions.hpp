#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "dbr/circle_integrals.hpp"
#include "dbr/kernels.hpp"
#include "dbr/regions.hpp"
#include "dbr/symbol.hpp"

namespace dbr {

/// dM = sum (1 - |a_n|^2) delta_{a_n} + d nu - log|b| dm on the closed disk.
struct MeasureM {
    std::vector<DiskPoint> disk_atoms;
    std::vector<double> disk_masses;
    SingularAtoms circle_atoms;
    OuterLogDensity density;

    static MeasureM from_symbol(const Symbol& sym) {
        MeasureM m;
        for (const auto& a : sym.blaschke().zeros) {
            m.disk_atoms.push_back(a);
            m.disk_masses.push_back(a.one_minus_modulus_sq());
        }
        m.circle_atoms = sym.singular();
        m.density = sym.outer();
        return m;
    }

    double total_mass() const {
        double s = circle_atoms.total_mass() + density.log_mass();
        for (double w : disk_masses) s += w;
        return s;
    }
};

namespace detail {

/// |1 - conj(w) z|^2 for w, z in the closed disk, exact in the polar data when either lies on the circle.
inline double kernel_distance_sq(const DiskPoint& w, const DiskPoint& z) {
    if (w.on_circle()) return circle_distance_sq(w.arg(), z);
    if (z.on_circle()) return circle_distance_sq(z.arg(), w);
    return disk_kernel_denominator_sq(w, z);
}

inline void check_order(int m) {
    if (m < 0) throw ContractError("condition order m must be non-negative");
}

}  // namespace detail

/// The condition functional split into the part over E_z (disk atoms in S_z)
/// and the part over its complement.
struct ConditionParts {
    double local_atoms = 0.0;
    double local_density = 0.0;
    double complement_atoms = 0.0;
    double complement_density = 0.0;
    double density_error = 0.0;

    double local() const { return local_atoms + local_density; }
    double complement() const { return complement_atoms + complement_density; }
    double total() const { return local() + complement(); }
};

/// Evaluates every piece of sum (1-|a|^2)/|1-conj(a)z|^{2s} + int dnu/|1-conj(zeta)z|^{2s}
/// + int -log|b| dm/|1-conj(zeta)z|^{2s}, s = m + 1, split along E_z.
///
/// The density integral is always assembled from the arc and its complement
/// with the arc endpoints as breakpoints, so that the total equals the sum of
/// the restricted values up to rounding. Without an arc (real z, or z = 0) a
/// constant density uses its closed form.
inline ConditionParts condition_parts(const MeasureM& M, const DiskPoint& z, int m, const QuadratureConfig& quad = {}) {
    detail::check_order(m);
    const int s = m + 1;
    const bool origin = z.one_minus_modulus() == 1.0;
    const Arc arc = origin ? Arc{} : arc_E(z);
    ConditionParts parts;
    for (std::size_t i = 0; i < M.disk_atoms.size(); ++i) {
        const double v = M.disk_masses[i] / std::pow(disk_kernel_denominator_sq(M.disk_atoms[i], z), s);
        (!origin && in_sector_S(z, M.disk_atoms[i]) ? parts.local_atoms : parts.complement_atoms) += v;
    }
    for (const auto& a : M.circle_atoms.atoms) {
        const double d2 = circle_distance_sq(a.theta, z);
        if (d2 == 0.0) throw PoleError("condition value evaluated at a circle atom");
        (arc.contains(a.theta) ? parts.local_atoms : parts.complement_atoms) += a.mass / std::pow(d2, s);
    }
    if (M.density.is_zero()) return parts;
    if (arc.empty) {
        if (M.density.constant_value() && z.interior()) {
            parts.complement_density = density_kernel_power_full(M.density, z, s, quad);
        } else {
            const auto r = density_kernel_power(M.density, z, s, -pi, pi, quad);
            parts.complement_density = r.value;
            parts.density_error = r.error;
        }
        return parts;
    }
    const auto in = density_kernel_power(M.density, z, s, arc.lo, arc.hi, quad);
    const auto out = density_kernel_power(M.density, z, s, arc.hi, arc.lo + 2.0 * pi, quad);
    parts.local_density = in.value;
    parts.complement_density = out.value;
    parts.density_error = in.error + out.error;
    return parts;
}

inline DiskPoint closed_disk_point(cplx z) { return DiskPoint::from_complex(z); }

/// Condition (iii) functional at z in the closed disk.
inline double condition_value(const MeasureM& M, const DiskPoint& z, int m, const QuadratureConfig& quad = {}) {
    return condition_parts(M, z, m, quad).total();
}

inline double condition_value(const MeasureM& M, cplx z, int m, const QuadratureConfig& quad = {}) {
    return condition_value(M, closed_disk_point(z), m, quad);
}

/// Same functional restricted to S_z (disk atoms) and E_z (circle); zero for real z.
inline double localized_value(const MeasureM& M, const DiskPoint& z, int m, const QuadratureConfig& quad = {}) {
    if (z.one_minus_modulus() == 1.0) throw DomainError("localized_value: E_z is undefined at z = 0");
    return condition_parts(M, z, m, quad).local();
}

inline double localized_value(const MeasureM& M, cplx z, int m, const QuadratureConfig& quad = {}) {
    return localized_value(M, closed_disk_point(z), m, quad);
}

/// Restriction to the complement of S_z and E_z.
inline double complement_value(const MeasureM& M, const DiskPoint& z, int m, const QuadratureConfig& quad = {}) {
    return condition_parts(M, z, m, quad).complement();
}

/// integral of f against M, with f evaluated at disk atoms, circle atoms and e^{it}.
template <class F>
double integrate_against_M(const MeasureM& M, const F& f, const std::vector<double>& centers, const QuadratureConfig& quad = {}) {
    double s = 0.0;
    for (std::size_t i = 0; i < M.disk_atoms.size(); ++i) s += M.disk_masses[i] * f(M.disk_atoms[i]);
    for (const auto& a : M.circle_atoms.atoms) s += a.mass * f(DiskPoint::from_polar(0.0, a.theta));
    if (!M.density.is_zero()) {
        std::vector<double> c = centers;
        const auto extra = M.density.singular_angles();
        c.insert(c.end(), extra.begin(), extra.end());
        auto g = [&](double t) { return -M.density(t) * f(DiskPoint::from_polar(0.0, t)); };
        s += integrate_arc<double>(g, -pi, pi, c, quad).value;
    }
    return s;
}

/// L^1(M) norm of w -> 1/|1 - conj(w) z|^{2m+2}, computed through integrate_against_M.
inline double kernel_l1_norm(const MeasureM& M, const DiskPoint& z, int m, const QuadratureConfig& quad = {}) {
    detail::check_order(m);
    auto f = [&](const DiskPoint& w) {
        const double d2 = detail::kernel_distance_sq(w, z);
        if (d2 == 0.0) throw PoleError("kernel L1 norm evaluated at an atom of M");
        return std::pow(d2, -(m + 1));
    };
    return integrate_against_M(M, f, {0.0, z.arg()}, quad);
}

// ---------------------------------------------------------------------------
// Limit probe
// ---------------------------------------------------------------------------

struct LimitProbe {
    bool converged = false;
    cplx estimate{0.0, 0.0};
    std::vector<double> differences;
    std::string rule;
};

inline constexpr const char* limit_rule =
    "last three successive differences each shrink by a factor <= 0.9 (differences below 1e-14 (1 + |last|) count as shrinking) "
    "and the final difference is < 1e-3 (1 + |last|)";

/// Heuristic limit detector for values along a path refining toward the boundary.
inline LimitProbe limit_probe(const std::vector<cplx>& values) {
    if (values.size() < 6) throw ContractError("limit_probe needs at least 6 values");
    LimitProbe out;
    out.rule = limit_rule;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) out.differences.push_back(std::abs(values[i + 1] - values[i]));
    out.estimate = values.back();
    const double scale = 1.0 + std::abs(values.back());
    const double noise = 1e-14 * scale;
    const auto& d = out.differences;
    const std::size_t n = d.size();
    bool decays = true;
    for (std::size_t k = n - 2; k < n; ++k) {
        const bool shrinks = d[k] <= noise || d[k] <= 0.9 * d[k - 1];
        decays = decays && shrinks;
    }
    out.converged = decays && d[n - 1] < 1e-3 * scale;
    return out;
}

inline LimitProbe limit_probe(const std::vector<double>& values) {
    std::vector<cplx> c(values.begin(), values.end());
    return limit_probe(c);
}

// ---------------------------------------------------------------------------
// Probes and scans
// ---------------------------------------------------------------------------

struct ProbeOptions {
    QuadratureConfig quad;
    bool compute_fd = true;
};

/// Relative tolerance for the series/finite-difference cross-check at order m.
inline double cross_check_relative_tolerance(int m) {
    static constexpr double tol[] = {1e-10, 1e-6, 1e-4, 1e-2, 1.0};
    return tol[std::clamp(m, 0, 4)];
}

/// Evaluates every applicable norm estimate and both condition values at z.
inline KernelProbe make_probe(const Symbol& sym, const MeasureM& M, const DiskPoint& z, KernelOrder m, const ProbeOptions& opt = {}) {
    KernelProbe p;
    p.z = z.value();
    p.one_minus_modulus = z.one_minus_modulus();
    p.arg = z.arg();
    p.m = m;
    if (opt.compute_fd) {
        const auto fd = norm_sq_fd(sym, z, m, opt.quad);
        p.norm_sq_fd = fd.value;
        p.fd_error_est = fd.error_estimate;
        p.fd_warning = fd.warning;
    }
    if (sym.is_pure_blaschke()) p.norm_sq_series = norm_sq_blaschke_series(sym.blaschke(), z, m);
    if (sym.is_zero_free() && m == 0) {
        const auto [lhs, rhs] = zero_free_identity_value(sym, z, opt.quad);
        (void)rhs;
        p.norm_sq_zero_free = lhs / s_function_of_log(log_modulus_sq(sym, z, opt.quad));
    }
    const auto parts = condition_parts(M, z, m, opt.quad);
    p.condition_value = parts.total();
    p.localized_value = parts.local();
    p.cross_check_tolerance = cross_check_relative_tolerance(m);
    if (opt.compute_fd) {
        auto agree = [&](double other) {
            return std::abs(other - p.norm_sq_fd) <= p.cross_check_tolerance * std::max(std::abs(other), 1e-8) + 1e-8;
        };
        if (p.norm_sq_series) p.cross_check_ok = p.cross_check_ok && agree(*p.norm_sq_series);
        if (p.norm_sq_zero_free) p.cross_check_ok = p.cross_check_ok && agree(*p.norm_sq_zero_free);
    }
    return p;
}

/// A heuristic verdict with the evidence and threshold that produced it.
struct Verdict {
    bool value = false;
    double evidence = 0.0;
    double threshold = 0.0;
    std::string rule;
};

struct LevelSummary {
    int level = 0;
    std::size_t points = 0;
    double sup_condition = 0.0;
    double sup_localized = 0.0;
};

struct ScanReport {
    std::vector<KernelProbe> probes;  // finest level, path order
    std::vector<int> probe_levels;
    std::vector<LevelSummary> levels;
    double sup_value = 0.0;
    std::vector<double> condition_trend;
    std::vector<double> condition_differences;
    std::vector<double> localized_trend;
    std::vector<double> localized_differences;
    Verdict sup_bounded;
    Verdict localized_to_zero;
    Verdict limit_exists;
    LimitProbe norm_limit;
    std::size_t fd_warnings = 0;
    std::size_t cross_check_failures = 0;
};

struct ScanOptions {
    int jobs = 1;
    ProbeOptions probe;
};

/// Runs f(i) for i in [0, n) on `jobs` threads; the first failure in index order is rethrown.
template <class F>
void parallel_for(std::size_t n, int jobs, const F& f) {
    std::vector<std::exception_ptr> errors(n);
    auto guarded = [&](std::size_t i) {
        try {
            f(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) guarded(i);
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline constexpr double sup_growth_threshold = 0.10;
inline constexpr double localized_zero_threshold = 1e-3;

/// Builds a report from probes evaluated on the finest level of a sampler.
inline ScanReport summarize_scan(std::vector<KernelProbe> probes, std::vector<int> levels, int level_count) {
    ScanReport r;
    r.probes = std::move(probes);
    r.probe_levels = std::move(levels);
    for (int l = 0; l < level_count; ++l) {
        LevelSummary s;
        s.level = l;
        for (std::size_t i = 0; i < r.probes.size(); ++i) {
            if (r.probe_levels[i] > l) continue;
            ++s.points;
            s.sup_condition = std::max(s.sup_condition, r.probes[i].condition_value);
            s.sup_localized = std::max(s.sup_localized, r.probes[i].localized_value);
        }
        r.levels.push_back(s);
    }
    double max_loc = 0.0;
    for (const auto& p : r.probes) {
        r.sup_value = std::max(r.sup_value, p.condition_value);
        r.condition_trend.push_back(p.condition_value);
        r.localized_trend.push_back(p.localized_value);
        max_loc = std::max(max_loc, p.localized_value);
        r.fd_warnings += p.fd_warning ? 1 : 0;
        r.cross_check_failures += p.cross_check_ok ? 0 : 1;
    }
    for (std::size_t i = 1; i < r.probes.size(); ++i) {
        r.condition_differences.push_back(r.condition_trend[i] - r.condition_trend[i - 1]);
        r.localized_differences.push_back(r.localized_trend[i] - r.localized_trend[i - 1]);
    }

    r.sup_bounded.threshold = sup_growth_threshold;
    r.sup_bounded.rule = "sup over the finest level exceeds the sup over the previous level by less than the threshold (relative)";
    if (level_count >= 2) {
        const double prev = r.levels[level_count - 2].sup_condition;
        const double last = r.levels[level_count - 1].sup_condition;
        r.sup_bounded.evidence = prev > 0.0 ? (last - prev) / prev : (last > 0.0 ? INFINITY : 0.0);
        r.sup_bounded.value = std::isfinite(last) && r.sup_bounded.evidence < sup_growth_threshold;
    } else {
        r.sup_bounded.rule += " (needs two levels; not assessed)";
    }

    r.localized_to_zero.threshold = localized_zero_threshold;
    r.localized_to_zero.rule = "last localized value is at most the threshold times the largest localized value along the path";
    const double last_loc = r.localized_trend.empty() ? 0.0 : r.localized_trend.back();
    r.localized_to_zero.evidence = max_loc > 0.0 ? last_loc / max_loc : 0.0;
    r.localized_to_zero.value = r.localized_to_zero.evidence <= localized_zero_threshold;

    r.limit_exists.rule = std::string("limit_probe on norm_sq_fd along the path: ") + limit_rule;
    r.limit_exists.threshold = 1e-3;
    if (r.probes.size() >= 6) {
        std::vector<double> norms;
        for (const auto& p : r.probes) norms.push_back(p.norm_sq_fd);
        r.norm_limit = limit_probe(norms);
        r.limit_exists.value = r.norm_limit.converged;
        r.limit_exists.evidence = r.norm_limit.differences.back();
    } else {
        r.limit_exists.rule += " (fewer than 6 probes; not assessed)";
    }
    return r;
}

/// Evaluates probes on the finest sampler level (in parallel) and summarizes them.
inline ScanReport sup_scan(const Symbol& sym, const ApproachRegion& region, KernelOrder m, const SamplerSpec& sampler,
                           const ScanOptions& opt = {}) {
    const MeasureM M = MeasureM::from_symbol(sym);
    const auto points = sample_points(region, sampler);
    std::vector<KernelProbe> probes(points.size());
    std::vector<int> levels(points.size());
    parallel_for(points.size(), opt.jobs, [&](std::size_t i) {
        probes[i] = make_probe(sym, M, points[i].z, m, opt.probe);
        levels[i] = points[i].level;
    });
    return summarize_scan(std::move(probes), std::move(levels), sampler.levels);
}

/// sup over the sampled points of the L^1(M) norm of the powered kernel.
inline double family_l1_bound(const MeasureM& M, const ApproachRegion& region, int m, const SamplerSpec& sampler,
                              const QuadratureConfig& quad = {}, int jobs = 1) {
    const auto points = sample_points(region, sampler);
    std::vector<double> values(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) { values[i] = kernel_l1_norm(M, points[i].z, m, quad); });
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return best;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// 17 significant digits, locale independent.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline constexpr const char* scan_csv_header =
    "re_z,im_z,one_minus_mod,arg_z,m,norm_sq_fd,norm_sq_series,condition_value,localized_value,fd_error_est";

inline void write_scan_csv(std::ostream& os, const std::vector<KernelProbe>& probes) {
    os << scan_csv_header << '\n';
    for (const auto& p : probes) {
        os << format_double(p.z.real()) << ',' << format_double(p.z.imag()) << ',' << format_double(p.one_minus_modulus) << ','
           << format_double(p.arg) << ',' << p.m.value() << ',' << format_double(p.norm_sq_fd) << ','
           << (p.norm_sq_series ? format_double(*p.norm_sq_series) : std::string()) << ',' << format_double(p.condition_value) << ','
           << format_double(p.localized_value) << ',' << format_double(p.fd_error_est) << '\n';
    }
}

}  // namespace dbr
