#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dbr/kernels.hpp"
#include "dbr/regions.hpp"
#include "dbr/symbol.hpp"

namespace dbr {

// ---------------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Uniform (by area) point with |z| < r_max.
inline cplx random_disk_point(Rng& rng, double r_max = 0.999) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = r_max * std::sqrt(u(rng));
    const double t = 2.0 * pi * u(rng) - pi;
    return std::polar(r, t);
}

inline std::vector<cplx> random_zeros(Rng& rng, int count, double r_max = 0.95) {
    std::vector<cplx> z;
    for (int i = 0; i < count; ++i) z.push_back(random_disk_point(rng, r_max));
    return z;
}

inline Symbol random_blaschke(Rng& rng, int max_zeros) {
    std::uniform_int_distribution<int> n(1, max_zeros);
    return Symbol(BlaschkeData::finite(random_zeros(rng, n(rng))), SingularAtoms{}, OuterLogDensity::zero());
}

inline SingularAtoms random_atoms(Rng& rng, int count) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SingularAtoms a;
    for (int i = 0; i < count; ++i) a.atoms.push_back({normalize_angle(2.0 * pi * u(rng) - pi), 0.05 + 0.95 * u(rng)});
    return a;
}

/// Atoms plus a constant density log|b| in [log 0.5, 0].
inline Symbol random_zero_free(Rng& rng) {
    std::uniform_int_distribution<int> n(1, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return Symbol(BlaschkeData{}, random_atoms(rng, n(rng)), OuterLogDensity::constant(std::log(0.5) * u(rng)));
}

/// Up to three zeros, up to two atoms and a constant density; never b = 1.
inline Symbol random_symbol(Rng& rng) {
    std::uniform_int_distribution<int> nz(0, 3), na(0, 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto zeros = random_zeros(rng, nz(rng));
    auto atoms = random_atoms(rng, na(rng));
    const double c = u(rng) < 0.5 ? std::log(0.5) * u(rng) : 0.0;
    if (zeros.empty() && atoms.empty() && c == 0.0) zeros.push_back(random_disk_point(rng, 0.95));
    return Symbol(BlaschkeData::finite(zeros), std::move(atoms), OuterLogDensity::constant(c));
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

struct IdentityResult {
    std::string name;
    std::string measure;  // "absolute", "relative" or "violations"
    std::size_t samples = 0;
    double max_error = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Sizes of each randomized check. `fault` names an identity whose left side is
/// perturbed (by 1e-3, or by a factor 10 for the inequality checks).
struct IdentitySuiteConfig {
    std::uint64_t seed = 42;
    std::size_t count = 1000;
    std::string fault;
};

namespace detail {

inline double rel_error(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

inline IdentityResult finish(IdentityResult r) {
    r.pass = r.max_error <= r.threshold;
    return r;
}

}  // namespace detail

inline IdentityResult check_magic_formula(Rng& rng, std::size_t n, double fault = 0.0) {
    IdentityResult r{"magic_formula", "absolute", n, 0.0, 1e-14, false};
    for (std::size_t i = 0; i < n; ++i) {
        const auto [lhs, rhs] = magic_formula_check(random_disk_point(rng), random_disk_point(rng));
        r.max_error = std::max(r.max_error, std::abs(lhs + fault - rhs));
    }
    return detail::finish(r);
}

inline IdentityResult check_norm_series_m0(Rng& rng, std::size_t products, std::size_t points, double fault = 0.0) {
    IdentityResult r{"norm_sq_vs_series_m0", "relative", products * points, 0.0, 1e-10, false};
    for (std::size_t i = 0; i < products; ++i) {
        const Symbol b = random_blaschke(rng, 10);
        for (std::size_t k = 0; k < points; ++k) {
            const DiskPoint z = DiskPoint::from_complex(random_disk_point(rng, 0.99));
            r.max_error = std::max(r.max_error, detail::rel_error(norm_sq(b, z) + fault, norm_sq_blaschke_series(b.blaschke(), z, KernelOrder(0))));
        }
    }
    return detail::finish(r);
}

inline IdentityResult check_series_vs_fd(Rng& rng, std::size_t products, int m, double fault = 0.0) {
    IdentityResult r{"series_vs_fd_m" + std::to_string(m), "relative", products, 0.0, m == 1 ? 1e-6 : 1e-4, false};
    for (std::size_t i = 0; i < products; ++i) {
        const Symbol b(BlaschkeData::finite(random_zeros(rng, 3)), SingularAtoms{}, OuterLogDensity::zero());
        const DiskPoint z = DiskPoint::from_complex(random_disk_point(rng, 0.9));
        const double s = norm_sq_blaschke_series(b.blaschke(), z, KernelOrder(m));
        const double f = norm_sq_fd(b, z, KernelOrder(m)).value;
        r.max_error = std::max(r.max_error, std::abs(f + fault - s) / std::max(std::abs(s), 1e-8));
    }
    return detail::finish(r);
}

/// Partial sums of sum_{n>=1} (1-x)^{n-1}/(2n).
inline double s_function_series(double x, int terms) {
    double s = 0.0, p = 1.0;
    for (int n = 1; n <= terms; ++n) {
        s += p / (2.0 * n);
        p *= 1.0 - x;
    }
    return s;
}

inline IdentityResult check_s_function(Rng& rng, std::size_t n, double fault = 0.0) {
    IdentityResult r{"s_function_series", "absolute", n + 1, 0.0, 1e-10, false};
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = i == n ? 1.0 : u(rng);
        const double closed = s_function(x);
        r.max_error = std::max(r.max_error, std::abs(closed + fault - s_function_series(x, 10000)));
        if (closed < 0.5) r.max_error = std::max(r.max_error, 1.0);
    }
    return detail::finish(r);
}

inline IdentityResult check_zero_free(Rng& rng, std::size_t symbols, std::size_t points, double fault = 0.0) {
    IdentityResult r{"zero_free_identity", "relative", symbols * points, 0.0, 1e-8, false};
    for (std::size_t i = 0; i < symbols; ++i) {
        const Symbol b = random_zero_free(rng);
        for (std::size_t k = 0; k < points; ++k) {
            const auto [lhs, rhs] = zero_free_identity_value(b, DiskPoint::from_complex(random_disk_point(rng, 0.95)));
            r.max_error = std::max(r.max_error, detail::rel_error(lhs + fault, rhs));
        }
    }
    return detail::finish(r);
}

inline IdentityResult check_decomposition(Rng& rng, std::size_t n, double fault = 0.0) {
    IdentityResult r{"decomposition", "relative", n, 0.0, 1e-12, false};
    for (std::size_t i = 0; i < n; ++i) {
        const Symbol b1 = random_symbol(rng);
        const Symbol b2 = random_symbol(rng);
        const auto [lhs, rhs] = decomposition_check(b1, b2, DiskPoint::from_complex(random_disk_point(rng, 0.95)));
        r.max_error = std::max(r.max_error, detail::rel_error(lhs + fault, rhs));
    }
    return detail::finish(r);
}

/// Random z in the disk and w in the closed disk outside S_z.
inline std::pair<DiskPoint, DiskPoint> random_admissible_pair(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const cplx zv = random_disk_point(rng);
        if (zv == cplx(0.0, 0.0)) continue;
        const DiskPoint z = DiskPoint::from_complex(zv);
        // A quarter of the w sit on the circle, where the estimate is tightest.
        const DiskPoint w = u(rng) < 0.25 ? DiskPoint::from_polar(0.0, 2.0 * pi * u(rng) - pi) : DiskPoint::from_complex(random_disk_point(rng));
        if (!in_sector_S(z, w)) return {z, w};
    }
}

inline IdentityResult check_localization_estimate(Rng& rng, std::size_t n, double fault = 0.0) {
    IdentityResult r{"localization_estimate", "violations", n, 0.0, 0.0, false};
    for (std::size_t i = 0; i < n; ++i) {
        const auto [z, w] = random_admissible_pair(rng);
        const auto c = estimate_check(z, w);
        if (!(c.lhs * (1.0 + 9000.0 * fault) <= c.rhs)) r.max_error += 1.0;
    }
    return detail::finish(r);
}

inline IdentityResult check_calc_lemma(Rng& rng, std::size_t n, double fault = 0.0) {
    IdentityResult r{"calc_lemma", "violations", n, 0.0, 0.0, false};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const RhoFunction rho = RhoFunction::power(0.05 + 0.95 * u(rng), 2.0 + 2.0 * u(rng));
        const double x_star = 0.1 * (1.0 - u(rng));
        const double x = x_star * (0.001 + 0.998 * u(rng));
        const auto c = calc_lemma_check(rho, x, x_star);
        if (!(c.lhs / (1.0 + 9000.0 * fault) >= c.rhs)) r.max_error += 1.0;
    }
    return detail::finish(r);
}

/// Every identity check, each with its own generator seeded from the suite seed.
inline std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& cfg) {
    if (cfg.count < 1) throw ContractError("identity count must be at least 1");
    auto fault = [&](const std::string& name) { return cfg.fault == name ? 1e-3 : 0.0; };
    std::vector<IdentityResult> out;
    std::uint64_t k = 0;
    auto rng = [&] { return Rng(cfg.seed * 1000003ULL + (++k)); };
    const std::size_t n = cfg.count;
    {
        auto g = rng();
        out.push_back(check_magic_formula(g, n, fault("magic_formula")));
    }
    {
        auto g = rng();
        out.push_back(check_norm_series_m0(g, std::min<std::size_t>(n, 200), 100, fault("norm_sq_vs_series_m0")));
    }
    for (int m : {1, 2}) {
        auto g = rng();
        out.push_back(check_series_vs_fd(g, std::min<std::size_t>(n, 50), m, fault("series_vs_fd_m" + std::to_string(m))));
    }
    {
        auto g = rng();
        out.push_back(check_s_function(g, n, fault("s_function_series")));
    }
    {
        auto g = rng();
        out.push_back(check_zero_free(g, std::min<std::size_t>(n, 100), 100, fault("zero_free_identity")));
    }
    {
        auto g = rng();
        out.push_back(check_decomposition(g, n, fault("decomposition")));
    }
    {
        auto g = rng();
        out.push_back(check_localization_estimate(g, n, fault("localization_estimate")));
    }
    {
        auto g = rng();
        out.push_back(check_calc_lemma(g, n, fault("calc_lemma")));
    }
    if (!cfg.fault.empty() &&
        std::none_of(out.begin(), out.end(), [&](const IdentityResult& r) { return r.name == cfg.fault; }))
        throw ContractError("unknown identity '" + cfg.fault + "' for fault injection");
    return out;
}

}  // namespace dbr
