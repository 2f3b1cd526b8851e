#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "dbr/circle_integrals.hpp"
#include "dbr/disk_point.hpp"
#include "dbr/errors.hpp"
#include "dbr/symbol.hpp"

namespace dbr {

/// Derivative order m of the kernel dbar^m k_z. Capped at 4: the iterated
/// finite-difference Laplacian loses roughly four digits per order.
class KernelOrder {
public:
    static constexpr int max_order = 4;

    constexpr KernelOrder() = default;
    explicit constexpr KernelOrder(int m) : m_(m) {
        if (m < 0 || m > max_order) throw ContractError("kernel order must lie in [0, 4]");
    }
    constexpr int value() const { return m_; }
    constexpr operator int() const { return m_; }

private:
    int m_ = 0;
};

/// One evaluation record at a point z for a derivative order m.
struct KernelProbe {
    cplx z;
    double one_minus_modulus = 0.0;
    double arg = 0.0;
    KernelOrder m;
    double norm_sq_fd = 0.0;
    double fd_error_est = 0.0;
    bool fd_warning = false;
    std::optional<double> norm_sq_series;
    std::optional<double> norm_sq_zero_free;
    double condition_value = 0.0;
    double localized_value = 0.0;
    double cross_check_tolerance = 0.0;
    bool cross_check_ok = true;
};

// ---------------------------------------------------------------------------
// Kernel values
// ---------------------------------------------------------------------------

/// ||k_z||^2 = (1 - |b(z)|^2)/(1 - |z|^2), with 1 - |b|^2 = -expm1(log|b|^2).
inline double norm_sq(const Symbol& sym, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    z.require_interior("norm_sq");
    return -std::expm1(log_modulus_sq(sym, z, quad)) / z.one_minus_modulus_sq();
}

inline double norm_sq(const Symbol& sym, cplx z, const QuadratureConfig& quad = {}) {
    return norm_sq(sym, detail::open_disk_point(z, "norm_sq"), quad);
}

/// k_z(w) = (1 - conj(b(z)) b(w)) / (1 - conj(z) w); at w = z this is norm_sq.
inline cplx kernel_value(const Symbol& sym, cplx z, cplx w, const QuadratureConfig& quad = {}) {
    const DiskPoint pz = detail::open_disk_point(z, "kernel_value");
    const DiskPoint pw = detail::open_disk_point(w, "kernel_value");
    if (z == w) return norm_sq(sym, pz, quad);
    const cplx bz = eval_symbol(sym, pz, quad);
    const cplx bw = eval_symbol(sym, pw, quad);
    return (1.0 - std::conj(bz) * bw) / (1.0 - std::conj(z) * w);
}

/// 1 - conj(z) w from the polar forms; exact cancellation-free for points near the circle.
inline cplx one_minus_conj_product(const DiskPoint& z, const DiskPoint& w) {
    const double rho = (1.0 - z.one_minus_modulus()) * (1.0 - w.one_minus_modulus());
    const double phi = w.arg() - z.arg();
    const double s = std::sin(0.5 * phi);
    const double re = z.one_minus_modulus() + w.one_minus_modulus() - z.one_minus_modulus() * w.one_minus_modulus() + 2.0 * rho * s * s;
    return {re, -rho * std::sin(phi)};
}

/// k_z(w) for points given by their distance to the circle, which may be below
/// the resolution of their complex values.
inline cplx kernel_value(const Symbol& sym, const DiskPoint& z, const DiskPoint& w, const QuadratureConfig& quad = {}) {
    z.require_interior("kernel_value");
    w.require_interior("kernel_value");
    if (z.one_minus_modulus() == w.one_minus_modulus() && z.arg() == w.arg()) return norm_sq(sym, z, quad);
    const cplx bz = eval_symbol(sym, z, quad);
    const cplx bw = eval_symbol(sym, w, quad);
    return (1.0 - std::conj(bz) * bw) / one_minus_conj_product(z, w);
}

/// k_1(w) = (1 - conj(b(1)) b(w)) / (1 - w) for a supplied unimodular boundary value b(1).
inline cplx boundary_kernel_value(const Symbol& sym, cplx b1, cplx w, const QuadratureConfig& quad = {}) {
    if (std::abs(std::abs(b1) - 1.0) > 1e-8) throw ContractError("boundary value b(1) must be unimodular");
    const DiskPoint pw = detail::open_disk_point(w, "boundary_kernel_value");
    return (1.0 - std::conj(b1) * eval_symbol(sym, pw, quad)) / (1.0 - w);
}

// ---------------------------------------------------------------------------
// ||dbar^m k_z||^2 by finite differences
// ---------------------------------------------------------------------------

struct FdEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    bool warning = false;  // Richardson levels disagree by more than 1e-3 relative
    double step = 0.0;
};

namespace detail {

/// Largest stencil step relative to 1 - |z|; keeps the outermost stencil
/// point 10 steps away from the circle.
inline constexpr double fd_initial_relative_step = 0.08;
inline constexpr int fd_levels = 7;

/// z + d with 1 - |z + d| and the angle formed relative to z, so that stencil
/// points keep full relative accuracy in their distance to the circle.
inline DiskPoint offset_point(const DiskPoint& z, cplx d) {
    const cplx zv = z.value();
    const double r = std::abs(zv);
    if (r == 0.0) return DiskPoint::from_complex(d);
    const cplx w = zv + d;
    const cplx zd = std::conj(zv) * d;
    // |w| - |z| = (2 Re(conj(z) d) + |d|^2) / (|w| + |z|)
    const double grow = (2.0 * zd.real() + std::norm(d)) / (std::abs(w) + r);
    const double delta = z.one_minus_modulus() - grow;
    if (!(delta > 0.0)) throw DomainError("norm_sq_fd: stencil leaves the disk");
    return DiskPoint::from_polar(delta, z.arg() + std::atan2(zd.imag(), r * r + zd.real()));
}

/// (Delta/4)^m at the center; u takes the offset from the center.
template <class U>
double iterated_laplacian(const U& u, double h, int m) {
    const int n = 2 * m + 1;
    std::vector<double> grid(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) grid[i * n + j] = u(cplx((i - m) * h, (j - m) * h));
    int size = n;
    const double scale = 1.0 / (6.0 * h * h);
    for (int level = 0; level < m; ++level) {
        const int next = size - 2;
        std::vector<double> out(static_cast<std::size_t>(next * next));
        for (int i = 0; i < next; ++i) {
            for (int j = 0; j < next; ++j) {
                auto g = [&](int di, int dj) { return grid[(i + 1 + di) * size + (j + 1 + dj)]; };
                const double edge = g(1, 0) + g(-1, 0) + g(0, 1) + g(0, -1);
                const double corner = g(1, 1) + g(1, -1) + g(-1, 1) + g(-1, -1);
                out[i * next + j] = scale * (4.0 * edge + corner - 20.0 * g(0, 0));
            }
        }
        grid = std::move(out);
        size = next;
    }
    return grid[0] / std::pow(4.0, m);
}

}  // namespace detail

/// (Delta/4)^m of u(z) = ||k_z||^2 (d^m dbar^m = (Delta/4)^m since the Wirtinger
/// derivatives commute), from the isotropic 9-point Laplacian iterated m times.
///
/// Steps h_j = 0.08 (1 - |z|) 2^{-j}; consecutive levels are combined by
/// Richardson extrapolation and the pair of extrapolants that agree best is
/// reported, their disagreement being the error estimate.
inline FdEstimate norm_sq_fd(const Symbol& sym, const DiskPoint& z, KernelOrder m, const QuadratureConfig& quad = {}) {
    z.require_interior("norm_sq_fd");
    auto u = [&](cplx d) { return norm_sq(sym, detail::offset_point(z, d), quad); };
    const double u0 = norm_sq(sym, z, quad);
    if (m == 0) return {u0, 0.0, false, 0.0};
    const double s = z.one_minus_modulus();
    double h = detail::fd_initial_relative_step * s;
    if (!(s > 10.0 * h) || !(std::abs(z.value()) + m * h * std::sqrt(2.0) < 1.0))
        throw DomainError("norm_sq_fd: point too close to the circle for the stencil");
    std::vector<double> lap, rich;
    for (int j = 0; j < detail::fd_levels; ++j, h *= 0.5) {
        lap.push_back(detail::iterated_laplacian(u, h, m));
        if (j > 0) rich.push_back((4.0 * lap[j] - lap[j - 1]) / 3.0);
    }
    std::size_t best = 1;
    double err = std::abs(rich[1] - rich[0]);
    for (std::size_t j = 2; j < rich.size(); ++j) {
        const double d = std::abs(rich[j] - rich[j - 1]);
        if (d < err) err = d, best = j;
    }
    const double value = rich[best];
    const double floor = 1e-6 * std::abs(u0) / std::pow(s, 2 * m);
    const double step = detail::fd_initial_relative_step * s * std::ldexp(1.0, -static_cast<int>(best) - 1);
    return {value, err, err > 1e-3 * std::max(std::abs(value), floor), step};
}

inline FdEstimate norm_sq_fd(const Symbol& sym, cplx z, KernelOrder m, const QuadratureConfig& quad = {}) {
    return norm_sq_fd(sym, detail::open_disk_point(z, "norm_sq_fd"), m, quad);
}

// ---------------------------------------------------------------------------
// ||dbar^m k_z||^2 for Blaschke products by the C_{k,l} series
// ---------------------------------------------------------------------------

namespace detail {

/// Derivatives 0..m at z of the single factor (|a|/a)(a - z)/(1 - conj(a) z).
inline std::vector<cplx> blaschke_factor_derivatives(const DiskPoint& a, cplx z, int m) {
    std::vector<cplx> out(m + 1, cplx(0.0, 0.0));
    const cplx av = a.value();
    if (av == cplx(0.0, 0.0)) {
        out[0] = z;
        if (m >= 1) out[1] = 1.0;
        return out;
    }
    const cplx unit = std::abs(av) / av;
    const cplx ac = std::conj(av);
    const cplx den = 1.0 - ac * z;
    out[0] = unit * (av - z) / den;
    double rfact = 1.0;
    for (int r = 1; r <= m; ++r) {
        rfact *= r;
        out[r] = -unit * a.one_minus_modulus_sq() * rfact * ipow(ac, r - 1) / ipow(den, r + 1);
    }
    return out;
}

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

}  // namespace detail

/// sum_{k,l=0}^m C_{k,l}(z): term-wise d^m dbar^m of
/// ||k_z||^2 = sum_j |b_{j-1}(z)|^2 (1 - |a_j|^2)/|1 - conj(a_j) z|^2.
///
/// Partial products b_j and their derivatives are carried along by the
/// Leibniz rule. The double sum is formed in complex arithmetic; its imaginary
/// part must vanish to 1e-10 relative and is then dropped.
inline double norm_sq_blaschke_series(const BlaschkeData& data, const DiskPoint& z, KernelOrder order) {
    z.require_interior("norm_sq_blaschke_series");
    const int m = order;
    const cplx zv = z.value();
    std::vector<cplx> partial(m + 1, cplx(0.0, 0.0));
    partial[0] = 1.0;
    std::vector<double> fact(m + 1, 1.0);
    for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * i;

    cplx total(0.0, 0.0);
    double magnitude = 0.0;
    for (const auto& a : data.zeros) {
        const cplx av = a.value();
        const cplx ac = std::conj(av);
        const cplx den = 1.0 - ac * zv;  // (1 - a conj(z)) is its conjugate
        const double w = a.one_minus_modulus_sq();
        for (int k = 0; k <= m; ++k) {
            for (int l = 0; l <= m; ++l) {
                const cplx term = detail::binomial(m, k) * detail::binomial(m, l) * partial[m - k] * std::conj(partial[m - l]) *
                                  ipow(ac, k) * ipow(av, l) * fact[k] * fact[l] * w / (ipow(den, 1 + k) * ipow(std::conj(den), 1 + l));
                total += term;
                magnitude += std::abs(term);
            }
        }
        const auto factor = detail::blaschke_factor_derivatives(a, zv, m);
        std::vector<cplx> next(m + 1, cplx(0.0, 0.0));
        for (int n = 0; n <= m; ++n)
            for (int i = 0; i <= n; ++i) next[n] += detail::binomial(n, i) * partial[i] * factor[n - i];
        partial = std::move(next);
    }
    if (std::abs(total.imag()) > 1e-10 * std::max(magnitude, 1e-300))
        throw NumericError("Blaschke norm series has a non-negligible imaginary part", std::abs(total.imag()) / magnitude);
    return total.real();
}

inline double norm_sq_blaschke_series(const Symbol& sym, const DiskPoint& z, KernelOrder m) {
    if (!sym.is_pure_blaschke()) throw ContractError("norm_sq_blaschke_series needs a pure Blaschke product");
    return norm_sq_blaschke_series(sym.blaschke(), z, m);
}

inline double norm_sq_blaschke_series(const BlaschkeData& data, cplx z, KernelOrder m) {
    return norm_sq_blaschke_series(data, detail::open_disk_point(z, "norm_sq_blaschke_series"), m);
}

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

/// S(x) = sum_{n>=1} (1-x)^{n-1}/(2n) = -log(x) / (2(1-x)), S(1) = 1/2.
inline double s_function(double x) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("s_function is defined on (0, 1]");
    if (x == 1.0) return 0.5;
    const double lg = x > 0.5 ? std::log1p(x - 1.0) : std::log(x);
    return -lg / (2.0 * (1.0 - x));
}

/// S(x) from log x; stays finite where x itself underflows.
inline double s_function_of_log(double log_x) {
    if (!(log_x <= 0.0)) throw DomainError("s_function needs log x <= 0");
    if (log_x == 0.0) return 0.5;
    if (log_x > -0.6931471805599453) return s_function(std::exp(log_x));
    return -log_x / (-2.0 * std::expm1(log_x));
}

/// Two sides of integral dmu / |1 - conj(zeta) z|^2 = S(|b(z)|^2) ||k_z||^2 for zero-free b.
inline std::pair<double, double> zero_free_identity_value(const Symbol& sym, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    if (!sym.is_zero_free()) throw ContractError("zero_free_identity_value needs a symbol without Blaschke zeros");
    z.require_interior("zero_free_identity_value");
    double lhs = 0.0;
    for (const auto& a : sym.singular().atoms) lhs += a.mass / circle_distance_sq(a.theta, z);
    lhs += density_kernel_power_full(sym.outer(), z, 1, quad);
    const double rhs = s_function_of_log(log_modulus_sq(sym, z, quad)) * norm_sq(sym, z, quad);
    return {lhs, rhs};
}

/// Two sides of ||k_z^{b1 b2}||^2 = ||k_z^{b1}||^2 + |b1(z)|^2 ||k_z^{b2}||^2.
inline std::pair<double, double> decomposition_check(const Symbol& first, const Symbol& second, const DiskPoint& z,
                                                     const QuadratureConfig& quad = {}) {
    const double lhs = norm_sq(first.times(second), z, quad);
    const double b1_sq = std::exp(log_modulus_sq(first, z, quad));
    const double rhs = norm_sq(first, z, quad) + b1_sq * norm_sq(second, z, quad);
    return {lhs, rhs};
}

/// Two sides of 1 - |z-a|^2/|1-conj(a)z|^2 = (1-|z|^2)(1-|a|^2)/|1-conj(a)z|^2.
inline std::pair<double, double> magic_formula_check(cplx a, cplx z) {
    if (!(std::abs(a) < 1.0) || !(std::abs(z) < 1.0)) throw DomainError("magic_formula_check needs points of the open disk");
    // Both sides lose up to eps / |1 - conj(a) z| in double; extended precision
    // keeps the comparison at the 1e-14 level for |a|, |z| up to 0.999.
    using ld = long double;
    const std::complex<ld> al(a.real(), a.imag()), zl(z.real(), z.imag());
    const ld den = std::norm(ld(1) - std::conj(al) * zl);
    const ld lhs = ld(1) - std::norm(zl - al) / den;
    const ld rhs = (ld(1) - std::norm(zl)) * (ld(1) - std::norm(al)) / den;
    return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

}  // namespace dbr
