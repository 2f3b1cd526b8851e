#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "dbr/disk_point.hpp"
#include "dbr/quadrature.hpp"
#include "dbr/symbol.hpp"

namespace dbr {

/// integral of dm(zeta) / |1 - conj(zeta) z|^{2s} over the whole circle, s >= 1.
///
/// Equals 2F1(s, s; 1; |z|^2); Euler's transformation turns it into the
/// polynomial sum_{n<s} C(s-1, n)^2 |z|^{2n} divided by (1 - |z|^2)^{2s-1}.
inline double mean_kernel_power(const DiskPoint& z, int s) {
    if (s < 1) throw ContractError("kernel power exponent must be at least 1");
    if (z.on_circle()) return std::numeric_limits<double>::infinity();
    const double x = (1.0 - z.one_minus_modulus()) * (1.0 - z.one_minus_modulus());
    double poly = 0.0, binom = 1.0, xn = 1.0;
    for (int n = 0; n < s; ++n) {
        poly += binom * binom * xn;
        binom = binom * (s - 1 - n) / (n + 1);
        xn *= x;
    }
    return poly / std::pow(z.one_minus_modulus_sq(), 2 * s - 1);
}

/// (1/2pi) integral over lo < t < hi of -log|b(e^{it})| / |e^{it} - z|^{2s}.
inline QuadratureResult<double> density_kernel_power(const OuterLogDensity& outer, const DiskPoint& z, int s, double lo, double hi,
                                                     const QuadratureConfig& quad = {}) {
    if (outer.is_zero() || !(hi > lo)) return {};
    std::vector<double> centers = outer.singular_angles();
    centers.push_back(0.0);
    centers.push_back(z.arg());
    auto f = [&](double t) {
        const double d2 = circle_distance_sq(t, z);
        return -outer(t) / std::pow(d2, s);
    };
    return integrate_arc<double>(f, lo, hi, centers, quad);
}

/// Same integral over the whole circle; closed form for constant densities.
inline double density_kernel_power_full(const OuterLogDensity& outer, const DiskPoint& z, int s, const QuadratureConfig& quad = {}) {
    if (outer.is_zero()) return 0.0;
    if (auto c = outer.constant_value()) return -*c * mean_kernel_power(z, s);
    return density_kernel_power(outer, z, s, -pi, pi, quad).value;
}

}  // namespace dbr
