#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dbr/errors.hpp"

namespace dbr {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Maps an angle to (-pi, pi].
inline double normalize_angle(double t) {
    double r = std::remainder(t, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

/// A point of the closed unit disk stored both as a complex number and in
/// polar form (distance to the circle, argument).
///
/// Points produced by the approach-path generators sit at distances from the
/// circle far below the spacing of doubles near 1, so every quantity of the
/// form |e^{it} - z| or 1 - |z|^2 is evaluated from `delta` and `theta`
/// rather than from the rounded complex value.
class DiskPoint {
public:
    DiskPoint() = default;

    /// Point from its complex value; |z| <= 1 is required.
    static DiskPoint from_complex(cplx z) {
        const double r = std::abs(z);
        if (!(r <= 1.0)) throw DomainError("point " + to_string_approx(z) + " lies outside the closed unit disk");
        DiskPoint p;
        p.z_ = z;
        p.delta_ = 1.0 - r;
        p.theta_ = r == 0.0 ? 0.0 : std::arg(z);
        if (p.theta_ <= -pi) p.theta_ = pi;
        return p;
    }

    /// Point (1 - delta) e^{i theta}; 0 <= delta <= 1.
    static DiskPoint from_polar(double delta, double theta) {
        if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("distance to the circle must lie in [0, 1]");
        DiskPoint p;
        p.delta_ = delta;
        p.theta_ = normalize_angle(theta);
        p.z_ = std::polar(1.0 - delta, p.theta_);
        return p;
    }

    cplx value() const { return z_; }
    double one_minus_modulus() const { return delta_; }
    double arg() const { return theta_; }
    double modulus() const { return 1.0 - delta_; }
    bool on_circle() const { return delta_ == 0.0; }
    bool interior() const { return delta_ > 0.0; }

    /// 1 - |z|^2 without cancellation.
    double one_minus_modulus_sq() const { return delta_ * (2.0 - delta_); }

    DiskPoint conj() const { return from_polar(delta_, theta_ == pi ? pi : -theta_); }

    /// Requires a point of the open disk.
    const DiskPoint& require_interior(const char* what) const {
        if (!interior()) throw DomainError(std::string(what) + ": point " + to_string_approx(z_) + " is not in the open disk");
        return *this;
    }

    static std::string to_string_approx(cplx z) {
        return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i)";
    }

private:
    cplx z_{0.0, 0.0};
    double delta_ = 1.0;
    double theta_ = 0.0;
};

/// z^n by repeated squaring, n >= 0.
inline cplx ipow(cplx z, int n) {
    cplx r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

/// |e^{it} - z|^2 = delta^2 + 4 (1 - delta) sin^2((t - theta)/2).
inline double circle_distance_sq(double t, const DiskPoint& z) {
    const double s = std::sin(0.5 * (t - z.arg()));
    const double d = z.one_minus_modulus();
    return d * d + 4.0 * (1.0 - d) * s * s;
}

/// e^{it} - z, accurate when z is extremely close to e^{it}.
inline cplx circle_difference(double t, const DiskPoint& z) {
    const double phi = t - z.arg();
    const double s = std::sin(0.5 * phi);
    // e^{i phi} - 1 = -2 sin^2(phi/2) + i sin(phi)
    const cplx inner(-2.0 * s * s + z.one_minus_modulus(), std::sin(phi));
    return std::polar(1.0, z.arg()) * inner;
}

/// |1 - conj(a) z|^2 = |z - a|^2 + (1 - |a|^2)(1 - |z|^2) for a, z in the closed disk.
inline double disk_kernel_denominator_sq(const DiskPoint& a, const DiskPoint& z) {
    return std::norm(z.value() - a.value()) + a.one_minus_modulus_sq() * z.one_minus_modulus_sq();
}

}  // namespace dbr
