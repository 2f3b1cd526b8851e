#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dbr/disk_point.hpp"
#include "dbr/errors.hpp"
#include "dbr/quadrature.hpp"
#include "dbr/rho.hpp"

namespace dbr {

// ---------------------------------------------------------------------------
// Blaschke zeros
// ---------------------------------------------------------------------------

/// Zero sequence of the Blaschke factor, finite after truncation.
///
/// `tail_mass` is sum (1 - |a_n|) over zeros dropped by truncation; the
/// discarded factors move b(z) by at most 2 * tail_mass / (1 - |z|).
struct BlaschkeData {
    std::vector<DiskPoint> zeros;
    double truncation_tolerance = 1e-12;
    double tail_mass = 0.0;

    static BlaschkeData finite(const std::vector<cplx>& zs) {
        BlaschkeData d;
        d.zeros.reserve(zs.size());
        for (cplx a : zs) {
            if (!(std::abs(a) < 1.0)) throw ConstructionError("Blaschke zero " + DiskPoint::to_string_approx(a) + " is not in the open disk");
            d.zeros.push_back(DiskPoint::from_complex(a));
        }
        return d;
    }

    void validate() const {
        if (!(truncation_tolerance > 0.0)) throw ConstructionError("truncation tolerance must be positive");
        if (!(tail_mass >= 0.0) || !std::isfinite(tail_mass)) throw ConstructionError("Blaschke tail mass must be finite and non-negative");
        for (const auto& a : zeros)
            if (!a.interior()) throw ConstructionError("Blaschke zero on the unit circle");
    }

    double truncation_error_bound(const DiskPoint& z) const {
        return tail_mass == 0.0 ? 0.0 : 2.0 * tail_mass / z.one_minus_modulus();
    }

    bool empty() const { return zeros.empty(); }
};

/// Parametric infinite zero sequences, truncated on demand.
///
/// Two shapes are supported: zeros on the boundary curve of an approach
/// region, a_n = (1 - rho(x_n)) e^{i x_n} with x_n = x0 * ratio^(n-1), and
/// geometric sequences a_n = (1 - d0 q^(n-1)) e^{i t0 s^(n-1)}.
class ZeroFamily {
public:
    struct OnRhoCurve {
        RhoFunction rho;
        double x0;
        double ratio;
    };
    struct Geometric {
        double delta0, delta_ratio;
        double angle0, angle_ratio;
    };

    static ZeroFamily on_rho_curve(RhoFunction rho, double x0 = 0.25, double ratio = 0.25) {
        if (!(x0 > 0.0) || !(ratio > 0.0 && ratio < 1.0)) throw ConstructionError("zero family needs x0 > 0 and 0 < ratio < 1");
        if (!(rho(x0) < 1.0)) throw ConstructionError("zero family: rho(x0) must be below 1");
        return ZeroFamily(OnRhoCurve{std::move(rho), x0, ratio});
    }

    static ZeroFamily geometric(double delta0, double delta_ratio, double angle0, double angle_ratio) {
        if (!(delta0 > 0.0 && delta0 < 1.0) || !(delta_ratio > 0.0 && delta_ratio < 1.0))
            throw ConstructionError("geometric zero family needs 0 < delta0 < 1 and 0 < delta_ratio < 1");
        if (!std::isfinite(angle0) || !std::isfinite(angle_ratio)) throw ConstructionError("geometric zero family angles must be finite");
        return ZeroFamily(Geometric{delta0, delta_ratio, angle0, angle_ratio});
    }

    /// The n-th zero, n >= 1.
    DiskPoint zero(int n) const {
        if (const auto* c = std::get_if<OnRhoCurve>(&form_)) {
            const double x = c->x0 * std::pow(c->ratio, n - 1);
            return DiskPoint::from_polar(c->rho(x), x);
        }
        const auto& g = std::get<Geometric>(form_);
        return DiskPoint::from_polar(g.delta0 * std::pow(g.delta_ratio, n - 1), g.angle0 * std::pow(g.angle_ratio, n - 1));
    }

    /// sum_{n > count} (1 - |a_n|).
    double tail_mass(int count) const {
        if (const auto* g = std::get_if<Geometric>(&form_))
            return g->delta0 * std::pow(g->delta_ratio, count) / (1.0 - g->delta_ratio);
        double sum = 0.0;
        for (int n = count + 1; n < count + 4000; ++n) {
            const double d = zero(n).one_minus_modulus();
            sum += d;
            if (d <= 1e-18 * sum || d < 1e-300) break;
        }
        return sum;
    }

    /// First `count` zeros with the tail mass recorded.
    BlaschkeData take(int count, double tolerance = 1e-12) const {
        if (count < 0) throw ConstructionError("zero count must be non-negative");
        BlaschkeData d;
        d.truncation_tolerance = tolerance;
        for (int n = 1; n <= count; ++n) d.zeros.push_back(zero(n));
        d.tail_mass = tail_mass(count);
        return d;
    }

    /// Smallest prefix for which 2 * tail / min_distance < tolerance, where
    /// min_distance bounds 1 - |z| from below over the intended evaluation points.
    BlaschkeData truncate(double tolerance, double min_distance, int max_count = 100000) const {
        if (!(tolerance > 0.0) || !(min_distance > 0.0)) throw ConstructionError("truncation needs positive tolerance and distance");
        for (int n = 0; n <= max_count; ++n) {
            if (2.0 * tail_mass(n) / min_distance < tolerance) return take(n, tolerance);
        }
        throw ConstructionError("zero family does not reach the truncation tolerance within " + std::to_string(max_count) + " zeros");
    }

private:
    explicit ZeroFamily(std::variant<OnRhoCurve, Geometric> f) : form_(std::move(f)) {}
    std::variant<OnRhoCurve, Geometric> form_;
};

// ---------------------------------------------------------------------------
// Singular atoms
// ---------------------------------------------------------------------------

struct Atom {
    double theta;  // (-pi, pi]
    double mass;   // > 0
};

/// Atomic singular measure nu on the circle.
struct SingularAtoms {
    std::vector<Atom> atoms;

    void validate() const {
        std::vector<double> thetas;
        for (const auto& a : atoms) {
            if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw ConstructionError("singular atom masses must be positive and finite");
            if (!std::isfinite(a.theta)) throw ConstructionError("singular atom angle must be finite");
            thetas.push_back(normalize_angle(a.theta));
        }
        std::sort(thetas.begin(), thetas.end());
        if (std::adjacent_find(thetas.begin(), thetas.end()) != thetas.end())
            throw ConstructionError("singular atoms must sit at distinct angles");
    }

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.mass;
        return s;
    }

    bool empty() const { return atoms.empty(); }
};

// ---------------------------------------------------------------------------
// Outer factor
// ---------------------------------------------------------------------------

/// Boundary density log|b(e^{it})| <= 0 as a sum of registry components.
class OuterLogDensity {
public:
    struct Constant {
        double value;  // log|b|, <= 0
    };
    /// -scale * |t - theta0|^alpha with the angular distance taken in (-pi, pi].
    struct PowerCusp {
        double alpha;
        double theta0;
        double scale = 1.0;
    };
    /// Samples at t_i = -pi + 2 pi i / n, periodic linear interpolation.
    struct Table {
        std::vector<double> values;
    };
    using Component = std::variant<Constant, PowerCusp, Table>;

    OuterLogDensity() = default;

    static OuterLogDensity zero() { return {}; }
    static OuterLogDensity constant(double c) { return OuterLogDensity({Constant{c}}); }
    static OuterLogDensity power_cusp(double alpha, double theta0, double scale = 1.0) {
        return OuterLogDensity({PowerCusp{alpha, normalize_angle(theta0), scale}});
    }
    static OuterLogDensity table(std::vector<double> values) { return OuterLogDensity({Table{std::move(values)}}); }

    explicit OuterLogDensity(std::vector<Component> parts, std::optional<double> certificate = std::nullopt)
        : parts_(std::move(parts)), certificate_(certificate) {}

    OuterLogDensity with_certificate(double cert) const {
        OuterLogDensity d = *this;
        d.certificate_ = cert;
        return d;
    }

    /// Density of the product of two outer functions.
    OuterLogDensity plus(const OuterLogDensity& other) const {
        std::vector<Component> all = parts_;
        all.insert(all.end(), other.parts_.begin(), other.parts_.end());
        return OuterLogDensity(std::move(all));
    }

    const std::vector<Component>& components() const { return parts_; }
    const std::optional<double>& certificate() const { return certificate_; }

    /// log|b(e^{it})|; -infinity never occurs for the registry forms.
    double operator()(double t) const {
        double s = 0.0;
        for (const auto& p : parts_) s += component_value(p, t);
        return s;
    }

    /// True when the density vanishes identically.
    bool is_zero() const {
        for (const auto& p : parts_) {
            if (const auto* c = std::get_if<Constant>(&p)) {
                if (c->value != 0.0) return false;
            } else {
                return false;
            }
        }
        return true;
    }

    /// The constant value when every component is constant.
    std::optional<double> constant_value() const {
        double s = 0.0;
        for (const auto& p : parts_) {
            const auto* c = std::get_if<Constant>(&p);
            if (!c) return std::nullopt;
            s += c->value;
        }
        return s;
    }

    /// Closed-form value of the integral of -log|b| dm.
    double log_mass() const {
        double s = 0.0;
        for (const auto& p : parts_) {
            if (const auto* c = std::get_if<Constant>(&p)) s += -c->value;
            else if (const auto* q = std::get_if<PowerCusp>(&p)) s += q->scale * std::pow(pi, q->alpha) / (q->alpha + 1.0);
            else {
                const auto& v = std::get<Table>(p).values;
                double m = 0.0;
                for (double x : v) m += x;
                s += -m / static_cast<double>(v.size());
            }
        }
        return s;
    }

    /// Angles where the density is not smooth (quadrature breakpoints).
    std::vector<double> singular_angles() const {
        std::vector<double> out;
        for (const auto& p : parts_) {
            if (const auto* q = std::get_if<PowerCusp>(&p)) {
                out.push_back(q->theta0);
                out.push_back(normalize_angle(q->theta0 + pi));
            } else if (const auto* t = std::get_if<Table>(&p)) {
                const std::size_t n = t->values.size();
                if (n <= 256)
                    for (std::size_t i = 0; i < n; ++i) out.push_back(-pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n));
            }
        }
        return out;
    }

    void validate(const QuadratureConfig& quad = {}) const {
        for (const auto& p : parts_) {
            if (const auto* c = std::get_if<Constant>(&p)) {
                if (!(c->value <= 0.0) || !std::isfinite(c->value)) throw ConstructionError("constant log-modulus density must be finite and <= 0");
            } else if (const auto* q = std::get_if<PowerCusp>(&p)) {
                if (!(q->alpha > 0.0) || !std::isfinite(q->alpha)) throw ConstructionError("power-cusp density needs alpha > 0");
                if (!(q->scale > 0.0) || !std::isfinite(q->scale)) throw ConstructionError("power-cusp density needs scale > 0");
            } else {
                const auto& v = std::get<Table>(p).values;
                if (v.size() < 2) throw ConstructionError("density table needs at least two samples");
                for (double x : v)
                    if (!(x <= 0.0) || !std::isfinite(x)) throw ConstructionError("density table values must be finite and <= 0");
            }
        }
        if (certificate_) {
            if (!(*certificate_ >= 0.0) || !std::isfinite(*certificate_)) throw ConstructionError("integrability certificate must be finite and >= 0");
            auto f = [this](double t) { return -(*this)(t); };
            const double numeric = integrate_arc<double>(f, -pi, pi, singular_angles(), quad).value;
            if (std::abs(numeric - *certificate_) > 0.01 * std::max(*certificate_, 1e-300))
                throw ConstructionError("integrability certificate " + std::to_string(*certificate_) +
                                        " disagrees with the computed value " + std::to_string(numeric) + " by more than 1%");
        }
    }

private:
    static double component_value(const Component& p, double t) {
        if (const auto* c = std::get_if<Constant>(&p)) return c->value;
        if (const auto* q = std::get_if<PowerCusp>(&p)) return -q->scale * std::pow(std::abs(normalize_angle(t - q->theta0)), q->alpha);
        const auto& v = std::get<Table>(p).values;
        const double n = static_cast<double>(v.size());
        double u = (normalize_angle(t) + pi) / (2.0 * pi) * n;  // in [0, n]
        double fl = std::floor(u);
        std::size_t i = static_cast<std::size_t>(fl) % v.size();
        std::size_t j = (i + 1) % v.size();
        double w = u - fl;
        return (1.0 - w) * v[i] + w * v[j];
    }

    std::vector<Component> parts_;
    std::optional<double> certificate_;
};

// ---------------------------------------------------------------------------
// Symbol
// ---------------------------------------------------------------------------

/// Analytic self-map b = B * S_nu * b_o of the disk given by its Nevanlinna data.
class Symbol {
public:
    Symbol(BlaschkeData blaschke, SingularAtoms singular, OuterLogDensity outer, const QuadratureConfig& quad = {})
        : blaschke_(std::move(blaschke)), singular_(std::move(singular)), outer_(std::move(outer)) {
        blaschke_.validate();
        singular_.validate();
        outer_.validate(quad);
        if (blaschke_.empty() && blaschke_.tail_mass == 0.0 && singular_.empty() && outer_.is_zero())
            throw ConstructionError("symbol with no zeros, no atoms and zero outer density is b = 1, which does not map into the open disk");
    }

    const BlaschkeData& blaschke() const { return blaschke_; }
    const SingularAtoms& singular() const { return singular_; }
    const OuterLogDensity& outer() const { return outer_; }

    bool is_pure_blaschke() const { return singular_.empty() && outer_.is_zero(); }
    bool is_zero_free() const { return blaschke_.empty() && blaschke_.tail_mass == 0.0; }

    /// Symbol of the product b1 * b2.
    Symbol times(const Symbol& other) const {
        BlaschkeData z = blaschke_;
        z.zeros.insert(z.zeros.end(), other.blaschke_.zeros.begin(), other.blaschke_.zeros.end());
        z.tail_mass += other.blaschke_.tail_mass;
        z.truncation_tolerance = std::min(z.truncation_tolerance, other.blaschke_.truncation_tolerance);
        SingularAtoms s = singular_;
        s.atoms.insert(s.atoms.end(), other.singular_.atoms.begin(), other.singular_.atoms.end());
        return Symbol(std::move(z), std::move(s), outer_.plus(other.outer_));
    }

private:
    BlaschkeData blaschke_;
    SingularAtoms singular_;
    OuterLogDensity outer_;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline DiskPoint open_disk_point(cplx z, const char* what) {
    if (!(std::abs(z) < 1.0)) throw DomainError(std::string(what) + ": |z| >= 1 at " + DiskPoint::to_string_approx(z));
    return DiskPoint::from_complex(z);
}

inline cplx blaschke_factor(const DiskPoint& a, cplx z) {
    const cplx av = a.value();
    if (av == cplx(0.0, 0.0)) return z;
    const double r = std::abs(av);
    return (r / av) * (av - z) / (1.0 - std::conj(av) * z);
}

inline std::vector<double> quad_centers(const OuterLogDensity& outer, const DiskPoint& z) {
    std::vector<double> c = outer.singular_angles();
    c.push_back(0.0);
    c.push_back(z.arg());
    return c;
}

}  // namespace detail

/// Finite Blaschke product prod (|a|/a)(a - z)/(1 - conj(a) z); the factor for a = 0 is z.
inline cplx eval_blaschke(const BlaschkeData& data, const DiskPoint& z) {
    z.require_interior("eval_blaschke");
    cplx prod(1.0, 0.0);
    for (const auto& a : data.zeros) prod *= detail::blaschke_factor(a, z.value());
    return prod;
}

inline cplx eval_blaschke(const BlaschkeData& data, cplx z) {
    return eval_blaschke(data, detail::open_disk_point(z, "eval_blaschke"));
}

/// Herglotz exponent sum mass * (zeta + z)/(zeta - z) of an atomic measure.
inline cplx singular_exponent(const SingularAtoms& atoms, const DiskPoint& z) {
    cplx s(0.0, 0.0);
    for (const auto& a : atoms.atoms) {
        const cplx diff = circle_difference(a.theta, z);
        s += a.mass * (std::polar(1.0, a.theta) + z.value()) / diff;
    }
    return s;
}

/// exp(-sum mass (zeta + z)/(zeta - z)).
inline cplx eval_singular_inner(const SingularAtoms& atoms, const DiskPoint& z) {
    z.require_interior("eval_singular_inner");
    return std::exp(-singular_exponent(atoms, z));
}

inline cplx eval_singular_inner(const SingularAtoms& atoms, cplx z) {
    return eval_singular_inner(atoms, detail::open_disk_point(z, "eval_singular_inner"));
}

/// Herglotz integral of the outer density, integral (zeta + z)/(zeta - z) log|b| dm.
inline cplx outer_exponent(const OuterLogDensity& outer, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    if (outer.is_zero()) return 0.0;
    if (auto c = outer.constant_value()) return *c;
    auto f = [&](double t) -> cplx {
        return (std::polar(1.0, t) + z.value()) / circle_difference(t, z) * outer(t);
    };
    return integrate_arc<cplx>(f, -pi, pi, detail::quad_centers(outer, z), quad).value;
}

inline cplx eval_outer(const OuterLogDensity& outer, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    z.require_interior("eval_outer");
    return std::exp(outer_exponent(outer, z, quad));
}

inline cplx eval_outer(const OuterLogDensity& outer, cplx z, const QuadratureConfig& quad = {}) {
    return eval_outer(outer, detail::open_disk_point(z, "eval_outer"), quad);
}

inline cplx eval_symbol(const Symbol& sym, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    z.require_interior("eval_symbol");
    return eval_blaschke(sym.blaschke(), z) * eval_singular_inner(sym.singular(), z) * eval_outer(sym.outer(), z, quad);
}

inline cplx eval_symbol(const Symbol& sym, cplx z, const QuadratureConfig& quad = {}) {
    return eval_symbol(sym, detail::open_disk_point(z, "eval_symbol"), quad);
}

/// Integral of P(z, zeta) dmu with dmu = dnu - log|b| dm and the Poisson
/// kernel P = (1 - |z|^2)/|zeta - z|^2 expressed in polar arithmetic.
inline double poisson_mass(const Symbol& sym, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    const double w = z.one_minus_modulus_sq();
    double s = 0.0;
    for (const auto& a : sym.singular().atoms) s += a.mass * w / circle_distance_sq(a.theta, z);
    const auto& outer = sym.outer();
    if (outer.is_zero()) return s;
    if (auto c = outer.constant_value()) return s - *c;
    auto f = [&](double t) { return -outer(t) * w / circle_distance_sq(t, z); };
    return s + integrate_arc<double>(f, -pi, pi, detail::quad_centers(outer, z), quad).value;
}

/// log|b(z)|^2, free of the cancellation in 1 - |b|^2 near the circle.
inline double log_modulus_sq(const Symbol& sym, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    z.require_interior("log_modulus_sq");
    double s = 0.0;
    const double wz = z.one_minus_modulus_sq();
    for (const auto& a : sym.blaschke().zeros) {
        // |B_a(z)|^2 = 1 - (1 - |z|^2)(1 - |a|^2)/|1 - conj(a) z|^2
        const double q = wz * a.one_minus_modulus_sq() / disk_kernel_denominator_sq(a, z);
        s += std::log1p(-q);
    }
    return s - 2.0 * poisson_mass(sym, z, quad);
}

/// log|b(e^{it})|; the Blaschke and singular factors are unimodular a.e. on the circle.
inline double boundary_log_modulus(const Symbol& sym, double theta) {
    if (!std::isfinite(theta)) throw DomainError("boundary_log_modulus: angle must be finite");
    return sym.outer()(normalize_angle(theta));
}

// ---------------------------------------------------------------------------
// Logarithmic derivative and higher derivatives
// ---------------------------------------------------------------------------

/// r-th derivative of b'/b at z:
///   sum_n (1-|a_n|^2) d^r/dz^r [(z - a_n)^{-1} (1 - conj(a_n) z)^{-1}]
///   - integral 2 zeta (r+1)! dmu(zeta) / (zeta - z)^{r+2}.
inline cplx log_derivative_order(const Symbol& sym, const DiskPoint& z, int r, const QuadratureConfig& quad = {}) {
    if (r < 0) throw ContractError("derivative order must be non-negative");
    double rfact = 1.0;
    for (int i = 2; i <= r; ++i) rfact *= i;
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    const cplx zv = z.value();
    cplx s(0.0, 0.0);
    // (1-|a|^2)/((z-a)(1-conj(a) z)) = 1/(z-a) + conj(a)/(1 - conj(a) z)
    for (const auto& a : sym.blaschke().zeros) {
        const cplx av = a.value();
        const cplx d = zv - av;
        if (std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(av)))
            throw PoleError("log-derivative evaluated at the Blaschke zero " + DiskPoint::to_string_approx(av));
        const cplx ac = std::conj(av);
        s += sign * rfact / ipow(d, r + 1) + rfact * ipow(ac, r + 1) / ipow(1.0 - ac * zv, r + 1);
    }
    const double kfact = rfact * (r + 1);
    for (const auto& a : sym.singular().atoms) {
        const cplx zeta = std::polar(1.0, a.theta);
        s -= 2.0 * zeta * kfact * a.mass / ipow(circle_difference(a.theta, z), r + 2);
    }
    const auto& outer = sym.outer();
    if (!outer.constant_value()) {
        // dmu contains -log|b| dm, so the density enters with a plus sign.
        auto f = [&](double t) -> cplx {
            const cplx zeta = std::polar(1.0, t);
            return 2.0 * zeta * kfact * outer(t) / ipow(circle_difference(t, z), r + 2);
        };
        s += integrate_arc<cplx>(f, -pi, pi, detail::quad_centers(outer, z), quad).value;
    }
    return s;
}

/// b'(z)/b(z).
inline cplx log_derivative(const Symbol& sym, const DiskPoint& z, const QuadratureConfig& quad = {}) {
    z.require_interior("log_derivative");
    return log_derivative_order(sym, z, 0, quad);
}

inline cplx log_derivative(const Symbol& sym, cplx z, const QuadratureConfig& quad = {}) {
    return log_derivative(sym, detail::open_disk_point(z, "log_derivative"), quad);
}

/// Distance below which derivatives switch to the contour formula.
inline constexpr double near_zero_distance = 1e-6;

/// [b(z), b'(z), ..., b^{(k)}(z)].
///
/// Away from zeros the recursion b^{(j+1)} = sum_i C(j,i) L^{(j-i)} b^{(i)},
/// L = b'/b, is used. Within `near_zero_distance` of a zero the derivatives
/// come from the Cauchy integral on a 16-point circle of radius
/// min(1e-2, (1 - |z|)/2) about z.
inline std::vector<cplx> eval_derivatives(const Symbol& sym, const DiskPoint& z, int order, const QuadratureConfig& quad = {}) {
    z.require_interior("eval_derivatives");
    if (order < 0) throw ContractError("derivative order must be non-negative");
    std::vector<cplx> out(order + 1);
    bool near_zero = false;
    for (const auto& a : sym.blaschke().zeros)
        if (std::abs(z.value() - a.value()) < near_zero_distance) near_zero = true;

    if (order == 0 || !near_zero) {
        out[0] = eval_symbol(sym, z, quad);
        if (order == 0) return out;
        std::vector<cplx> L(order);
        for (int r = 0; r < order; ++r) L[r] = log_derivative_order(sym, z, r, quad);
        for (int j = 0; j < order; ++j) {
            cplx s(0.0, 0.0);
            double binom = 1.0;  // C(j, i)
            for (int i = 0; i <= j; ++i) {
                s += binom * L[j - i] * out[i];
                binom = binom * (j - i) / (i + 1);
            }
            out[j + 1] = s;
        }
        return out;
    }

    constexpr int nodes = 16;
    const double radius = std::min(1e-2, 0.5 * z.one_minus_modulus());
    std::vector<cplx> samples(nodes);
    for (int k = 0; k < nodes; ++k) {
        const cplx w = z.value() + std::polar(radius, 2.0 * pi * k / nodes);
        samples[k] = eval_symbol(sym, DiskPoint::from_complex(w), quad);
    }
    double jfact = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) jfact *= j;
        cplx c(0.0, 0.0);
        for (int k = 0; k < nodes; ++k) c += samples[k] * std::polar(1.0, -2.0 * pi * j * k / nodes);
        out[j] = c / static_cast<double>(nodes) * jfact / std::pow(radius, j);
    }
    return out;
}

inline std::vector<cplx> eval_derivatives(const Symbol& sym, cplx z, int order, const QuadratureConfig& quad = {}) {
    return eval_derivatives(sym, detail::open_disk_point(z, "eval_derivatives"), order, quad);
}

}  // namespace dbr
