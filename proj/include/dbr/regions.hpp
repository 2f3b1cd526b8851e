#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dbr/disk_point.hpp"
#include "dbr/errors.hpp"
#include "dbr/rho.hpp"

namespace dbr {

/// Approach region at the boundary point 1: Gamma(c) = {1 - |z| > c |arg z|}
/// or Omega_rho = {1 - |z| > rho(|arg z|)}.
class ApproachRegion {
public:
    struct NonTangential {
        double c;
    };
    struct Rho {
        RhoFunction rho;
    };

    static ApproachRegion nontangential(double c) {
        if (!(c > 0.0) || !std::isfinite(c)) throw ConstructionError("nontangential region needs c > 0");
        return ApproachRegion(NonTangential{c});
    }
    static ApproachRegion from_rho(RhoFunction rho) { return ApproachRegion(Rho{std::move(rho)}); }

    /// Profile of the region; c x for Gamma(c).
    double rho(double x) const {
        if (const auto* n = std::get_if<NonTangential>(&kind_)) return n->c * x;
        return std::get<Rho>(kind_).rho(x);
    }

    /// Smallest x with rho(x) >= y.
    double rho_inverse(double y) const {
        if (const auto* n = std::get_if<NonTangential>(&kind_)) return y / n->c;
        return std::get<Rho>(kind_).rho.inverse(y);
    }

    bool is_nontangential() const { return std::holds_alternative<NonTangential>(kind_); }
    const RhoFunction* rho_function() const {
        const auto* r = std::get_if<Rho>(&kind_);
        return r ? &r->rho : nullptr;
    }

    std::string describe() const {
        if (const auto* n = std::get_if<NonTangential>(&kind_)) {
            std::ostringstream os;
            os.precision(17);
            os << "nt:c=" << n->c;
            return os.str();
        }
        return "rho:" + std::get<Rho>(kind_).rho.describe();
    }

private:
    explicit ApproachRegion(std::variant<NonTangential, Rho> k) : kind_(std::move(k)) {}
    std::variant<NonTangential, Rho> kind_;
};

namespace detail {

inline double parse_key_value(const std::string& item, const std::string& key, const std::string& whole) {
    const std::string prefix = key + "=";
    if (item.rfind(prefix, 0) != 0) throw ParseError("region '" + whole + "': expected '" + prefix + "<number>'");
    const std::string num = item.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(num, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != num.size()) throw ParseError("region '" + whole + "': bad number '" + num + "'");
    return v;
}

inline constexpr const char* region_forms = "valid forms: nt:c=<c>, rho:power:c=<c>,gamma=<g>, rho:table:<path>";

}  // namespace detail

/// Parses "nt:c=1.0", "rho:power:c=1.0,gamma=2.0" or "rho:table:<path>".
inline ApproachRegion parse_region(const std::string& text) {
    try {
        if (text.rfind("nt:", 0) == 0) return ApproachRegion::nontangential(detail::parse_key_value(text.substr(3), "c", text));
        if (text.rfind("rho:power:", 0) == 0) {
            const std::string rest = text.substr(10);
            const auto comma = rest.find(',');
            if (comma == std::string::npos) throw ParseError("region '" + text + "': " + detail::region_forms);
            const double c = detail::parse_key_value(rest.substr(0, comma), "c", text);
            const double g = detail::parse_key_value(rest.substr(comma + 1), "gamma", text);
            return ApproachRegion::from_rho(RhoFunction::power(c, g));
        }
        if (text.rfind("rho:table:", 0) == 0) return ApproachRegion::from_rho(RhoFunction::table_from_file(text.substr(10)));
    } catch (const ConstructionError& e) {
        throw ParseError("region '" + text + "': " + e.what());
    }
    throw ParseError("unknown region '" + text + "'; " + detail::region_forms);
}

/// 1 - |z| > rho(|arg z|).
inline bool contains(const ApproachRegion& region, const DiskPoint& z) {
    z.require_interior("contains");
    return z.one_minus_modulus() > region.rho(std::abs(z.arg()));
}

inline bool contains(const ApproachRegion& region, cplx z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("contains: |z| >= 1");
    return contains(region, DiskPoint::from_complex(z));
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

enum class PathSide { upper, lower, radial };

struct BoundaryPathParams {
    double x_start = 0.2;
    double x_end = 1e-4;
    int count = 16;
    PathSide side = PathSide::upper;
};

namespace detail {

/// Geometric sequence from `start` to `end` with `intervals` steps; the fraction
/// i / intervals is formed first so that refined sequences contain the coarse ones bit for bit.
inline double geometric_node(double start, double end, long long i, long long intervals) {
    if (i == 0) return start;
    if (i == intervals) return end;
    const double t = static_cast<double>(i) / static_cast<double>(intervals);
    return std::exp(std::log(start) + t * (std::log(end) - std::log(start)));
}

}  // namespace detail

/// Points (1 - rho(x)) e^{+-ix} on the boundary of the region, x geometric from x_start to x_end.
inline std::vector<DiskPoint> boundary_path(const ApproachRegion& region, const BoundaryPathParams& p) {
    if (p.side == PathSide::radial) throw ContractError("boundary_path: radial points are not on the region boundary; use radial_path");
    if (!(p.x_end > 0.0 && p.x_end < p.x_start && p.x_start < pi / 2)) throw ContractError("boundary_path needs 0 < x_end < x_start < pi/2");
    if (p.count < 2) throw ContractError("boundary_path needs count >= 2");
    if (region.rho(p.x_start) >= 1.0) throw DomainError("boundary_path: rho(x_start) >= 1");
    const double sign = p.side == PathSide::upper ? 1.0 : -1.0;
    std::vector<DiskPoint> out;
    out.reserve(static_cast<std::size_t>(p.count));
    for (int i = 0; i < p.count; ++i) {
        const double x = detail::geometric_node(p.x_start, p.x_end, i, p.count - 1);
        out.push_back(DiskPoint::from_polar(region.rho(x), sign * x));
    }
    return out;
}

struct RadialPathParams {
    double r_start = 0.9;
    double r_end = 0.9999;
    int count = 16;
};

/// Points r in (0, 1) with 1 - r geometric from 1 - r_start to 1 - r_end.
inline std::vector<DiskPoint> radial_path(const RadialPathParams& p) {
    if (!(p.r_start > 0.0 && p.r_start < p.r_end && p.r_end < 1.0)) throw ContractError("radial_path needs 0 < r_start < r_end < 1");
    if (p.count < 2) throw ContractError("radial_path needs count >= 2");
    std::vector<DiskPoint> out;
    out.reserve(static_cast<std::size_t>(p.count));
    for (int i = 0; i < p.count; ++i)
        out.push_back(DiskPoint::from_polar(detail::geometric_node(1.0 - p.r_start, 1.0 - p.r_end, i, p.count - 1), 0.0));
    return out;
}

// ---------------------------------------------------------------------------
// Localization sets
// ---------------------------------------------------------------------------

/// Open arc lo < t < hi of the circle. hi may exceed pi (or lo fall below -pi)
/// when the arc passes through -1; membership is tested modulo 2 pi.
struct Arc {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    bool contains(double t) const {
        if (empty || !std::isfinite(t)) return false;
        const double s = normalize_angle(t);
        for (double shift : {0.0, 2.0 * pi, -2.0 * pi}) {
            const double v = s + shift;
            if (lo < v && v < hi) return true;
        }
        return false;
    }
};

/// E_z = (arg z / 2, 2 arg z) for arg z in (0, pi), its reflection for arg z < 0,
/// empty for real z.
inline Arc arc_E(const DiskPoint& z) {
    if (z.one_minus_modulus() == 1.0) throw DomainError("arc_E is undefined at z = 0");
    const double t = z.arg();
    if (t == 0.0 || t == pi) return {};
    if (t > 0.0) return {0.5 * t, 2.0 * t, false};
    return {2.0 * t, 0.5 * t, false};
}

inline Arc arc_E(cplx z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("arc_E: |z| >= 1");
    return arc_E(DiskPoint::from_complex(z));
}

/// S_z: points of the closed disk whose argument lies in E_z. The origin has no argument and is excluded.
inline bool in_sector_S(const DiskPoint& z, const DiskPoint& w) {
    if (w.one_minus_modulus() == 1.0) return false;
    return arc_E(z).contains(w.arg());
}

inline bool in_sector_S(cplx z, cplx w) {
    if (!(std::abs(z) < 1.0)) throw DomainError("in_sector_S: |z| >= 1");
    return in_sector_S(DiskPoint::from_complex(z), DiskPoint::from_complex(w));
}

struct InequalityCheck {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// 1/|1 - conj(w) z| <= 4/|1 - w| for w outside S_z and E_z; rhs is +inf at w = 1.
inline InequalityCheck estimate_check(const DiskPoint& z, const DiskPoint& w) {
    z.require_interior("estimate_check");
    if (in_sector_S(z, w)) throw ContractError("estimate_check: w lies in the localization set S_z");
    const double lhs = 1.0 / std::sqrt(disk_kernel_denominator_sq(w, z));
    const double d = std::sqrt(circle_distance_sq(0.0, w));
    const double rhs = d == 0.0 ? std::numeric_limits<double>::infinity() : 4.0 / d;
    return {lhs <= rhs, lhs, rhs};
}

inline InequalityCheck estimate_check(cplx z, cplx w) {
    if (!(std::abs(z) < 1.0)) throw DomainError("estimate_check: |z| >= 1");
    return estimate_check(DiskPoint::from_complex(z), DiskPoint::from_complex(w));
}

/// Largest rho' on (0, x_hi]; rho' is non-decreasing for power laws.
inline double max_rho_derivative(const RhoFunction& rho, double x_hi) {
    if (rho.as_power()) return rho.derivative(x_hi);
    const auto& t = *rho.as_table();
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
        if (t.x[i] >= x_hi && i > 0) break;
        best = std::max(best, (t.y[i + 1] - t.y[i]) / (t.x[i + 1] - t.x[i]));
    }
    return best;
}

/// 2 |e^{i x*} - (1 - rho(x)) e^{ix}| >= rho(x*) for 0 < x < x*, provided rho' < 1/2 on (0, x*].
inline InequalityCheck calc_lemma_check(const RhoFunction& rho, double x, double x_star) {
    if (!(x > 0.0 && x < x_star)) throw ContractError("calc_lemma_check needs 0 < x < x_star");
    const double slope = max_rho_derivative(rho, x_star);
    if (!(slope < 0.5)) throw ContractError("calc_lemma_check: rho' = " + std::to_string(slope) + " is not below 1/2 on (0, x_star]");
    const double rx = rho(x);
    if (rx > 1.0) throw DomainError("calc_lemma_check: rho(x) > 1");
    const DiskPoint z = DiskPoint::from_polar(rx, x);
    const double lhs = 2.0 * std::sqrt(circle_distance_sq(x_star, z));
    const double rhs = rho(x_star);
    return {lhs >= rhs, lhs, rhs};
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

enum class SamplerKind { boundary, radial, grid };

/// Point sets in the closed region at several refinement levels.
///
/// The main coordinate runs geometrically from `start` to `end`: the angle x on
/// the boundary curve (boundary), 1 - r (radial) or 1 - |z| (grid, with
/// `angles` angular fractions of rho^{-1}(1 - |z|) on each side). Level l uses
/// (count - 1) 2^l intervals and stops at end * extend^{levels - 1 - l}, so the
/// finest level reaches `end` and every level contains the previous one.
/// Boundary points are stepped inward by the relative factor (1 + inward_step)
/// in 1 - |z|.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::boundary;
    PathSide side = PathSide::upper;
    double start = 0.2;
    double end = 1e-4;
    int count = 1000;
    int levels = 2;
    double extend = 1.0;
    int angles = 4;
    double inward_step = 1e-10;
    double min_distance = 1e-8;

    void validate() const {
        if (count < 2) throw ContractError("sampler needs count >= 2");
        if (levels < 1 || levels > 12) throw ContractError("sampler levels must lie in [1, 12]");
        if (!(end > 0.0 && end < start)) throw ContractError("sampler needs 0 < end < start");
        if (!(extend >= 1.0) || !std::isfinite(extend)) throw ContractError("sampler extend factor must be >= 1");
        if (kind == SamplerKind::boundary && !(start < pi / 2)) throw ContractError("boundary sampler needs start < pi/2");
        if (kind != SamplerKind::boundary && !(start < 1.0)) throw ContractError("radial and grid samplers need start < 1");
        if (kind == SamplerKind::grid && angles < 1) throw ContractError("grid sampler needs angles >= 1");
        if (kind == SamplerKind::boundary && side == PathSide::radial) throw ContractError("boundary sampler needs side upper or lower");
        if (!(inward_step >= 0.0 && inward_step < 1e-3)) throw ContractError("inward step must lie in [0, 1e-3)");
        if (!(min_distance > 0.0)) throw ContractError("sampler floor must be positive");
    }
};

/// A sample point and the coarsest level containing it.
struct SamplePoint {
    DiskPoint z;
    int level = 0;
};

namespace detail {

/// Coarsest level whose dyadic grid contains index i of the finest grid.
inline int dyadic_level(long long i, int finest) {
    int level = finest;
    while (level > 0 && i % 2 == 0) {
        i /= 2;
        --level;
    }
    return level;
}

}  // namespace detail

/// All points of the finest level, in path order, tagged with their level.
inline std::vector<SamplePoint> sample_points(const ApproachRegion& region, const SamplerSpec& s) {
    s.validate();
    const int finest = s.levels - 1;
    const long long intervals = static_cast<long long>(s.count - 1) << finest;
    std::vector<double> level_end(static_cast<std::size_t>(s.levels));
    for (int l = 0; l < s.levels; ++l) level_end[l] = std::min(s.start, s.end * std::pow(s.extend, finest - l));

    std::vector<SamplePoint> out;
    auto push = [&](double delta, double theta, int level) {
        if (delta < s.min_distance * (1.0 - 1e-9))
            throw ContractError("sampler reaches 1 - |z| = " + std::to_string(delta) + " below the floor " + std::to_string(s.min_distance));
        if (!(delta < 1.0)) throw DomainError("sampler point outside the open disk (rho >= 1)");
        out.push_back({DiskPoint::from_polar(delta, theta), level});
    };
    auto main_level = [&](long long i, double coord) {
        int l = detail::dyadic_level(i, finest);
        while (l < finest && coord < level_end[l]) ++l;
        return l;
    };
    for (long long i = 0; i <= intervals; ++i) {
        const double c = detail::geometric_node(s.start, s.end, i, intervals);
        const int li = main_level(i, c);
        switch (s.kind) {
            case SamplerKind::boundary:
                push(region.rho(c) * (1.0 + s.inward_step), (s.side == PathSide::upper ? 1.0 : -1.0) * c, li);
                break;
            case SamplerKind::radial:
                push(c, 0.0, li);
                break;
            case SamplerKind::grid: {
                const long long steps = static_cast<long long>(s.angles) << finest;
                const double xmax = std::min(region.rho_inverse(c), pi);
                for (long long j = -steps; j <= steps; ++j) {
                    const double frac = static_cast<double>(j) / static_cast<double>(steps);
                    const bool edge = j == -steps || j == steps;
                    const int lj = detail::dyadic_level(j < 0 ? -j : j, finest);
                    push(edge ? c * (1.0 + s.inward_step) : c, frac * xmax, std::max(li, j == 0 ? 0 : lj));
                }
                break;
            }
        }
    }
    return out;
}

/// Points of one level, in path order.
inline std::vector<DiskPoint> sample_level(const ApproachRegion& region, const SamplerSpec& s, int level) {
    if (level < 0 || level >= s.levels) throw ContractError("sampler level out of range");
    std::vector<DiskPoint> out;
    for (const auto& p : sample_points(region, s))
        if (p.level <= level) out.push_back(p.z);
    return out;
}

}  // namespace dbr
