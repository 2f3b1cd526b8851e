#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "dbr/disk_point.hpp"
#include "dbr/errors.hpp"

namespace dbr {

/// Accuracy controls shared by every integral over the circle.
struct QuadratureConfig {
    double tolerance = 1e-8;   // relative
    int max_panels = 1 << 14;
    std::vector<double> refinement_centers;  // extra angles; 0 and arg z are always added by callers

    void validate() const {
        if (!(tolerance > 0.0)) throw ContractError("quadrature tolerance must be positive");
        if (max_panels < 2) throw ContractError("quadrature panel budget must be at least 2");
    }
};

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    int panels = 0;
};

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 4> gl8_nodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
inline constexpr std::array<double, 4> gl8_weights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

template <class T, class F>
T gauss_legendre8(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T sum{};
    for (std::size_t i = 0; i < gl8_nodes.size(); ++i) {
        const double dx = h * gl8_nodes[i];
        sum += gl8_weights[i] * (f(c - dx) + f(c + dx));
    }
    return h * sum;
}

template <class T>
struct Panel {
    double a, b;
    T coarse;      // one rule on [a, b]
    T left, right; // the rule on each half
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> make_panel(const F& f, double a, double b, T coarse) {
    const double m = 0.5 * (a + b);
    Panel<T> p{a, b, coarse, gauss_legendre8<T>(f, a, m), gauss_legendre8<T>(f, m, b), 0.0};
    p.error = std::abs(p.coarse - (p.left + p.right));
    return p;
}

}  // namespace detail

/// Composite 8-point Gauss-Legendre quadrature with adaptive bisection.
///
/// `breakpoints` must be sorted; every consecutive pair seeds one panel, so
/// integrable peaks and kinks placed at breakpoints are resolved by dyadic
/// refinement toward them. The panel with the largest error estimate is split
/// until the summed estimate drops below tolerance * |integral| (with a floor of
/// 1e-14 times the integral of |f|), or the panel budget is exhausted.
template <class T, class F>
QuadratureResult<T> integrate_panels(const F& f, const std::vector<double>& breakpoints, const QuadratureConfig& cfg) {
    cfg.validate();
    std::priority_queue<detail::Panel<T>> queue;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (!(b > a)) continue;
        queue.push(detail::make_panel<T>(f, a, b, detail::gauss_legendre8<T>(f, a, b)));
    }
    auto totals = [&queue](T& value, double& err, double& mass) {
        auto copy = queue;
        value = T{};
        err = 0.0;
        mass = 0.0;
        while (!copy.empty()) {
            const auto& p = copy.top();
            value += p.left + p.right;
            err += p.error;
            mass += std::abs(p.left) + std::abs(p.right);
            copy.pop();
        }
    };

    T value{};
    double err = 0.0, mass = 0.0;
    totals(value, err, mass);
    // Totals are refreshed incrementally; a full recount every so often keeps
    // the running sums from drifting.
    int since_recount = 0;
    while (!queue.empty()) {
        const double target = std::max(cfg.tolerance * std::abs(value), 1e-14 * mass);
        if (err <= target) break;
        if (static_cast<int>(queue.size()) + 1 > cfg.max_panels) {
            throw NumericError("circle quadrature did not converge within " + std::to_string(cfg.max_panels) + " panels",
                               mass > 0 ? err / std::max(std::abs(value), 1e-300) : err);
        }
        auto worst = queue.top();
        queue.pop();
        const double m = 0.5 * (worst.a + worst.b);
        auto lhs = detail::make_panel<T>(f, worst.a, m, worst.left);
        auto rhs = detail::make_panel<T>(f, m, worst.b, worst.right);
        value += (lhs.left + lhs.right + rhs.left + rhs.right) - (worst.left + worst.right);
        err += lhs.error + rhs.error - worst.error;
        mass += std::abs(lhs.left) + std::abs(lhs.right) + std::abs(rhs.left) + std::abs(rhs.right) -
                std::abs(worst.left) - std::abs(worst.right);
        queue.push(lhs);
        queue.push(rhs);
        if (++since_recount == 256) {
            totals(value, err, mass);
            since_recount = 0;
        }
    }
    totals(value, err, mass);
    return {value, err, static_cast<int>(queue.size())};
}

/// Breakpoints on [lo, hi] containing the endpoints, every center (reduced
/// into the interval), and a uniform seed grid of `seed_panels` panels.
inline std::vector<double> circle_breakpoints(double lo, double hi, const std::vector<double>& centers, int seed_panels = 8) {
    std::vector<double> pts;
    pts.reserve(centers.size() + seed_panels + 2);
    for (int i = 0; i <= seed_panels; ++i) pts.push_back(lo + (hi - lo) * i / seed_panels);
    for (double c : centers) {
        // Centers are angles; bring each into [lo, lo + 2 pi) before clipping.
        double t = lo + std::fmod(std::fmod(c - lo, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
        if (t > lo && t < hi) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// (1/2pi) * integral of f(t) over the arc lo < t < hi.
template <class T, class F>
QuadratureResult<T> integrate_arc(const F& f, double lo, double hi, const std::vector<double>& centers,
                                  const QuadratureConfig& cfg) {
    std::vector<double> all = centers;
    all.insert(all.end(), cfg.refinement_centers.begin(), cfg.refinement_centers.end());
    auto res = integrate_panels<T>(f, circle_breakpoints(lo, hi, all), cfg);
    res.value *= 1.0 / (2.0 * pi);
    res.error /= 2.0 * pi;
    return res;
}

}  // namespace dbr
