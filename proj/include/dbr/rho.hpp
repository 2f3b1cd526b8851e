#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dbr/errors.hpp"

namespace dbr {

/// Profile rho of an approach region {1 - |z| > rho(|arg z|)}: continuous,
/// strictly increasing, rho(0) = 0.
class RhoFunction {
public:
    struct Power {
        double c;
        double gamma;
    };
    /// Piecewise linear through (x_i, y_i); the last segment is extended linearly.
    struct Table {
        std::vector<double> x;
        std::vector<double> y;
    };

    static RhoFunction power(double c, double gamma) {
        if (!(c > 0.0) || !std::isfinite(c)) throw ConstructionError("rho power law needs c > 0");
        if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConstructionError("rho power law needs gamma >= 1");
        return RhoFunction(Power{c, gamma});
    }

    static RhoFunction linear(double c) { return power(c, 1.0); }

    static RhoFunction table(std::vector<double> x, std::vector<double> y) {
        if (x.size() != y.size() || x.size() < 2) throw ConstructionError("rho table needs at least two (x, rho) rows");
        if (x.front() != 0.0 || y.front() != 0.0) throw ConstructionError("rho table must start at (0, 0)");
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (!(x[i] > x[i - 1]) || !(y[i] > y[i - 1]))
                throw ConstructionError("rho table must be strictly increasing in both columns (row " + std::to_string(i) + ")");
        }
        return RhoFunction(Table{std::move(x), std::move(y)});
    }

    /// Two columns "x rho" (comma or whitespace separated); '#' starts a comment.
    static RhoFunction table_from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open rho table '" + path + "'");
        std::vector<double> xs, ys;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream row(line);
            double a, b;
            if (!(row >> a)) continue;
            if (!(row >> b)) throw ParseError(path + ":" + std::to_string(lineno) + ": expected two columns");
            xs.push_back(a);
            ys.push_back(b);
        }
        return table(std::move(xs), std::move(ys));
    }

    double operator()(double x) const {
        if (x < 0.0) throw DomainError("rho is defined for x >= 0");
        if (const auto* p = std::get_if<Power>(&form_)) return p->c * std::pow(x, p->gamma);
        const auto& t = std::get<Table>(form_);
        const std::size_t i = segment(t, x);
        const double s = (t.y[i + 1] - t.y[i]) / (t.x[i + 1] - t.x[i]);
        return t.y[i] + s * (x - t.x[i]);
    }

    /// rho'(x); one-sided (right) at table nodes.
    double derivative(double x) const {
        if (const auto* p = std::get_if<Power>(&form_)) {
            if (p->gamma == 1.0) return p->c;
            return p->c * p->gamma * std::pow(x, p->gamma - 1.0);
        }
        const auto& t = std::get<Table>(form_);
        const std::size_t i = segment(t, x);
        return (t.y[i + 1] - t.y[i]) / (t.x[i + 1] - t.x[i]);
    }

    /// Smallest x >= 0 with rho(x) >= y (rho is increasing).
    double inverse(double y) const {
        if (y <= 0.0) return 0.0;
        if (const auto* p = std::get_if<Power>(&form_)) return std::pow(y / p->c, 1.0 / p->gamma);
        double lo = 0.0, hi = 1.0;
        while ((*this)(hi) < y) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-300; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((*this)(mid) < y ? lo : hi) = mid;
        }
        return hi;
    }

    /// True when rho'(x) -> 0 as x -> 0 (the region is tangentially larger than any cone).
    bool derivative_vanishes_at_zero() const {
        if (const auto* p = std::get_if<Power>(&form_)) return p->gamma > 1.0;
        return false;  // a table has a positive first slope
    }

    const Power* as_power() const { return std::get_if<Power>(&form_); }
    const Table* as_table() const { return std::get_if<Table>(&form_); }

    std::string describe() const {
        if (const auto* p = std::get_if<Power>(&form_)) {
            std::ostringstream os;
            os.precision(17);
            os << "power:c=" << p->c << ",gamma=" << p->gamma;
            return os.str();
        }
        return "table:" + std::to_string(std::get<Table>(form_).x.size()) + "-rows";
    }

private:
    explicit RhoFunction(std::variant<Power, Table> f) : form_(std::move(f)) {}

    static std::size_t segment(const Table& t, double x) {
        auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
        std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - t.x.begin()) - 1));
        return std::min(i, t.x.size() - 2);
    }

    std::variant<Power, Table> form_;
};

}  // namespace dbr
