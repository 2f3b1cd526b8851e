#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dbr/circle_integrals.hpp"
#include "dbr/disk_point.hpp"
#include "dbr/quadrature.hpp"
#include "dbr/rho.hpp"

using namespace dbr;

TEST(DiskPoint, PolarRoundTrip) {
    const auto p = DiskPoint::from_polar(0.25, 1.0);
    EXPECT_DOUBLE_EQ(p.modulus(), 0.75);
    EXPECT_DOUBLE_EQ(p.arg(), 1.0);
    EXPECT_NEAR(std::abs(p.value() - std::polar(0.75, 1.0)), 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(p.one_minus_modulus_sq(), 1.0 - 0.75 * 0.75);
}

TEST(DiskPoint, AngleNormalizedToHalfOpenInterval) {
    EXPECT_DOUBLE_EQ(DiskPoint::from_polar(0.5, -pi).arg(), pi);
    EXPECT_DOUBLE_EQ(DiskPoint::from_complex(cplx(-0.5, -0.0)).arg(), pi);
    EXPECT_NEAR(normalize_angle(3.0 * pi), pi, 1e-15);
    EXPECT_NEAR(normalize_angle(-0.5 + 4.0 * pi), -0.5, 1e-14);
}

TEST(DiskPoint, RejectsOutsideClosedDisk) {
    EXPECT_THROW(DiskPoint::from_complex(cplx(1.5, 0.0)), DomainError);
    EXPECT_THROW(DiskPoint::from_polar(-0.1, 0.0), DomainError);
    EXPECT_NO_THROW(DiskPoint::from_complex(cplx(1.0, 0.0)));
    EXPECT_THROW(DiskPoint::from_complex(cplx(1.0, 0.0)).require_interior("test"), DomainError);
}

TEST(DiskPoint, DistanceFormulasMatchDirectArithmetic) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto z = DiskPoint::from_polar(0.01 + 0.98 * u(rng), 2 * pi * u(rng) - pi);
        const auto a = DiskPoint::from_polar(0.01 + 0.98 * u(rng), 2 * pi * u(rng) - pi);
        const double t = 2 * pi * u(rng) - pi;
        const cplx zeta = std::polar(1.0, t);
        EXPECT_NEAR(circle_distance_sq(t, z), std::norm(zeta - z.value()), 1e-14);
        EXPECT_NEAR(std::abs(circle_difference(t, z) - (zeta - z.value())), 0.0, 1e-14);
        EXPECT_NEAR(disk_kernel_denominator_sq(a, z), std::norm(1.0 - std::conj(a.value()) * z.value()), 1e-14);
    }
}

TEST(DiskPoint, DistanceKeepsPrecisionNearTheCircle) {
    const auto z = DiskPoint::from_polar(1e-12, 0.0);
    EXPECT_NEAR(circle_distance_sq(0.0, z) / 1e-24, 1.0, 1e-12);
}

TEST(Quadrature, PolynomialIsExact) {
    QuadratureConfig q;
    auto r = integrate_panels<double>([](double t) { return t * t * t * t; }, {0.0, 1.0}, q);
    EXPECT_NEAR(r.value, 0.2, 1e-15);
}

TEST(Quadrature, PeakedPoissonKernelIntegratesToOne) {
    QuadratureConfig q;
    q.tolerance = 1e-12;
    // At 1e-12 the peak must sit at angle 0: near theta = 0.3 the doubles are spaced
    // 5e-17 apart, which perturbs a width-1e-8 peak by ~1e-8 relative.
    for (double delta : {1e-2, 1e-5, 1e-8}) {
        const double theta = delta < 1e-6 ? 0.0 : 0.3;
        const auto z = DiskPoint::from_polar(delta, theta);
        auto f = [&](double t) { return z.one_minus_modulus_sq() / circle_distance_sq(t, z); };
        auto r = integrate_arc<double>(f, -pi, pi, {theta}, q);
        EXPECT_NEAR(r.value, 1.0, 1e-10) << delta;
    }
}

TEST(Quadrature, BudgetExhaustionThrowsWithAchievedError) {
    QuadratureConfig q;
    q.tolerance = 1e-14;
    q.max_panels = 4;
    try {
        integrate_panels<double>([](double t) { return 1.0 / std::sqrt(t); }, {0.0, 1.0}, q);
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_GT(e.achieved_error(), 0.0);
    }
}

TEST(Quadrature, ConfigValidation) {
    QuadratureConfig q;
    q.tolerance = 0.0;
    EXPECT_THROW(q.validate(), ContractError);
}

TEST(CircleIntegrals, MeanKernelPowerMatchesQuadrature) {
    QuadratureConfig q;
    q.tolerance = 1e-12;
    for (int s : {1, 2, 3}) {
        const auto z = DiskPoint::from_polar(0.05, -1.2);
        auto f = [&](double t) { return std::pow(circle_distance_sq(t, z), -s); };
        const double direct = integrate_arc<double>(f, -pi, pi, {z.arg()}, q).value;
        EXPECT_NEAR(mean_kernel_power(z, s) / direct, 1.0, 1e-10) << s;
    }
    EXPECT_TRUE(std::isinf(mean_kernel_power(DiskPoint::from_polar(0.0, 0.0), 1)));
}

TEST(Rho, PowerFunctionAndInverse) {
    const auto rho = RhoFunction::power(2.0, 3.0);
    EXPECT_DOUBLE_EQ(rho(0.5), 0.25);
    EXPECT_NEAR(rho.derivative(0.5), 1.5, 1e-14);
    EXPECT_NEAR(rho.inverse(0.25), 0.5, 1e-14);
    EXPECT_TRUE(rho.derivative_vanishes_at_zero());
    EXPECT_FALSE(RhoFunction::linear(1.0).derivative_vanishes_at_zero());
}

TEST(Rho, TableInterpolatesAndInverts) {
    const auto rho = RhoFunction::table({0.0, 0.1, 0.2}, {0.0, 0.01, 0.04});
    EXPECT_NEAR(rho(0.15), 0.025, 1e-15);
    EXPECT_NEAR(rho.inverse(0.025), 0.15, 1e-14);
    EXPECT_THROW(RhoFunction::table({0.0, 0.1}, {0.0, -1.0}), ConstructionError);
}
