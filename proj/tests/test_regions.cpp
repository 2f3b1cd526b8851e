#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "dbr/identities.hpp"
#include "dbr/regions.hpp"

using namespace dbr;

TEST(Contains, SpecExamples) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    EXPECT_TRUE(contains(omega, std::polar(0.99, 0.01)));
    for (double r : {0.1, 0.5, 0.999999}) {
        EXPECT_TRUE(contains(omega, cplx(r, 0.0)));
        EXPECT_TRUE(contains(ApproachRegion::nontangential(1.0), cplx(r, 0.0)));
    }
    EXPECT_FALSE(contains(ApproachRegion::nontangential(1.0), std::polar(0.999, 0.1)));
}

TEST(Contains, StrictInequalityOnTheBoundaryCurve) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    EXPECT_FALSE(contains(omega, DiskPoint::from_polar(0.01, 0.1)));
    EXPECT_TRUE(contains(omega, DiskPoint::from_polar(0.01 + 1e-10, 0.1)));
}

TEST(Contains, ReflectionSymmetryAndNesting) {
    Rng rng(8);
    const auto gamma = ApproachRegion::nontangential(1.0);
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    for (int i = 0; i < 10000; ++i) {
        const auto z = DiskPoint::from_complex(random_disk_point(rng));
        EXPECT_EQ(contains(omega, z), contains(omega, z.conj()));
        EXPECT_EQ(contains(gamma, z), contains(gamma, z.conj()));
        // rho(x) = x^2 <= x on (0, 1]; beyond 1 both sets are empty because 1 - |z| <= 1 < x.
        if (contains(gamma, z)) {
            EXPECT_TRUE(contains(omega, z));
        }
    }
}

TEST(ParseRegion, ValidForms) {
    EXPECT_TRUE(parse_region("nt:c=1.0").is_nontangential());
    EXPECT_DOUBLE_EQ(parse_region("nt:c=2").rho(0.25), 0.5);
    const auto r = parse_region("rho:power:c=1.0,gamma=2.0");
    EXPECT_FALSE(r.is_nontangential());
    EXPECT_DOUBLE_EQ(r.rho(0.1), 0.1 * 0.1);
}

TEST(ParseRegion, TableFromFile) {
    const std::string path = ::testing::TempDir() + "rho_table.txt";
    {
        std::ofstream f(path);
        f << "# x rho\n0 0\n0.1, 0.01\n0.2 0.04\n";
    }
    const auto r = parse_region("rho:table:" + path);
    EXPECT_NEAR(r.rho(0.05), 0.005, 1e-15);
    std::remove(path.c_str());
}

TEST(ParseRegion, UnknownFormNamesValidForms) {
    try {
        parse_region("cone:1");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("nt:c="), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("rho:power:"), std::string::npos);
    }
    EXPECT_THROW(parse_region("nt:c=abc"), ParseError);
    EXPECT_THROW(parse_region("nt:c=-1"), ParseError);
    EXPECT_THROW(parse_region("rho:power:c=1"), ParseError);
}

TEST(BoundaryPath, SpecExamples) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    const auto p = boundary_path(omega, {0.1, 0.0125, 4, PathSide::upper});
    ASSERT_EQ(p.size(), 4u);
    EXPECT_NEAR(std::abs(p[0].value() - std::polar(0.99, 0.1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p[1].value() - std::polar(1.0 - 0.0025, 0.05)), 0.0, 1e-15);
    EXPECT_NEAR(p[3].arg(), 0.0125, 1e-17);
    const auto two = boundary_path(omega, {0.1, 0.0125, 2, PathSide::lower});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].arg(), -0.1);
    EXPECT_EQ(two[1].arg(), -0.0125);
    EXPECT_THROW(boundary_path(omega, {0.1, 0.0125, 4, PathSide::radial}), ContractError);
    EXPECT_THROW(boundary_path(ApproachRegion::nontangential(20.0), {0.1, 0.0125, 4, PathSide::upper}), DomainError);
}

TEST(BoundaryPath, PointsLieOnTheCurveAndAreLimitsOfInteriorPoints) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    for (const auto& z : boundary_path(omega, {0.5, 1e-4, 64, PathSide::upper})) {
        EXPECT_LE(std::abs(z.one_minus_modulus() - omega.rho(std::abs(z.arg()))), 1e-14);
        EXPECT_TRUE(contains(omega, DiskPoint::from_polar(z.one_minus_modulus() + 1e-10, z.arg())));
    }
}

TEST(RadialPath, SpecExamples) {
    const auto p = radial_path({0.9, 0.9999, 4});
    ASSERT_EQ(p.size(), 4u);
    const double expected[] = {0.9, 0.99, 0.999, 0.9999};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(p[i].modulus(), expected[i], 1e-14);
        EXPECT_EQ(p[i].arg(), 0.0);
    }
    const auto two = radial_path({0.5, 0.75, 2});
    EXPECT_DOUBLE_EQ(two[0].modulus(), 0.5);
    EXPECT_DOUBLE_EQ(two[1].modulus(), 0.75);
    EXPECT_THROW(radial_path({0.9, 0.9, 4}), ContractError);
}

TEST(ArcE, SpecExamples) {
    const auto a = arc_E(std::polar(0.9, pi / 6));
    EXPECT_FALSE(a.empty);
    EXPECT_NEAR(a.lo, pi / 12, 1e-15);
    EXPECT_NEAR(a.hi, pi / 3, 1e-15);
    EXPECT_TRUE(arc_E(cplx(0.5, 0.0)).empty);
    const auto b = arc_E(std::polar(0.9, -pi / 6));
    EXPECT_NEAR(b.lo, -pi / 3, 1e-15);
    EXPECT_NEAR(b.hi, -pi / 12, 1e-15);
    EXPECT_TRUE(arc_E(cplx(-0.5, 0.0)).empty);
    EXPECT_THROW(arc_E(cplx(0.0, 0.0)), DomainError);
}

TEST(ArcE, ReflectionSymmetry) {
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const auto z = DiskPoint::from_complex(random_disk_point(rng));
        const auto a = arc_E(z), b = arc_E(z.conj());
        EXPECT_EQ(a.empty, b.empty);
        if (!a.empty) {
            EXPECT_DOUBLE_EQ(a.lo, -b.hi);
            EXPECT_DOUBLE_EQ(a.hi, -b.lo);
        }
    }
}

TEST(ArcE, WideArcWrapsThroughMinusOne) {
    // arg z = 2: E_z = (1, 4) passes through -1; angles near -pi belong to it.
    const auto a = arc_E(std::polar(0.5, 2.0));
    EXPECT_TRUE(a.contains(pi));
    EXPECT_TRUE(a.contains(-3.0));
    EXPECT_FALSE(a.contains(-2.0));
}

TEST(InSectorS, SpecExamples) {
    EXPECT_TRUE(in_sector_S(std::polar(0.9, pi / 6), std::polar(0.5, pi / 4)));
    EXPECT_FALSE(in_sector_S(cplx(0.7, 0.0), std::polar(0.5, 0.1)));
    EXPECT_FALSE(in_sector_S(std::polar(0.9, pi / 6), cplx(0.5, 0.0)));
    EXPECT_FALSE(in_sector_S(std::polar(0.9, pi / 6), cplx(0.0, 0.0)));
}

TEST(EstimateCheck, SpecExamples) {
    const auto a = estimate_check(cplx(0.5, 0.0), cplx(-1.0, 0.0));
    EXPECT_TRUE(a.holds);
    EXPECT_NEAR(a.lhs, 1.0 / 1.5, 1e-15);
    EXPECT_NEAR(a.rhs, 2.0, 1e-15);
    const auto b = estimate_check(cplx(0.9, 0.0), cplx(1.0, 0.0));
    EXPECT_TRUE(b.holds);
    EXPECT_NEAR(b.lhs, 10.0, 1e-12);
    EXPECT_TRUE(std::isinf(b.rhs));
    const auto c = estimate_check(std::polar(0.9, 0.3), std::polar(1.0, 1.2));
    EXPECT_TRUE(c.holds);
    EXPECT_NEAR(c.lhs, 1.0 / std::abs(1.0 - std::polar(0.9, 0.3 - 1.2)), 1e-14);
    EXPECT_THROW(estimate_check(std::polar(0.9, 0.3), std::polar(1.0, 0.4)), ContractError);
}

TEST(EstimateCheck, RandomAdmissiblePairs) {
    Rng rng(13);
    int violations = 0;
    for (int i = 0; i < 100000; ++i) {
        const auto [z, w] = random_admissible_pair(rng);
        if (!estimate_check(z, w).holds) ++violations;
    }
    EXPECT_EQ(violations, 0);
}

TEST(CalcLemma, SpecExamples) {
    const auto rho = RhoFunction::power(1.0, 2.0);
    const auto a = calc_lemma_check(rho, 0.01, 0.02);
    EXPECT_TRUE(a.holds);
    EXPECT_NEAR(a.rhs, 0.0004, 1e-18);
    // Oracle: direct complex arithmetic.
    EXPECT_NEAR(a.lhs, 2.0 * std::abs(std::polar(1.0, 0.02) - std::polar(1.0 - 1e-4, 0.01)), 1e-15);
    const auto b = calc_lemma_check(rho, 0.05 * (1 - 1e-9), 0.05);
    EXPECT_NEAR(b.lhs, 2.0 * rho(0.05), 1e-9);
    EXPECT_TRUE(b.holds);
    EXPECT_THROW(calc_lemma_check(RhoFunction::power(1.0, 1.0), 0.01, 0.02), ContractError);
}

TEST(Sampler, LevelsAreNested) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    SamplerSpec s;
    s.count = 11;
    s.levels = 3;
    s.start = 0.2;
    s.end = 1e-3;
    std::set<std::pair<double, double>> prev;
    for (int l = 0; l < s.levels; ++l) {
        const auto pts = sample_level(omega, s, l);
        EXPECT_EQ(pts.size(), static_cast<std::size_t>((s.count - 1) * (1 << l) + 1));
        std::set<std::pair<double, double>> cur;
        for (const auto& p : pts) cur.insert({p.one_minus_modulus(), p.arg()});
        for (const auto& q : prev) EXPECT_TRUE(cur.count(q)) << "level " << l;
        prev = cur;
    }
}

TEST(Sampler, BoundaryPointsSteppedInward) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    SamplerSpec s;
    s.count = 20;
    s.levels = 1;
    for (const auto& p : sample_level(omega, s, 0)) {
        EXPECT_TRUE(contains(omega, p));
        EXPECT_NEAR(p.one_minus_modulus() / omega.rho(p.arg()), 1.0 + 1e-10, 1e-15);
    }
}

TEST(Sampler, ExtendMakesCoarseLevelsStopEarlier) {
    SamplerSpec s;
    s.kind = SamplerKind::radial;
    s.start = 0.1;
    s.end = 1e-6;
    s.count = 6;
    s.levels = 3;
    s.extend = 10.0;
    const auto region = ApproachRegion::nontangential(1.0);
    double min0 = 1.0, min2 = 1.0;
    for (const auto& p : sample_level(region, s, 0)) min0 = std::min(min0, p.one_minus_modulus());
    for (const auto& p : sample_level(region, s, 2)) min2 = std::min(min2, p.one_minus_modulus());
    EXPECT_GE(min0, 1e-4 * (1 - 1e-12));
    EXPECT_NEAR(min2, 1e-6, 1e-20);
}

TEST(Sampler, FloorEnforced) {
    SamplerSpec s;
    s.kind = SamplerKind::radial;
    s.start = 0.1;
    s.end = 1e-9;
    s.count = 4;
    s.levels = 1;
    EXPECT_THROW(sample_points(ApproachRegion::nontangential(1.0), s), ContractError);
    s.end = 0.2;
    EXPECT_THROW(s.validate(), ContractError);
}

TEST(Sampler, GridStaysInsideTheRegion) {
    const auto omega = ApproachRegion::from_rho(RhoFunction::power(1.0, 2.0));
    SamplerSpec s;
    s.kind = SamplerKind::grid;
    s.start = 0.5;
    s.end = 1e-4;
    s.count = 5;
    s.levels = 2;
    s.angles = 3;
    for (const auto& p : sample_points(omega, s)) EXPECT_TRUE(contains(omega, p.z));
}
