#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dbr/identities.hpp"
#include "dbr/symbol.hpp"

using namespace dbr;

namespace {

Symbol zeros_only(std::vector<cplx> z) { return Symbol(BlaschkeData::finite(z), SingularAtoms{}, OuterLogDensity::zero()); }
Symbol atoms_only(std::vector<Atom> a) { return Symbol(BlaschkeData{}, SingularAtoms{a}, OuterLogDensity::zero()); }
Symbol outer_only(OuterLogDensity d) { return Symbol(BlaschkeData{}, SingularAtoms{}, std::move(d)); }

void expect_cnear(cplx a, cplx b, double tol) {
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(EvalBlaschke, SpecExamples) {
    expect_cnear(eval_blaschke(BlaschkeData::finite({0.0}), cplx(0.5, 0.0)), 0.5, 1e-16);
    expect_cnear(eval_blaschke(BlaschkeData{}, cplx(0.3, 0.1)), 1.0, 0.0);
    expect_cnear(eval_blaschke(BlaschkeData::finite({0.5}), cplx(0.0, 0.0)), 0.5, 1e-16);
}

TEST(EvalBlaschke, FactorMatchesDirectFormula) {
    const cplx a(0.3, -0.4), z(-0.2, 0.6);
    const cplx expected = std::abs(a) / a * (a - z) / (1.0 - std::conj(a) * z);
    expect_cnear(eval_blaschke(BlaschkeData::finite({a}), z), expected, 1e-15);
}

TEST(EvalBlaschke, RejectsPointsOffTheDisk) {
    EXPECT_THROW(eval_blaschke(BlaschkeData::finite({0.5}), cplx(1.0, 0.0)), DomainError);
    EXPECT_THROW(BlaschkeData::finite({cplx(1.0, 0.0)}), ConstructionError);
}

TEST(EvalBlaschke, PermutationInvariant) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        auto zs = random_zeros(rng, 8);
        const cplx z = random_disk_point(rng);
        const cplx v1 = eval_blaschke(BlaschkeData::finite(zs), z);
        std::reverse(zs.begin(), zs.end());
        std::rotate(zs.begin(), zs.begin() + 3, zs.end());
        const cplx v2 = eval_blaschke(BlaschkeData::finite(zs), z);
        EXPECT_LE(std::abs(v1 - v2), 1e-13 * std::max(std::abs(v1), 1e-300));
    }
}

TEST(EvalSingularInner, SpecExamples) {
    expect_cnear(eval_singular_inner(SingularAtoms{{{0.0, 1.0}}}, cplx(0.0, 0.0)), std::exp(-1.0), 1e-16);
    expect_cnear(eval_singular_inner(SingularAtoms{}, cplx(0.9, 0.0)), 1.0, 0.0);
    expect_cnear(eval_singular_inner(SingularAtoms{{{0.0, 1.0}}}, cplx(-0.5, 0.0)), std::exp(-1.0 / 3.0), 1e-15);
}

TEST(EvalOuter, SpecExamples) {
    expect_cnear(eval_outer(OuterLogDensity::zero(), cplx(0.0, 0.7)), 1.0, 0.0);
    expect_cnear(eval_outer(OuterLogDensity::constant(std::log(0.5)), cplx(0.0, 0.0)), 0.5, 1e-12);
    for (cplx z : {cplx(0.5, 0.0), cplx(-0.3, 0.8), cplx(0.0, -0.95)})
        expect_cnear(eval_outer(OuterLogDensity::constant(std::log(0.5)), z), 0.5, 1e-9);
}

TEST(EvalOuter, PowerCuspModulusIsPoissonIntegral) {
    // |b_o(z)| = exp(P[log|b|](z)); the cusp at theta0 = 0 gives a real value on the real axis.
    const auto d = OuterLogDensity::power_cusp(0.5, 0.0);
    const cplx v = eval_outer(d, cplx(0.0, 0.0));
    // Exponent accurate to the default relative quadrature tolerance 1e-8.
    EXPECT_NEAR(std::abs(v) / std::exp(-d.log_mass()), 1.0, 1e-8);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(EvalSymbol, SpecExamples) {
    expect_cnear(eval_symbol(zeros_only({0.0}), cplx(0.3, 0.0)), 0.3, 1e-16);
    expect_cnear(eval_symbol(atoms_only({{0.0, 1.0}}), cplx(0.0, 0.0)), std::exp(-1.0), 1e-16);
    const Symbol s(BlaschkeData::finite({0.5}), SingularAtoms{{{0.0, 0.1}}}, OuterLogDensity::constant(std::log(0.9)));
    expect_cnear(eval_symbol(s, cplx(0.0, 0.0)), 0.5 * std::exp(-0.1) * 0.9, 1e-12);
}

TEST(EvalSymbol, ModulusBelowOne) {
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const Symbol s = random_symbol(rng);
        for (int i = 0; i < 500; ++i) EXPECT_LT(std::abs(eval_symbol(s, random_disk_point(rng, 0.999))), 1.0);
    }
}

TEST(EvalSymbol, DegenerateSymbolRejected) {
    EXPECT_THROW(Symbol(BlaschkeData{}, SingularAtoms{}, OuterLogDensity::zero()), ConstructionError);
    EXPECT_THROW(outer_only(OuterLogDensity::constant(0.0)), ConstructionError);
}

TEST(SingularAtoms, InvariantsEnforced) {
    EXPECT_THROW(atoms_only({{0.0, -1.0}}), ConstructionError);
    EXPECT_THROW(atoms_only({{0.5, 1.0}, {0.5, 2.0}}), ConstructionError);
}

TEST(LogDerivative, SpecExamples) {
    expect_cnear(log_derivative(zeros_only({0.0}), cplx(0.5, 0.0)), 2.0, 1e-14);
    expect_cnear(log_derivative(atoms_only({{0.0, 1.0}}), cplx(0.0, 0.0)), -2.0, 1e-14);
    EXPECT_THROW(log_derivative(zeros_only({0.5}), cplx(0.5, 0.0)), PoleError);
}

TEST(EvalDerivatives, SpecExamples) {
    const auto d1 = eval_derivatives(zeros_only({0.0}), cplx(0.5, 0.0), 2);
    expect_cnear(d1[0], 0.5, 1e-15);
    expect_cnear(d1[1], 1.0, 1e-13);
    expect_cnear(d1[2], 0.0, 1e-12);
    const auto d2 = eval_derivatives(zeros_only({0.0, 0.0}), cplx(0.5, 0.0), 2);
    expect_cnear(d2[0], 0.25, 1e-15);
    expect_cnear(d2[1], 1.0, 1e-13);
    expect_cnear(d2[2], 2.0, 1e-12);
    const auto d3 = eval_derivatives(atoms_only({{0.0, 1.0}}), cplx(0.0, 0.0), 1);
    expect_cnear(d3[0], std::exp(-1.0), 1e-15);
    expect_cnear(d3[1], -2.0 * std::exp(-1.0), 1e-14);
}

TEST(EvalDerivatives, AtZeroUsesCauchyFallback) {
    // b = z^2 exactly at its double zero.
    const auto d = eval_derivatives(zeros_only({0.0, 0.0}), cplx(0.0, 0.0), 3);
    expect_cnear(d[0], 0.0, 1e-14);
    expect_cnear(d[1], 0.0, 1e-12);
    expect_cnear(d[2], 2.0, 1e-9);
    expect_cnear(d[3], 0.0, 1e-6);
}

TEST(EvalDerivatives, MatchCentralDifferences) {
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const Symbol s = random_symbol(rng);
        const cplx z = random_disk_point(rng, 0.8);
        const double h = 1e-5 * (1.0 - std::abs(z));
        const auto d = eval_derivatives(s, z, 3);
        // Orders j <= 3 from differences of the analytic function along the real direction.
        auto f = [&](cplx w) { return eval_symbol(s, w); };
        const cplx fd1 = (f(z + h) - f(z - h)) / (2 * h);
        const double H = 1e-3 * (1.0 - std::abs(z));
        const cplx fd2 = (f(z + H) - 2.0 * f(z) + f(z - H)) / (H * H);
        const cplx fd3 = (f(z + 2.0 * H) - 2.0 * f(z + H) + 2.0 * f(z - H) - f(z - 2.0 * H)) / (2 * H * H * H);
        EXPECT_LE(std::abs(fd1 - d[1]), 1e-4 * std::max(std::abs(d[1]), 1e-3)) << k;
        EXPECT_LE(std::abs(fd2 - d[2]), 1e-4 * std::max(std::abs(d[2]), 1.0)) << k;
        EXPECT_LE(std::abs(fd3 - d[3]), 1e-3 * std::max(std::abs(d[3]), 1.0)) << k;
    }
}

TEST(LogDerivative, ConsistentWithFirstDerivative) {
    Rng rng(9);
    for (int k = 0; k < 50; ++k) {
        const Symbol s = random_symbol(rng);
        const cplx z = random_disk_point(rng, 0.9);
        const auto d = eval_derivatives(s, z, 1);
        const cplx lhs = log_derivative(s, z) * eval_symbol(s, z);
        EXPECT_LE(std::abs(lhs - d[1]), 1e-8 * std::abs(d[1]));
    }
}

TEST(BoundaryLogModulus, SpecExamples) {
    EXPECT_EQ(boundary_log_modulus(atoms_only({{0.0, 1.0}}), 1.0), 0.0);
    EXPECT_DOUBLE_EQ(boundary_log_modulus(outer_only(OuterLogDensity::constant(std::log(0.9))), 1.0), std::log(0.9));
    EXPECT_NEAR(boundary_log_modulus(outer_only(OuterLogDensity::power_cusp(0.5, 0.0)), 0.25), -0.5, 1e-15);
}

TEST(OuterLogDensity, CertificateCheckedWithinOnePercent) {
    // -log|b| = |t|^(1/2) has mean (1/2pi) * 2 * (2/3) pi^(3/2) = (2/3) sqrt(pi).
    const double exact = 2.0 / 3.0 * std::sqrt(pi);
    EXPECT_NEAR(OuterLogDensity::power_cusp(0.5, 0.0).log_mass(), exact, 1e-9);
    EXPECT_NO_THROW(outer_only(OuterLogDensity::power_cusp(0.5, 0.0).with_certificate(exact * 1.005)));
    EXPECT_THROW(outer_only(OuterLogDensity::power_cusp(0.5, 0.0).with_certificate(exact * 1.05)), ConstructionError);
}

TEST(ZeroFamily, TruncationHonorsTailBound) {
    const auto fam = ZeroFamily::geometric(0.25, 0.25, 0.5, 0.5);
    const auto d = fam.truncate(1e-12, 1e-8);
    EXPECT_LT(2.0 * d.tail_mass / 1e-8, 1e-12);
    // The truncated product and a longer one differ by less than the declared bound.
    const auto longer = fam.take(static_cast<int>(d.zeros.size()) + 10);
    const auto z = DiskPoint::from_polar(1e-3, 0.2);
    EXPECT_LE(std::abs(eval_blaschke(d, z) - eval_blaschke(longer, z)), d.truncation_error_bound(z) + 1e-15);
}

TEST(Symbol, TimesConcatenatesFactors) {
    const Symbol a = zeros_only({0.5});
    const Symbol b = atoms_only({{1.0, 0.3}});
    const cplx z(0.1, -0.4);
    expect_cnear(eval_symbol(a.times(b), z), eval_symbol(a, z) * eval_symbol(b, z), 1e-15);
}
