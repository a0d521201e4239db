#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "momentdet/transforms.hpp"
#include "fixtures.hpp"

#include <boost/math/constants/constants.hpp>

#include <random>

using namespace momentdet;

namespace {
PrecisionPolicy policy;
}

TEST_CASE("decay-kernel integral of a point mass is an exponential") {
    ScopedPrecision scope(policy);
    auto delta = fixtures::discrete(2, {{{Rational(1), Rational(1)}, Rational(1)}});
    auto v = laplace_eval(delta, {Real(1), Real(1)}, policy);
    CHECK(abs_val(Real(v.value - mp::exp(Real(-2)))) < Real("1e-70"));
}

TEST_CASE("closed forms for exponential and uniform families") {
    ScopedPrecision scope(policy);
    auto v = laplace_eval(fixtures::exponential(1), {Real(2)}, policy);
    CHECK(abs_val(Real(v.value - Real(1) / 3)) < Real("1e-70"));
    auto u = laplace_eval(fixtures::uniform(0, 1), {Real(1)}, policy);
    CHECK(abs_val(Real(u.value - (1 - mp::exp(Real(-1))))) < Real("1e-70"));
}

TEST_CASE("supports outside the positive octant are rejected") {
    ScopedPrecision scope(policy);
    CHECK_THROWS_AS(laplace_eval(fixtures::gaussian(), {Real(1)}, policy), DomainError);
    CHECK_THROWS_AS(laplace_eval(fixtures::five_atoms_2d(), {Real(1), Real(1)}, policy),
                    DomainError);
    CHECK_THROWS_AS(laplace_eval(fixtures::exponential(1), {Real(0)}, policy), DomainError);
}

TEST_CASE("alternating forward differences pass for transforms, fail for sine") {
    ScopedPrecision scope(policy);
    GridSpec grid;
    grid.axes = {{Real(1) / 2, Real(3), 6}};
    grid.max_difference_order = 4;
    for (const auto& spec : {fixtures::exponential(1), fixtures::uniform(0, 1),
                             fixtures::lognormal(), fixtures::stieltjes(Rational(1) / 2)}) {
        auto rep = complete_monotonicity_check(spec, grid, policy);
        CHECK(rep.violations.empty());
    }
    auto neg = complete_monotonicity_check(
        [](const std::vector<Real>& x) { return mp::sin(x[0]) + 2; }, grid);
    CHECK(!neg.violations.empty());

    GridSpec g2;
    g2.axes = {{Real(1) / 2, Real(2), 4}, {Real(1) / 2, Real(2), 4}};
    g2.max_difference_order = 3;
    auto rep2 = complete_monotonicity_check(
        fixtures::product({fixtures::exponential(1), fixtures::exponential(1)}), g2, policy);
    CHECK(rep2.violations.empty());
}

TEST_CASE("affine-kernel transform: direct vs truncated expansion") {
    ScopedPrecision scope(policy);
    auto delta = fixtures::discrete(2, {{{Rational(1), Rational(1)}, Rational(1)}});
    auto direct = fantappie_eval(delta, Real(10), {Real(1), Real(1)}, policy);
    CHECK(abs_val(Real(direct.value - Real(1) / 12)) < Real("1e-70"));

    auto s = as_real(compute_moments_any(delta, 7, policy));
    auto series = fantappie_series(s, Real(10), {Real(1), Real(1)}, 6);
    Real diff = abs_val(Real(series.value - direct.value));
    CHECK(diff <= series.error_estimate + Real("1e-60"));
    // geometric bound (2/10)^7 / 12 for this atom
    CHECK(diff <= mp::pow(Real(2) / 10, 7) * 10);
}

TEST_CASE("affine-kernel transform rejects kernels with a pole on the support") {
    ScopedPrecision scope(policy);
    auto bad = fixtures::discrete(1, {{{Rational(-10)}, Rational(1)}});
    CHECK_THROWS_AS(fantappie_eval(bad, Real(10), {Real(1)}, policy), DomainError);
    CHECK_THROWS_AS(fantappie_eval(fixtures::gaussian(), Real(10), {Real(1)}, policy), DomainError);
}

TEST_CASE("resolvent-kernel values: atoms exact, gaussian asymptotic") {
    ScopedPrecision scope(policy);
    auto delta = fixtures::discrete(1, {{{Rational(2)}, Rational(3)}});
    auto v = cauchy_eval(delta, {Complex(Real(0), Real(1))}, policy);
    CHECK(abs_val(Complex(v.value - Complex(3) / Complex(Real(2), Real(-1)))) < Real("1e-70"));

    // |C(iy) + 1/(iy)| decays like y^-3 for the standard gaussian
    std::vector<Real> errs;
    for (int y : {10, 20, 40, 80}) {
        auto c = cauchy_eval(fixtures::gaussian(), {Complex(Real(0), Real(y))}, policy);
        errs.push_back(abs_val(Complex(c.value + Complex(1) / Complex(Real(0), Real(y)))));
    }
    CHECK(errs[0] < Real("0.0015"));
    for (std::size_t i = 1; i < errs.size(); ++i) {
        Real ratio = errs[i - 1] / errs[i];
        CHECK(ratio > Real("6.4")); // >= 2^2.7
    }
    CHECK_THROWS_AS(cauchy_eval(delta, {Complex(Real(1))}, policy), RealPointError);
}

TEST_CASE("iterated imaginary extraction equals the product-Poisson sum") {
    ScopedPrecision scope(policy);
    auto five = fixtures::five_atoms_2d();
    auto F = [&](const std::vector<Complex>& z) { return cauchy_eval(five, z, policy).value; };

    auto origin = fixtures::discrete(2, {{{Rational(0), Rational(0)}, Rational(1)}});
    auto Fo = [&](const std::vector<Complex>& z) { return cauchy_eval(origin, z, policy).value; };
    std::vector<Complex> zii = {Complex(Real(0), Real(1)), Complex(Real(0), Real(1))};
    CHECK(abs_val(Complex(poisson_recursion(Fo, zii) - Complex(1))) < Real("1e-70"));

    std::mt19937 gen(11);
    for (int t = 0; t < 20; ++t) {
        auto coord = [&]() {
            return Complex(Real(static_cast<int>(gen() % 41) - 20) / 10,
                           Real(static_cast<int>(gen() % 30) + 1) / 10);
        };
        std::vector<Complex> z = {coord(), coord()};
        Complex rec = poisson_recursion(F, z);
        Real direct = poisson_direct(five, z);
        CHECK(abs_val(Complex(rec - Complex(direct))) < Real("1e-12"));
        CHECK(abs_val(rec.imag()) < Real("1e-12"));
        CHECK(rec.real() > -Real("1e-12")); // nonnegative kernel
    }
}

TEST_CASE("iterated extraction of separable transforms integrates to the mass") {
    // integral over the plane of the product-Poisson kernel is pi^2 per unit
    // mass; a midpoint grid over [-50, 50]^2 at height y = 1/2 must land
    // within 2% (the kernel tail outside the window is about 1.3%)
    ScopedPrecision scope(64);
    auto five = fixtures::five_atoms_2d();
    Real mass(0);
    for (const auto& a : five.atoms) mass += to_real(a.weight);

    const int n = 250;
    const Real h = Real(100) / n;
    const Real y = Real(1) / 2;
    Real acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Complex> z = {Complex(Real(-50) + (i + Real(1) / 2) * h, y),
                                      Complex(Real(-50) + (j + Real(1) / 2) * h, y)};
            acc += poisson_direct(five, z) * h * h;
        }
    const Real pi = boost::math::constants::pi<Real>();
    CHECK(abs_val(Real(acc - mass * pi * pi)) < Real("0.02") * mass * pi * pi);
}
