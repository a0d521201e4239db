#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "momentdet/nevanlinna.hpp"
#include "fixtures.hpp"

using namespace momentdet;

namespace {

PrecisionPolicy high() {
    PrecisionPolicy p;
    p.significand_bits = 512;
    return p;
}

} // namespace

TEST_CASE("degree-zero quadruple is (0, -1, 1, z)") {
    PrecisionPolicy policy;
    ScopedPrecision scope(policy);
    auto s = as_real(compute_moments_any(fixtures::gaussian(), 4, policy));
    const Complex z(Real(1) / 2, Real(2));
    auto q = quadruple(s, z, 0, policy);
    CHECK(abs_val(q.A) < Real("1e-70"));
    CHECK(abs_val(Complex(q.B + Complex(1))) < Real("1e-70"));
    CHECK(abs_val(Complex(q.C - Complex(1))) < Real("1e-70"));
    CHECK(abs_val(Complex(q.D - z)) < Real("1e-70"));
    // phi = infinity gives -C/D = -1/z
    CHECK(abs_val(Complex(parametrized_value(q, PickParameter::inf()) + 1 / z)) < Real("1e-70"));
}

TEST_CASE("disk geometry of a measure with a positive limiting radius") {
    auto policy = high();
    ScopedPrecision scope(policy);
    auto s = as_real(compute_moments_any(fixtures::lognormal(), 130, policy));
    const Complex z(Real(0), Real(1));
    const int n = 60;

    auto q = quadruple(s, z, n, policy);
    CHECK(q.series_converged);
    // determinant identity A D - B C = 1
    CHECK(abs_val(Complex(q.A * q.D - q.B * q.C - Complex(1))) < Real("1e-100"));

    auto radii = weyl_radius(s, z, n, policy);
    auto mem0 = disk_membership(s, z, parametrized_value(q, PickParameter::inf()), n, policy);
    CHECK(abs_val(Real(mem0.radius - radii.rho.back())) / radii.rho.back() < Real("1e-15"));

    // real parameters land on the boundary circle
    for (int t : {-1, 0, 1}) {
        PickParameter phi = PickParameter::finite(Complex(Real(t)));
        auto m = disk_membership(s, z, parametrized_value(q, phi), n, policy);
        CHECK(abs_val(m.signed_distance) < Real("1e-8") * m.radius);
    }
    // a parameter in the open upper half plane lands strictly inside
    auto inside =
        disk_membership(s, z, parametrized_value(q, PickParameter::finite(Complex(Real(0), Real(1)))),
                        n, policy);
    CHECK(inside.signed_distance < -Real("1e-3") * inside.radius);
}

TEST_CASE("disks nest as the truncation degree grows") {
    auto policy = high();
    ScopedPrecision scope(policy);
    auto s = as_real(compute_moments_any(fixtures::lognormal(), 130, policy));
    const Complex z(Real(0), Real(1));
    for (int n = 10; n < 60; ++n) {
        auto qa = quadruple(s, z, n, policy);
        auto qb = quadruple(s, z, n + 1, policy);
        auto ca = disk_membership(s, z, parametrized_value(qa, PickParameter::inf()), n, policy);
        auto cb = disk_membership(s, z, parametrized_value(qb, PickParameter::inf()), n + 1, policy);
        // containment: |center_a - center_b| + r_b <= r_a (slack for roundoff)
        Real gap = ca.radius - cb.radius - abs_val(Complex(ca.center - cb.center));
        CHECK(gap > -Real("1e-40"));
    }
}

TEST_CASE("half-line parameter point estimate converges for the lognormal") {
    auto policy = high();
    ScopedPrecision scope(policy);
    auto s = as_real(compute_moments_any(fixtures::lognormal(), 130, policy));
    auto d0 = stieltjes_d0(s, 60, policy);
    CHECK(d0.converged);
    CHECK(abs_val(Real(d0.estimate - Real("0.817059"))) < Real("1e-4"));
}

TEST_CASE("disk geometry on the real axis is rejected") {
    // the quadruple itself consists of entire functions and stays defined,
    // but the disk degenerates for real z
    PrecisionPolicy policy;
    ScopedPrecision scope(policy);
    auto s = as_real(compute_moments_any(fixtures::gaussian(), 10, policy));
    CHECK_THROWS_AS(disk_membership(s, Complex(Real(1)), Complex(Real(0), Real(1)), 2, policy),
                    RealPointError);
    CHECK_THROWS_AS(weyl_radius(s, Complex(Real(1)), 2, policy), RealPointError);
}
