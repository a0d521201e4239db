#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "momentdet/moment_core.hpp"
#include "fixtures.hpp"

using namespace momentdet;

namespace {
PrecisionPolicy policy;
}

TEST_CASE("moment matrices of actual measures are PSD (exact pivots)") {
    for (const auto& spec :
         {fixtures::gaussian(), fixtures::exponential(1), fixtures::uniform(0, 1),
          fixtures::five_atoms_2d()}) {
        auto s = compute_moments_exact(spec, 8);
        auto m = moment_matrix(s, 4);
        CHECK(psd_check(m).verdict == PsdVerdict::PSD);
    }
}

TEST_CASE("a non-moment Hankel matrix is flagged NOT_PSD") {
    MomentSequence<Rational> s(1, 4);
    // s_2 < s_1^2 / s_0 violates Cauchy-Schwarz
    s.set(MultiIndex{0}, 1);
    s.set(MultiIndex{1}, 2);
    s.set(MultiIndex{2}, 1);
    s.set(MultiIndex{3}, 1);
    s.set(MultiIndex{4}, 5);
    CHECK(psd_check(moment_matrix(s, 2)).verdict == PsdVerdict::NOT_PSD);
}

TEST_CASE("rank-deficient discrete tables get zero pivots, not negative ones") {
    auto s = compute_moments_exact(fixtures::dirac_origin(1), 8);
    auto rep = psd_check(moment_matrix(s, 4));
    CHECK(rep.verdict == PsdVerdict::PSD);
    CHECK(rep.min_eigen_estimate == 0);
}

TEST_CASE("float PSD check distinguishes marginal from violated") {
    ScopedPrecision scope(policy);
    auto s = to_real_sequence(compute_moments_exact(fixtures::gaussian(), 8));
    auto rep = psd_check(moment_matrix(s, 4), policy);
    CHECK(rep.verdict != PsdVerdict::NOT_PSD);
}

TEST_CASE("apply_functional is the moment functional on monomials") {
    auto s = compute_moments_exact(fixtures::gaussian(), 6);
    auto p = parse_polynomial("x1^4 - 3*x1^2 + 7", 1).cast<Rational>();
    CHECK(apply_functional(s, p) == Rational(7)); // 3 - 3 + 7
}

TEST_CASE("gram_inner is hermitian") {
    ScopedPrecision scope(policy);
    auto s = to_real_sequence(compute_moments_exact(fixtures::gaussian(), 8));
    Polynomial<Complex> p = Complex(Real(1), Real(2)) * Polynomial<Complex>::variable(1, 0);
    Polynomial<Complex> q =
        Polynomial<Complex>::variable(1, 0).pow(2) + Polynomial<Complex>::constant(1, Complex(Real(0), Real(1)));
    Complex a = gram_inner(s, p, q);
    Complex b = gram_inner(s, q, p);
    CHECK(abs_val(Complex(a - conj(b))) < Real("1e-60"));
}

TEST_CASE("closure distance ladder is nonincreasing in the degree") {
    ScopedPrecision scope(policy);
    Polynomial<Complex> mult =
        Polynomial<Complex>::variable(1, 0) + Polynomial<Complex>::constant(1, Complex(Real(0), Real(1)));
    auto s = to_real_sequence(compute_moments_exact(fixtures::uniform(0, 1), 44));
    Real prev(-1);
    for (int n : {2, 5, 10, 20}) {
        Real d = riesz_distance(s, mult, n, policy);
        if (prev >= 0) CHECK(d <= prev + Real("1e-40"));
        prev = d;
    }
    // compactly supported: distances collapse toward zero fast
    CHECK(riesz_distance(s, mult, 10, policy) < Real("1e-6"));
}

TEST_CASE("closure distance for the lognormal stays bounded away from zero") {
    ScopedPrecision scope(policy);
    Polynomial<Complex> mult =
        Polynomial<Complex>::variable(1, 0) + Polynomial<Complex>::constant(1, Complex(Real(0), Real(1)));
    auto s = compute_moments(fixtures::lognormal(), 42, policy);
    Real d20 = riesz_distance(s, mult, 20, policy);
    CHECK(abs_val(Real(d20 - Real("0.638844"))) < Real("1e-4"));
}

TEST_CASE("degree guards throw") {
    auto s = compute_moments_exact(fixtures::gaussian(), 4);
    CHECK_THROWS_AS(moment_matrix(s, 3), DegreeOverflow);
    ScopedPrecision scope(policy);
    Polynomial<Complex> mult =
        Polynomial<Complex>::variable(1, 0) + Polynomial<Complex>::constant(1, Complex(Real(0), Real(1)));
    CHECK_THROWS_AS(riesz_distance(to_real_sequence(s), mult, 4, policy), DegreeOverflow);
}
