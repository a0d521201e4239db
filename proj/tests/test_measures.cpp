#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "momentdet/measures.hpp"
#include "momentdet/report_json.hpp"
#include "fixtures.hpp"

#include <random>

using namespace momentdet;

namespace {
PrecisionPolicy policy;
}

TEST_CASE("gaussian moments match the double-factorial recurrence") {
    auto s = compute_moments_exact(fixtures::gaussian(), 6);
    const long long expect[] = {1, 0, 1, 0, 3, 0, 15};
    for (int n = 0; n <= 6; ++n) CHECK(s.at(n) == Rational(expect[n]));

    // mean-shifted: s_n = sum_k C(n,k) mu^k (n-k)'th central moment
    auto t = compute_moments_exact(fixtures::gaussian(2, 1), 2);
    CHECK(t.at(1) == Rational(2));
    CHECK(t.at(2) == Rational(5)); // mu^2 + sigma^2
}

TEST_CASE("exponential moments are n! / lambda^n") {
    auto s = compute_moments_exact(fixtures::exponential(2), 4);
    CHECK(s.at(3) == Rational(6) / 8);
    CHECK(s.at(4) == Rational(24) / 16);
}

TEST_CASE("uniform moments are power-mean differences") {
    auto s = compute_moments_exact(fixtures::uniform(0, 1), 5);
    for (int n = 0; n <= 5; ++n) CHECK(s.at(n) == Rational(1) / (n + 1));
    auto t = compute_moments_exact(fixtures::uniform(-1, 1), 4);
    CHECK(t.at(1) == 0);
    CHECK(t.at(2) == Rational(1) / 3);
}

TEST_CASE("lognormal moments are exp(n mu + n^2 sigma^2 / 2)") {
    ScopedPrecision scope(policy);
    auto s = compute_moments(fixtures::lognormal(), 4, policy);
    CHECK(abs_val(Real(s.at(4) - mp::exp(Real(8)))) < Real("1e-60"));
    CHECK(!has_exact_moments(fixtures::lognormal()));
}

TEST_CASE("perturbed log-density member keeps the moments of the unperturbed one") {
    // oracle: the eps sin(2 pi ln x) perturbation integrates to zero against
    // every power, so the two tables must agree up to quadrature error
    ScopedPrecision scope(policy);
    auto a = compute_moments(fixtures::stieltjes(0), 8, policy);
    auto b = compute_moments(fixtures::stieltjes(Rational(1) / 2), 8, policy);
    for (int n = 0; n <= 8; ++n) {
        Real rel = abs_val(Real(a.at(n) - b.at(n))) / a.at(n);
        CHECK(rel < Real("1e-10"));
    }
    // first moment against the closed form exp(3/4) of the eps = 0 density
    CHECK(abs_val(Real(a.at(1) - mp::exp(Real(3) / 4))) / a.at(1) < Real("1e-10"));
}

TEST_CASE("product moments factor across blocks") {
    auto s = compute_moments_exact(fixtures::product({fixtures::gaussian(), fixtures::exponential(1)}), 4);
    CHECK(s.dimension() == 2);
    CHECK(s.at(MultiIndex{2, 2}) == Rational(2)); // 1 * 2!
    CHECK(s.at(MultiIndex{1, 3}) == Rational(0));
    CHECK(s.at(MultiIndex{4, 0}) == Rational(3));
}

TEST_CASE("pushforward under x -> x^2 on the gaussian gives even moments") {
    // t_k = s_{2k}: 1, 1, 3 for k = 0, 1, 2; under x -> 1 + x^2: 1, 2, 1+2+3=... L((1+x^2)^2)=1+2+3
    auto base = compute_moments_exact(fixtures::gaussian(), 4);
    PolynomialMap sq;
    sq.source_dimension = 1;
    sq.components = {parse_polynomial("1+x1^2", 1)};
    auto t = pushforward_moments(base, sq, 2);
    CHECK(t.at(0) == Rational(1));
    CHECK(t.at(1) == Rational(2));
    CHECK(t.at(2) == Rational(6)); // 1 + 2*1 + 3
}

TEST_CASE("pushforward moments equal direct image-measure moments exactly") {
    // random discrete rational 2D measures, random rational maps of degree <= 3
    std::mt19937 gen(7);
    auto rnd_rat = [&]() {
        int num = static_cast<int>(gen() % 19) - 9;
        int den = static_cast<int>(gen() % 7) + 1;
        return Rational(num) / den;
    };
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<MeasureSpec::Atom> atoms;
        const int n_atoms = 2 + static_cast<int>(gen() % 4);
        for (int i = 0; i < n_atoms; ++i)
            atoms.push_back({{rnd_rat(), rnd_rat()}, Rational(static_cast<int>(gen() % 5) + 1)});
        MeasureSpec mu = fixtures::discrete(2, atoms);

        const int m = 1 + static_cast<int>(gen() % 2);
        PolynomialMap phi;
        phi.source_dimension = 2;
        for (int c = 0; c < m; ++c) {
            Polynomial<Rational> p = Polynomial<Rational>::constant(2, rnd_rat());
            for (const auto& alpha : multi_indices_up_to(2, 3))
                if (gen() % 3 == 0) p.add_term(alpha, rnd_rat());
            phi.components.push_back(p);
        }

        const int order = 2;
        auto base = compute_moments_exact(mu, pushforward_required_order(phi, order));
        auto via_functional = pushforward_moments(base, phi, order);

        // direct: move each atom through phi, then take moments
        std::vector<MeasureSpec::Atom> image_atoms;
        for (const auto& atom : atoms) {
            std::vector<Rational> pt;
            for (const auto& comp : phi.components) pt.push_back(comp.eval(atom.point));
            image_atoms.push_back({pt, atom.weight});
        }
        auto direct = compute_moments_exact(fixtures::discrete(m, image_atoms), order);
        for (const auto& beta : direct.indices())
            CHECK(via_functional.at(beta) == direct.at(beta));
    }
}

TEST_CASE("marginal extracts the axis sub-table") {
    auto s = compute_moments_exact(fixtures::product({fixtures::gaussian(), fixtures::exponential(1)}), 6);
    auto m2 = marginal(s, 2);
    CHECK(m2.at(3) == Rational(6));
    CHECK_THROWS_AS(marginal(s, 3), AxisOutOfRange);
}

TEST_CASE("spec validation rejects bad inputs") {
    CHECK_THROWS_AS(parse_measure_spec("{"), SchemaError);
    CHECK_THROWS_AS(parse_measure_spec(R"({"kind":"catalog","catalog_id":"nope"})"), SchemaError);
    CHECK_THROWS_AS(
        parse_measure_spec(R"({"kind":"catalog","catalog_id":"uniform","parameters":{"a":1,"b":0}})")
            .validate(),
        InvariantError);
    CHECK_THROWS_AS(
        parse_measure_spec(R"({"kind":"discrete","dimension":1,"atoms":[[[0],-1]]})"),
        InvariantError);
}

TEST_CASE("moments JSON round-trips exact rationals and floats") {
    auto s = compute_moments_exact(fixtures::five_atoms_2d(), 3);
    auto doc = moments_json(s, true).dump();
    auto back = parse_moments_json(doc);
    const auto& r = std::get<MomentSequence<Rational>>(back);
    for (const auto& alpha : s.indices()) CHECK(r.at(alpha) == s.at(alpha));

    ScopedPrecision scope(policy);
    auto f = compute_moments(fixtures::lognormal(), 4, policy);
    auto fdoc = moments_json(f, false).dump();
    auto fback = parse_moments_json(fdoc);
    const auto& fr = std::get<MomentSequence<Real>>(fback);
    for (int n = 0; n <= 4; ++n)
        CHECK(abs_val(Real(fr.at(n) - f.at(n))) <= Real("1e-28") * f.at(n));
}
