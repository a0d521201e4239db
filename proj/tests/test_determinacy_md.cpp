#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "momentdet/determinacy_md.hpp"
#include "fixtures.hpp"

#include <algorithm>

using namespace momentdet;

namespace {

PrecisionPolicy policy;

MomentSequence<Real> table(const MeasureSpec& spec, int order) {
    return as_real(compute_moments_any(spec, order, policy));
}

MdConfig config() {
    MdConfig c;
    c.one_d.policy = policy;
    return c;
}

} // namespace

TEST_CASE("marginal and per-axis root-series rules certify a gaussian product") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::gaussian(), fixtures::gaussian()}), 64);
    auto c = config();

    auto petersen = rule_petersen(s, c);
    CHECK(petersen.applicability == Applicability::APPLIES);
    CHECK(petersen.conclusion == Verdict::DETERMINATE_EVIDENCE);
    CHECK(petersen.sub_verdicts.size() == 2);

    auto nussbaum = rule_nussbaum(s, c);
    CHECK(nussbaum.conclusion == Verdict::DETERMINATE_EVIDENCE);

    auto eskin = rule_eskin(s, c);
    CHECK(eskin.conclusion == Verdict::DETERMINATE_EVIDENCE);
    CHECK(!eskin.caveats.empty()); // finite family enumeration disclosed

    auto radial = rule_radial(s, c);
    CHECK(radial.conclusion == Verdict::DETERMINATE_EVIDENCE);
}

TEST_CASE("radial reduction moments of the gaussian product are 2^k k! exactly") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::gaussian(), fixtures::gaussian()}), 32);
    PolynomialMap r2;
    r2.source_dimension = 2;
    r2.components = {parse_polynomial("x1^2+x2^2", 2)};
    auto t = pushforward_moments(s, r2, 16);
    Real expect(1);
    for (int k = 0; k <= 16; ++k) {
        CHECK(abs_val(Real(t.at(k) - expect)) < Real("1e-50") * expect);
        expect *= 2 * (k + 1);
    }
}

TEST_CASE("a lognormal factor degrades the overall verdict to INCONCLUSIVE") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::gaussian(), fixtures::lognormal()}), 40);
    auto report = run_all_rules(s, config());
    CHECK(report.overall == Verdict::INCONCLUSIVE);
    // the failing axis is named in the conjunction notes
    bool named = false;
    for (const auto& rule : report.rules)
        for (const auto& note : rule.notes)
            if (note.find("failing sub-verdict") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("the full rule set certifies the gaussian product") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::gaussian(), fixtures::gaussian()}), 64);
    auto report = run_all_rules(s, config());
    CHECK(report.overall == Verdict::DETERMINATE_EVIDENCE);
    CHECK(!report.fingerprint.empty());
    // rules arrive sorted by id for deterministic serialization
    CHECK(std::is_sorted(report.rules.begin(), report.rules.end(),
                         [](const RuleEvidence& a, const RuleEvidence& b) { return a.id < b.id; }));
}

TEST_CASE("assertion-gated rules report NEEDS_ASSERTION without the flag") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::exponential(1), fixtures::exponential(1)}), 40);
    auto c = config();
    CHECK(rule_bochner_taylor(s, c).applicability == Applicability::NEEDS_ASSERTION);
    CHECK(rule_line_pencil(s, {}, c).applicability == Applicability::NEEDS_ASSERTION);
    c.support_positive_asserted = true;
    CHECK(rule_bochner_taylor(s, c).applicability == Applicability::APPLIES);
}

TEST_CASE("quasi-analyticity shell series certify the exponential product") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::exponential(1), fixtures::exponential(1)}), 40);
    auto c = config();
    c.support_positive_asserted = true;
    auto r = rule_bochner_taylor(s, c);
    CHECK(r.conclusion == Verdict::DETERMINATE_EVIDENCE);
}

TEST_CASE("sampled semi-axis directions reduce to half-line problems") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::product({fixtures::exponential(1), fixtures::exponential(1)}), 40);
    auto c = config();
    c.support_positive_asserted = true;
    auto r = rule_line_pencil(s, {}, c);
    CHECK(r.applicability == Applicability::APPLIES);
    CHECK(r.conclusion == Verdict::DETERMINATE_EVIDENCE);
    CHECK(!r.caveats.empty()); // sampling disclosed
}

TEST_CASE("cylinder rule needs a compact-base assertion and sanity-checks it") {
    ScopedPrecision scope(policy);
    auto c = config();
    c.compact_base_asserted = true;
    c.compact_base_radius = Real(1);
    // first factor uniform(0,1) is genuinely bounded by 1
    auto ok = table(fixtures::product({fixtures::uniform(0, 1), fixtures::gaussian()}), 60);
    auto r = rule_cylinder(ok, c);
    CHECK(r.applicability == Applicability::APPLIES);
    CHECK(r.conclusion == Verdict::DETERMINATE_EVIDENCE);
    // a gaussian first factor contradicts the claimed bound
    auto bad = table(fixtures::product({fixtures::gaussian(), fixtures::gaussian()}), 60);
    CHECK(rule_cylinder(bad, c).applicability == Applicability::NOT_APPLICABLE);
}

TEST_CASE("fingerprints are stable and order-sensitive") {
    ScopedPrecision scope(policy);
    auto s = table(fixtures::gaussian(), 8);
    auto t = table(fixtures::gaussian(), 8);
    CHECK(fingerprint(s) == fingerprint(t));
    auto u = table(fixtures::gaussian(), 10);
    CHECK(fingerprint(s) != fingerprint(u));
}

TEST_CASE("three-dimensional even-offset families") {
    ScopedPrecision scope(policy);
    auto s = table(
        fixtures::product({fixtures::gaussian(), fixtures::gaussian(), fixtures::gaussian()}), 40);
    auto r = rule_eskin(s, config());
    CHECK(r.applicability == Applicability::APPLIES);
    CHECK(r.conclusion == Verdict::DETERMINATE_EVIDENCE);
}
