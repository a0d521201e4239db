#include "momentdet/determinacy_md.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace momentdet {

namespace {

bool is_determinate(const SubVerdict& sub) {
    if (sub.verdict) return sub.verdict->overall == Verdict::DETERMINATE_EVIDENCE;
    if (sub.series) return sub.series->classification == SeriesClass::DIVERGES_LIKELY;
    return false;
}

SubVerdict verdict_sub(std::string label, const MomentSequence<Real>& seq, const Config1D& cfg) {
    SubVerdict sub;
    sub.label = std::move(label);
    sub.verdict = verdict_1d(seq, cfg);
    return sub;
}

void conclude_conjunction(RuleEvidence& ev) {
    if (ev.sub_verdicts.empty()) {
        ev.conclusion = Verdict::INCONCLUSIVE;
        return;
    }
    bool all = true;
    for (const auto& sub : ev.sub_verdicts)
        if (!is_determinate(sub)) {
            all = false;
            ev.notes.push_back("failing sub-verdict: " + sub.label);
        }
    ev.conclusion = all ? Verdict::DETERMINATE_EVIDENCE : Verdict::INCONCLUSIVE;
}

Real real_factorial(int n) {
    Real r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

MomentSequence<Real> section_1d(const MomentSequence<Real>& s, int axis, MultiIndex fixed) {
    if (axis < 0 || axis >= s.dimension()) throw AxisOutOfRange("section_1d: axis out of range");
    if (static_cast<int>(fixed.size()) != s.dimension())
        throw DimensionError("section_1d: fixed index dimension mismatch");
    fixed[static_cast<std::size_t>(axis)] = 0;
    const int budget = s.max_order() - total_order(fixed);
    if (budget < 0) throw DegreeOverflow("section_1d: fixed offsets exceed table order");
    MomentSequence<Real> out(1, budget);
    for (int n = 0; n <= budget; ++n) {
        MultiIndex a = fixed;
        a[static_cast<std::size_t>(axis)] = n;
        out.set(MultiIndex{n}, s.at(a));
    }
    out.set_provenance(s.provenance());
    return out;
}

std::string fingerprint(const MomentSequence<Real>& s) {
    std::ostringstream os;
    os << "d=" << s.dimension() << ";N=" << s.max_order() << ";";
    for (const auto& a : s.indices()) os << s.at(a) << ",";
    std::uint64_t h = 1469598103934665603ull;
    for (char c : os.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

std::string fingerprint(const MomentSequence<Rational>& s) {
    return fingerprint(to_real_sequence(s));
}

RuleEvidence rule_petersen(const MomentSequence<Real>& s, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "petersen_marginals";
    if (s.dimension() < 2) {
        ev.applicability = Applicability::NOT_APPLICABLE;
        ev.notes.push_back("needs dimension >= 2");
        return ev;
    }
    for (int j = 1; j <= s.dimension(); ++j)
        ev.sub_verdicts.push_back(
            verdict_sub("marginal " + std::to_string(j), marginal(s, j), config.one_d));
    conclude_conjunction(ev);
    return ev;
}

RuleEvidence rule_nussbaum(const MomentSequence<Real>& s, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "nussbaum_marginal_carleman";
    const int d = s.dimension();
    bool first_block_ok = true;
    for (int j = 1; j <= d; ++j) {
        auto m = marginal(s, j);
        const int n_max = config.one_d.carleman_n_max > 0 ? config.one_d.carleman_n_max
                                                          : m.max_order() / 2;
        SubVerdict sub;
        sub.label = "marginal " + std::to_string(j) + " carleman";
        sub.series = carleman_report(m, n_max, config.one_d);
        if (j < d && sub.series->classification != SeriesClass::DIVERGES_LIKELY)
            first_block_ok = false;
        ev.sub_verdicts.push_back(std::move(sub));
    }
    conclude_conjunction(ev);
    if (d >= 2 && first_block_ok && ev.conclusion != Verdict::DETERMINATE_EVIDENCE)
        ev.notes.push_back(
            "first " + std::to_string(d - 1) +
            " marginals satisfy the quasi-analyticity condition: a representing measure exists");
    return ev;
}

RuleEvidence rule_bochner_taylor(const MomentSequence<Real>& s, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "bochner_taylor_positive_octant";
    if (!config.support_positive_asserted) {
        ev.applicability = Applicability::NEEDS_ASSERTION;
        ev.notes.push_back("requires asserted support in the closed positive octant");
        return ev;
    }
    ev.assertions.push_back("support_positive");
    const int d = s.dimension();
    const int N = s.max_order();

    std::vector<Real> main_terms;
    for (int k = 1; k <= N; ++k) {
        Real shell(0);
        for (const auto& a : multi_indices_of_order(d, k)) {
            const Real& v = s.at(a);
            shell += v * v;
        }
        if (!(shell > 0)) {
            ev.notes.push_back("vanishing moment shell at order " + std::to_string(k) +
                               "; series truncated");
            break;
        }
        main_terms.push_back(mp::exp(-mp::log(shell) / (2 * k)));
    }
    SubVerdict main;
    main.label = "squared-shell series";
    main.series = classify_series(main_terms, config.one_d);
    ev.sub_verdicts.push_back(std::move(main));

    std::vector<Real> cor_terms;
    for (int k = 1; 2 * k <= N; ++k) {
        Real shell(0);
        const Real kfact = real_factorial(k);
        for (const auto& a : multi_indices_of_order(d, k)) {
            Real mult = kfact;
            for (int ai : a) mult /= real_factorial(ai);
            MultiIndex twoa = a;
            for (auto& x : twoa) x *= 2;
            shell += mult * s.at(twoa);
        }
        if (!(shell > 0)) {
            ev.notes.push_back("vanishing multinomial shell at order " + std::to_string(k) +
                               "; series truncated");
            break;
        }
        cor_terms.push_back(mp::exp(-mp::log(shell) / k));
    }
    SubVerdict cor;
    cor.label = "multinomial even-moment series";
    cor.series = classify_series(cor_terms, config.one_d);
    ev.sub_verdicts.push_back(std::move(cor));

    const bool any = is_determinate(ev.sub_verdicts[0]) || is_determinate(ev.sub_verdicts[1]);
    ev.conclusion = any ? Verdict::DETERMINATE_EVIDENCE : Verdict::INCONCLUSIVE;
    if (any) ev.caveats.push_back("determinacy asserted on the positive octant only");
    return ev;
}

RuleEvidence rule_eskin(const MomentSequence<Real>& s, const MdConfig& config) {
    if (s.dimension() >= 3) return rule_eskin_multi(s, config);
    RuleEvidence ev;
    ev.id = "eskin_monomial_pairs";
    if (s.dimension() != 2) {
        ev.applicability = Applicability::NOT_APPLICABLE;
        ev.notes.push_back("needs dimension 2");
        return ev;
    }
    const int N = s.max_order();
    int tested = 0;
    for (int k = 0; k <= config.eskin_k_max; ++k) {
        const int budget = N - (2 * k + 2);
        if (budget < 2 * config.one_d.min_series_terms) break;
        MomentSequence<Real> seq(1, budget);
        for (int n = 0; n <= budget; ++n)
            seq.set(MultiIndex{n}, s.at(MultiIndex{n, 2 * k + 2}) + s.at(MultiIndex{n, 2 * k}));
        seq.set_provenance(s.provenance());
        ev.sub_verdicts.push_back(
            verdict_sub("pair sequence, second index 2*" + std::to_string(k), seq, config.one_d));
        ++tested;
    }
    ev.sub_verdicts.push_back(verdict_sub("last marginal", marginal(s, 2), config.one_d));
    conclude_conjunction(ev);
    if (ev.conclusion == Verdict::DETERMINATE_EVIDENCE)
        ev.caveats.push_back("only k = 0.." + std::to_string(tested - 1) +
                             " of infinitely many pair sequences tested");
    return ev;
}

RuleEvidence rule_eskin_multi(const MomentSequence<Real>& s, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "eskin_monomial_pairs_multi";
    const int d = s.dimension();
    if (d < 3) {
        ev.applicability = Applicability::NOT_APPLICABLE;
        ev.notes.push_back("needs dimension >= 3");
        return ev;
    }
    const int N = s.max_order();
    std::vector<int> evens;
    for (int v = 0; v <= 2 * config.eskin_multi_cap; v += 2) evens.push_back(v);

    // enumerate even tuples over the free slots
    auto for_each_tuple = [&](const std::vector<int>& slots, auto&& body) {
        std::vector<std::size_t> idx(slots.size(), 0);
        while (true) {
            MultiIndex fixed(static_cast<std::size_t>(d), 0);
            for (std::size_t i = 0; i < slots.size(); ++i)
                fixed[static_cast<std::size_t>(slots[i])] = evens[idx[i]];
            body(fixed);
            std::size_t pos = 0;
            while (pos < idx.size()) {
                if (++idx[pos] < evens.size()) break;
                idx[pos++] = 0;
            }
            if (pos == idx.size()) break;
        }
    };

    auto add_pair_sequence = [&](int run_axis, int bump_axis, const MultiIndex& fixed,
                                 const std::string& label) {
        MultiIndex hi = fixed;
        hi[static_cast<std::size_t>(bump_axis)] += 2;
        const int budget = N - total_order(hi);
        if (budget < 2 * config.one_d.min_series_terms) return;
        MomentSequence<Real> seq(1, budget);
        for (int n = 0; n <= budget; ++n) {
            MultiIndex a = hi, b = fixed;
            a[static_cast<std::size_t>(run_axis)] = n;
            b[static_cast<std::size_t>(run_axis)] = n;
            seq.set(MultiIndex{n}, s.at(a) + s.at(b));
        }
        seq.set_provenance(s.provenance());
        ev.sub_verdicts.push_back(verdict_sub(label, seq, config.one_d));
    };

    // family against the last coordinate
    for (int j = 0; j < d - 1; ++j) {
        std::vector<int> slots;
        for (int i = 0; i < d; ++i)
            if (i != j) slots.push_back(i);
        for_each_tuple(slots, [&](const MultiIndex& fixed) {
            std::ostringstream lab;
            lab << "axis " << j + 1 << " vs last, offsets (";
            for (int i = 0; i < d; ++i) lab << (i ? "," : "") << (i == j ? -1 : fixed[static_cast<std::size_t>(i)]);
            lab << ")";
            add_pair_sequence(j, d - 1, fixed, lab.str());
        });
    }
    // commutation family (first variant): run axis j against bumped axis l
    for (int j = 0; j < d - 1; ++j)
        for (int l = j + 1; l < d - 1; ++l) {
            std::vector<int> slots;
            for (int i = 0; i < d; ++i)
                if (i != j) slots.push_back(i);
            for_each_tuple(slots, [&](const MultiIndex& fixed) {
                std::ostringstream lab;
                lab << "axis " << j + 1 << " vs axis " << l + 1 << ", offsets (";
                for (int i = 0; i < d; ++i)
                    lab << (i ? "," : "") << (i == j ? -1 : fixed[static_cast<std::size_t>(i)]);
                lab << ")";
                add_pair_sequence(j, l, fixed, lab.str());
            });
        }

    ev.sub_verdicts.push_back(verdict_sub("last marginal", marginal(s, d), config.one_d));
    conclude_conjunction(ev);
    if (ev.conclusion == Verdict::DETERMINATE_EVIDENCE)
        ev.caveats.push_back("even offsets capped at " + std::to_string(2 * config.eskin_multi_cap) +
                             "; infinitely many sequences remain untested");
    return ev;
}

RuleEvidence rule_pushforward(const MomentSequence<Real>& s, const PolynomialMap& map,
                              const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "pushforward_components";
    map.validate();
    if (!map.injectivity_asserted) {
        ev.applicability = Applicability::NEEDS_ASSERTION;
        ev.notes.push_back("requires asserted injectivity of the polynomial map on the support");
        return ev;
    }
    ev.assertions.push_back("map_injective");
    for (int k = 0; k < map.target_dimension(); ++k) {
        PolynomialMap comp;
        comp.source_dimension = map.source_dimension;
        comp.components.push_back(map.components[static_cast<std::size_t>(k)]);
        comp.injectivity_asserted = true;
        const int deg = std::max(comp.components[0].degree(), 1);
        const int M = s.max_order() / deg;
        auto t = pushforward_moments(s, comp, M);
        ev.sub_verdicts.push_back(
            verdict_sub("component " + std::to_string(k + 1), t, config.one_d));
    }
    conclude_conjunction(ev);
    return ev;
}

RuleEvidence rule_radial(const MomentSequence<Real>& s, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "radial_norm_square";
    const int d = s.dimension();
    PolynomialMap radial;
    radial.source_dimension = d;
    Polynomial<Rational> p(d);
    for (int i = 0; i < d; ++i) {
        MultiIndex a(static_cast<std::size_t>(d), 0);
        a[static_cast<std::size_t>(i)] = 2;
        p.add_term(a, Rational(1));
    }
    radial.components.push_back(p);
    radial.injectivity_asserted = true;
    const int M = s.max_order() / 2;
    auto t = pushforward_moments(s, radial, M);
    ev.sub_verdicts.push_back(verdict_sub("radialized sequence", t, config.one_d));
    conclude_conjunction(ev);
    if (ev.conclusion == Verdict::DETERMINATE_EVIDENCE)
        ev.notes.push_back("determinacy of the radial image assessed with the full-line test");
    return ev;
}

RuleEvidence rule_cylinder(const MomentSequence<Real>& s, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "cylinder_compact_base";
    const int d = s.dimension();
    if (d < 2) {
        ev.applicability = Applicability::NOT_APPLICABLE;
        ev.notes.push_back("needs dimension >= 2");
        return ev;
    }
    if (!config.compact_base_asserted) {
        ev.applicability = Applicability::NEEDS_ASSERTION;
        ev.notes.push_back("requires asserted compact support bound for the first d-1 coordinates");
        return ev;
    }
    ev.assertions.push_back("compact_base, radius " + config.compact_base_radius.str());
    const Real bound = config.compact_base_radius * (1 + config.cylinder_tol);
    for (int j = 1; j < d; ++j) {
        auto m = marginal(s, j);
        for (int n = 1; 2 * n <= m.max_order(); ++n) {
            Real root = mp::exp(mp::log(m.at(2 * n) / m.at(0)) / (2 * n));
            if (root > bound) {
                ev.applicability = Applicability::NOT_APPLICABLE;
                ev.notes.push_back("plausibility check failed: coordinate " + std::to_string(j) +
                                   " even-moment root " + root.str(6) + " exceeds bound");
                return ev;
            }
        }
    }
    ev.sub_verdicts.push_back(verdict_sub("last marginal", marginal(s, d), config.one_d));
    conclude_conjunction(ev);
    if (ev.conclusion == Verdict::DETERMINATE_EVIDENCE)
        ev.notes.push_back("conclusion strength: ultradeterminate on the asserted cylinder");
    return ev;
}

RuleEvidence rule_line_pencil(const MomentSequence<Real>& s,
                              const std::vector<std::vector<Real>>& directions,
                              const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "line_pencil_directions";
    if (!config.support_positive_asserted) {
        ev.applicability = Applicability::NEEDS_ASSERTION;
        ev.notes.push_back("requires asserted support in the closed positive octant");
        return ev;
    }
    ev.assertions.push_back("support_positive");
    const int d = s.dimension();
    std::vector<std::vector<Real>> dirs = directions;
    if (dirs.empty()) {
        std::mt19937 gen(config.seed);
        for (int t = 0; t < config.pencil_directions; ++t) {
            std::vector<Real> a(static_cast<std::size_t>(d));
            Real total(0);
            for (auto& x : a) {
                x = Real(static_cast<int>(gen() % 1000) + 1) / 1000;
                total += x;
            }
            for (auto& x : a) x /= total;
            dirs.push_back(std::move(a));
        }
    }
    for (std::size_t t = 0; t < dirs.size(); ++t) {
        if (static_cast<int>(dirs[t].size()) != d)
            throw DimensionError("rule_line_pencil: direction dimension mismatch");
        Polynomial<Real> lin(d);
        for (int i = 0; i < d; ++i) {
            MultiIndex a(static_cast<std::size_t>(d), 0);
            a[static_cast<std::size_t>(i)] = 1;
            lin.add_term(a, dirs[t][static_cast<std::size_t>(i)]);
        }
        const int M = s.max_order();
        MomentSequence<Real> seq(1, M);
        Polynomial<Real> power = Polynomial<Real>::constant(d, Real(1));
        seq.set(MultiIndex{0}, s.at(MultiIndex(static_cast<std::size_t>(d), 0)));
        for (int k = 1; k <= M; ++k) {
            power *= lin;
            seq.set(MultiIndex{k}, apply_functional(s, power));
        }
        seq.set_provenance(s.provenance());
        ev.sub_verdicts.push_back(
            verdict_sub("direction " + std::to_string(t + 1), seq, config.one_d));
    }
    conclude_conjunction(ev);
    if (ev.conclusion == Verdict::DETERMINATE_EVIDENCE)
        ev.caveats.push_back(std::to_string(dirs.size()) +
                             " sampled directions of uncountably many tested");
    return ev;
}

Polynomial<Rational> default_density_multiplier(int dimension) {
    Polynomial<Rational> f =
        Polynomial<Rational>::constant(dimension, Rational(1));
    for (int i = 0; i < dimension; ++i) {
        MultiIndex a(static_cast<std::size_t>(dimension), 0);
        a[static_cast<std::size_t>(i)] = 2;
        f.add_term(a, Rational(1));
    }
    return f;
}

RuleEvidence rule_density(const MomentSequence<Real>& s, const Polynomial<Rational>& f,
                          bool f_geq1_asserted, const MdConfig& config) {
    RuleEvidence ev;
    ev.id = "density_closure_distance";
    if (!f_geq1_asserted) {
        ev.applicability = Applicability::NEEDS_ASSERTION;
        ev.notes.push_back("requires asserted lower bound f >= 1 on the support");
        return ev;
    }
    if (f.degree() == 0) {
        ev.applicability = Applicability::NEEDS_ASSERTION;
        ev.notes.push_back("constant multiplier cannot separate points: separation assertion fails");
        return ev;
    }
    ev.assertions.push_back("f_geq_1");
    const int N = s.max_order();
    std::vector<int> degrees = config.density_degrees;
    if (degrees.empty()) {
        for (int n : {2, 4, 6, 8, 10})
            if (2 * (f.degree() + n) <= N) degrees.push_back(n);
    }
    if (degrees.empty()) {
        ev.notes.push_back("moment table too short for the multiplier ladder");
        return ev;
    }
    auto fc = to_complex_poly(f);
    SubVerdict sub;
    sub.label = "closure distance ladder";
    Verdict1D v;
    v.riesz.degrees = degrees;
    bool decreasing = true;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        v.riesz.distances.push_back(
            riesz_distance(s, fc, degrees[i], config.one_d.policy));
        if (i > 0 && v.riesz.distances[i] > v.riesz.distances[i - 1] * (1 + Real("1e-12")))
            decreasing = false;
    }
    const bool decay = decreasing && v.riesz.distances.back() < config.density_threshold;
    v.overall = decay ? Verdict::DETERMINATE_EVIDENCE : Verdict::INCONCLUSIVE;
    if (!decay)
        v.notes.push_back("distance " + v.riesz.distances.back().str(6) +
                          " at degree " + std::to_string(degrees.back()) +
                          " above threshold " + config.density_threshold.str(6));
    sub.verdict = std::move(v);
    ev.sub_verdicts.push_back(std::move(sub));
    conclude_conjunction(ev);
    return ev;
}

EvidenceReport combine(const std::vector<RuleEvidence>& evidences) {
    EvidenceReport report;
    report.rules = evidences;
    std::sort(report.rules.begin(), report.rules.end(),
              [](const RuleEvidence& a, const RuleEvidence& b) { return a.id < b.id; });
    if (report.rules.empty()) {
        report.warnings.push_back("no rules evaluated");
        report.overall = Verdict::INCONCLUSIVE;
        return report;
    }
    report.overall = Verdict::INCONCLUSIVE;
    for (const auto& r : report.rules)
        if (r.conclusion == Verdict::DETERMINATE_EVIDENCE)
            report.overall = Verdict::DETERMINATE_EVIDENCE;
    return report;
}

EvidenceReport run_all_rules(const MomentSequence<Real>& s, const MdConfig& config) {
    std::vector<RuleEvidence> rules;
    const int d = s.dimension();
    if (d >= 2) rules.push_back(rule_petersen(s, config));
    rules.push_back(rule_nussbaum(s, config));
    rules.push_back(rule_bochner_taylor(s, config));
    if (d >= 3)
        rules.push_back(rule_eskin_multi(s, config));
    else if (d == 2)
        rules.push_back(rule_eskin(s, config));
    rules.push_back(rule_radial(s, config));
    if (d >= 2) rules.push_back(rule_cylinder(s, config));
    rules.push_back(rule_line_pencil(s, {}, config));
    rules.push_back(rule_density(s, default_density_multiplier(d), true, config));
    auto report = combine(rules);
    report.fingerprint = fingerprint(s);
    return report;
}

} // namespace momentdet
