#include "momentdet/determinacy1d.hpp"

namespace momentdet {

SeriesDiagnostic classify_series(const std::vector<Real>& terms, const Config1D& config) {
    SeriesDiagnostic d;
    d.terms = terms;
    Real run(0);
    for (const auto& t : terms) {
        if (t < 0) throw InvariantError("classify_series: terms must be nonnegative");
        run += t;
        d.partial_sums.push_back(run);
    }
    // least-squares fit of log t_n against log n over positive terms
    Real sx(0), sy(0), sxx(0), sxy(0);
    int m = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!(terms[i] > 0)) continue;
        Real x = mp::log(Real(i + 1));
        Real y = mp::log(terms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2 && Real(m) * sxx - sx * sx > 0) {
        Real slope = (Real(m) * sxy - sx * sy) / (Real(m) * sxx - sx * sx);
        d.fitted_exponent = -slope;
        d.fitted_coefficient = mp::exp((sy - slope * sx) / Real(m));
    } else {
        d.fitted_exponent = 0;
        d.fitted_coefficient = terms.empty() ? Real(0) : terms.front();
    }

    if (static_cast<int>(terms.size()) < config.min_series_terms) {
        d.classification = SeriesClass::INCONCLUSIVE;
        return d;
    }
    const std::size_t n = terms.size();
    const Real tail_inc = d.partial_sums.back() - d.partial_sums[n - 1 - n / 4];
    const bool stabilized =
        tail_inc <= config.stabilization_tol * std::max(Real(1), d.partial_sums.back());
    if (d.fitted_exponent <= 1 - config.delta_fit)
        d.classification = SeriesClass::DIVERGES_LIKELY;
    else if (d.fitted_exponent >= 1 + config.delta_fit && stabilized)
        d.classification = SeriesClass::CONVERGES_LIKELY;
    else
        d.classification = SeriesClass::INCONCLUSIVE;
    return d;
}

SeriesDiagnostic carleman_report(const MomentSequence<Real>& s, int n_max,
                                 const Config1D& config) {
    if (s.dimension() != 1) throw DimensionError("carleman_report: needs a 1D sequence");
    if (2 * n_max > s.max_order())
        throw DegreeOverflow("carleman_report: needs moments to order " + std::to_string(2 * n_max));
    s.validate();
    std::vector<Real> terms;
    terms.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        Real even = s.at(2 * n) / s.at(0);
        if (!(even > 0))
            throw NonPositiveEvenMoment("carleman_report: s_" + std::to_string(2 * n) +
                                        " not positive");
        terms.push_back(mp::exp(-mp::log(even) / (2 * n)));
    }
    return classify_series(terms, config);
}

WeylRadii weyl_radius(const MomentSequence<Real>& s, const Complex& z, int n_max,
                      const PrecisionPolicy& policy) {
    if (z.imag() == 0) throw RealPointError("weyl_radius: z must be nonreal");
    auto r = recurrence_coefficients(s, std::max(n_max - 1, 0), policy);
    WeylRadii w;
    w.z = z;
    w.truncated = r.rank_deficient;
    w.achieved = std::min(n_max, r.K);
    const Real gap = 2 * mp::abs(z.imag()); // |z - conj z|
    Real sum = 0;
    Complex pm1(0), p(1 / mp::sqrt(r.s0));
    sum += mp::norm(p);
    w.rho.push_back(1 / (gap * sum));
    for (int n = 1; n <= w.achieved; ++n) {
        Complex pn = ((z - r.c[static_cast<std::size_t>(n - 1)]) * p -
                      (n > 1 ? r.b[static_cast<std::size_t>(n - 2)] : Real(0)) * pm1) /
                     r.b[static_cast<std::size_t>(n - 1)];
        pm1 = p;
        p = pn;
        sum += mp::norm(pn);
        w.rho.push_back(1 / (gap * sum));
    }
    return w;
}

RieszLadder riesz_determinacy(const MomentSequence<Real>& s, const std::vector<int>& degrees,
                              const PrecisionPolicy& policy) {
    Polynomial<Complex> mult(1);
    mult.add_term(MultiIndex{1}, Complex(1));
    mult.add_term(MultiIndex{0}, Complex(Real(0), Real(1)));
    RieszLadder out;
    for (int n : degrees) {
        out.degrees.push_back(n);
        out.distances.push_back(riesz_distance(s, mult, n, policy));
    }
    return out;
}

Verdict1D verdict_1d(const MomentSequence<Real>& s, const Config1D& config) {
    if (s.dimension() != 1) throw DimensionError("verdict_1d: needs a 1D sequence");
    const int N = s.max_order();
    Verdict1D v;

    const int carleman_n = config.carleman_n_max > 0 ? config.carleman_n_max : N / 2;
    const int weyl_n = config.weyl_n_max > 0 ? config.weyl_n_max
                                             : std::min(std::max(N / 2 - 1, 0), 60);
    std::vector<int> degrees = config.riesz_degrees;
    if (degrees.empty()) {
        for (int n : {5, 10, 15, 20})
            if (2 * (1 + n) <= N) degrees.push_back(n);
    }

    try {
        v.carleman = carleman_report(s, carleman_n, config);
    } catch (const NonPositiveEvenMoment&) {
        v.notes.push_back("carleman inapplicable: vanishing even moment (support in {0})");
    }
    v.weyl = weyl_radius(s, config.z, weyl_n, config.policy);
    v.finite_support = v.weyl.truncated;
    if (!degrees.empty()) v.riesz = riesz_determinacy(s, degrees, config.policy);

    // Riesz trend: decreasing ladder that ends below threshold.
    bool riesz_decay = false, riesz_bounded_away = false;
    if (v.riesz.distances.size() >= 2) {
        bool decreasing = true;
        Real mn = v.riesz.distances.front();
        for (std::size_t i = 1; i < v.riesz.distances.size(); ++i) {
            if (v.riesz.distances[i] > v.riesz.distances[i - 1] * (1 + Real("1e-12")))
                decreasing = false;
            mn = std::min(mn, v.riesz.distances[i]);
        }
        riesz_decay = decreasing && v.riesz.distances.back() < config.riesz_threshold;
        riesz_bounded_away = mn >= config.riesz_threshold;
    }

    // Weyl stabilization: relative variation over the last quarter below tol
    // and the limit bounded away from zero.
    bool weyl_stable_positive = false;
    const std::size_t nr = v.weyl.rho.size();
    if (!v.weyl.truncated && static_cast<int>(nr) >= config.min_weyl_points) {
        const Real last = v.weyl.rho.back();
        const Real first_q = v.weyl.rho[nr - 1 - nr / 4];
        if (last > config.weyl_positive_floor &&
            (first_q - last) / last < config.weyl_variation_tol)
            weyl_stable_positive = true;
    }

    const bool det = v.carleman.classification == SeriesClass::DIVERGES_LIKELY || riesz_decay ||
                     v.finite_support;
    const bool indet = weyl_stable_positive && riesz_bounded_away;

    if (det && indet) {
        v.overall = Verdict::INCONCLUSIVE;
        v.notes.push_back("criteria conflict: determinacy and indeterminacy evidence both present");
    } else if (det) {
        v.overall = Verdict::DETERMINATE_EVIDENCE;
        if (v.finite_support) v.notes.push_back("finite support: recurrence truncated");
        if (v.carleman.classification == SeriesClass::DIVERGES_LIKELY)
            v.notes.push_back("carleman series diverges (fitted exponent below 1)");
        if (riesz_decay) v.notes.push_back("riesz closure distance decays below threshold");
    } else if (indet) {
        v.overall = Verdict::INDETERMINATE_EVIDENCE;
        v.notes.push_back("weyl radius stabilized positive and riesz distance bounded away from 0");
    } else {
        v.overall = Verdict::INCONCLUSIVE;
    }
    return v;
}

} // namespace momentdet
