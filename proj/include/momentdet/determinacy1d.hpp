#ifndef MOMENTDET_DETERMINACY1D_HPP
#define MOMENTDET_DETERMINACY1D_HPP

#include "momentdet/orthopoly.hpp"

namespace momentdet {

enum class SeriesClass { DIVERGES_LIKELY, CONVERGES_LIKELY, INCONCLUSIVE };

inline const char* to_string(SeriesClass c) {
    switch (c) {
    case SeriesClass::DIVERGES_LIKELY: return "DIVERGES_LIKELY";
    case SeriesClass::CONVERGES_LIKELY: return "CONVERGES_LIKELY";
    default: return "INCONCLUSIVE";
    }
}

/// Heuristic three-valued divergence diagnostic of a nonnegative-term series,
/// from a power-law fit log t_n = log c - p log n over all available terms.
struct SeriesDiagnostic {
    std::vector<Real> terms;        // t_1 .. t_{n_max}
    std::vector<Real> partial_sums; // running sums of terms
    Real fitted_exponent{};         // p
    Real fitted_coefficient{};      // c
    SeriesClass classification = SeriesClass::INCONCLUSIVE;
};

struct Config1D {
    Real delta_fit = Real("0.15");
    Real riesz_threshold = Real("0.05");
    Real weyl_variation_tol = Real("1e-8");
    Real weyl_positive_floor = Real("1e-6");
    Real stabilization_tol = Real("1e-9");
    int min_series_terms = 8;   // below this everything is INCONCLUSIVE
    int min_weyl_points = 16;   // stabilization needs a real tail
    Complex z = Complex(Real(0), Real(1));
    int carleman_n_max = -1;          // -1: all of N/2
    int weyl_n_max = -1;              // -1: N/2 - 1
    std::vector<int> riesz_degrees;   // empty: {5,10,15,20} clipped to N/2-1
    PrecisionPolicy policy;
};

/// Classify a term sequence (t_1..) by power-law tail fit plus partial-sum
/// stabilization; shared by the Carleman and quasi-analyticity style rules.
SeriesDiagnostic classify_series(const std::vector<Real>& terms, const Config1D& config);

/// Carleman diagnostic: terms t_n = (s_{2n}/s_0)^(-1/(2n)), n = 1..n_max.
SeriesDiagnostic carleman_report(const MomentSequence<Real>& s, int n_max,
                                 const Config1D& config = {});

struct WeylRadii {
    Complex z;
    std::vector<Real> rho; // rho_0 .. rho_{achieved}
    bool truncated = false;
    int achieved = -1;
};

/// rho_n(z) = 1 / (|z - conj z| * sum_{k<=n} |P_k(z)|^2), strictly decreasing;
/// a positive limit signals indeterminacy. Finite support truncates with a flag.
WeylRadii weyl_radius(const MomentSequence<Real>& s, const Complex& z, int n_max,
                      const PrecisionPolicy& policy);

struct RieszLadder {
    std::vector<int> degrees;
    std::vector<Real> distances; // d(n) = riesz_distance with multiplier x + i
};

RieszLadder riesz_determinacy(const MomentSequence<Real>& s, const std::vector<int>& degrees,
                              const PrecisionPolicy& policy);

enum class Verdict { DETERMINATE_EVIDENCE, INDETERMINATE_EVIDENCE, INCONCLUSIVE };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::DETERMINATE_EVIDENCE: return "DETERMINATE_EVIDENCE";
    case Verdict::INDETERMINATE_EVIDENCE: return "INDETERMINATE_EVIDENCE";
    default: return "INCONCLUSIVE";
    }
}

struct Verdict1D {
    Verdict overall = Verdict::INCONCLUSIVE;
    SeriesDiagnostic carleman;
    WeylRadii weyl;
    RieszLadder riesz;
    bool finite_support = false;
    std::vector<std::string> notes;
};

/// Combine the three criteria. Determinate evidence needs Carleman divergence,
/// Riesz decay below threshold with decreasing trend, or finite support;
/// indeterminate evidence needs a stably positive Weyl radius with Riesz
/// distances bounded away from zero; conflicts collapse to INCONCLUSIVE.
Verdict1D verdict_1d(const MomentSequence<Real>& s, const Config1D& config = {});

} // namespace momentdet

#endif
