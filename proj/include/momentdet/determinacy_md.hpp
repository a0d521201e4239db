#ifndef MOMENTDET_DETERMINACY_MD_HPP
#define MOMENTDET_DETERMINACY_MD_HPP

#include "momentdet/nevanlinna.hpp"

#include <optional>

namespace momentdet {

enum class Applicability { APPLIES, NOT_APPLICABLE, NEEDS_ASSERTION };

inline const char* to_string(Applicability a) {
    switch (a) {
    case Applicability::APPLIES: return "APPLIES";
    case Applicability::NOT_APPLICABLE: return "NOT_APPLICABLE";
    default: return "NEEDS_ASSERTION";
    }
}

/// One labeled piece of evidence inside a rule: either a full 1D verdict or a
/// bare series diagnostic.
struct SubVerdict {
    std::string label;
    std::optional<Verdict1D> verdict;
    std::optional<SeriesDiagnostic> series;
};

/// Evidence produced by one determinacy rule. Conclusions are one-sided:
/// DETERMINATE_EVIDENCE or INCONCLUSIVE, never multivariate indeterminacy.
struct RuleEvidence {
    std::string id;
    Applicability applicability = Applicability::APPLIES;
    Verdict conclusion = Verdict::INCONCLUSIVE;
    std::vector<SubVerdict> sub_verdicts;
    std::vector<std::string> assertions; // assertions consumed
    std::vector<std::string> caveats;    // finite-enumeration disclosures
    std::vector<std::string> notes;
};

struct MdConfig {
    Config1D one_d;
    int eskin_k_max = 3;        // d = 2 second-index cap (even offsets 0..2k_max)
    int eskin_multi_cap = 1;    // d >= 3: even values 0..2*cap per slot
    int pencil_directions = 8;
    unsigned seed = 0;
    Real cylinder_tol = Real("0.1");
    Real density_threshold = Real("0.05");
    std::vector<int> density_degrees; // empty: {2,4,6,8,10} clipped to order
    bool support_positive_asserted = false;
    bool compact_base_asserted = false;
    Real compact_base_radius = Real(1);
};

struct EvidenceReport {
    std::string fingerprint;
    std::string config_note;
    std::vector<RuleEvidence> rules;
    Verdict overall = Verdict::INCONCLUSIVE;
    std::vector<std::string> warnings;
};

/// 1D section of a table: slot `axis` (0-based) runs over n, the other
/// coordinates are fixed at `fixed` (entry at `axis` ignored).
MomentSequence<Real> section_1d(const MomentSequence<Real>& s, int axis, MultiIndex fixed);

/// All marginals determinate implies determinate.
RuleEvidence rule_petersen(const MomentSequence<Real>& s, const MdConfig& config);

/// Carleman condition on every marginal; first d-1 alone certify existence.
RuleEvidence rule_nussbaum(const MomentSequence<Real>& s, const MdConfig& config);

/// Quasi-analyticity sums over R_+^d (support assertion required):
/// sum_k [sum_{|a|=k} s_a^2]^(-1/2k) and the multinomial variant.
RuleEvidence rule_bochner_taylor(const MomentSequence<Real>& s, const MdConfig& config);

/// d = 2: sequences {s_(n,2k+2) + s_(n,2k)} for k <= k_max plus {s_(0,n)}.
RuleEvidence rule_eskin(const MomentSequence<Real>& s, const MdConfig& config);

/// d >= 3 analogue over the even-offset families.
RuleEvidence rule_eskin_multi(const MomentSequence<Real>& s, const MdConfig& config);

/// Injective polynomial image: every component pushforward determinate.
RuleEvidence rule_pushforward(const MomentSequence<Real>& s, const PolynomialMap& map,
                              const MdConfig& config);

/// Radial reduction: determinacy of t_k = L((x_1^2+...+x_d^2)^k) on [0,inf).
RuleEvidence rule_radial(const MomentSequence<Real>& s, const MdConfig& config);

/// Compact-base cylinder: last marginal determinate implies ultradeterminate,
/// given the asserted bound on the first d-1 coordinates (plausibility-checked).
RuleEvidence rule_cylinder(const MomentSequence<Real>& s, const MdConfig& config);

/// Sampled semi-axis directions a > 0: determinacy of t_k = L((a.x)^k).
RuleEvidence rule_line_pencil(const MomentSequence<Real>& s,
                              const std::vector<std::vector<Real>>& directions,
                              const MdConfig& config);

/// Closure distances m(n) = min ||1 - f p||, deg p <= n, for f >= 1 separating
/// (default f = 1 + sum x_i^2).
RuleEvidence rule_density(const MomentSequence<Real>& s, const Polynomial<Rational>& f,
                          bool f_geq1_asserted, const MdConfig& config);

Polynomial<Rational> default_density_multiplier(int dimension);

/// OR over rules for determinacy; never concludes multivariate indeterminacy.
EvidenceReport combine(const std::vector<RuleEvidence>& evidences);

/// Deterministic fingerprint of a moment table (dimension, order, values).
std::string fingerprint(const MomentSequence<Real>& s);
std::string fingerprint(const MomentSequence<Rational>& s);

/// Runs the full applicable rule set and combines.
EvidenceReport run_all_rules(const MomentSequence<Real>& s, const MdConfig& config);

} // namespace momentdet

#endif
