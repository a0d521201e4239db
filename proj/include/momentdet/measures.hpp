#ifndef MOMENTDET_MEASURES_HPP
#define MOMENTDET_MEASURES_HPP

#include "momentdet/errors.hpp"
#include "momentdet/multi_index.hpp"
#include "momentdet/polynomial.hpp"
#include "momentdet/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace momentdet {

/// Truncated moment multi-sequence: every s_alpha with |alpha| <= max_order,
/// stored in graded-lex order. Scalar is Rational (exact pipelines) or Real.
template <typename S>
class MomentSequence {
public:
    MomentSequence(int dimension, int max_order)
        : dim_(dimension), max_order_(max_order),
          indices_(multi_indices_up_to(dimension, max_order)),
          values_(indices_.size(), S(0)) {
        if (dimension < 1) throw DimensionError("MomentSequence: dimension must be >= 1");
        if (max_order < 0) throw InvariantError("MomentSequence: max_order must be >= 0");
        for (std::size_t i = 0; i < indices_.size(); ++i) rank_.emplace(indices_[i], i);
    }

    int dimension() const { return dim_; }
    int max_order() const { return max_order_; }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    const S& at(const MultiIndex& a) const {
        auto it = rank_.find(a);
        if (it == rank_.end())
            throw DegreeOverflow("moment of order " + std::to_string(total_order(a)) +
                                 " not available (max " + std::to_string(max_order_) + ")");
        return values_[it->second];
    }
    void set(const MultiIndex& a, const S& v) {
        auto it = rank_.find(a);
        if (it == rank_.end()) throw DegreeOverflow("multi-index outside table");
        values_[it->second] = v;
    }
    /// 1D convenience access s_n.
    const S& at(int n) const { return at(MultiIndex{n}); }

    const S& mass() const { return values_[0]; }

    void validate() const {
        if (!(values_[0] > 0)) throw InvariantError("MomentSequence: s_0 must be positive");
    }

private:
    int dim_;
    int max_order_;
    std::vector<MultiIndex> indices_;
    std::map<MultiIndex, std::size_t> rank_;
    std::vector<S> values_;
    std::string provenance_;
};

inline MomentSequence<Real> to_real_sequence(const MomentSequence<Rational>& s) {
    MomentSequence<Real> r(s.dimension(), s.max_order());
    for (const auto& a : s.indices()) r.set(a, to_real(s.at(a)));
    r.set_provenance(s.provenance() + " (demoted to float)");
    return r;
}
inline const MomentSequence<Real>& to_real_sequence(const MomentSequence<Real>& s) {
    return s;
}

/// Either flavor of moment table; exactness is the active alternative.
using AnyMoments = std::variant<MomentSequence<Rational>, MomentSequence<Real>>;

inline MomentSequence<Real> as_real(const AnyMoments& m) {
    return std::visit([](const auto& s) { return MomentSequence<Real>(to_real_sequence(s)); }, m);
}

/// Polynomial map phi = (phi_1..phi_m): R^d -> R^m with exact coefficients.
struct PolynomialMap {
    int source_dimension = 1;
    std::vector<Polynomial<Rational>> components;
    bool injectivity_asserted = false;

    int target_dimension() const { return static_cast<int>(components.size()); }
    void validate() const {
        if (components.empty()) throw InvariantError("PolynomialMap: needs at least one component");
        for (const auto& c : components)
            if (c.dimension() != source_dimension)
                throw DimensionError("PolynomialMap: component dimension mismatch");
    }
    static PolynomialMap identity(int d) {
        PolynomialMap m;
        m.source_dimension = d;
        for (int j = 0; j < d; ++j) m.components.push_back(Polynomial<Rational>::variable(d, j));
        m.injectivity_asserted = true;
        return m;
    }
};

enum class MeasureKind { discrete, catalog, product, pushforward };

/// Declarative description of a measure with all moments finite.
struct MeasureSpec {
    MeasureKind kind = MeasureKind::discrete;
    int dimension = 1;

    // discrete
    struct Atom {
        std::vector<Rational> point;
        Rational weight;
    };
    std::vector<Atom> atoms;

    // catalog
    std::string catalog_id;
    std::map<std::string, Rational> parameters;

    // product
    std::vector<MeasureSpec> factors;

    // pushforward
    std::shared_ptr<MeasureSpec> base;
    PolynomialMap map;

    void validate() const;
    Rational parameter(const std::string& name) const;
};

/// Parses and validates the JSON measure-spec document.
MeasureSpec parse_measure_spec(const std::string& json_text);

/// True when all moments of the spec are exactly representable as rationals
/// (discrete atoms, gaussian/exponential/uniform closed forms, and products
/// and pushforwards thereof).
bool has_exact_moments(const MeasureSpec& spec);

/// Exact moment computation; throws InvariantError when the spec has no exact
/// closed form (check has_exact_moments first).
MomentSequence<Rational> compute_moments_exact(const MeasureSpec& spec, int max_order);

/// Moment computation in policy precision: exact closed forms where available,
/// floating closed forms for lognormal, adaptive quadrature otherwise.
MomentSequence<Real> compute_moments(const MeasureSpec& spec, int max_order,
                                     const PrecisionPolicy& policy);

/// Exact-if-possible front end used by the CLI.
AnyMoments compute_moments_any(const MeasureSpec& spec, int max_order,
                               const PrecisionPolicy& policy);

/// Marginal 1-sequence along axis j (1-based): {s_(0..n..0)}, n <= max_order.
template <typename S>
MomentSequence<S> marginal(const MomentSequence<S>& s, int axis) {
    if (axis < 1 || axis > s.dimension())
        throw AxisOutOfRange("marginal axis " + std::to_string(axis) + " out of range");
    MomentSequence<S> out(1, s.max_order());
    for (int n = 0; n <= s.max_order(); ++n) {
        MultiIndex a(static_cast<std::size_t>(s.dimension()), 0);
        a[static_cast<std::size_t>(axis - 1)] = n;
        out.set(MultiIndex{n}, s.at(a));
    }
    out.set_provenance(s.provenance());
    return out;
}

/// Moments of the image measure phi(mu): t_beta = L_s(phi^beta), by expanding
/// phi^beta into monomials and applying the moment functional. Exact when the
/// inputs are.
template <typename S>
MomentSequence<S> pushforward_moments(const MomentSequence<S>& s, const PolynomialMap& map,
                                      int max_order) {
    map.validate();
    if (map.source_dimension != s.dimension())
        throw DimensionError("pushforward: map source dimension must match sequence");
    const int m = map.target_dimension();
    MomentSequence<S> out(m, max_order);
    std::vector<Polynomial<S>> comps;
    comps.reserve(map.components.size());
    for (const auto& c : map.components) comps.push_back(c.template cast<S>());

    for (const auto& beta : out.indices()) {
        Polynomial<S> expanded = Polynomial<S>::constant(map.source_dimension, S(1));
        for (int i = 0; i < m; ++i)
            expanded *= comps[static_cast<std::size_t>(i)].pow(beta[static_cast<std::size_t>(i)]);
        if (expanded.degree() > s.max_order())
            throw DegreeOverflow("pushforward: phi^beta has degree " +
                                 std::to_string(expanded.degree()) + " > available order " +
                                 std::to_string(s.max_order()));
        S acc(0);
        for (const auto& [a, c] : expanded.terms()) acc += c * s.at(a);
        out.set(beta, acc);
    }
    out.set_provenance(s.provenance());
    return out;
}

/// Degree of the base table required to push s forward to order max_order.
int pushforward_required_order(const PolynomialMap& map, int max_order);

} // namespace momentdet

#endif
