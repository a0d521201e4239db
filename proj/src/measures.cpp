#include "momentdet/measures.hpp"
#include "momentdet/quadrature.hpp"

#include <boost/math/constants/constants.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace momentdet {

namespace {

using nlohmann::json;

const std::set<std::string> kCatalog = {"gaussian", "lognormal", "exponential", "uniform",
                                        "stieltjes_family"};

Rational parse_rational(const json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        long long num = v[0].get<long long>();
        long long den = v[1].get<long long>();
        if (den == 0) throw SchemaError(what + ": zero denominator");
        return Rational(num) / Rational(den);
    }
    throw SchemaError(what + ": expected integer or [num, den] pair");
}

bool looks_like_atom(const json& v, int dim) {
    return v.is_array() && v.size() == 2 && v[0].is_array() &&
           v[0].size() == static_cast<std::size_t>(dim);
}

MeasureSpec::Atom parse_atom(const json& v, int dim) {
    if (!looks_like_atom(v, dim)) throw SchemaError("atom: expected [point, weight]");
    MeasureSpec::Atom a;
    for (const auto& c : v[0]) a.point.push_back(parse_rational(c, "atom coordinate"));
    a.weight = parse_rational(v[1], "atom weight");
    return a;
}

PolynomialMap parse_map(const json& v, int source_dim) {
    if (!v.is_object() || !v.contains("components") || !v["components"].is_array() ||
        v["components"].empty())
        throw SchemaError("map: expected object with nonempty \"components\" array");
    PolynomialMap m;
    m.source_dimension = source_dim;
    for (const auto& c : v["components"]) {
        if (!c.is_string()) throw SchemaError("map component: expected polynomial string");
        m.components.push_back(parse_polynomial(c.get<std::string>(), source_dim));
    }
    if (v.contains("injectivity_asserted")) {
        if (!v["injectivity_asserted"].is_boolean())
            throw SchemaError("map.injectivity_asserted: expected boolean");
        m.injectivity_asserted = v["injectivity_asserted"].get<bool>();
    }
    m.validate();
    return m;
}

MeasureSpec parse_spec_json(const json& j) {
    if (!j.is_object()) throw SchemaError("measure spec: expected JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("measure spec: missing \"kind\"");
    MeasureSpec spec;
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "discrete") {
        spec.kind = MeasureKind::discrete;
        if (!j.contains("dimension") || !j["dimension"].is_number_integer())
            throw SchemaError("discrete spec: missing \"dimension\"");
        spec.dimension = j["dimension"].get<int>();
        if (spec.dimension < 1) throw SchemaError("discrete spec: dimension must be >= 1");
        if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
            throw SchemaError("discrete spec: missing \"atoms\"");
        const json& atoms = j["atoms"];
        bool elementwise = true;
        for (const auto& a : atoms)
            if (!looks_like_atom(a, spec.dimension)) elementwise = false;
        if (elementwise) {
            for (const auto& a : atoms) spec.atoms.push_back(parse_atom(a, spec.dimension));
        } else if (looks_like_atom(atoms, spec.dimension)) {
            spec.atoms.push_back(parse_atom(atoms, spec.dimension));
        } else {
            throw SchemaError("discrete spec: atoms must be [point, weight] entries");
        }
    } else if (kind == "catalog") {
        spec.kind = MeasureKind::catalog;
        if (!j.contains("catalog_id") || !j["catalog_id"].is_string())
            throw SchemaError("catalog spec: missing \"catalog_id\"");
        spec.catalog_id = j["catalog_id"].get<std::string>();
        if (kCatalog.find(spec.catalog_id) == kCatalog.end())
            throw SchemaError("catalog spec: unknown catalog_id \"" + spec.catalog_id + "\"");
        spec.dimension = 1;
        if (j.contains("parameters")) {
            if (!j["parameters"].is_object())
                throw SchemaError("catalog spec: parameters must be an object");
            for (auto it = j["parameters"].begin(); it != j["parameters"].end(); ++it)
                spec.parameters[it.key()] = parse_rational(it.value(), "parameter " + it.key());
        }
    } else if (kind == "product") {
        spec.kind = MeasureKind::product;
        if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
            throw SchemaError("product spec: missing \"factors\"");
        spec.dimension = 0;
        for (const auto& f : j["factors"]) {
            spec.factors.push_back(parse_spec_json(f));
            spec.dimension += spec.factors.back().dimension;
        }
    } else if (kind == "pushforward") {
        spec.kind = MeasureKind::pushforward;
        if (!j.contains("base")) throw SchemaError("pushforward spec: missing \"base\"");
        spec.base = std::make_shared<MeasureSpec>(parse_spec_json(j["base"]));
        if (!j.contains("map")) throw SchemaError("pushforward spec: missing \"map\"");
        spec.map = parse_map(j["map"], spec.base->dimension);
        spec.dimension = spec.map.target_dimension();
    } else {
        throw SchemaError("measure spec: unknown kind \"" + kind + "\"");
    }
    spec.validate();
    return spec;
}

} // namespace

Rational MeasureSpec::parameter(const std::string& name) const {
    auto it = parameters.find(name);
    if (it == parameters.end())
        throw SchemaError("catalog \"" + catalog_id + "\": missing parameter \"" + name + "\"");
    return it->second;
}

void MeasureSpec::validate() const {
    if (dimension < 1) throw InvariantError("measure spec: dimension must be >= 1");
    switch (kind) {
    case MeasureKind::discrete: {
        if (atoms.empty()) throw InvariantError("discrete measure: needs at least one atom");
        for (const auto& a : atoms) {
            if (static_cast<int>(a.point.size()) != dimension)
                throw DimensionError("discrete measure: atom point dimension mismatch");
            if (!(a.weight > 0)) throw InvariantError("discrete measure: weights must be positive");
        }
        break;
    }
    case MeasureKind::catalog: {
        if (dimension != 1) throw InvariantError("catalog measure: dimension must be 1");
        if (catalog_id == "gaussian" || catalog_id == "lognormal") {
            parameter("mu");
            if (!(parameter("sigma") > 0))
                throw InvariantError(catalog_id + ": sigma must be positive");
        } else if (catalog_id == "exponential") {
            if (!(parameter("lambda") > 0))
                throw InvariantError("exponential: lambda must be positive");
        } else if (catalog_id == "uniform") {
            if (!(parameter("a") < parameter("b")))
                throw InvariantError("uniform: requires a < b");
        } else if (catalog_id == "stieltjes_family") {
            Rational eps = parameter("epsilon");
            if (eps < -1 || eps > 1)
                throw InvariantError("stieltjes_family: epsilon must lie in [-1, 1]");
        } else {
            throw SchemaError("unknown catalog_id \"" + catalog_id + "\"");
        }
        break;
    }
    case MeasureKind::product: {
        if (factors.empty()) throw InvariantError("product measure: needs factors");
        int total = 0;
        for (const auto& f : factors) {
            f.validate();
            total += f.dimension;
        }
        if (total != dimension)
            throw InvariantError("product measure: dimension must equal sum of factor dimensions");
        break;
    }
    case MeasureKind::pushforward: {
        if (!base) throw InvariantError("pushforward measure: missing base");
        base->validate();
        map.validate();
        if (map.source_dimension != base->dimension)
            throw DimensionError("pushforward measure: map source dimension mismatch");
        if (dimension != map.target_dimension())
            throw DimensionError("pushforward measure: dimension must equal component count");
        break;
    }
    }
}

MeasureSpec parse_measure_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("measure spec: invalid JSON: ") + e.what());
    }
    return parse_spec_json(j);
}

bool has_exact_moments(const MeasureSpec& spec) {
    switch (spec.kind) {
    case MeasureKind::discrete:
        return true;
    case MeasureKind::catalog:
        return spec.catalog_id == "gaussian" || spec.catalog_id == "exponential" ||
               spec.catalog_id == "uniform";
    case MeasureKind::product:
        for (const auto& f : spec.factors)
            if (!has_exact_moments(f)) return false;
        return true;
    case MeasureKind::pushforward:
        return has_exact_moments(*spec.base);
    }
    return false;
}

int pushforward_required_order(const PolynomialMap& map, int max_order) {
    int dmax = 1;
    for (const auto& c : map.components) dmax = std::max(dmax, c.degree());
    return max_order * dmax;
}

namespace {

std::vector<Rational> catalog_moments_exact(const MeasureSpec& spec, int max_order) {
    std::vector<Rational> s(static_cast<std::size_t>(max_order) + 1, Rational(0));
    if (spec.catalog_id == "gaussian") {
        Rational mu = spec.parameter("mu"), sig2 = spec.parameter("sigma");
        sig2 *= sig2;
        s[0] = 1;
        if (max_order >= 1) s[1] = mu;
        for (int n = 2; n <= max_order; ++n)
            s[static_cast<std::size_t>(n)] = mu * s[static_cast<std::size_t>(n - 1)] +
                                             Rational(n - 1) * sig2 * s[static_cast<std::size_t>(n - 2)];
    } else if (spec.catalog_id == "exponential") {
        Rational lambda = spec.parameter("lambda");
        s[0] = 1;
        for (int n = 1; n <= max_order; ++n)
            s[static_cast<std::size_t>(n)] = s[static_cast<std::size_t>(n - 1)] * Rational(n) / lambda;
    } else if (spec.catalog_id == "uniform") {
        Rational a = spec.parameter("a"), b = spec.parameter("b");
        Rational pa = a, pb = b; // running powers a^{n+1}, b^{n+1}
        s[0] = 1;
        for (int n = 1; n <= max_order; ++n) {
            pa *= a;
            pb *= b;
            s[static_cast<std::size_t>(n)] = (pb - pa) / (Rational(n + 1) * (b - a));
        }
    } else {
        throw InvariantError("catalog \"" + spec.catalog_id + "\" has no exact closed form");
    }
    return s;
}

std::vector<Real> lognormal_moments(const MeasureSpec& spec, int max_order) {
    Real mu = to_real(spec.parameter("mu"));
    Real sigma = to_real(spec.parameter("sigma"));
    std::vector<Real> s;
    s.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int n = 0; n <= max_order; ++n)
        s.push_back(mp::exp(Real(n) * mu + Real(n) * Real(n) * sigma * sigma / 2));
    return s;
}

// Moments of the density proportional to x^(-ln x)(1 + eps*sin(2*pi*ln x)) on
// (0, inf); after x = e^u the n-th raw moment is the entire-line integral of
// e^(-u^2 + (n+1)u)(1 + eps*sin(2*pi*u)). Normalized by the eps = 0 mass.
std::vector<Real> stieltjes_moments(const MeasureSpec& spec, int max_order,
                                    const PrecisionPolicy& policy, std::size_t& nodes_total) {
    const Real eps = to_real(spec.parameter("epsilon"));
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    nodes_total = 0;

    auto raw_moment = [&](int n, const Real& eps_val, const Real& abs_tol) {
        const Real c = Real(n + 1) / 2;
        auto f = [&](const Real& u) {
            Real g = mp::exp(-u * u + Real(n + 1) * u);
            if (eps_val != 0) g *= 1 + eps_val * mp::sin(two_pi * u);
            return g;
        };
        auto res = integrate_or_throw<Real>(f, c - 15, c + 15, abs_tol, policy.quad_node_budget);
        nodes_total += res.nodes_used;
        return res.value;
    };

    // eps = 0 mass: integral of e^(-u^2 + u), used for normalization.
    const Real mass0_tol = Real("1e-30");
    const Real mass0 = raw_moment(0, Real(0), mass0_tol);

    std::vector<Real> s;
    s.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int n = 0; n <= max_order; ++n) {
        // raw moment grows like e^(c^2) with c = (n+1)/2; keep the tolerance
        // relative to that scale so high orders stay reachable
        const Real c = Real(n + 1) / 2;
        Real raw_tol = policy.quad_abs_tol * mass0 * mp::exp(c * c);
        s.push_back(raw_moment(n, eps, raw_tol) / mass0);
    }
    return s;
}

} // namespace

MomentSequence<Rational> compute_moments_exact(const MeasureSpec& spec, int max_order) {
    spec.validate();
    if (!has_exact_moments(spec))
        throw InvariantError("measure spec has no exact moment closed form");
    if (max_order < 0) throw InvariantError("compute_moments: max_order must be >= 0");

    switch (spec.kind) {
    case MeasureKind::discrete: {
        MomentSequence<Rational> out(spec.dimension, max_order);
        for (const auto& alpha : out.indices()) {
            Rational acc(0);
            for (const auto& atom : spec.atoms) {
                Rational mono(1);
                for (std::size_t i = 0; i < atom.point.size(); ++i)
                    for (int k = 0; k < alpha[i]; ++k) mono *= atom.point[i];
                acc += atom.weight * mono;
            }
            out.set(alpha, acc);
        }
        out.set_provenance("exact (discrete)");
        out.validate();
        return out;
    }
    case MeasureKind::catalog: {
        auto s = catalog_moments_exact(spec, max_order);
        MomentSequence<Rational> out(1, max_order);
        for (int n = 0; n <= max_order; ++n) out.set(MultiIndex{n}, s[static_cast<std::size_t>(n)]);
        out.set_provenance("exact (closed form " + spec.catalog_id + ")");
        out.validate();
        return out;
    }
    case MeasureKind::product: {
        std::vector<MomentSequence<Rational>> parts;
        for (const auto& f : spec.factors) parts.push_back(compute_moments_exact(f, max_order));
        MomentSequence<Rational> out(spec.dimension, max_order);
        for (const auto& alpha : out.indices()) {
            Rational acc(1);
            std::size_t off = 0;
            for (const auto& part : parts) {
                MultiIndex sub(alpha.begin() + static_cast<long>(off),
                               alpha.begin() + static_cast<long>(off + part.dimension()));
                acc *= part.at(sub);
                off += static_cast<std::size_t>(part.dimension());
            }
            out.set(alpha, acc);
        }
        out.set_provenance("exact (product)");
        out.validate();
        return out;
    }
    case MeasureKind::pushforward: {
        int need = pushforward_required_order(spec.map, max_order);
        auto base = compute_moments_exact(*spec.base, need);
        auto out = pushforward_moments(base, spec.map, max_order);
        out.set_provenance("exact (pushforward)");
        out.validate();
        return out;
    }
    }
    throw InvariantError("unreachable measure kind");
}

MomentSequence<Real> compute_moments(const MeasureSpec& spec, int max_order,
                                     const PrecisionPolicy& policy) {
    spec.validate();
    policy.validate();
    ScopedPrecision scope(policy.significand_bits);

    if (has_exact_moments(spec)) return to_real_sequence(compute_moments_exact(spec, max_order));

    switch (spec.kind) {
    case MeasureKind::catalog: {
        std::vector<Real> s;
        std::string note;
        if (spec.catalog_id == "lognormal") {
            s = lognormal_moments(spec, max_order);
            note = "closed form (lognormal, float)";
        } else if (spec.catalog_id == "stieltjes_family") {
            std::size_t nodes = 0;
            s = stieltjes_moments(spec, max_order, policy, nodes);
            note = "quadrature (" + std::to_string(nodes) + " nodes)";
        } else {
            throw InvariantError("catalog \"" + spec.catalog_id + "\" unhandled");
        }
        MomentSequence<Real> out(1, max_order);
        for (int n = 0; n <= max_order; ++n) out.set(MultiIndex{n}, s[static_cast<std::size_t>(n)]);
        out.set_provenance(note);
        out.validate();
        return out;
    }
    case MeasureKind::product: {
        std::vector<MomentSequence<Real>> parts;
        for (const auto& f : spec.factors) parts.push_back(compute_moments(f, max_order, policy));
        MomentSequence<Real> out(spec.dimension, max_order);
        for (const auto& alpha : out.indices()) {
            Real acc(1);
            std::size_t off = 0;
            for (const auto& part : parts) {
                MultiIndex sub(alpha.begin() + static_cast<long>(off),
                               alpha.begin() + static_cast<long>(off + part.dimension()));
                acc *= part.at(sub);
                off += static_cast<std::size_t>(part.dimension());
            }
            out.set(alpha, acc);
        }
        out.set_provenance("product (float)");
        out.validate();
        return out;
    }
    case MeasureKind::pushforward: {
        int need = pushforward_required_order(spec.map, max_order);
        auto base = compute_moments(*spec.base, need, policy);
        auto out = pushforward_moments(base, spec.map, max_order);
        out.set_provenance("pushforward (float)");
        out.validate();
        return out;
    }
    default:
        throw InvariantError("unreachable measure kind");
    }
}

AnyMoments compute_moments_any(const MeasureSpec& spec, int max_order,
                               const PrecisionPolicy& policy) {
    if (has_exact_moments(spec)) return compute_moments_exact(spec, max_order);
    return compute_moments(spec, max_order, policy);
}

} // namespace momentdet
