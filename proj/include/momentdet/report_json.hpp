#ifndef MOMENTDET_REPORT_JSON_HPP
#define MOMENTDET_REPORT_JSON_HPP

#include "momentdet/determinacy_md.hpp"
#include "momentdet/measures.hpp"

#include "json.hpp"

#include <string>

// Wire formats. Field order is fixed (ordered_json) and floats are printed at
// a fixed digit count so identical inputs serialize to identical bytes.

namespace momentdet {

using OrderedJson = nlohmann::ordered_json;

inline std::string real_str(const Real& v) {
    return v.str(30, std::ios_base::scientific);
}

inline OrderedJson complex_json(const Complex& z) {
    return OrderedJson{{"re", real_str(z.real())}, {"im", real_str(z.imag())}};
}

inline std::string rational_digits(const Rational& q, bool numerator) {
    return numerator ? mp::numerator(q).str() : mp::denominator(q).str();
}

template <typename S>
OrderedJson moments_json(const MomentSequence<S>& s, bool exact) {
    OrderedJson doc;
    doc["schema"] = "momentdet/1";
    doc["dimension"] = s.dimension();
    doc["max_order"] = s.max_order();
    doc["exact"] = exact;
    OrderedJson entries = OrderedJson::array();
    for (const auto& alpha : s.indices()) {
        OrderedJson e;
        e["alpha"] = alpha;
        if constexpr (std::is_same_v<S, Rational>) {
            const Rational& q = s.at(alpha);
            e["value"] = OrderedJson::array({rational_digits(q, true), rational_digits(q, false)});
        } else {
            e["value"] = real_str(s.at(alpha));
        }
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

inline OrderedJson moments_json(const AnyMoments& m) {
    return std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            return moments_json(s, std::is_same_v<S, MomentSequence<Rational>>);
        },
        m);
}

/// Re-ingests a document written by moments_json; exact tables stay exact.
inline AnyMoments parse_moments_json(const std::string& text) {
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("moments JSON: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != "momentdet/1")
            throw SchemaError("moments JSON: unknown schema");
        const int d = doc.at("dimension").get<int>();
        const int N = doc.at("max_order").get<int>();
        const bool exact = doc.at("exact").get<bool>();
        auto read_entries = [&](auto& seq, auto to_value) {
            for (const auto& e : doc.at("entries")) {
                MultiIndex alpha = e.at("alpha").get<MultiIndex>();
                seq.set(alpha, to_value(e.at("value")));
            }
        };
        if (exact) {
            MomentSequence<Rational> s(d, N);
            read_entries(s, [](const OrderedJson& v) {
                if (!v.is_array() || v.size() != 2)
                    throw SchemaError("moments JSON: exact value must be [num, den]");
                auto digits = [](const OrderedJson& x) {
                    return x.is_string() ? x.get<std::string>() : x.dump();
                };
                return Rational(digits(v[0])) / Rational(digits(v[1]));
            });
            s.set_provenance("ingested (exact)");
            s.validate();
            return s;
        }
        MomentSequence<Real> s(d, N);
        read_entries(s, [](const OrderedJson& v) {
            return v.is_string() ? Real(v.get<std::string>()) : Real(v.dump());
        });
        s.set_provenance("ingested (float)");
        s.validate();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("moments JSON: ") + e.what());
    }
}

inline OrderedJson series_json(const SeriesDiagnostic& d) {
    OrderedJson out;
    out["classification"] = to_string(d.classification);
    out["terms"] = static_cast<int>(d.terms.size());
    out["fitted_exponent"] = real_str(d.fitted_exponent);
    out["last_partial_sum"] =
        d.partial_sums.empty() ? "0" : real_str(d.partial_sums.back());
    return out;
}

inline OrderedJson verdict_1d_json(const Verdict1D& v) {
    OrderedJson out;
    out["overall"] = to_string(v.overall);
    out["carleman"] = series_json(v.carleman);
    OrderedJson weyl;
    weyl["z"] = complex_json(v.weyl.z);
    weyl["points"] = v.weyl.achieved + 1;
    weyl["truncated"] = v.weyl.truncated;
    weyl["last_radius"] = v.weyl.rho.empty() ? "0" : real_str(v.weyl.rho.back());
    out["weyl"] = std::move(weyl);
    OrderedJson riesz;
    riesz["degrees"] = v.riesz.degrees;
    OrderedJson dist = OrderedJson::array();
    for (const auto& x : v.riesz.distances) dist.push_back(real_str(x));
    riesz["distances"] = std::move(dist);
    out["riesz"] = std::move(riesz);
    out["finite_support"] = v.finite_support;
    out["notes"] = v.notes;
    return out;
}

inline OrderedJson rule_json(const RuleEvidence& r) {
    OrderedJson out;
    out["id"] = r.id;
    out["applicability"] = to_string(r.applicability);
    out["conclusion"] = to_string(r.conclusion);
    OrderedJson subs = OrderedJson::array();
    for (const auto& sv : r.sub_verdicts) {
        OrderedJson s;
        s["label"] = sv.label;
        if (sv.verdict) s["verdict"] = verdict_1d_json(*sv.verdict);
        if (sv.series) s["series"] = series_json(*sv.series);
        subs.push_back(std::move(s));
    }
    out["sub_verdicts"] = std::move(subs);
    out["assertions"] = r.assertions;
    out["caveats"] = r.caveats;
    out["notes"] = r.notes;
    return out;
}

inline OrderedJson evidence_report_json(const EvidenceReport& report,
                                        const OrderedJson& config_echo) {
    OrderedJson out;
    out["schema"] = "momentdet/1";
    out["fingerprint"] = report.fingerprint;
    out["config"] = config_echo;
    OrderedJson rules = OrderedJson::array();
    for (const auto& r : report.rules) rules.push_back(rule_json(r));
    out["rules"] = std::move(rules);
    out["overall"] = to_string(report.overall);
    out["warnings"] = report.warnings;
    return out;
}

} // namespace momentdet

#endif
