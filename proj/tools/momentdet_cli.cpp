// Command-line front end: moments, check, weyl, nevanlinna, transform.
// Exit codes: 0 success (verdicts are data, never drive the code),
// 2 schema / input errors, 3 computation failures.

#include "momentdet/determinacy_md.hpp"
#include "momentdet/report_json.hpp"
#include "momentdet/transforms.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace md = momentdet;
using md::Real;
using md::Complex;
using md::OrderedJson;

namespace {

struct GlobalOpts {
    unsigned precision_bits = 256;
    std::string config_path;
    std::string out_path;
    unsigned seed = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw md::SchemaError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty() || g.out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw md::SchemaError("cannot open output file: " + g.out_path);
    out << text;
}

// "a+bi" flag values: "2", "i", "-i", "0+1i", "1.5-2e-3i"
Complex parse_complex(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw md::SchemaError("empty complex literal");
    if (s.back() != 'i') return Complex(Real(s));
    s.pop_back();
    // split at the last sign that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            if (s.empty() || s == "+") return Complex(Real(0), Real(1));
            if (s == "-") return Complex(Real(0), Real(-1));
            return Complex(Real(0), Real(s));
        }
        std::string re = s.substr(0, split), im = s.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return Complex(Real(re), Real(im));
    } catch (const std::exception&) {
        throw md::SchemaError("bad complex literal: " + text);
    }
}

md::MeasureSpec load_spec(const std::string& path) {
    return md::parse_measure_spec(slurp(path));
}

struct RunConfig {
    md::MdConfig md_config;
    md::PrecisionPolicy policy;
};

Real config_real(const OrderedJson& v) {
    return v.is_string() ? Real(v.get<std::string>()) : Real(v.dump());
}

// --config overrides for thresholds and caps; unknown keys are rejected.
void apply_config_file(RunConfig& rc, const std::string& path) {
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(slurp(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw md::SchemaError(std::string("config JSON: ") + e.what());
    }
    auto& one_d = rc.md_config.one_d;
    for (const auto& [key, v] : doc.items()) {
        if (key == "delta_fit") one_d.delta_fit = config_real(v);
        else if (key == "riesz_threshold") one_d.riesz_threshold = config_real(v);
        else if (key == "weyl_variation_tol") one_d.weyl_variation_tol = config_real(v);
        else if (key == "weyl_positive_floor") one_d.weyl_positive_floor = config_real(v);
        else if (key == "stabilization_tol") one_d.stabilization_tol = config_real(v);
        else if (key == "min_series_terms") one_d.min_series_terms = v.get<int>();
        else if (key == "min_weyl_points") one_d.min_weyl_points = v.get<int>();
        else if (key == "carleman_n_max") one_d.carleman_n_max = v.get<int>();
        else if (key == "weyl_n_max") one_d.weyl_n_max = v.get<int>();
        else if (key == "riesz_degrees") one_d.riesz_degrees = v.get<std::vector<int>>();
        else if (key == "z") one_d.z = parse_complex(v.get<std::string>());
        else if (key == "eskin_k_max") rc.md_config.eskin_k_max = v.get<int>();
        else if (key == "eskin_multi_cap") rc.md_config.eskin_multi_cap = v.get<int>();
        else if (key == "pencil_directions") rc.md_config.pencil_directions = v.get<int>();
        else if (key == "cylinder_tol") rc.md_config.cylinder_tol = config_real(v);
        else if (key == "density_threshold") rc.md_config.density_threshold = config_real(v);
        else if (key == "density_degrees") rc.md_config.density_degrees = v.get<std::vector<int>>();
        else if (key == "compact_base_radius") rc.md_config.compact_base_radius = config_real(v);
        else if (key == "quad_abs_tol") rc.policy.quad_abs_tol = config_real(v);
        else if (key == "psd_rel_tol") rc.policy.psd_rel_tol = config_real(v);
        else if (key == "quad_node_budget") rc.policy.quad_node_budget = v.get<std::size_t>();
        else throw md::SchemaError("config JSON: unknown key \"" + key + "\"");
    }
}

OrderedJson config_echo(const RunConfig& rc, const GlobalOpts& g,
                        const std::vector<std::string>& rules) {
    const auto& c = rc.md_config;
    OrderedJson out;
    out["precision_bits"] = g.precision_bits;
    out["seed"] = g.seed;
    out["rules"] = rules;
    out["delta_fit"] = md::real_str(c.one_d.delta_fit);
    out["riesz_threshold"] = md::real_str(c.one_d.riesz_threshold);
    out["weyl_variation_tol"] = md::real_str(c.one_d.weyl_variation_tol);
    out["weyl_positive_floor"] = md::real_str(c.one_d.weyl_positive_floor);
    out["stabilization_tol"] = md::real_str(c.one_d.stabilization_tol);
    out["min_series_terms"] = c.one_d.min_series_terms;
    out["min_weyl_points"] = c.one_d.min_weyl_points;
    out["carleman_n_max"] = c.one_d.carleman_n_max;
    out["weyl_n_max"] = c.one_d.weyl_n_max;
    out["riesz_degrees"] = c.one_d.riesz_degrees;
    out["z"] = md::complex_json(c.one_d.z);
    out["eskin_k_max"] = c.eskin_k_max;
    out["eskin_multi_cap"] = c.eskin_multi_cap;
    out["pencil_directions"] = c.pencil_directions;
    out["cylinder_tol"] = md::real_str(c.cylinder_tol);
    out["density_threshold"] = md::real_str(c.density_threshold);
    out["density_degrees"] = c.density_degrees;
    out["support_positive_asserted"] = c.support_positive_asserted;
    out["compact_base_asserted"] = c.compact_base_asserted;
    out["compact_base_radius"] = md::real_str(c.compact_base_radius);
    out["quad_abs_tol"] = md::real_str(rc.policy.quad_abs_tol);
    out["psd_rel_tol"] = md::real_str(rc.policy.psd_rel_tol);
    return out;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

md::MomentSequence<Real> load_real_moments(const std::string& moments_path,
                                           const std::string& spec_path, int max_order,
                                           const md::PrecisionPolicy& policy) {
    if (!moments_path.empty()) return md::as_real(md::parse_moments_json(slurp(moments_path)));
    if (spec_path.empty()) throw md::SchemaError("need --spec or --moments");
    if (max_order < 0) throw md::SchemaError("--max-order is required with --spec");
    return md::as_real(md::compute_moments_any(load_spec(spec_path), max_order, policy));
}

int cmd_moments(const GlobalOpts& g, const std::string& spec_path, int max_order) {
    md::PrecisionPolicy policy;
    policy.significand_bits = g.precision_bits;
    md::ScopedPrecision scope(policy);
    md::AnyMoments m = md::compute_moments_any(load_spec(spec_path), max_order, policy);
    emit(g, md::moments_json(m).dump(2) + "\n");
    return 0;
}

int cmd_check(const GlobalOpts& g, RunConfig rc, const std::string& spec_path,
              const std::string& moments_path, int max_order, const std::string& rules_csv) {
    rc.policy.significand_bits = g.precision_bits;
    rc.md_config.one_d.policy = rc.policy;
    rc.md_config.seed = g.seed;
    md::ScopedPrecision scope(rc.policy);
    md::MomentSequence<Real> s = load_real_moments(moments_path, spec_path, max_order, rc.policy);

    std::vector<std::string> rules = split_list(rules_csv);
    md::EvidenceReport report;
    if (rules.size() == 1 && rules[0] == "all-1d") {
        if (s.dimension() != 1) throw md::SchemaError("--rules all-1d needs a 1D table");
        md::Verdict1D v = md::verdict_1d(s, rc.md_config.one_d);
        md::RuleEvidence r;
        r.id = "full-1d";
        r.conclusion = v.overall;
        r.sub_verdicts.push_back({"axis 1", v, std::nullopt});
        report.rules.push_back(std::move(r));
        report.overall = v.overall;
        report.fingerprint = md::fingerprint(s);
    } else if (rules.size() == 1 && rules[0] == "all") {
        report = md::run_all_rules(s, rc.md_config);
    } else {
        std::vector<md::RuleEvidence> evidences;
        for (const auto& name : rules) {
            if (name == "petersen") evidences.push_back(md::rule_petersen(s, rc.md_config));
            else if (name == "nussbaum") evidences.push_back(md::rule_nussbaum(s, rc.md_config));
            else if (name == "bochner-taylor")
                evidences.push_back(md::rule_bochner_taylor(s, rc.md_config));
            else if (name == "eskin") evidences.push_back(md::rule_eskin(s, rc.md_config));
            else if (name == "radial") evidences.push_back(md::rule_radial(s, rc.md_config));
            else if (name == "cylinder") evidences.push_back(md::rule_cylinder(s, rc.md_config));
            else if (name == "line-pencil")
                evidences.push_back(md::rule_line_pencil(s, {}, rc.md_config));
            else if (name == "density")
                evidences.push_back(md::rule_density(
                    s, md::default_density_multiplier(s.dimension()), true, rc.md_config));
            else throw md::SchemaError("unknown rule \"" + name + "\"");
        }
        report = md::combine(evidences);
        report.fingerprint = md::fingerprint(s);
    }
    emit(g, md::evidence_report_json(report, config_echo(rc, g, rules)).dump(2) + "\n");
    return 0;
}

int cmd_weyl(const GlobalOpts& g, const std::string& spec_path, const std::string& moments_path,
             int max_order, const std::string& z_text, int degree) {
    md::PrecisionPolicy policy;
    policy.significand_bits = g.precision_bits;
    md::ScopedPrecision scope(policy);
    md::MomentSequence<Real> s = load_real_moments(moments_path, spec_path, max_order, policy);
    md::WeylRadii radii = md::weyl_radius(s, parse_complex(z_text), degree, policy);

    std::ostringstream csv;
    csv << "n,rho\n";
    for (std::size_t n = 0; n < radii.rho.size(); ++n)
        csv << n << "," << md::real_str(radii.rho[n]) << "\n";
    if (radii.truncated)
        csv << "# truncated at n=" << radii.achieved << " (recurrence rank deficiency)\n";
    emit(g, csv.str());
    return 0;
}

int cmd_nevanlinna(const GlobalOpts& g, const std::string& spec_path,
                   const std::string& moments_path, int max_order, const std::string& z_text,
                   int degree, const std::string& phi_text) {
    md::PrecisionPolicy policy;
    policy.significand_bits = g.precision_bits;
    md::ScopedPrecision scope(policy);
    md::MomentSequence<Real> s = load_real_moments(moments_path, spec_path, max_order, policy);
    const Complex z = parse_complex(z_text);

    md::NevanlinnaQuadruple q = md::quadruple(s, z, degree, policy);
    OrderedJson doc;
    doc["schema"] = "momentdet/1";
    doc["z"] = md::complex_json(z);
    doc["n"] = degree;
    doc["A"] = md::complex_json(q.A);
    doc["B"] = md::complex_json(q.B);
    doc["C"] = md::complex_json(q.C);
    doc["D"] = md::complex_json(q.D);
    OrderedJson tails;
    auto tail_json = [](const std::vector<Real>& t) {
        OrderedJson a = OrderedJson::array();
        for (const auto& x : t) a.push_back(md::real_str(x));
        return a;
    };
    tails["A"] = tail_json(q.tail_A);
    tails["B"] = tail_json(q.tail_B);
    tails["C"] = tail_json(q.tail_C);
    tails["D"] = tail_json(q.tail_D);
    doc["tail_magnitudes"] = std::move(tails);
    doc["series_converged"] = q.series_converged;

    if (!phi_text.empty()) {
        md::PickParameter phi;
        if (phi_text == "inf") phi = md::PickParameter::inf();
        else if (phi_text.rfind("const:", 0) == 0)
            phi = md::PickParameter::finite(parse_complex(phi_text.substr(6)));
        else throw md::SchemaError("--phi expects const:<a+bi> or inf");
        const Complex w = md::parametrized_value(q, phi);
        md::DiskMembership m = md::disk_membership(s, z, w, degree, policy);
        OrderedJson disk;
        disk["center"] = md::complex_json(m.center);
        disk["radius"] = md::real_str(m.radius);
        disk["value"] = md::complex_json(m.w);
        disk["signed_distance"] = md::real_str(m.signed_distance);
        doc["disk"] = std::move(disk);
    }
    emit(g, doc.dump(2) + "\n");
    return 0;
}

md::GridSpec parse_grid(const std::vector<std::string>& axes, int diff_order) {
    md::GridSpec grid;
    for (const auto& ax : axes) {
        std::vector<std::string> f;
        std::stringstream ss(ax);
        std::string item;
        while (std::getline(ss, item, ':')) f.push_back(item);
        if (f.size() != 3) throw md::SchemaError("--grid expects lo:hi:steps");
        try {
            grid.axes.push_back({Real(f[0]), Real(f[1]), std::stoi(f[2])});
        } catch (const std::exception&) {
            throw md::SchemaError("bad --grid axis: " + ax);
        }
    }
    grid.max_difference_order = diff_order;
    grid.validate();
    return grid;
}

int cmd_transform(const GlobalOpts& g, const std::string& spec_path, const std::string& kind,
                  const std::vector<std::string>& grid_axes, int diff_order,
                  const std::string& p0_text, const std::string& p_csv, int series_order,
                  const std::vector<std::string>& z_texts) {
    md::PrecisionPolicy policy;
    policy.significand_bits = g.precision_bits;
    md::ScopedPrecision scope(policy);
    md::MeasureSpec spec = load_spec(spec_path);
    std::ostringstream csv;

    if (kind == "laplace") {
        if (grid_axes.empty()) throw md::SchemaError("laplace needs --grid per axis");
        md::GridSpec grid = parse_grid(grid_axes, diff_order);
        if (static_cast<int>(grid.axes.size()) != spec.dimension)
            throw md::SchemaError("grid dimension must match the measure");
        md::MonotonicityReport rep = md::complete_monotonicity_check(spec, grid, policy);

        const int d = spec.dimension;
        csv << "# kind=laplace\n";
        for (int i = 0; i < d; ++i) csv << "x" << (i + 1) << ",";
        csv << "value,error_estimate,sign_violation\n";
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        bool more = true;
        while (more) {
            std::vector<Real> x(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                x[static_cast<std::size_t>(i)] =
                    grid.axes[static_cast<std::size_t>(i)].lo + idx[static_cast<std::size_t>(i)] * grid.step(i);
            auto v = md::laplace_eval(spec, x, policy);
            bool flagged = false;
            for (const auto& viol : rep.violations) {
                bool same = true;
                for (int i = 0; i < d; ++i)
                    if (viol.point[static_cast<std::size_t>(i)] != x[static_cast<std::size_t>(i)])
                        same = false;
                if (same) flagged = true;
            }
            for (int i = 0; i < d; ++i) csv << md::real_str(x[static_cast<std::size_t>(i)]) << ",";
            csv << md::real_str(v.value) << "," << md::real_str(v.error_estimate) << ","
                << (flagged ? 1 : 0) << "\n";
            more = false;
            for (int i = d - 1; i >= 0; --i) {
                if (idx[static_cast<std::size_t>(i)] < grid.axes[static_cast<std::size_t>(i)].steps) {
                    ++idx[static_cast<std::size_t>(i)];
                    for (int j = i + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = 0;
                    more = true;
                    break;
                }
            }
        }
        csv << "# monotonicity: " << rep.violations.size() << " violation(s) in "
            << rep.differences_checked << " difference(s) up to order " << diff_order << "\n";
    } else if (kind == "fantappie") {
        if (p0_text.empty() || p_csv.empty())
            throw md::SchemaError("fantappie needs --p0 and --p");
        Real p0(p0_text);
        std::vector<Real> p;
        for (const auto& t : split_list(p_csv)) p.emplace_back(t);
        auto v = md::fantappie_eval(spec, p0, p, policy);
        csv << "# kind=fantappie\nquantity,value,error_estimate\n";
        csv << "direct," << md::real_str(v.value) << "," << md::real_str(v.error_estimate) << "\n";
        if (series_order >= 0) {
            auto s = md::as_real(md::compute_moments_any(spec, series_order + 1, policy));
            auto sv = md::fantappie_series(s, p0, p, series_order);
            csv << "series," << md::real_str(sv.value) << "," << md::real_str(sv.error_estimate)
                << "\n";
        }
    } else if (kind == "cauchy" || kind == "poisson") {
        if (z_texts.empty()) throw md::SchemaError(kind + " needs --z per axis");
        std::vector<Complex> z;
        for (const auto& t : z_texts) z.push_back(parse_complex(t));
        if (static_cast<int>(z.size()) != spec.dimension)
            throw md::SchemaError("--z count must match the measure dimension");
        if (kind == "cauchy") {
            auto v = md::cauchy_eval(spec, z, policy);
            csv << "# kind=cauchy\nquantity,re,im,error_estimate\n";
            csv << "value," << md::real_str(v.value.real()) << "," << md::real_str(v.value.imag())
                << "," << md::real_str(v.error_estimate) << "\n";
        } else {
            Complex rec = md::poisson_recursion(
                [&](const std::vector<Complex>& w) { return md::cauchy_eval(spec, w, policy).value; },
                z);
            csv << "# kind=poisson\nquantity,re,im\n";
            csv << "recursion," << md::real_str(rec.real()) << "," << md::real_str(rec.imag())
                << "\n";
            if (spec.kind == md::MeasureKind::discrete) {
                Real direct = md::poisson_direct(spec, z);
                csv << "direct," << md::real_str(direct) << "," << md::real_str(Real(0)) << "\n";
            }
        }
    } else {
        throw md::SchemaError("unknown transform kind \"" + kind + "\"");
    }
    emit(g, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational moment problems: moments, determinacy evidence, transforms"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--precision-bits", g.precision_bits, "working significand bits")
        ->check(CLI::Range(64u, 16384u));
    app.add_option("--config", g.config_path, "JSON threshold/cap overrides");
    app.add_option("--out", g.out_path, "output path (default stdout)");
    app.add_option("--seed", g.seed, "seed for sampled directions");

    std::string spec_path, moments_path, rules_csv = "all";
    int max_order = -1, degree = -1, series_order = -1, diff_order = 4;
    std::string z_text = "0+1i", phi_text, kind, p0_text, p_csv;
    std::vector<std::string> grid_axes, z_texts;
    bool assert_support = false;
    std::string compact_base;

    // global flags may follow the subcommand
    app.fallthrough();

    auto* momc = app.add_subcommand("moments", "compute a truncated moment table");
    momc->add_option("--spec", spec_path, "measure spec JSON")->required();
    momc->add_option("--max-order", max_order, "table order")->required()->check(CLI::NonNegativeNumber);

    auto* chk = app.add_subcommand("check", "run determinacy evidence rules");
    chk->add_option("--spec", spec_path, "measure spec JSON");
    chk->add_option("--moments", moments_path, "moment table JSON");
    chk->add_option("--max-order", max_order, "table order (with --spec)");
    chk->add_option("--rules", rules_csv, "all | all-1d | comma list");
    chk->add_flag("--assert-support-positive", assert_support,
                  "assert support in the closed positive octant");
    chk->add_option("--compact-base-radius", compact_base,
                    "assert |x_i| <= R for i < d (enables the cylinder rule)");

    auto* wey = app.add_subcommand("weyl", "limiting-disk radii rho_n(z)");
    wey->add_option("--spec", spec_path, "measure spec JSON");
    wey->add_option("--moments", moments_path, "moment table JSON");
    wey->add_option("--max-order", max_order, "table order (with --spec)");
    wey->add_option("--z", z_text, "evaluation point a+bi");
    wey->add_option("--degree", degree, "highest n")->required()->check(CLI::NonNegativeNumber);

    auto* nev = app.add_subcommand("nevanlinna", "quadruple and disk membership");
    nev->add_option("--spec", spec_path, "measure spec JSON");
    nev->add_option("--moments", moments_path, "moment table JSON");
    nev->add_option("--max-order", max_order, "table order (with --spec)");
    nev->add_option("--z", z_text, "evaluation point a+bi");
    nev->add_option("--degree", degree, "truncation n")->required()->check(CLI::NonNegativeNumber);
    nev->add_option("--phi", phi_text, "Pick parameter: const:<a+bi> or inf");

    auto* tra = app.add_subcommand("transform", "integral transforms on a grid");
    tra->add_option("--spec", spec_path, "measure spec JSON")->required();
    tra->add_option("--kind", kind, "laplace | fantappie | cauchy | poisson")->required();
    tra->add_option("--grid", grid_axes, "axis as lo:hi:steps (repeat per axis)");
    tra->add_option("--max-diff-order", diff_order, "forward-difference order cap");
    tra->add_option("--p0", p0_text, "affine constant for fantappie");
    tra->add_option("--p", p_csv, "affine coefficients, comma separated");
    tra->add_option("--series-order", series_order, "also emit the truncated series");
    tra->add_option("--z", z_texts, "complex point a+bi (repeat per axis)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig rc;
        rc.policy.significand_bits = g.precision_bits;
        if (!g.config_path.empty()) apply_config_file(rc, g.config_path);
        rc.md_config.support_positive_asserted = assert_support;
        if (!compact_base.empty()) {
            rc.md_config.compact_base_asserted = true;
            rc.md_config.compact_base_radius = Real(compact_base);
        }

        if (momc->parsed()) return cmd_moments(g, spec_path, max_order);
        if (chk->parsed())
            return cmd_check(g, rc, spec_path, moments_path, max_order, rules_csv);
        if (wey->parsed())
            return cmd_weyl(g, spec_path, moments_path, max_order, z_text, degree);
        if (nev->parsed())
            return cmd_nevanlinna(g, spec_path, moments_path, max_order, z_text, degree, phi_text);
        if (tra->parsed())
            return cmd_transform(g, spec_path, kind, grid_axes, diff_order, p0_text, p_csv,
                                 series_order, z_texts);
        return 2;
    } catch (const md::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 3;
    }
}
