#include "momentdet/transforms.hpp"

#include <boost/math/constants/constants.hpp>

#include <cstddef>

namespace momentdet {
namespace {

// 1D density in a substitution variable u on [lo, hi]: integral of
// f(x(u)) * w(u) du equals the integral of f against the measure.
struct Density1D {
    Real lo, hi;
    std::function<Real(const Real&)> x_of_u;
    std::function<Real(const Real&)> weight;
};

Density1D density_1d(const MeasureSpec& spec, const PrecisionPolicy& policy) {
    const Real inv_sqrt_2pi = 1 / mp::sqrt(2 * boost::math::constants::pi<Real>());
    if (spec.catalog_id == "gaussian") {
        Real mu = to_real(spec.parameter("mu")), sigma = to_real(spec.parameter("sigma"));
        return {Real(-15), Real(15), [=](const Real& u) { return mu + sigma * u; },
                [=](const Real& u) { return inv_sqrt_2pi * mp::exp(-u * u / 2); }};
    }
    if (spec.catalog_id == "lognormal") {
        Real mu = to_real(spec.parameter("mu")), sigma = to_real(spec.parameter("sigma"));
        return {Real(-15), Real(15), [=](const Real& u) { return mp::exp(mu + sigma * u); },
                [=](const Real& u) { return inv_sqrt_2pi * mp::exp(-u * u / 2); }};
    }
    if (spec.catalog_id == "exponential") {
        Real lambda = to_real(spec.parameter("lambda"));
        return {Real(0), Real(60) / lambda, [](const Real& u) { return u; },
                [=](const Real& u) { return lambda * mp::exp(-lambda * u); }};
    }
    if (spec.catalog_id == "uniform") {
        Real a = to_real(spec.parameter("a")), b = to_real(spec.parameter("b"));
        return {a, b, [](const Real& u) { return u; },
                [=](const Real&) { return Real(1) / (b - a); }};
    }
    if (spec.catalog_id == "stieltjes_family") {
        const Real eps = to_real(spec.parameter("epsilon"));
        const Real two_pi = 2 * boost::math::constants::pi<Real>();
        auto mass0 = integrate_or_throw<Real>(
            [](const Real& u) { return mp::exp(-u * u + u); }, Real(-15), Real(16),
            Real("1e-30"), policy.quad_node_budget);
        const Real norm = mass0.value;
        return {Real(-15), Real(16), [](const Real& u) { return mp::exp(u); },
                [=](const Real& u) {
                    return mp::exp(-u * u + u) * (1 + eps * mp::sin(two_pi * u)) / norm;
                }};
    }
    throw InvariantError("catalog \"" + spec.catalog_id + "\" has no density form");
}

// Support contained in the closed positive octant?
bool positive_support(const MeasureSpec& spec) {
    switch (spec.kind) {
    case MeasureKind::discrete:
        for (const auto& atom : spec.atoms)
            for (const auto& c : atom.point)
                if (c < 0) return false;
        return true;
    case MeasureKind::catalog:
        if (spec.catalog_id == "gaussian") return false;
        if (spec.catalog_id == "uniform") return spec.parameter("a") >= 0;
        return true; // exponential, lognormal, stieltjes_family
    case MeasureKind::product:
        for (const auto& f : spec.factors)
            if (!positive_support(f)) return false;
        return true;
    case MeasureKind::pushforward:
        return false; // image support not tracked
    }
    return false;
}

template <typename Value, typename Kernel>
QuadResult<Value> integrate_density(const MeasureSpec& spec, Kernel&& kernel,
                                    const PrecisionPolicy& policy) {
    Density1D d = density_1d(spec, policy);
    return integrate_or_throw<Value>(
        [&](const Real& u) { return Value(kernel(d.x_of_u(u)) * d.weight(u)); }, d.lo, d.hi,
        policy.quad_abs_tol, policy.quad_node_budget);
}

Real shell_multinomial(const MultiIndex& a) {
    // |a|! / prod a_i! as a product of binomials, exact at these sizes
    Real m(1);
    int acc = 0;
    for (int ai : a) {
        acc += ai;
        Real binom(1);
        for (int j = 1; j <= ai; ++j) binom = binom * (acc - ai + j) / j;
        m *= binom;
    }
    return m;
}

} // namespace

TransformValue laplace_eval(const MeasureSpec& spec, const std::vector<Real>& x,
                            const PrecisionPolicy& policy) {
    spec.validate();
    if (static_cast<int>(x.size()) != spec.dimension)
        throw DimensionError("laplace_eval: point dimension mismatch");
    for (const auto& xi : x)
        if (!(xi > 0)) throw DomainError("laplace_eval: point must have all coordinates > 0");
    if (!positive_support(spec))
        throw DomainError("laplace_eval: measure support not contained in the positive octant");
    ScopedPrecision scope(policy.significand_bits);

    switch (spec.kind) {
    case MeasureKind::discrete: {
        Real acc(0);
        for (const auto& atom : spec.atoms) {
            Real dot(0);
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * to_real(atom.point[i]);
            acc += to_real(atom.weight) * mp::exp(-dot);
        }
        return {acc, Real(0)};
    }
    case MeasureKind::catalog: {
        const Real& z = x[0];
        if (spec.catalog_id == "exponential") {
            Real lambda = to_real(spec.parameter("lambda"));
            return {lambda / (lambda + z), Real(0)};
        }
        if (spec.catalog_id == "uniform") {
            Real a = to_real(spec.parameter("a")), b = to_real(spec.parameter("b"));
            return {(mp::exp(-a * z) - mp::exp(-b * z)) / (z * (b - a)), Real(0)};
        }
        auto r = integrate_density<Real>(
            spec, [&](const Real& t) { return mp::exp(-z * t); }, policy);
        return {r.value, r.error_estimate};
    }
    case MeasureKind::product: {
        Real value(1), err(0);
        std::size_t off = 0;
        for (const auto& f : spec.factors) {
            std::vector<Real> sub(x.begin() + static_cast<std::ptrdiff_t>(off),
                                  x.begin() + static_cast<std::ptrdiff_t>(off + f.dimension));
            auto r = laplace_eval(f, sub, policy);
            value *= r.value;
            err += r.error_estimate;
            off += static_cast<std::size_t>(f.dimension);
        }
        return {value, err};
    }
    case MeasureKind::pushforward:
        throw DomainError("laplace_eval: pushforward specs are not supported");
    }
    throw InvariantError("laplace_eval: unreachable");
}

void GridSpec::validate() const {
    if (axes.empty()) throw SchemaError("grid: needs at least one axis");
    for (const auto& ax : axes) {
        if (!(ax.lo < ax.hi)) throw SchemaError("grid: axis needs lo < hi");
        if (ax.steps < 1) throw SchemaError("grid: axis needs steps >= 1");
    }
    if (max_difference_order < 1) throw SchemaError("grid: difference order must be >= 1");
    if (!(tolerance >= 0)) throw SchemaError("grid: tolerance must be >= 0");
}

MonotonicityReport complete_monotonicity_check(
    const std::function<Real(const std::vector<Real>&)>& F, const GridSpec& grid) {
    grid.validate();
    const int d = static_cast<int>(grid.axes.size());
    const int m = grid.max_difference_order;

    // cache F on the lattice extended by m points per axis
    std::vector<int> extent(static_cast<std::size_t>(d));
    std::size_t lattice_size = 1;
    for (int i = 0; i < d; ++i) {
        extent[static_cast<std::size_t>(i)] = grid.axes[static_cast<std::size_t>(i)].steps + m + 1;
        lattice_size *= static_cast<std::size_t>(extent[static_cast<std::size_t>(i)]);
    }
    auto point_of = [&](const std::vector<int>& idx) {
        std::vector<Real> x(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            x[static_cast<std::size_t>(i)] = grid.axes[static_cast<std::size_t>(i)].lo +
                                             idx[static_cast<std::size_t>(i)] * grid.step(i);
        return x;
    };
    auto flat = [&](const std::vector<int>& idx) {
        std::size_t r = 0;
        for (int i = 0; i < d; ++i)
            r = r * static_cast<std::size_t>(extent[static_cast<std::size_t>(i)]) +
                static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
        return r;
    };
    std::vector<Real> cache(lattice_size);
    {
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        for (std::size_t n = 0; n < lattice_size; ++n) {
            cache[flat(idx)] = F(point_of(idx));
            for (int i = d - 1; i >= 0; --i) {
                if (++idx[static_cast<std::size_t>(i)] < extent[static_cast<std::size_t>(i)]) break;
                idx[static_cast<std::size_t>(i)] = 0;
            }
        }
    }

    MonotonicityReport report;
    std::vector<MultiIndex> orders = multi_indices_up_to(d, m);
    std::vector<int> base(static_cast<std::size_t>(d), 0);
    bool more = true;
    while (more) {
        ++report.points_checked;
        for (const auto& alpha : orders) {
            // forward difference: sum over beta <= alpha of
            // (-1)^(|alpha| - |beta|) * prod C(alpha_i, beta_i) * F(base + beta)
            Real diff(0), local_scale(0);
            MultiIndex beta(static_cast<std::size_t>(d), 0);
            bool more_beta = true;
            std::vector<int> shifted(static_cast<std::size_t>(d));
            while (more_beta) {
                Real coeff(1);
                int nb = 0;
                for (int i = 0; i < d; ++i) {
                    coeff *= Real(static_cast<double>(binomial_u64(
                        alpha[static_cast<std::size_t>(i)], beta[static_cast<std::size_t>(i)])));
                    nb += beta[static_cast<std::size_t>(i)];
                    shifted[static_cast<std::size_t>(i)] =
                        base[static_cast<std::size_t>(i)] + beta[static_cast<std::size_t>(i)];
                }
                const Real& fv = cache[flat(shifted)];
                Real av = abs_val(fv);
                if (av > local_scale) local_scale = av;
                diff += ((total_order(alpha) - nb) % 2 == 0 ? coeff : -coeff) * fv;
                more_beta = false;
                for (int i = d - 1; i >= 0; --i) {
                    if (beta[static_cast<std::size_t>(i)] < alpha[static_cast<std::size_t>(i)]) {
                        ++beta[static_cast<std::size_t>(i)];
                        for (int j = i + 1; j < d; ++j) beta[static_cast<std::size_t>(j)] = 0;
                        more_beta = true;
                        break;
                    }
                }
            }
            Real signed_value = (total_order(alpha) % 2 == 0) ? diff : -diff;
            ++report.differences_checked;
            if (signed_value < -grid.tolerance * (local_scale > 1 ? local_scale : Real(1)))
                report.violations.push_back({point_of(base), alpha, signed_value});
        }
        more = false;
        for (int i = d - 1; i >= 0; --i) {
            if (base[static_cast<std::size_t>(i)] < grid.axes[static_cast<std::size_t>(i)].steps) {
                ++base[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < d; ++j) base[static_cast<std::size_t>(j)] = 0;
                more = true;
                break;
            }
        }
    }
    return report;
}

MonotonicityReport complete_monotonicity_check(const MeasureSpec& spec, const GridSpec& grid,
                                               const PrecisionPolicy& policy) {
    if (static_cast<int>(grid.axes.size()) != spec.dimension)
        throw DimensionError("monotonicity check: grid dimension must match measure");
    return complete_monotonicity_check(
        [&](const std::vector<Real>& x) { return laplace_eval(spec, x, policy).value; }, grid);
}

TransformValue fantappie_eval(const MeasureSpec& spec, const Real& p0, const std::vector<Real>& p,
                              const PrecisionPolicy& policy) {
    spec.validate();
    if (static_cast<int>(p.size()) != spec.dimension)
        throw DimensionError("fantappie_eval: coefficient dimension mismatch");
    if (!(p0 > 0)) throw DomainError("fantappie_eval: p0 must be positive");
    ScopedPrecision scope(policy.significand_bits);

    switch (spec.kind) {
    case MeasureKind::discrete: {
        Real acc(0);
        for (const auto& atom : spec.atoms) {
            Real denom = p0;
            for (std::size_t i = 0; i < p.size(); ++i) denom += p[i] * to_real(atom.point[i]);
            if (!(denom > 0))
                throw DomainError("fantappie_eval: p0 + p.x vanishes or is negative on an atom");
            acc += to_real(atom.weight) / denom;
        }
        return {acc, Real(0)};
    }
    case MeasureKind::catalog: {
        if (p[0] != 0 && !positive_support(spec))
            throw DomainError("fantappie_eval: p0 + p.x may vanish on the support");
        if (p[0] < 0)
            throw DomainError("fantappie_eval: negative coefficient on an unbounded axis");
        auto r = integrate_density<Real>(
            spec, [&](const Real& t) { return 1 / (p0 + p[0] * t); }, policy);
        return {r.value, r.error_estimate};
    }
    default:
        throw DomainError("fantappie_eval: only discrete and 1D catalog specs are supported");
    }
}

TransformValue fantappie_series(const MomentSequence<Real>& s, const Real& p0,
                                const std::vector<Real>& p, int K) {
    if (static_cast<int>(p.size()) != s.dimension())
        throw DimensionError("fantappie_series: coefficient dimension mismatch");
    if (!(p0 > 0)) throw DomainError("fantappie_series: p0 must be positive");
    if (K < 0 || K > s.max_order())
        throw DegreeOverflow("fantappie_series: truncation order exceeds the moment table");

    const int d = s.dimension();
    Real value(0);
    Real inv_p0_pow = 1 / p0; // 1 / p0^{k+1}
    for (int k = 0; k <= K; ++k) {
        Real shell(0);
        for (const auto& alpha : multi_indices_of_order(d, k)) {
            Real pa(1);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < alpha[static_cast<std::size_t>(i)]; ++j)
                    pa *= p[static_cast<std::size_t>(i)];
            shell += shell_multinomial(alpha) * pa * s.at(alpha);
        }
        value += (k % 2 == 0 ? shell : -shell) * inv_p0_pow;
        inv_p0_pow /= p0;
    }

    Real err(0);
    if (s.max_order() >= K + 1) {
        for (const auto& alpha : multi_indices_of_order(d, K + 1)) {
            Real pa(1);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < alpha[static_cast<std::size_t>(i)]; ++j)
                    pa *= abs_val(p[static_cast<std::size_t>(i)]);
            err += shell_multinomial(alpha) * pa * abs_val(s.at(alpha));
        }
        err *= inv_p0_pow;
    }
    return {value, err};
}

ComplexTransformValue cauchy_eval(const MeasureSpec& spec, const std::vector<Complex>& z,
                                  const PrecisionPolicy& policy) {
    spec.validate();
    if (static_cast<int>(z.size()) != spec.dimension)
        throw DimensionError("cauchy_eval: point dimension mismatch");
    for (const auto& zi : z)
        if (zi.imag() == 0) throw RealPointError("cauchy_eval: point must avoid the real axis");
    ScopedPrecision scope(policy.significand_bits);

    switch (spec.kind) {
    case MeasureKind::discrete: {
        Complex acc(0);
        for (const auto& atom : spec.atoms) {
            Complex term(to_real(atom.weight));
            for (std::size_t i = 0; i < z.size(); ++i)
                term /= Complex(to_real(atom.point[i])) - z[i];
            acc += term;
        }
        return {acc, Real(0)};
    }
    case MeasureKind::catalog: {
        const Complex& w = z[0];
        auto r = integrate_density<Complex>(
            spec, [&](const Real& t) { return Complex(1) / (Complex(t) - w); }, policy);
        return {r.value, r.error_estimate};
    }
    case MeasureKind::product: {
        Complex value(1);
        Real err(0);
        std::size_t off = 0;
        for (const auto& f : spec.factors) {
            std::vector<Complex> sub(z.begin() + static_cast<std::ptrdiff_t>(off),
                                     z.begin() + static_cast<std::ptrdiff_t>(off + f.dimension));
            auto r = cauchy_eval(f, sub, policy);
            value *= r.value;
            err += r.error_estimate;
            off += static_cast<std::size_t>(f.dimension);
        }
        return {value, err};
    }
    case MeasureKind::pushforward:
        throw DomainError("cauchy_eval: pushforward specs are not supported");
    }
    throw InvariantError("cauchy_eval: unreachable");
}

Complex poisson_recursion(const std::function<Complex(const std::vector<Complex>&)>& F,
                          const std::vector<Complex>& z) {
    const std::size_t d = z.size();
    if (d == 0) throw DimensionError("poisson_recursion: empty point");
    if (d > 20) throw DimensionError("poisson_recursion: dimension too large");

    Complex acc(0);
    std::vector<Complex> w(d);
    for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
        int flips = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (mask & (std::size_t(1) << i)) {
                w[i] = conj(z[i]);
                ++flips;
            } else {
                w[i] = z[i];
            }
        }
        Complex v = F(w);
        acc += (flips % 2 == 0) ? v : -v;
    }
    Complex two_i(Real(0), Real(2));
    for (std::size_t i = 0; i < d; ++i) acc /= two_i;
    return acc;
}

Real poisson_direct(const MeasureSpec& spec, const std::vector<Complex>& z) {
    spec.validate();
    if (spec.kind != MeasureKind::discrete)
        throw InvariantError("poisson_direct: discrete specs only");
    if (static_cast<int>(z.size()) != spec.dimension)
        throw DimensionError("poisson_direct: point dimension mismatch");
    Real acc(0);
    for (const auto& atom : spec.atoms) {
        Real term = to_real(atom.weight);
        for (std::size_t i = 0; i < z.size(); ++i) {
            Real dx = to_real(atom.point[i]) - z[i].real();
            Real y = z[i].imag();
            term *= y / (dx * dx + y * y);
        }
        acc += term;
    }
    return acc;
}

} // namespace momentdet
