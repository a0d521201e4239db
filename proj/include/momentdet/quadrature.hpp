#ifndef MOMENTDET_QUADRATURE_HPP
#define MOMENTDET_QUADRATURE_HPP

#include "momentdet/errors.hpp"
#include "momentdet/scalar.hpp"

#include <functional>
#include <queue>
#include <vector>

namespace momentdet {

/// 15-point Kronrod / 7-point Gauss node pairs on [-1, 1].
/// Abscissae and weights as in QUADPACK (dqk15), 33 significant digits.
struct GaussKronrod15 {
    static const std::vector<Real>& xgk();
    static const std::vector<Real>& wgk();
    static const std::vector<Real>& wg();
};

template <typename Value>
struct QuadResult {
    Value value{};
    Real error_estimate{};
    std::size_t nodes_used = 0;
};

/// One GK15 panel on [a, b]. Returns (kronrod value, |kronrod - gauss|).
template <typename Value, typename F>
std::pair<Value, Real> gk15_panel(F&& f, const Real& a, const Real& b) {
    const auto& xgk = GaussKronrod15::xgk();
    const auto& wgk = GaussKronrod15::wgk();
    const auto& wg = GaussKronrod15::wg();
    const Real center = (a + b) / 2;
    const Real half = (b - a) / 2;

    Value fc = f(center);
    Value resk = wgk[7] * fc;
    Value resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const Real dx = half * xgk[static_cast<std::size_t>(j)];
        Value f1 = f(center - dx);
        Value f2 = f(center + dx);
        resk += wgk[static_cast<std::size_t>(j)] * (f1 + f2);
        if (j % 2 == 1) // xgk(2), xgk(4), ... are the Gauss abscissae
            resg += wg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
    }
    resk *= half;
    resg *= half;
    return {resk, abs_val(Value(resk - resg))};
}

/// Adaptive Gauss-Kronrod on a finite interval: bisects the panel with the
/// largest error estimate until the absolute tolerance or node budget is hit.
template <typename Value, typename F>
QuadResult<Value> integrate_adaptive(F&& f, const Real& a, const Real& b,
                                     const Real& abs_tol, std::size_t node_budget) {
    struct Panel {
        Real a, b, err;
        Value val;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    std::priority_queue<Panel> queue;
    auto [v0, e0] = gk15_panel<Value>(f, a, b);
    queue.push(Panel{a, b, e0, v0});
    std::size_t nodes = 15;
    Real total_err = e0;

    while (total_err > abs_tol && nodes + 30 <= node_budget) {
        Panel top = queue.top();
        queue.pop();
        total_err -= top.err;
        const Real mid = (top.a + top.b) / 2;
        auto [vl, el] = gk15_panel<Value>(f, top.a, mid);
        auto [vr, er] = gk15_panel<Value>(f, mid, top.b);
        queue.push(Panel{top.a, mid, el, vl});
        queue.push(Panel{mid, top.b, er, vr});
        total_err += el + er;
        nodes += 30;
    }
    Value sum{};
    while (!queue.empty()) {
        sum += queue.top().val;
        queue.pop();
    }
    return {sum, total_err, nodes};
}

/// Same, but throws QuadratureFailure when the tolerance cannot be met.
template <typename Value, typename F>
QuadResult<Value> integrate_or_throw(F&& f, const Real& a, const Real& b,
                                     const Real& abs_tol, std::size_t node_budget) {
    auto r = integrate_adaptive<Value>(f, a, b, abs_tol, node_budget);
    if (r.error_estimate > abs_tol)
        throw QuadratureFailure("estimated quadrature error " + r.error_estimate.str(6) +
                                " exceeds tolerance " + abs_tol.str(6));
    return r;
}

} // namespace momentdet

#endif
