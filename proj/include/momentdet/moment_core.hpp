#ifndef MOMENTDET_MOMENT_CORE_HPP
#define MOMENTDET_MOMENT_CORE_HPP

#include "momentdet/measures.hpp"
#include "momentdet/polynomial.hpp"
#include "momentdet/scalar.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <vector>

namespace momentdet {

template <typename S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Moment (generalized Hankel) matrix H[a,b] = s_{a+b} over monomials of
/// total degree <= degree.
template <typename S>
struct MomentMatrix {
    int degree = 0;
    std::vector<MultiIndex> basis;
    DenseMatrix<S> H;
};

template <typename S>
MomentMatrix<S> moment_matrix(const MomentSequence<S>& s, int degree) {
    if (2 * degree > s.max_order())
        throw DegreeOverflow("moment_matrix: needs moments to order " + std::to_string(2 * degree) +
                             ", have " + std::to_string(s.max_order()));
    MomentMatrix<S> m;
    m.degree = degree;
    m.basis = multi_indices_up_to(s.dimension(), degree);
    const Eigen::Index n = static_cast<Eigen::Index>(m.basis.size());
    m.H.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            S v = s.at(add(m.basis[static_cast<std::size_t>(i)], m.basis[static_cast<std::size_t>(j)]));
            m.H(i, j) = v;
            m.H(j, i) = v;
        }
    return m;
}

/// Diagonal-pivoted symmetric elimination; returns the pivot sequence.
/// When every remaining diagonal vanishes but off-diagonal mass is left, a
/// negative sentinel pivot of that magnitude is recorded (indefinite block).
template <typename S>
std::vector<S> symmetric_pivots(DenseMatrix<S> A) {
    const Eigen::Index n = A.rows();
    std::vector<S> pivots;
    pivots.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index best = k;
        S best_abs = A(k, k) < 0 ? S(-A(k, k)) : A(k, k);
        for (Eigen::Index j = k + 1; j < n; ++j) {
            S a = A(j, j) < 0 ? S(-A(j, j)) : A(j, j);
            if (a > best_abs) {
                best = j;
                best_abs = a;
            }
        }
        if (best != k) {
            A.row(k).swap(A.row(best));
            A.col(k).swap(A.col(best));
        }
        const S d = A(k, k);
        if (d == 0) {
            S resid(0);
            for (Eigen::Index i = k; i < n; ++i)
                for (Eigen::Index j = k; j < n; ++j) {
                    S a = A(i, j) < 0 ? S(-A(i, j)) : A(i, j);
                    if (a > resid) resid = a;
                }
            if (resid > 0) pivots.push_back(S(-resid));
            for (Eigen::Index i = static_cast<Eigen::Index>(pivots.size()); i < n; ++i)
                pivots.push_back(S(0));
            return pivots;
        }
        pivots.push_back(d);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const S f = A(i, k) / d;
            for (Eigen::Index j = k + 1; j <= i; ++j) {
                A(i, j) -= f * A(k, j);
                A(j, i) = A(i, j);
            }
        }
    }
    return pivots;
}

enum class PsdVerdict { PSD, NOT_PSD, MARGINAL };

struct PsdReport {
    PsdVerdict verdict = PsdVerdict::MARGINAL;
    Real min_eigen_estimate{};
};

inline const char* to_string(PsdVerdict v) {
    switch (v) {
    case PsdVerdict::PSD: return "PSD";
    case PsdVerdict::NOT_PSD: return "NOT_PSD";
    default: return "MARGINAL";
    }
}

/// Exact pivots: no tolerance needed.
inline PsdReport psd_check(const MomentMatrix<Rational>& m) {
    PsdReport r;
    if (m.H.rows() == 0) {
        r.verdict = PsdVerdict::PSD;
        r.min_eigen_estimate = 0;
        return r;
    }
    auto pivots = symmetric_pivots<Rational>(m.H);
    Rational mn = pivots.front();
    for (const auto& p : pivots) mn = std::min(mn, p);
    r.min_eigen_estimate = to_real(mn);
    r.verdict = mn < 0 ? PsdVerdict::NOT_PSD : PsdVerdict::PSD;
    return r;
}

inline PsdReport psd_check(const MomentMatrix<Real>& m, const PrecisionPolicy& policy) {
    PsdReport r;
    if (m.H.rows() == 0) {
        r.verdict = PsdVerdict::PSD;
        r.min_eigen_estimate = 0;
        return r;
    }
    Real max_norm = 0;
    for (Eigen::Index i = 0; i < m.H.rows(); ++i)
        for (Eigen::Index j = 0; j < m.H.cols(); ++j) max_norm = std::max(max_norm, mp::abs(m.H(i, j)));
    const Real scale = policy.psd_rel_tol * max_norm;
    auto pivots = symmetric_pivots<Real>(m.H);
    Real mn = pivots.front();
    for (const auto& p : pivots) mn = std::min(mn, p);
    r.min_eigen_estimate = mn;
    if (mn < -scale)
        r.verdict = PsdVerdict::NOT_PSD;
    else if (mn < 0)
        r.verdict = PsdVerdict::MARGINAL;
    else
        r.verdict = PsdVerdict::PSD;
    return r;
}

inline PsdReport psd_check(const MomentMatrix<Rational>& m, const PrecisionPolicy&) {
    return psd_check(m);
}

/// L_s(p) = sum over terms coeff * s_alpha.
template <typename S, typename C>
auto apply_functional(const MomentSequence<S>& s, const Polynomial<C>& p) {
    if (p.dimension() != s.dimension())
        throw DimensionError("apply_functional: dimension mismatch");
    using V = decltype(std::declval<C>() * std::declval<S>());
    V acc(0);
    for (const auto& [a, c] : p.terms()) acc += c * s.at(a);
    return acc;
}

/// GNS inner product <p, q> = L(p * conj(q)).
inline Complex gram_inner(const MomentSequence<Real>& s, const Polynomial<Complex>& p,
                          const Polynomial<Complex>& q) {
    return apply_functional(s, p * conj_poly(q));
}
template <typename S>
S gram_inner(const MomentSequence<S>& s, const Polynomial<S>& p, const Polynomial<S>& q) {
    return apply_functional(s, p * q);
}

/// min over polynomials p of degree <= n of || 1 - multiplier * p || in the
/// GNS seminorm of s. The Gram matrix of the system is real because
/// multiplier * conj(multiplier) has real coefficients on R^d, so the complex
/// normal equations split into two real solves.
Real riesz_distance(const MomentSequence<Real>& s, const Polynomial<Complex>& multiplier,
                    int degree, const PrecisionPolicy& policy);

} // namespace momentdet

#endif
