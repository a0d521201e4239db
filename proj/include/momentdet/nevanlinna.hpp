#ifndef MOMENTDET_NEVANLINNA_HPP
#define MOMENTDET_NEVANLINNA_HPP

#include "momentdet/determinacy1d.hpp"

#include <optional>

namespace momentdet {

/// Truncated entire-function quadruple at z:
///   A = z sum Q_k(0) Q_k(z),  B = -1 + z sum Q_k(0) P_k(z),
///   C = 1 + z sum P_k(0) Q_k(z),  D = z sum P_k(0) P_k(z),  k = 0..n.
/// All Cauchy-transform solutions are Moebius images through (A,B,C,D).
struct NevanlinnaQuadruple {
    Complex z;
    int n = 0;
    Complex A, B, C, D;
    // magnitudes of the last (up to three) series terms, newest last
    std::vector<Real> tail_A, tail_B, tail_C, tail_D;
    bool series_converged = false; // all newest tails < 1e-12 relative-ish
};

NevanlinnaQuadruple quadruple(const MomentSequence<Real>& s, const Complex& z, int n,
                              const PrecisionPolicy& policy);

/// Parameter point: a finite complex value or the point at infinity.
struct PickParameter {
    bool infinite = false;
    Complex value;
    static PickParameter inf() { return PickParameter{true, Complex(0)}; }
    static PickParameter finite(const Complex& v) { return PickParameter{false, v}; }
};

/// -(C phi + A) / (D phi + B); phi = infinity gives -C/D.
Complex parametrized_value(const NevanlinnaQuadruple& q, const PickParameter& phi);

/// Weyl disk at truncation n as an explicit circle, with the signed distance
/// of a queried value (negative = strictly inside).
struct DiskMembership {
    Complex center;
    Real radius{};
    Complex w;
    Real signed_distance{};
};

DiskMembership disk_membership(const MomentSequence<Real>& s, const Complex& z, const Complex& w,
                               int n, const PrecisionPolicy& policy);

/// d_0 = -lim Q_k(0)/P_k(0) with Aitken acceleration; indices with
/// P_k(0) = 0 are skipped and flagged.
struct StieltjesD0 {
    std::vector<Real> ratios;
    std::vector<Real> aitken;
    Real estimate{};
    bool converged = false;
    std::vector<int> skipped; // indices with vanishing P_k(0)
};

StieltjesD0 stieltjes_d0(const MomentSequence<Real>& s, int n_max, const PrecisionPolicy& policy);

} // namespace momentdet

#endif
