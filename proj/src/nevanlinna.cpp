#include "momentdet/nevanlinna.hpp"

namespace momentdet {

namespace {

void push_tail(std::vector<Real>& tail, const Real& mag) {
    tail.push_back(mag);
    if (tail.size() > 3) tail.erase(tail.begin());
}

} // namespace

NevanlinnaQuadruple quadruple(const MomentSequence<Real>& s, const Complex& z, int n,
                              const PrecisionPolicy& policy) {
    auto r = recurrence_coefficients(s, n, policy);
    const int top = std::min(n, r.K);
    NevanlinnaQuadruple q;
    q.z = z;
    q.n = top;
    Complex sum_qq(0), sum_qp(0), sum_pq(0), sum_pp(0);
    const Complex zero(0);
    for (int k = 0; k <= top; ++k) {
        const Complex pk0 = eval_P(r, k, zero);
        const Complex qk0 = eval_Q(r, k, zero);
        const Complex pkz = eval_P(r, k, z);
        const Complex qkz = eval_Q(r, k, z);
        sum_qq += qk0 * qkz;
        sum_qp += qk0 * pkz;
        sum_pq += pk0 * qkz;
        sum_pp += pk0 * pkz;
        push_tail(q.tail_A, mp::abs(qk0 * qkz));
        push_tail(q.tail_B, mp::abs(qk0 * pkz));
        push_tail(q.tail_C, mp::abs(pk0 * qkz));
        push_tail(q.tail_D, mp::abs(pk0 * pkz));
    }
    q.A = z * sum_qq;
    q.B = Complex(-1) + z * sum_qp;
    q.C = Complex(1) + z * sum_pq;
    q.D = z * sum_pp;
    const Real tol("1e-12");
    q.series_converged = !q.tail_A.empty() && q.tail_A.back() < tol && q.tail_B.back() < tol &&
                         q.tail_C.back() < tol && q.tail_D.back() < tol;
    return q;
}

Complex parametrized_value(const NevanlinnaQuadruple& q, const PickParameter& phi) {
    if (phi.infinite) {
        if (mp::abs(q.D) < Real("1e-30") * (mp::abs(q.C) + 1))
            throw PoleError("parametrized_value: D vanishes at phi = infinity");
        return -q.C / q.D;
    }
    const Complex den = q.D * phi.value + q.B;
    const Real scale = mp::abs(q.D) * mp::abs(phi.value) + mp::abs(q.B) + 1;
    if (mp::abs(den) < Real("1e-30") * scale)
        throw PoleError("parametrized_value: denominator at pole");
    return -(q.C * phi.value + q.A) / den;
}

DiskMembership disk_membership(const MomentSequence<Real>& s, const Complex& z, const Complex& w,
                               int n, const PrecisionPolicy& policy) {
    if (z.imag() == 0) throw RealPointError("disk_membership: z must be nonreal");
    auto r = recurrence_coefficients(s, n, policy);
    if (r.K < n)
        throw IndexOverflow("disk_membership: recurrence truncated before requested n");
    Real S(0), Sqq(0);
    Complex T(0);
    for (int k = 0; k <= n; ++k) {
        const Complex pk = eval_P(r, k, z);
        const Complex qk = eval_Q(r, k, z);
        S += mp::norm(pk);
        Sqq += mp::norm(qk);
        T += pk * mp::conj(qk);
    }
    // |w|^2 S + 2 Re(w T) + Sqq = Im(w)/Im(z), a circle in w
    const Real y = z.imag();
    DiskMembership d;
    const Real uc = -T.real() / S;
    const Real vc = (T.imag() + 1 / (2 * y)) / S;
    d.center = Complex(uc, vc);
    Real rad2 = uc * uc + vc * vc - Sqq / S;
    if (rad2 < 0) rad2 = 0;
    d.radius = mp::sqrt(rad2);
    d.w = w;
    d.signed_distance = mp::abs(w - d.center) - d.radius;
    return d;
}

StieltjesD0 stieltjes_d0(const MomentSequence<Real>& s, int n_max, const PrecisionPolicy& policy) {
    auto r = recurrence_coefficients(s, n_max, policy);
    const int top = std::min(n_max, r.K);
    StieltjesD0 out;
    const Complex zero(0);
    for (int k = 1; k <= top; ++k) {
        const Real pk0 = eval_P(r, k, zero).real();
        if (pk0 == 0) {
            out.skipped.push_back(k);
            continue;
        }
        out.ratios.push_back(-eval_Q(r, k, zero).real() / pk0);
    }
    for (std::size_t i = 0; i + 2 < out.ratios.size(); ++i) {
        const Real d1 = out.ratios[i + 1] - out.ratios[i];
        const Real d2 = out.ratios[i + 2] - 2 * out.ratios[i + 1] + out.ratios[i];
        if (d2 == 0)
            out.aitken.push_back(out.ratios[i + 2]);
        else
            out.aitken.push_back(out.ratios[i] - d1 * d1 / d2);
    }
    if (!out.aitken.empty()) out.estimate = out.aitken.back();
    if (out.aitken.size() >= 2)
        out.converged =
            mp::abs(out.aitken.back() - out.aitken[out.aitken.size() - 2]) < Real("1e-6");
    return out;
}

} // namespace momentdet
