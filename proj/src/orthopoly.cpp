#include "momentdet/orthopoly.hpp"

namespace momentdet {

RecurrenceData recurrence_coefficients(const MomentSequence<Real>& s, int K,
                                       const PrecisionPolicy& policy) {
    if (s.dimension() != 1) throw DimensionError("recurrence_coefficients: needs a 1D sequence");
    if (K < 0) throw InvariantError("recurrence_coefficients: K must be >= 0");
    if (2 * (K + 1) > s.max_order())
        throw DegreeOverflow("recurrence_coefficients: needs moments to order " +
                             std::to_string(2 * (K + 1)));
    ScopedPrecision scope(policy.significand_bits);

    const int m = K + 2; // Hankel rows 0 .. K+1
    DenseMatrix<Real> H(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) H(i, j) = s.at(i + j);

    // Row-by-row upper Cholesky H = R^T R; stop at the first nonpositive or
    // numerically negligible pivot. The pivot is computed by subtracting
    // quantities of size H(i,i), so anything below the accumulated rounding
    // floor of that cancellation is indistinguishable from rank deficiency.
    const Real eps = mp::ldexp(Real(1), -static_cast<int>(policy.significand_bits));
    DenseMatrix<Real> R = DenseMatrix<Real>::Zero(m, m);
    int rows = 0;
    for (int i = 0; i < m; ++i) {
        Real pivot = H(i, i);
        for (int k = 0; k < i; ++k) pivot -= R(k, i) * R(k, i);
        if (!(pivot > 1024 * (i + 1) * eps * mp::abs(H(i, i)))) break;
        R(i, i) = mp::sqrt(pivot);
        for (int j = i + 1; j < m; ++j) {
            Real v = H(i, j);
            for (int k = 0; k < i; ++k) v -= R(k, i) * R(k, j);
            R(i, j) = v / R(i, i);
        }
        rows = i + 1;
    }
    if (rows == 0) throw InvariantError("recurrence_coefficients: s_0 not positive");

    RecurrenceData r;
    r.rank_deficient = rows < m;
    r.K = rows - 1;
    r.s0 = s.at(0);
    r.fingerprint = s.provenance();

    for (int k = 0; k + 1 < rows; ++k) {
        r.b.push_back(R(k + 1, k + 1) / R(k, k));
        Real ck = R(k, k + 1) / R(k, k);
        if (k > 0) ck -= R(k - 1, k) / R(k - 1, k - 1);
        r.c.push_back(ck);
    }

    // coefficient row k solves R c_k = e_k: in the monomial Gram H = R^T R
    // the map p -> R p sends the orthonormal family to the standard basis.
    r.coeffs = DenseMatrix<Real>::Zero(rows, rows);
    for (int k = 0; k < rows; ++k) {
        for (int j = k; j >= 0; --j) {
            Real v = (j == k) ? Real(1) : Real(0);
            for (int t = j + 1; t <= k; ++t) v -= R(j, t) * r.coeffs(k, t);
            r.coeffs(k, j) = v / R(j, j);
        }
    }
    return r;
}

Complex eval_P(const RecurrenceData& r, int k, const Complex& z) {
    if (k < 0 || k > r.K) throw IndexOverflow("eval_P: index beyond recurrence data");
    Complex pm1(0), p(1 / mp::sqrt(r.s0));
    for (int j = 0; j < k; ++j) {
        Real bm1 = j > 0 ? r.b[static_cast<std::size_t>(j - 1)] : Real(0);
        Complex pn = ((z - r.c[static_cast<std::size_t>(j)]) * p - bm1 * pm1) /
                     r.b[static_cast<std::size_t>(j)];
        pm1 = p;
        p = pn;
    }
    return p;
}

Complex eval_Q(const RecurrenceData& r, int k, const Complex& z) {
    if (k < 0 || k > r.K) throw IndexOverflow("eval_Q: index beyond recurrence data");
    if (k == 0) return Complex(0);
    Complex qm1(0), q(mp::sqrt(r.s0) / r.b[0]);
    for (int j = 1; j < k; ++j) {
        Real bm1 = r.b[static_cast<std::size_t>(j - 1)];
        Complex qn = ((z - r.c[static_cast<std::size_t>(j)]) * q - bm1 * qm1) /
                     r.b[static_cast<std::size_t>(j)];
        qm1 = q;
        q = qn;
    }
    return q;
}

Complex eval_Q_divided(const MomentSequence<Real>& s, const RecurrenceData& r, int k,
                       const Complex& z) {
    if (k < 0 || k > r.K) throw IndexOverflow("eval_Q_divided: index beyond recurrence data");
    if (k - 1 > s.max_order())
        throw DegreeOverflow("eval_Q_divided: needs moments to order " + std::to_string(k - 1));
    // (z^i - u^i)/(z - u) = sum_t z^t u^{i-1-t}; apply L_u termwise.
    Complex acc(0);
    for (int i = 1; i <= k; ++i) {
        const Real& pi = r.coeffs(k, i);
        if (pi == 0) continue;
        Complex zp(1);
        Complex inner(0);
        for (int t = 0; t <= i - 1; ++t) {
            inner += zp * s.at(i - 1 - t);
            zp *= z;
        }
        acc += pi * inner;
    }
    return acc;
}

Real christoffel_sum(const RecurrenceData& r, const Complex& z, int n) {
    if (n < 0 || n > r.K) throw IndexOverflow("christoffel_sum: index beyond recurrence data");
    Real sum = 0;
    Complex pm1(0), p(1 / mp::sqrt(r.s0));
    sum += mp::norm(p);
    for (int j = 0; j < n; ++j) {
        Complex pn = ((z - r.c[static_cast<std::size_t>(j)]) * p -
                      (j > 0 ? r.b[static_cast<std::size_t>(j - 1)] : Real(0)) * pm1) /
                     r.b[static_cast<std::size_t>(j)];
        pm1 = p;
        p = pn;
        sum += mp::norm(pn);
    }
    return sum;
}

Polynomial<Real> orthonormal_polynomial(const RecurrenceData& r, int k) {
    if (k < 0 || k > r.K) throw IndexOverflow("orthonormal_polynomial: index beyond data");
    Polynomial<Real> p(1);
    for (int j = 0; j <= k; ++j)
        if (r.coeffs(k, j) != 0) p.add_term(MultiIndex{j}, r.coeffs(k, j));
    return p;
}

} // namespace momentdet
