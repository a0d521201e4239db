#ifndef MOMENTDET_ORTHOPOLY_HPP
#define MOMENTDET_ORTHOPOLY_HPP

#include "momentdet/moment_core.hpp"

namespace momentdet {

/// Jacobi recurrence data for the orthonormal polynomials of a 1D moment
/// sequence: z P_k = b_{k-1} P_{k-1} + c_k P_k + b_k P_{k+1}, P_0 = s_0^{-1/2}.
/// coeffs row k holds the monomial coefficients of P_k.
struct RecurrenceData {
    int K = 0;
    std::vector<Real> b; // b_0 .. b_{K-1} at least
    std::vector<Real> c; // c_0 .. c_{K-1} at least
    Real s0{};
    DenseMatrix<Real> coeffs;
    bool rank_deficient = false;
    std::string fingerprint;
};

/// Coefficients via Cholesky of the Hankel matrix of degree K+1 in policy
/// precision. A nonpositive pivot truncates the result at the achieved index
/// (rank_deficient = true); finitely supported measures land here by design.
RecurrenceData recurrence_coefficients(const MomentSequence<Real>& s, int K,
                                       const PrecisionPolicy& policy);

/// First-kind orthonormal polynomial P_k(z) by forward recurrence.
Complex eval_P(const RecurrenceData& r, int k, const Complex& z);

/// Second-kind polynomial Q_k(z): same recurrence with Q_0 = 0,
/// Q_1 = s_0^{1/2} / b_0.
Complex eval_Q(const RecurrenceData& r, int k, const Complex& z);

/// Q_k(z) through the divided-difference definition
/// Q_k(z) = L_u[(P_k(z) - P_k(u)) / (z - u)], expanded exactly in u.
Complex eval_Q_divided(const MomentSequence<Real>& s, const RecurrenceData& r, int k,
                       const Complex& z);

/// Partial sum of |P_k(z)|^2 for k = 0..n.
Real christoffel_sum(const RecurrenceData& r, const Complex& z, int n);

/// P_k as a polynomial expression (from the coefficient rows).
Polynomial<Real> orthonormal_polynomial(const RecurrenceData& r, int k);

} // namespace momentdet

#endif
