#include "momentdet/moment_core.hpp"

namespace momentdet {

Real riesz_distance(const MomentSequence<Real>& s, const Polynomial<Complex>& multiplier,
                    int degree, const PrecisionPolicy& policy) {
    if (multiplier.dimension() != s.dimension())
        throw DimensionError("riesz_distance: dimension mismatch");
    if (degree < 0) throw InvariantError("riesz_distance: degree must be >= 0");
    const int need = 2 * (multiplier.degree() + degree);
    if (need > s.max_order())
        throw DegreeOverflow("riesz_distance: needs moments to order " + std::to_string(need) +
                             ", have " + std::to_string(s.max_order()));
    ScopedPrecision scope(policy.significand_bits);

    const int d = s.dimension();
    const auto basis = multi_indices_up_to(d, degree);
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());

    const Polynomial<Complex> mmbar = multiplier * conj_poly(multiplier);

    DenseMatrix<Real> G(n, n);
    DenseVector<Real> rhs_re(n), rhs_im(n);
    const Polynomial<Complex> mbar = conj_poly(multiplier);
    for (Eigen::Index j = 0; j < n; ++j) {
        Polynomial<Complex> bj(d);
        bj.add_term(basis[static_cast<std::size_t>(j)], Complex(1));
        for (Eigen::Index k = 0; k <= j; ++k) {
            Polynomial<Complex> bk(d);
            bk.add_term(basis[static_cast<std::size_t>(k)], Complex(1));
            Complex g = apply_functional(s, mmbar * bj * bk);
            G(j, k) = g.real();
            G(k, j) = g.real();
        }
        Complex r = apply_functional(s, mbar * bj);
        rhs_re(j) = r.real();
        rhs_im(j) = r.imag();
    }

    Eigen::LDLT<DenseMatrix<Real>> ldlt(G);
    if (ldlt.info() != Eigen::Success)
        throw IllConditioned("riesz_distance: Gram factorization failed at policy precision");
    DenseVector<Real> c_re = ldlt.solve(rhs_re);
    DenseVector<Real> c_im = ldlt.solve(rhs_im);

    Real dist2 = s.mass() - (rhs_re.dot(c_re) + rhs_im.dot(c_im));
    if (mp::isnan(dist2))
        throw IllConditioned("riesz_distance: solve produced NaN at policy precision");
    if (dist2 < 0) dist2 = 0;
    return mp::sqrt(dist2);
}

} // namespace momentdet
