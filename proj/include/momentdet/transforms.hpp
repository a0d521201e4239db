#ifndef MOMENTDET_TRANSFORMS_HPP
#define MOMENTDET_TRANSFORMS_HPP

#include "momentdet/measures.hpp"
#include "momentdet/quadrature.hpp"

#include <functional>

namespace momentdet {

struct TransformValue {
    Real value{};
    Real error_estimate{};
};

struct ComplexTransformValue {
    Complex value{};
    Real error_estimate{};
};

/// Laplace transform integral of e^{-t.x} at a real point x with all x_i > 0.
/// Exact (to rounding) for discrete specs, closed form or quadrature for the
/// positive-support catalog families; DomainError when the support is not
/// contained in the closed positive octant.
TransformValue laplace_eval(const MeasureSpec& spec, const std::vector<Real>& x,
                            const PrecisionPolicy& policy);

/// Rectangular evaluation grid with forward-difference order cap.
struct GridSpec {
    struct Axis {
        Real lo{}, hi{};
        int steps = 1;
    };
    std::vector<Axis> axes;
    int max_difference_order = 4;
    Real tolerance = Real("1e-10");

    void validate() const;
    Real step(int axis) const { return (axes[static_cast<std::size_t>(axis)].hi -
                                        axes[static_cast<std::size_t>(axis)].lo) /
                                       axes[static_cast<std::size_t>(axis)].steps; }
};

/// One sign-pattern failure of the alternating forward differences.
struct MonotonicityViolation {
    std::vector<Real> point;
    MultiIndex order;
    Real signed_value{}; // (-1)^{|order|} * difference, negative here
};

struct MonotonicityReport {
    std::size_t points_checked = 0;
    std::size_t differences_checked = 0;
    std::vector<MonotonicityViolation> violations;
};

/// Checks (-1)^{|a|} * (forward difference)^a F >= -tol * scale over the grid;
/// completely monotone functions pass at every step size.
MonotonicityReport complete_monotonicity_check(
    const std::function<Real(const std::vector<Real>&)>& F, const GridSpec& grid);

MonotonicityReport complete_monotonicity_check(const MeasureSpec& spec, const GridSpec& grid,
                                               const PrecisionPolicy& policy);

/// Integral of 1/(p0 + p.x); direct evaluation.
TransformValue fantappie_eval(const MeasureSpec& spec, const Real& p0, const std::vector<Real>& p,
                              const PrecisionPolicy& policy);

/// Truncated expansion sum_{|a| <= K} (-1)^{|a|} (|a| choose a) p^a s_a / p0^{|a|+1};
/// error_estimate is the first omitted shell when the table reaches K+1.
TransformValue fantappie_series(const MomentSequence<Real>& s, const Real& p0,
                                const std::vector<Real>& p, int K);

/// Integral of prod_i 1/(x_i - z_i) over the measure, all Im z_i != 0.
ComplexTransformValue cauchy_eval(const MeasureSpec& spec, const std::vector<Complex>& z,
                                  const PrecisionPolicy& policy);

/// d-fold alternating-conjugate combination
/// f_d(z) = (2i)^{-d} sum_{flips} (-1)^{#flips} F(conjugate-flipped z),
/// the iterated Poisson extraction; nonnegative (up to roundoff) for Cauchy
/// transforms of measures when all Im z_i > 0.
Complex poisson_recursion(const std::function<Complex(const std::vector<Complex>&)>& F,
                          const std::vector<Complex>& z);

/// Direct product-Poisson sum for a discrete measure.
Real poisson_direct(const MeasureSpec& spec, const std::vector<Complex>& z);

} // namespace momentdet

#endif
