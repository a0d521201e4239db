#ifndef MOMENTDET_SCALAR_HPP
#define MOMENTDET_SCALAR_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>

namespace momentdet {

namespace mp = boost::multiprecision;

/// Arbitrary-precision real; working precision is the thread-local default
/// set through PrecisionPolicy / ScopedPrecision.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Complex number over Real.
using Complex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<0>>, mp::et_off>;

/// Exact rational (GMP-backed).
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// Numeric policy shared by all floating-point pipelines.
struct PrecisionPolicy {
    unsigned significand_bits = 256;
    /// PSD tolerance, relative to the matrix max-norm.
    Real psd_rel_tol = Real("1e-30");
    /// Absolute quadrature tolerance per moment.
    Real quad_abs_tol = Real("1e-12");
    /// Node budget for one adaptive integration.
    std::size_t quad_node_budget = 10000;

    void validate() const {
        if (significand_bits < 64)
            throw std::invalid_argument("PrecisionPolicy: significand_bits must be >= 64");
        if (psd_rel_tol <= 0 || quad_abs_tol <= 0)
            throw std::invalid_argument("PrecisionPolicy: tolerances must be positive");
    }
};

inline unsigned digits10_for_bits(unsigned bits) {
    // ceil(bits * log10(2)) plus a small guard
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

/// RAII guard: sets the thread-local working precision, restores on exit.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned significand_bits)
        : saved_real_(Real::default_precision()) {
        // the complex type shares the same mpfr backend default
        Real::default_precision(digits10_for_bits(significand_bits));
    }
    explicit ScopedPrecision(const PrecisionPolicy& policy)
        : ScopedPrecision(policy.significand_bits) {}
    ~ScopedPrecision() { Real::default_precision(saved_real_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_real_;
};

inline Real to_real(const Rational& q) {
    return Real(mp::numerator(q).str()) / Real(mp::denominator(q).str());
}
inline Real to_real(const Real& x) { return x; }

inline Complex conj(const Complex& z) { return mp::conj(z); }
inline Rational conj(const Rational& q) { return q; }
inline Real conj(const Real& x) { return x; }

inline Real abs_val(const Rational& q) { return to_real(mp::abs(q)); }
inline Real abs_val(const Real& x) { return mp::abs(x); }
inline Real abs_val(const Complex& z) { return mp::abs(z); }

} // namespace momentdet

#endif
