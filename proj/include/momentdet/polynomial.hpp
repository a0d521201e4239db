#ifndef MOMENTDET_POLYNOMIAL_HPP
#define MOMENTDET_POLYNOMIAL_HPP

#include "momentdet/errors.hpp"
#include "momentdet/multi_index.hpp"
#include "momentdet/scalar.hpp"

#include <map>
#include <string>
#include <utility>

namespace momentdet {

/// Sparse multivariate polynomial over a scalar ring (Rational, Real or Complex
/// coefficients). Terms are keyed by multi-index; zero coefficients are pruned.
template <typename Coeff>
class Polynomial {
public:
    Polynomial() : dim_(1) {}
    explicit Polynomial(int dim) : dim_(dim) {}

    static Polynomial constant(int dim, const Coeff& c) {
        Polynomial p(dim);
        p.add_term(MultiIndex(static_cast<std::size_t>(dim), 0), c);
        return p;
    }
    static Polynomial variable(int dim, int axis) { // axis is 0-based
        Polynomial p(dim);
        MultiIndex a(static_cast<std::size_t>(dim), 0);
        a[static_cast<std::size_t>(axis)] = 1;
        p.add_term(a, Coeff(1));
        return p;
    }

    int dimension() const { return dim_; }
    const std::map<MultiIndex, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [a, c] : terms_) d = std::max(d, total_order(a));
        return d;
    }

    void add_term(const MultiIndex& a, const Coeff& c) {
        auto it = terms_.find(a);
        if (it == terms_.end()) {
            if (!(c == Coeff(0))) terms_.emplace(a, c);
        } else {
            it->second += c;
            if (it->second == Coeff(0)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [a, c] : o.terms_) add_term(a, Coeff(-c));
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_dim(b);
        Polynomial r(a.dim_);
        for (const auto& [ai, ac] : a.terms_)
            for (const auto& [bi, bc] : b.terms_) r.add_term(add(ai, bi), ac * bc);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Coeff& c, const Polynomial& p) {
        Polynomial r(p.dim_);
        for (const auto& [a, pc] : p.terms_) r.add_term(a, c * pc);
        return r;
    }

    Polynomial pow(int e) const {
        if (e < 0) throw InvariantError("Polynomial::pow: negative exponent");
        Polynomial r = constant(dim_, Coeff(1));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    template <typename Point>
    auto eval(const std::vector<Point>& x) const {
        using V = decltype(std::declval<Coeff>() * std::declval<Point>());
        V sum(0);
        for (const auto& [a, c] : terms_) {
            Point m(1);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (int k = 0; k < a[i]; ++k) m *= x[i];
            sum += c * m;
        }
        return sum;
    }

    template <typename OtherCoeff>
    Polynomial<OtherCoeff> cast() const {
        Polynomial<OtherCoeff> r(dim_);
        for (const auto& [a, c] : terms_) r.add_term(a, static_cast<OtherCoeff>(c));
        return r;
    }

private:
    void check_dim(const Polynomial& o) const {
        if (dim_ != o.dim_) throw DimensionError("polynomial dimension mismatch");
    }
    int dim_;
    std::map<MultiIndex, Coeff> terms_;
};

inline Polynomial<Real> to_real_poly(const Polynomial<Rational>& p) {
    Polynomial<Real> r(p.dimension());
    for (const auto& [a, c] : p.terms()) r.add_term(a, to_real(c));
    return r;
}

inline Polynomial<Complex> to_complex_poly(const Polynomial<Rational>& p) {
    Polynomial<Complex> r(p.dimension());
    for (const auto& [a, c] : p.terms()) r.add_term(a, Complex(to_real(c)));
    return r;
}

inline Polynomial<Complex> to_complex_poly(const Polynomial<Real>& p) {
    Polynomial<Real> q = p;
    Polynomial<Complex> r(p.dimension());
    for (const auto& [a, c] : q.terms()) r.add_term(a, Complex(c));
    return r;
}

/// Coefficient-wise complex conjugate.
inline Polynomial<Complex> conj_poly(const Polynomial<Complex>& p) {
    Polynomial<Complex> r(p.dimension());
    for (const auto& [a, c] : p.terms()) r.add_term(a, conj(c));
    return r;
}

/// Parses an expression in variables x1..xd with +, -, *, ^, parentheses and
/// integer or a/b rational literals, e.g. "3/2*x1^2 - (x2 + 1)*x1".
Polynomial<Rational> parse_polynomial(const std::string& text, int dimension);

} // namespace momentdet

#endif
