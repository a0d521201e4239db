#ifndef MOMENTDET_TESTS_FIXTURES_HPP
#define MOMENTDET_TESTS_FIXTURES_HPP

#include "momentdet/measures.hpp"

namespace fixtures {

using momentdet::MeasureKind;
using momentdet::MeasureSpec;
using momentdet::Rational;

inline MeasureSpec catalog(const std::string& id,
                           std::map<std::string, Rational> params) {
    MeasureSpec s;
    s.kind = MeasureKind::catalog;
    s.dimension = 1;
    s.catalog_id = id;
    s.parameters = std::move(params);
    return s;
}

inline MeasureSpec gaussian(Rational mu = 0, Rational sigma = 1) {
    return catalog("gaussian", {{"mu", mu}, {"sigma", sigma}});
}
inline MeasureSpec lognormal(Rational mu = 0, Rational sigma = 1) {
    return catalog("lognormal", {{"mu", mu}, {"sigma", sigma}});
}
inline MeasureSpec exponential(Rational lambda = 1) {
    return catalog("exponential", {{"lambda", lambda}});
}
inline MeasureSpec uniform(Rational a = 0, Rational b = 1) {
    return catalog("uniform", {{"a", a}, {"b", b}});
}
inline MeasureSpec stieltjes(Rational eps) {
    return catalog("stieltjes_family", {{"epsilon", eps}});
}

inline MeasureSpec product(std::vector<MeasureSpec> factors) {
    MeasureSpec s;
    s.kind = MeasureKind::product;
    s.dimension = 0;
    for (auto& f : factors) s.dimension += f.dimension;
    s.factors = std::move(factors);
    return s;
}

inline MeasureSpec discrete(int dim, std::vector<MeasureSpec::Atom> atoms) {
    MeasureSpec s;
    s.kind = MeasureKind::discrete;
    s.dimension = dim;
    s.atoms = std::move(atoms);
    return s;
}

inline MeasureSpec dirac_origin(int dim = 1) {
    return discrete(dim, {{std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)),
                           Rational(1)}});
}

// five rational atoms in the plane, used by the transform consistency checks
inline MeasureSpec five_atoms_2d() {
    return discrete(2, {
        {{Rational(1) / 3, Rational(-2) / 5}, Rational(1) / 2},
        {{Rational(-7) / 4, Rational(3) / 2}, Rational(1) / 3},
        {{Rational(2), Rational(1) / 7}, Rational(2) / 7},
        {{Rational(-1) / 9, Rational(-5) / 6}, Rational(1)},
        {{Rational(5) / 8, Rational(9) / 11}, Rational(3) / 4},
    });
}

} // namespace fixtures

#endif
