#include "momentdet/quadrature.hpp"

namespace momentdet {

// QUADPACK dqk15 abscissae/weights, 33 significant digits.
const std::vector<Real>& GaussKronrod15::xgk() {
    static const std::vector<Real> v = {
        Real("0.991455371120812639206854697526329"),
        Real("0.949107912342758524526189684047851"),
        Real("0.864864423359769072789712788640926"),
        Real("0.741531185599394439863864773280788"),
        Real("0.586087235467691130294144838258730"),
        Real("0.405845151377397166906606412076961"),
        Real("0.207784955007898467600689403773245"),
    };
    return v;
}

const std::vector<Real>& GaussKronrod15::wgk() {
    static const std::vector<Real> v = {
        Real("0.022935322010529224963732008058970"),
        Real("0.063092092629978553290700663189204"),
        Real("0.104790010322250183839876322541518"),
        Real("0.140653259715525918745189590510238"),
        Real("0.169004726639267902826583426598550"),
        Real("0.190350578064785409913256402421014"),
        Real("0.204432940075298892414161999234649"),
        Real("0.209482141084727828012999174891714"),
    };
    return v;
}

const std::vector<Real>& GaussKronrod15::wg() {
    static const std::vector<Real> v = {
        Real("0.129484966168869693270611432679082"),
        Real("0.279705391489276667901467771423780"),
        Real("0.381830050505118944950369775488975"),
        Real("0.417959183673469387755102040816327"),
    };
    return v;
}

} // namespace momentdet
