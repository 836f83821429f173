#pragma once

// Complex-argument Bessel/Hankel evaluation used by the layer-potential
// kernels. Only the orders 0 and 1 are needed; they are computed together
// since the ascending series share most of their work.

#include <complex>

namespace plasmode::specfun {

using cplx = std::complex<double>;

// J and Y of orders 0 and 1 at a common argument.
struct Bessel01 {
    cplx J0, Y0, J1, Y1;
};

// Result of a Hankel evaluation, carrying the derivative and a flag that
// is cleared when the argument lies outside the region where the
// implementation is validated to ~1e-9 relative accuracy
// (|z| <= 1e3 and |Im z| <= 50).
struct HankelEval {
    cplx value;       // H^(1)_nu(z)
    cplx derivative;  // d/dz H^(1)_nu(z)
    cplx argument;
    bool within_validated_region = true;
};

// Series/asymptotic crossover radius. Below the cut the ascending power
// series is used; above it, the large-argument Hankel expansion.
double series_cut();
void set_series_cut(double cut);  // test hook; must stay in [6, 20]

// J0, Y0, J1, Y1 at z. Throws std::domain_error at z = 0. On the
// negative real axis the principal branch (limit from Im z > 0) is used.
Bessel01 bessel01(cplx z);

// H^(1)_0(z) with derivative -H^(1)_1(z).
HankelEval hankel1_0(cplx z);

// H^(1)_1(z) with derivative H^(1)_0(z) - H^(1)_1(z)/z.
HankelEval hankel1_1(cplx z);

bool in_validated_region(cplx z);

}  // namespace plasmode::specfun
