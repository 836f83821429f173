#include "plasmode/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace plasmode::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kPi = 3.14159265358979323846264338;

double g_series_cut = 12.0;

// Ascending series for J0, Y0, J1, Y1, accurate to ~1e-12 relative for
// |z| <~ 14 in double precision (cancellation grows like exp(|Im z|) and
// the alternating-term peak like (|z|/2)^(2m)/(m!)^2).
Bessel01 bessel01_series(cplx z) {
    const cplx q = -0.25 * z * z;  // term ratio base: J0 = sum q^m/(m!)^2
    const cplx logfac = std::log(0.5 * z) + kEulerGamma;

    cplx j0(1.0, 0.0), j1(1.0, 0.0);
    cplx s0(0.0, 0.0);  // sum_{m>=1} (-1)^{m+1} H_m (z^2/4)^m / (m!)^2, via q
    cplx s1(0.0, 0.0);  // sum_{m>=0} (H_m + H_{m+1}) q^m / (m! (m+1)!)
    cplx t0(1.0, 0.0);  // q^m/(m!)^2
    cplx t1(1.0, 0.0);  // q^m/(m!(m+1)!)
    double Hm = 0.0;
    s1 += t1 * 1.0;  // m = 0: H_0 + H_1 = 1
    for (int m = 1; m <= 64; ++m) {
        t0 *= q / double(m * m);
        t1 *= q / double(m * (m + 1));
        Hm += 1.0 / m;
        j0 += t0;
        j1 += t1;
        s0 -= t0 * Hm;  // (-1)^{m+1} (z^2/4)^m = -q^m
        s1 += t1 * (2.0 * Hm + 1.0 / (m + 1));
        if (std::abs(t0) < 1e-18 * std::abs(j0) &&
            std::abs(t1) < 1e-18 * std::abs(j1) && m > 4)
            break;
    }
    j1 *= 0.5 * z;

    Bessel01 out;
    out.J0 = j0;
    out.J1 = j1;
    out.Y0 = (2.0 / kPi) * (logfac * j0 + s0);
    out.Y1 = (2.0 / kPi) * (logfac * j1) - 2.0 / (kPi * z) -
             (z / (2.0 * kPi)) * s1;
    return out;
}

// Large-argument expansion
//   H^(1)_nu(z) ~ sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} sum_k i^k a_k(nu) z^-k
// with a_k(nu) = prod_{m=1..k} (4nu^2 - (2m-1)^2) / (k! 8^k), truncated at
// the smallest term.
cplx hankel1_asym(int nu, cplx z) {
    const double fournu2 = 4.0 * nu * nu;
    cplx sum(1.0, 0.0);
    cplx term(1.0, 0.0);
    double prev = std::numeric_limits<double>::max();
    const cplx iz = cplx(0.0, 1.0) / z;
    for (int k = 1; k <= 30; ++k) {
        const double num = fournu2 - double(2 * k - 1) * double(2 * k - 1);
        term *= iz * (num / (8.0 * k));
        const double mag = std::abs(term);
        if (mag >= prev) break;  // divergent tail reached
        sum += term;
        prev = mag;
        if (mag < 1e-17 * std::abs(sum)) break;
    }
    const cplx phase = z - cplx(0.5 * kPi * nu + 0.25 * kPi, 0.0);
    return std::sqrt(2.0 / (kPi * z)) *
           std::exp(cplx(0.0, 1.0) * phase) * sum;
}

}  // namespace

double series_cut() { return g_series_cut; }

void set_series_cut(double cut) {
    if (!(cut >= 6.0 && cut <= 20.0))
        throw std::domain_error("series_cut must lie in [6, 20]");
    g_series_cut = cut;
}

bool in_validated_region(cplx z) {
    return std::abs(z) <= 1e3 && std::abs(z.imag()) <= 50.0;
}

Bessel01 bessel01(cplx z) {
    if (z == cplx(0.0, 0.0))
        throw std::domain_error("bessel01: argument must be nonzero");
    if (std::abs(z) <= g_series_cut) return bessel01_series(z);
    Bessel01 out;
    const cplx h0 = hankel1_asym(0, z);
    const cplx h1 = hankel1_asym(1, z);
    // H^(2) = conj(H^(1)(conj z)) analytically continues the decomposition
    // J = (H1 + H2)/2, Y = (H1 - H2)/(2i) off the real axis.
    const cplx h0b = std::conj(hankel1_asym(0, std::conj(z)));
    const cplx h1b = std::conj(hankel1_asym(1, std::conj(z)));
    out.J0 = 0.5 * (h0 + h0b);
    out.Y0 = (h0 - h0b) / cplx(0.0, 2.0);
    out.J1 = 0.5 * (h1 + h1b);
    out.Y1 = (h1 - h1b) / cplx(0.0, 2.0);
    return out;
}

HankelEval hankel1_0(cplx z) {
    if (z == cplx(0.0, 0.0))
        throw std::domain_error("hankel1_0: argument must be nonzero");
    HankelEval ev;
    ev.argument = z;
    ev.within_validated_region = in_validated_region(z);
    if (std::abs(z) <= g_series_cut) {
        const Bessel01 b = bessel01_series(z);
        ev.value = b.J0 + cplx(0.0, 1.0) * b.Y0;
        ev.derivative = -(b.J1 + cplx(0.0, 1.0) * b.Y1);
    } else {
        ev.value = hankel1_asym(0, z);
        ev.derivative = -hankel1_asym(1, z);
    }
    return ev;
}

HankelEval hankel1_1(cplx z) {
    if (z == cplx(0.0, 0.0))
        throw std::domain_error("hankel1_1: argument must be nonzero");
    HankelEval ev;
    ev.argument = z;
    ev.within_validated_region = in_validated_region(z);
    cplx h0;
    if (std::abs(z) <= g_series_cut) {
        const Bessel01 b = bessel01_series(z);
        h0 = b.J0 + cplx(0.0, 1.0) * b.Y0;
        ev.value = b.J1 + cplx(0.0, 1.0) * b.Y1;
    } else {
        h0 = hankel1_asym(0, z);
        ev.value = hankel1_asym(1, z);
    }
    ev.derivative = h0 - ev.value / z;
    return ev;
}

}  // namespace plasmode::specfun
