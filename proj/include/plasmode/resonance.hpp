#pragma once

// Drude material algebra and the closed-form resonance machinery:
// static and size-corrected complex resonances, resonance radius, and
// the residue constants entering the modal expansion.

#include <complex>
#include <vector>

#include "plasmode/spectral.hpp"

namespace plasmode::resonance {

using cplx = std::complex<double>;

struct DrudeMaterial {
    double eps0 = 8.854187128e-12;  // F/m
    double mu0 = 4.0e-7 * 3.14159265358979323846;  // H/m
    double omega_p = 2.0e15;        // rad/s
    double T = 1.0e-14;             // collision time, s
    double eps_m = 8.854187128e-12; // background permittivity, F/m

    double c() const;               // 1/sqrt(eps_m mu0)
    bool vacuum_background() const;
    void validate() const;          // all positive
};

cplx permittivity(const DrudeMaterial& mat, cplx omega);
cplx contrast(const DrudeMaterial& mat, cplx omega);

struct ResonancePair {
    cplx plus, minus;
    cplx a_plus{1.0, 0.0}, a_minus{1.0, 0.0};  // frozen-log bracket per family
    bool overdamped = false;
};

// Roots of the uncorrected dispersion lambda(omega) = lambda_j:
// +-sqrt(omega_p^2 (lambda + 1/2) - 1/(4T^2)) - i/(2T).
ResonancePair static_resonances(const DrudeMaterial& mat, double lambda);

// 2D size-corrected resonances: the logarithm is frozen at the static
// root of the same sign family, then the quadratic
// a Omega^2 + i Omega / T - omega_p^2 (lambda + 1/2) = 0 with
// a = 1 + alpha (omega_p delta / c)^2 log(Omega_s delta / c)
// is solved exactly (principal branch).
ResonancePair corrected_resonances_2d(const DrudeMaterial& mat, double lambda,
                                      double alpha, double delta);

// 3D closed form (vacuum background, |lambda + 1/2| > 1e-2).
ResonancePair corrected_resonances_3d(const DrudeMaterial& mat, double lambda,
                                      double alpha, double delta);

// Residual of the full (unfrozen) 2D transcendental dispersion relation
// at omega; used for diagnostics and the optional Newton polish.
cplx dispersion_residual_2d(const DrudeMaterial& mat, double lambda,
                            double alpha, double delta, cplx omega);
cplx newton_polish_2d(const DrudeMaterial& mat, double lambda, double alpha,
                      double delta, cplx start, int max_iter = 20);

// Residue constant C_{Omega^pm} of the modal expansion. sign = +1 or -1
// selects the family; the partner root in the denominator is the second
// root of the same frozen-log quadratic, -i/(aT) - Omega.
cplx residue_constant_2d(const DrudeMaterial& mat, double lambda, double alpha,
                         double delta, int sign);

struct ModeResonance {
    int j = 0;
    double lambda = 0.0;
    double alpha = 0.0;
    ResonancePair statics;
    ResonancePair corrected;
    cplx C_plus, C_minus;
};

struct ResonanceSet {
    std::vector<ModeResonance> modes;  // j = 1..J
    double delta = 0.0;
    double radius = 0.0;               // R(delta), rad/s
    double validity_ratio = 0.0;       // R(delta) delta / c
};

// Resonance radius R(delta): max over modes of
// max{ 2/(T |a|), 2 omega_p sqrt(lambda + 1/2) / sqrt(|a|) }
// over both sign families (dim = 2) or with the 3D bracket (dim = 3).
double resonance_radius(const DrudeMaterial& mat,
                        const std::vector<double>& lambdas,
                        const std::vector<double>& alphas, double delta,
                        int dim = 2);

// Full per-mode table for j = 1..J from a computed NP spectrum.
ResonanceSet build_resonance_set(const DrudeMaterial& mat,
                                 const spectral::NPSpectrum& sp, double delta,
                                 int J, bool polish = false);

}  // namespace plasmode::resonance
