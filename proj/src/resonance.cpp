#include "plasmode/resonance.hpp"

#include <cmath>
#include <stdexcept>

namespace plasmode::resonance {

namespace {
const cplx kI(0.0, 1.0);
}

double DrudeMaterial::c() const { return 1.0 / std::sqrt(eps_m * mu0); }

bool DrudeMaterial::vacuum_background() const {
    return std::abs(eps_m / eps0 - 1.0) < 1e-12;
}

void DrudeMaterial::validate() const {
    if (!(eps0 > 0 && mu0 > 0 && omega_p > 0 && T > 0 && eps_m > 0))
        throw std::domain_error("DrudeMaterial: all constants must be positive");
}

cplx permittivity(const DrudeMaterial& mat, cplx omega) {
    const cplx u = omega * (omega + kI / mat.T);
    if (std::abs(u) == 0.0)
        throw std::domain_error("permittivity: omega at a Drude pole");
    return mat.eps0 * (1.0 - mat.omega_p * mat.omega_p / u);
}

cplx contrast(const DrudeMaterial& mat, cplx omega) {
    const cplx ec = permittivity(mat, omega);
    const cplx den = mat.eps_m - ec;
    if (std::abs(den) < 1e-300 * std::abs(mat.eps_m + ec))
        throw std::domain_error("contrast: degenerate eps_c = eps_m");
    return (mat.eps_m + ec) / (2.0 * den);
}

ResonancePair static_resonances(const DrudeMaterial& mat, double lambda) {
    if (!(lambda > -0.5 && lambda <= 0.5))
        throw std::domain_error("static_resonances: lambda outside (-1/2, 1/2]");
    const double disc =
        mat.omega_p * mat.omega_p * (lambda + 0.5) - 1.0 / (4.0 * mat.T * mat.T);
    ResonancePair out;
    const cplx damp(0.0, -0.5 / mat.T);
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        out.plus = cplx(s, 0.0) + damp;
        out.minus = cplx(-s, 0.0) + damp;
    } else {
        const double s = std::sqrt(-disc);
        out.plus = cplx(0.0, s) + damp;
        out.minus = cplx(0.0, -s) + damp;
        out.overdamped = true;
    }
    return out;
}

namespace {

// Solve the frozen-log quadratic for one sign family.
cplx corrected_root(const DrudeMaterial& mat, double lambda, double alpha,
                    double delta, cplx omega_seed, int sign, cplx* a_out) {
    const double c = mat.c();
    const double q = mat.omega_p * delta / c;  // omega_p delta / c
    const cplx logarg = omega_seed * delta / c;
    if (std::abs(logarg) == 0.0)
        throw std::domain_error("corrected_resonances: zero log argument");
    const cplx a = 1.0 + alpha * q * q * std::log(logarg);
    if (std::abs(a) < 0.5)
        throw std::domain_error(
            "corrected_resonances: bracket 1 + alpha (...)^2 log(...) too small");
    const cplx disc = 4.0 * mat.omega_p * mat.omega_p * (lambda + 0.5) * a -
                      1.0 / (mat.T * mat.T);
    *a_out = a;
    return (-kI / mat.T + double(sign) * std::sqrt(disc)) / (2.0 * a);
}

}  // namespace

ResonancePair corrected_resonances_2d(const DrudeMaterial& mat, double lambda,
                                      double alpha, double delta) {
    if (!(delta > 0)) throw std::domain_error("corrected_resonances_2d: delta > 0");
    const ResonancePair st = static_resonances(mat, lambda);
    ResonancePair out;
    out.overdamped = st.overdamped;
    out.plus = corrected_root(mat, lambda, alpha, delta, st.plus, +1, &out.a_plus);
    if (st.overdamped) {
        out.minus =
            corrected_root(mat, lambda, alpha, delta, st.minus, -1, &out.a_minus);
    } else {
        // The minus family belongs to the negative-frequency half of the
        // real-signal synthesis, i.e. to the reflected continuation
        // u(-conj(w)) = conj(u(w)); its pole is the exact mirror image.
        out.minus = -std::conj(out.plus);
        out.a_minus = std::conj(out.a_plus);
    }
    return out;
}

ResonancePair corrected_resonances_3d(const DrudeMaterial& mat, double lambda,
                                      double alpha, double delta) {
    if (!(delta > 0)) throw std::domain_error("corrected_resonances_3d: delta > 0");
    if (!mat.vacuum_background())
        throw std::domain_error("corrected_resonances_3d: vacuum background required");
    if (std::abs(lambda + 0.5) <= 1e-2)
        throw std::domain_error("corrected_resonances_3d: |lambda + 1/2| <= 1e-2");
    const double q = mat.omega_p * delta / mat.c();
    const double a = 1.0 + q * q * alpha;
    if (std::abs(a) < 0.5)
        throw std::domain_error("corrected_resonances_3d: bracket too small");
    const double re2 = mat.omega_p * mat.omega_p * (lambda + 0.5) / a -
                       1.0 / (4.0 * mat.T * mat.T * a * a);
    const double im = -0.5 / (mat.T * a);
    ResonancePair out;
    out.a_plus = out.a_minus = cplx(a, 0.0);
    if (re2 >= 0.0) {
        const double re = std::sqrt(re2);
        out.plus = cplx(re, im);
        out.minus = cplx(-re, im);
    } else {
        const double s = std::sqrt(-re2);
        out.plus = cplx(0.0, im + s);
        out.minus = cplx(0.0, im - s);
        out.overdamped = true;
    }
    // boundedness per the closed form
    const double bound = 2.0 * std::max(1.0 / (mat.T * std::abs(a)),
                                        mat.omega_p * std::sqrt(lambda + 0.5) /
                                            std::sqrt(std::abs(a)));
    if (std::abs(out.plus) > bound * (1.0 + 1e-12) ||
        std::abs(out.minus) > bound * (1.0 + 1e-12))
        throw std::runtime_error("corrected_resonances_3d: bound violated");
    return out;
}

cplx dispersion_residual_2d(const DrudeMaterial& mat, double lambda,
                            double alpha, double delta, cplx omega) {
    const cplx w = omega * delta / mat.c();
    return contrast(mat, omega) - lambda + w * w * std::log(w) * alpha;
}

cplx newton_polish_2d(const DrudeMaterial& mat, double lambda, double alpha,
                      double delta, cplx start, int max_iter) {
    if (!mat.vacuum_background())
        throw std::domain_error("newton_polish_2d: vacuum background required");
    const double wp2 = mat.omega_p * mat.omega_p;
    const double dc = delta / mat.c();
    cplx w = start;
    for (int it = 0; it < max_iter; ++it) {
        const cplx g = dispersion_residual_2d(mat, lambda, alpha, delta, w);
        // vacuum contrast is (w^2 + i w / T)/wp^2 - 1/2
        const cplx dg = (2.0 * w + kI / mat.T) / wp2 +
                        alpha * dc * dc * w * (2.0 * std::log(w * dc) + 1.0);
        const cplx step = g / dg;
        w -= step;
        if (std::abs(step) < 1e-14 * std::abs(w)) break;
    }
    return w;
}

cplx residue_constant_2d(const DrudeMaterial& mat, double lambda, double alpha,
                         double delta, int sign) {
    if (!mat.vacuum_background())
        throw std::domain_error("residue_constant_2d: vacuum background required");
    const ResonancePair rp = corrected_resonances_2d(mat, lambda, alpha, delta);
    const cplx Om = rp.plus;
    const cplx a = rp.a_plus;
    // second root of the same frozen-log quadratic
    const cplx other = -kI / (a * mat.T) - Om;
    if (std::abs(Om - other) < 1e-6 * std::abs(Om))
        throw std::domain_error("residue_constant_2d: coincident roots");
    const cplx num = Om * Om + kI * Om / mat.T - mat.omega_p * mat.omega_p;
    const cplx C_plus = mat.eps0 * num / (a * (Om - other));
    // the mirror pole of the reflected continuation carries -conj(C)
    return (sign > 0) ? C_plus : -std::conj(C_plus);
}

double resonance_radius(const DrudeMaterial& mat,
                        const std::vector<double>& lambdas,
                        const std::vector<double>& alphas, double delta,
                        int dim) {
    if (lambdas.size() != alphas.size())
        throw std::domain_error("resonance_radius: size mismatch");
    const double c = mat.c();
    const double q = mat.omega_p * delta / c;
    // modes with alpha = 0 (zero dipole moment, by symmetry) carry no
    // excitation and never enter the truncated expansion the radius brackets
    double amax = 0.0;
    for (double a : alphas) amax = std::max(amax, std::abs(a));
    double R = 0.0;
    for (size_t j = 0; j < lambdas.size(); ++j) {
        if (amax > 0.0 && std::abs(alphas[j]) <= 1e-10 * amax) continue;
        std::vector<cplx> brackets;
        if (dim == 2) {
            // the minus-family bracket is the conjugate, with equal modulus
            const ResonancePair st = static_resonances(mat, lambdas[j]);
            brackets.push_back(1.0 +
                               alphas[j] * q * q * std::log(st.plus * delta / c));
        } else if (dim == 3) {
            brackets.push_back(cplx(1.0 + q * q * alphas[j], 0.0));
        } else {
            throw std::domain_error("resonance_radius: dim must be 2 or 3");
        }
        for (cplx a : brackets) {
            const double am = std::abs(a);
            R = std::max(R, 2.0 / (mat.T * am));
            R = std::max(R, 2.0 * mat.omega_p * std::sqrt(lambdas[j] + 0.5) /
                                std::sqrt(am));
        }
    }
    return R;
}

ResonanceSet build_resonance_set(const DrudeMaterial& mat,
                                 const spectral::NPSpectrum& sp, double delta,
                                 int J, bool polish) {
    if (J < 1 || J + 1 > sp.eigenvalues.size())
        throw std::domain_error("build_resonance_set: J exceeds spectrum size");
    ResonanceSet rs;
    rs.delta = delta;
    std::vector<double> lambdas, alphas;
    for (int j = 1; j <= J; ++j) {
        ModeResonance mr;
        mr.j = j;
        mr.lambda = sp.eigenvalues[j];
        mr.alpha = sp.alpha[j];
        mr.statics = static_resonances(mat, mr.lambda);
        mr.corrected = corrected_resonances_2d(mat, mr.lambda, mr.alpha, delta);
        if (polish) {
            mr.corrected.plus = newton_polish_2d(mat, mr.lambda, mr.alpha, delta,
                                                 mr.corrected.plus);
            mr.corrected.minus = -std::conj(mr.corrected.plus);
        }
        mr.C_plus = residue_constant_2d(mat, mr.lambda, mr.alpha, delta, +1);
        mr.C_minus = residue_constant_2d(mat, mr.lambda, mr.alpha, delta, -1);
        if (mr.corrected.plus.imag() >= 0 || mr.corrected.minus.imag() >= 0)
            throw std::runtime_error("build_resonance_set: resonance with Im >= 0");
        lambdas.push_back(mr.lambda);
        alphas.push_back(mr.alpha);
        rs.modes.push_back(mr);
    }
    rs.radius = resonance_radius(mat, lambdas, alphas, delta, 2);
    rs.validity_ratio = rs.radius * delta / mat.c();
    for (const auto& mr : rs.modes) {
        if (std::abs(mr.corrected.plus) > rs.radius * (1.0 + 1e-9) ||
            std::abs(mr.corrected.minus) > rs.radius * (1.0 + 1e-9))
            throw std::runtime_error("build_resonance_set: |Omega| exceeds R(delta)");
    }
    return rs;
}

}  // namespace plasmode::resonance
