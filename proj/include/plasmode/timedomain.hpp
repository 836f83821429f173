#pragma once

// Frequency-sweep boundary solves and time-domain synthesis: incident
// pulse, reference solution by truncated inverse Fourier transform, and
// the finite modal (quasi-normal-mode) expansion.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "plasmode/resonance.hpp"
#include "plasmode/spectral.hpp"

namespace plasmode::timedomain {

using cplx = std::complex<double>;
using resonance::DrudeMaterial;
using resonance::ResonanceSet;
using spectral::NPSpectrum;

// Smooth bump supported on [0, C1], peak normalized to 1:
// f(t) = exp(1 - 1 / (1 - ((2t - C1)/C1)^2)).
struct Pulse {
    double C1 = 8e-15;  // support length, s

    double eval(double t) const;
    // Fourier transform integral_0^C1 f(t) e^{i omega t} dt by
    // Gauss-Legendre panels; requires |Im omega| * C1 <= 700.
    cplx spectrum(cplx omega) const;
};

// Symmetric band +-[eps, rho] sampled on the positive half; the negative
// half is implied by conjugate symmetry of real-signal scattering data.
struct FrequencyGrid {
    double eps = 0.5e15;   // rad/s
    double rho = 2.0e15;   // rad/s
    int L = 10000;         // samples per half-band
    bool high_order = false;  // composite Simpson instead of uniform midpoint

    void validate(double delta, double c) const;  // 0 < eps < rho, rho delta/c <= 1
    std::vector<double> nodes() const;
    std::vector<double> weights() const;  // quadrature weights in rad/s
};

struct ScatterProblem {
    geometry::BoundaryMesh mesh;
    kernels::KernelTables tables;
    DrudeMaterial mat;
    double delta = 1e-8;                  // particle radius scale, m
    Eigen::Vector2d d{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    Eigen::Vector2d z{0.0, 0.0};          // particle center, m
    Pulse pulse;

    static ScatterProblem make(const geometry::BoundaryMesh& mesh,
                               const DrudeMaterial& mat, double delta,
                               const Eigen::Vector2d& d,
                               const Eigen::Vector2d& z, const Pulse& pulse);
};

struct BoundaryDensities {
    Eigen::VectorXcd psi;  // medium-side density (radiates the scattered field)
    Eigen::VectorXcd phi;  // particle-side density
    double residual = 0.0;
};

// One frequency-domain solve of the transmission system in B-coordinates.
BoundaryDensities solve_boundary_system(const ScatterProblem& pr, double omega);

// delta * S_B^{k_m delta}[psi](X) at exterior points (B-coordinates).
Eigen::VectorXcd scattered_field_frequency(const ScatterProblem& pr,
                                           const Eigen::VectorXcd& psi,
                                           double omega,
                                           const Eigen::MatrixX2d& points);

// Scattered field at every grid node frequency and observation point;
// fields(p, l) = u^sca(X_p, omega_l). Parallel over frequencies.
struct SweepResult {
    std::vector<double> omegas;
    std::vector<double> weights;
    Eigen::MatrixXcd fields;
};
SweepResult run_frequency_sweep(const ScatterProblem& pr,
                                const FrequencyGrid& grid,
                                const Eigen::MatrixX2d& points, int threads);

// Newton-polish the corrected resonances of the coupled modes against the
// exact discretized dispersion (the poles of the transmission system); the
// closed form misses part of the radiative damping at order (omega delta/c)^2.
// Updates the +- poles and residue constants of each coupled mode in place;
// modes whose iteration fails to converge keep their closed-form values.
void polish_resonances(const ScatterProblem& pr, const NPSpectrum& sp,
                       resonance::ResonanceSet& rs);

struct TimeTrace {
    Eigen::Vector2d X;             // observation point, B-coordinates
    std::vector<double> times;     // s, strictly increasing
    std::vector<cplx> values;
    std::string provenance;        // "reference" | "modal(J)" | "incident"
    double t0_minus = 0.0, t0_plus = 0.0;
};

std::vector<double> uniform_time_grid(double t0, double t1, int n);

// Arrival markers t0^+- = (|x-z| + d.z +- 2 delta)/c +- C1 for the
// physical observation point x = z + delta X.
std::pair<double, double> arrival_times(const ScatterProblem& pr,
                                        const Eigen::Vector2d& X);

// Band-limited inverse Fourier synthesis of one sweep column:
// P(t) = sum_l w_l (e^{-i w_l t} u(w_l) + e^{+i w_l t} conj(u(w_l))).
TimeTrace reference_solution(const ScatterProblem& pr, const SweepResult& sweep,
                             int point_index, const Eigen::Vector2d& X,
                             const std::vector<double>& times);

// Modal expansion over modes j in `modes` (1-based spectrum indices),
// both sign families. Empty `modes` with J >= 0 means modes 1..J.
TimeTrace modal_solution(const ScatterProblem& pr, const NPSpectrum& sp,
                         const ResonanceSet& rs, const Eigen::Vector2d& X,
                         const std::vector<double>& times, int J,
                         const std::vector<int>& modes = {});

// Per-mode peak amplitude of the modal trace (for dominant-mode ranking).
std::vector<double> modal_mode_amplitudes(const ScatterProblem& pr,
                                          const NPSpectrum& sp,
                                          const ResonanceSet& rs,
                                          const Eigen::Vector2d& X,
                                          const std::vector<double>& times);

// QNM e_j^pm (causal = false) or causal E_j^pm (causal = true) at
// exterior B-coordinate points.
Eigen::VectorXcd quasi_normal_mode(const ScatterProblem& pr,
                                   const NPSpectrum& sp, int j, cplx Omega,
                                   const Eigen::MatrixX2d& points, bool causal);

struct Misfit {
    double relative_L2 = 0.0;
    double reconstruction_pct = 0.0;
};
Misfit misfit(const TimeTrace& ref, const TimeTrace& approx, double t_a,
              double t_b);

TimeTrace incident_trace(const Pulse& pulse, const Eigen::Vector2d& d,
                         const Eigen::Vector2d& x_physical, double c,
                         const std::vector<double>& times);

}  // namespace plasmode::timedomain
