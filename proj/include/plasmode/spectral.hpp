#pragma once

// Spectral decomposition of the Neumann-Poincare adjoint K* in the
// energy space H*: eigenvalues in (-1/2, 1/2], eigendensities
// orthonormalized in the bilinear pairing <u, v> = -<u, S~ v>_{L^2}.

#include <Eigen/Dense>

#include "plasmode/geometry.hpp"
#include "plasmode/kernels.hpp"

namespace plasmode::spectral {

using geometry::BoundaryMesh;
using kernels::RMat;
using kernels::RVec;

struct NPSpectrum {
    BoundaryMesh mesh;
    RVec eigenvalues;       // lambda_0 = 1/2 first, then descending |lambda|
    RMat eigendensities;    // columns phi~_j, H*-orthonormal for j >= 1
    RVec phi0;              // equilibrium density, unit mean
    RMat S;                 // static single layer
    RMat S_tilde;           // modified single layer
    RMat gram;              // symmetric positive matrix G with <u,v> = u^T G v
    RVec alpha;             // log-correction coefficients alpha_j (alpha_0 = 0)
};

// Bilinear H* pairing of nodal densities.
double hstar_inner(const NPSpectrum& sp, const RVec& u, const RVec& v);

// Eigendecomposition of the discrete K*, keeping lambda_0 = 1/2 and the
// n_modes further eigenvalues of largest |lambda|. Throws if an
// eigenvalue kept has |Im| beyond tolerance, if lambda_0 is not simple,
// or if -S~ fails to be positive definite.
NPSpectrum np_decomposition(const BoundaryMesh& mesh, int n_modes,
                            double imag_tol = 1e-8);

// <d . nu, phi~_j>_{H*} for a unit direction d.
double mode_coefficient(const NPSpectrum& sp, const Eigen::Vector2d& d, int j);

}  // namespace plasmode::spectral
