#pragma once

// Nystrom assembly of the boundary-integral operators on a BoundaryMesh.
// All matrices absorb the quadrature weights, so operator composition is
// plain matrix multiplication and applying a matrix to a vector of nodal
// density samples yields nodal values of the potential.

#include <Eigen/Dense>
#include <complex>

#include "plasmode/geometry.hpp"

namespace plasmode::kernels {

using geometry::BoundaryMesh;
using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Martensen-Kussmaul weights R_ij for the 2pi-periodic logarithmic
// quadrature: integrates log(4 sin^2((t_i - t')/2)) g(t') exactly for
// trig polynomials g of degree < N/2 on the N equispaced nodes.
RMat log_quadrature_weights(int N);

// Geometry-only tables shared by every operator at a given mesh; build
// once per mesh and reuse across wavenumbers.
struct KernelTables {
    RMat dist;         // |x_i - x_j|
    RMat dot_nu;       // (x_i - x_j) . nu(x_i)
    RMat logfac;       // log( |x_i-x_j| / (2|sin((t_i-t_j)/2)|) ), 0 on diag
    RMat logweights;   // R_ij
};
KernelTables make_tables(const BoundaryMesh& mesh);

// Static single layer, kernel (1/2pi) log|x-y|. Symmetric after the
// column weights are factored out.
RMat single_layer_static(const BoundaryMesh& mesh, const KernelTables& t);

// Static Neumann-Poincare adjoint K*, kernel (1/2pi)(x-y).nu(x)/|x-y|^2,
// diagonal limit kappa/(4pi).
RMat neumann_poincare(const BoundaryMesh& mesh, const KernelTables& t);

// First Helmholtz correction to the single layer, kernel -|x-y|^2/(8pi).
RMat single_layer_correction(const BoundaryMesh& mesh, const KernelTables& t);

// Modified single layer S~: acts as S on mean-free densities and maps
// the equilibrium density phi0 to the constant -1. phi0 must satisfy
// K* phi0 = phi0 / 2 and sum_i w_i phi0_i = 1.
RMat modified_single_layer(const BoundaryMesh& mesh, const RMat& S,
                           const RVec& phi0);

// Helmholtz single layer S^k and Neumann-Poincare adjoint K^{k,*} at a
// (possibly complex) wavenumber k, assembled together since they share
// the Bessel evaluations. Entries are analytic continuations in k via the
// principal log. Sets *outside_validated to true when any Bessel argument
// left the validated accuracy region.
struct HelmholtzPair {
    CMat S;
    CMat K;
    bool outside_validated = false;
};
HelmholtzPair helmholtz_pair(const BoundaryMesh& mesh, const KernelTables& t,
                             cplx k);
CMat single_layer_helmholtz(const BoundaryMesh& mesh, const KernelTables& t,
                            cplx k);

// Potential Gamma^k * (density) evaluated at points strictly off the
// boundary (distance greater than the mesh spacing; throws otherwise).
// k == 0 gives the static kernel (1/2pi) log r.
CVec eval_single_layer(const BoundaryMesh& mesh, const CVec& density, cplx k,
                       const Eigen::MatrixX2d& points);

}  // namespace plasmode::kernels
