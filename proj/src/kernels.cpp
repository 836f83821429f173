#include "plasmode/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plasmode/specfun.hpp"

namespace plasmode::kernels {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209;
const cplx kI(0.0, 1.0);
}  // namespace

RMat log_quadrature_weights(int N) {
    if (N < 2 || N % 2 != 0)
        throw std::domain_error("log_quadrature_weights: N must be even");
    const int n = N / 2;
    // R_ij depends only on (i - j) mod N; build the first row and shift.
    Eigen::VectorXd row(N);
    for (int d = 0; d < N; ++d) {
        const double ang = kPi * d / n;  // t_i - t_j for |i-j| = d
        double s = 0.0;
        for (int m = 1; m < n; ++m) s += std::cos(m * ang) / m;
        row[d] = -(2.0 * kPi / n) * s - (kPi / (n * double(n))) * std::cos(n * ang);
    }
    RMat R(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) R(i, j) = row[(i - j + N) % N];
    return R;
}

KernelTables make_tables(const BoundaryMesh& mesh) {
    const int N = mesh.N;
    KernelTables t;
    t.dist.setZero(N, N);
    t.dot_nu.setZero(N, N);
    t.logfac.setZero(N, N);
    t.logweights = log_quadrature_weights(N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            const Eigen::Vector2d dx = mesh.nodes.row(i) - mesh.nodes.row(j);
            const double r = dx.norm();
            if (r < 1e-14)
                throw std::domain_error("mesh has coincident nodes");
            t.dist(i, j) = r;
            t.dot_nu(i, j) = dx.dot(mesh.normal.row(i));
            const double s = 2.0 * std::abs(std::sin(0.5 * (mesh.theta[i] - mesh.theta[j])));
            t.logfac(i, j) = std::log(r / s);
        }
    }
    return t;
}

RMat single_layer_static(const BoundaryMesh& mesh, const KernelTables& t) {
    const int N = mesh.N;
    const double h = 2.0 * kPi / N;
    RMat S(N, N);
    // (1/2pi) log r = (1/4pi) log(4 sin^2) + (1/2pi) log(r / 2|sin|)
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const double smooth =
                (i == j) ? std::log(mesh.jacobian[i]) : t.logfac(i, j);
            S(i, j) = (t.logweights(i, j) / (4.0 * kPi) + h * smooth / (2.0 * kPi)) *
                      mesh.jacobian[j];
        }
    }
    return S;
}

RMat neumann_poincare(const BoundaryMesh& mesh, const KernelTables& t) {
    const int N = mesh.N;
    const double h = 2.0 * kPi / N;
    RMat K(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const double kern =
                (i == j) ? mesh.curvature[i] / (4.0 * kPi)
                         : t.dot_nu(i, j) / (2.0 * kPi * t.dist(i, j) * t.dist(i, j));
            K(i, j) = h * kern * mesh.jacobian[j];
        }
    }
    return K;
}

RMat single_layer_correction(const BoundaryMesh& mesh, const KernelTables& t) {
    const int N = mesh.N;
    const double h = 2.0 * kPi / N;
    RMat B(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            B(i, j) = -h * t.dist(i, j) * t.dist(i, j) / (8.0 * kPi) * mesh.jacobian[j];
    return B;
}

RMat modified_single_layer(const BoundaryMesh& mesh, const RMat& S,
                           const RVec& phi0) {
    const RVec w = mesh.weights;
    const double mass = w.dot(phi0);
    if (std::abs(mass - 1.0) > 1e-8)
        throw std::domain_error("modified_single_layer: phi0 must have unit mean");
    // S~ psi = S psi - <psi, 1> (S phi0 + 1): acts as S on mean-free
    // densities and sends phi0 to the constant -1.
    const RVec u = S * phi0 + RVec::Ones(mesh.N);
    return S - u * w.transpose();
}

HelmholtzPair helmholtz_pair(const BoundaryMesh& mesh, const KernelTables& t,
                             cplx k) {
    if (k == cplx(0.0, 0.0))
        throw std::domain_error("helmholtz_pair: k must be nonzero");
    const int N = mesh.N;
    const double h = 2.0 * kPi / N;
    HelmholtzPair out;
    out.S.resize(N, N);
    out.K.resize(N, N);

    // Diagonals: S from the log-split limit, K from the curvature limit.
    const cplx eta = std::log(0.5 * k) + kEulerGamma;  // log(k/2) + gamma
    for (int i = 0; i < N; ++i) {
        const cplx m2 = (eta + std::log(mesh.jacobian[i])) / (2.0 * kPi) - kI / 4.0;
        out.S(i, i) = (t.logweights(i, i) / (4.0 * kPi) + h * m2) * mesh.jacobian[i];
        out.K(i, i) = h * mesh.curvature[i] / (4.0 * kPi) * mesh.jacobian[i];
    }

    // Off-diagonal: one Bessel evaluation per unordered pair serves both
    // operators (the S kernel is symmetric in (i, j); K differs only by
    // the geometric factor dot_nu).
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const double r = t.dist(i, j);
            const cplx z = k * r;
            const auto b = specfun::bessel01(z);
            if (!specfun::in_validated_region(z)) out.outside_validated = true;
            const cplx H0 = b.J0 + kI * b.Y0;
            const cplx H1 = b.J1 + kI * b.Y1;

            // S^k: full kernel -(i/4) H0(kr); log coefficient (1/4pi) J0(kr)
            // smooth part = full - m1*log(4 sin^2), and
            // log(4 sin^2((t_i-t_j)/2)) = 2 (log r - logfac)
            const cplx m1 = b.J0 / (4.0 * kPi);
            const cplx m2 = -kI / 4.0 * H0 - m1 * 2.0 * (std::log(r) - t.logfac(i, j));
            const cplx sij = (t.logweights(i, j) * m1 + h * m2);
            out.S(i, j) = sij * mesh.jacobian[j];
            out.S(j, i) = sij * mesh.jacobian[i];

            // K^{k,*}: full kernel (ik/4) H1(kr) (x-y).nu(x)/r;
            // log coefficient -(k/4pi) J1(kr) (x-y).nu(x)/r
            const cplx l_full = kI * k / 4.0 * H1 / r;
            const cplx l1 = -k / (4.0 * kPi) * b.J1 / r;
            const cplx l2 = l_full - l1 * 2.0 * (std::log(r) - t.logfac(i, j));
            out.K(i, j) = (t.logweights(i, j) * l1 + h * l2) * t.dot_nu(i, j) *
                          mesh.jacobian[j];
            out.K(j, i) = (t.logweights(j, i) * l1 + h * l2) * t.dot_nu(j, i) *
                          mesh.jacobian[i];
        }
    }
    return out;
}

CMat single_layer_helmholtz(const BoundaryMesh& mesh, const KernelTables& t,
                            cplx k) {
    return helmholtz_pair(mesh, t, k).S;
}

CVec eval_single_layer(const BoundaryMesh& mesh, const CVec& density, cplx k,
                       const Eigen::MatrixX2d& points) {
    if (density.size() != mesh.N)
        throw std::domain_error("eval_single_layer: density size mismatch");
    const double hmin = mesh.mesh_spacing();
    CVec vals(points.rows());
    for (int p = 0; p < points.rows(); ++p) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < mesh.N; ++j) {
            const double r = (points.row(p) - mesh.nodes.row(j)).norm();
            if (r <= hmin)
                throw std::domain_error(
                    "eval_single_layer: point too close to the boundary");
            cplx g;
            if (k == cplx(0.0, 0.0))
                g = std::log(r) / (2.0 * kPi);
            else
                g = -kI / 4.0 * specfun::hankel1_0(k * r).value;
            acc += g * mesh.weights[j] * density[j];
        }
        vals[p] = acc;
    }
    return vals;
}

}  // namespace plasmode::kernels
