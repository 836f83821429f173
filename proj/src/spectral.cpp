#include "plasmode/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace plasmode::spectral {

namespace {

// Dominant angular frequency of a nodal density, used only as an
// ordering tie-break inside degenerate eigenvalue clusters.
int fft_peak(const RVec& v) {
    const int N = static_cast<int>(v.size());
    int best = 0;
    double bestmag = -1.0;
    for (int m = 1; m <= N / 2; ++m) {
        double c = 0, s = 0;
        for (int i = 0; i < N; ++i) {
            const double ang = 2.0 * std::numbers::pi * m * i / N;
            c += v[i] * std::cos(ang);
            s += v[i] * std::sin(ang);
        }
        const double mag = c * c + s * s;
        if (mag > bestmag) {
            bestmag = mag;
            best = m;
        }
    }
    return best;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
}

}  // namespace

double hstar_inner(const NPSpectrum& sp, const RVec& u, const RVec& v) {
    return u.dot(sp.gram * v);
}

NPSpectrum np_decomposition(const BoundaryMesh& mesh, int n_modes,
                            double imag_tol) {
    if (n_modes < 1) throw std::domain_error("np_decomposition: n_modes >= 1");
    const int N = mesh.N;
    if (n_modes > N - 1)
        throw std::domain_error("np_decomposition: more modes than mesh nodes");

    NPSpectrum sp;
    sp.mesh = mesh;
    const auto tables = kernels::make_tables(mesh);
    const RMat K = kernels::neumann_poincare(mesh, tables);
    sp.S = kernels::single_layer_static(mesh, tables);

    // Equilibrium density from the plain eigensolve: eigenvalue 1/2.
    Eigen::EigenSolver<RMat> es(K);
    int j0 = -1;
    double best = 1e30;
    for (int j = 0; j < N; ++j) {
        const double d = std::abs(es.eigenvalues()[j] - std::complex<double>(0.5, 0.0));
        if (d < best) {
            best = d;
            j0 = j;
        }
    }
    if (best > 1e-6)
        throw std::runtime_error("np_decomposition: eigenvalue 1/2 not found");
    RVec phi0 = es.eigenvectors().col(j0).real();
    const double mass = mesh.weights.dot(phi0);
    if (std::abs(mass) < 1e-12)
        throw std::runtime_error("np_decomposition: degenerate equilibrium density");
    phi0 /= mass;
    sp.phi0 = phi0;

    sp.S_tilde = kernels::modified_single_layer(mesh, sp.S, phi0);
    const RMat WS = mesh.weights.asDiagonal() * sp.S_tilde;
    sp.gram = -0.5 * (WS + WS.transpose());

    Eigen::LLT<RMat> llt(sp.gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("np_decomposition: -S~ pairing not positive definite");
    const RMat U = llt.matrixU();  // gram = U^T U

    // K* is self-adjoint in the H* pairing, so U K U^{-1} is symmetric up
    // to quadrature error; symmetrizing gives exactly real eigenvalues
    // and an exactly G-orthonormal eigenbasis.
    const RMat Uinv = U.triangularView<Eigen::Upper>().solve(RMat::Identity(N, N));
    const RMat C = U * K * Uinv;
    const double asym = (C - C.transpose()).norm() / C.norm();
    if (asym > std::max(imag_tol * 1e2, 1e-4))
        throw std::runtime_error(
            "np_decomposition: K* not self-adjoint in H* at this resolution");
    const RMat Csym = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<RMat> ses(Csym);
    const RVec lam = ses.eigenvalues();
    const RMat phis = Uinv * ses.eigenvectors();  // G-orthonormal columns

    // Locate the lambda_0 = 1/2 column by overlap with phi0; it must be
    // simple and the spectrum confined to (-1/2, 1/2].
    int c0 = -1;
    double bestov = -1.0;
    for (int j = 0; j < N; ++j) {
        const double ov = std::abs(phi0.dot(sp.gram * phis.col(j)));
        if (ov > bestov) {
            bestov = ov;
            c0 = j;
        }
    }
    if (std::abs(lam[c0] - 0.5) > 1e-6)
        throw std::runtime_error("np_decomposition: misidentified equilibrium mode");
    for (int j = 0; j < N; ++j) {
        if (j != c0 && std::abs(lam[j] - lam[c0]) < 1e-10)
            throw std::runtime_error("np_decomposition: eigenvalue 1/2 not simple");
        if (lam[j] > 0.5 + 1e-6 || lam[j] < -0.5 - 1e-6)
            throw std::runtime_error(
                "np_decomposition: eigenvalue outside [-1/2, 1/2]");
    }

    std::vector<int> order;
    order.reserve(N - 1);
    for (int j = 0; j < N; ++j)
        if (j != c0) order.push_back(j);
    std::vector<int> peak(N, 0);
    // the +-pair magnitudes split by the quadrature error, so the
    // magnitude tie uses a relative tolerance well above it
    auto near = [](double x, double y) {
        return std::abs(x - y) <= 1e-4 * std::max(std::abs(x), std::abs(y));
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = std::abs(lam[a]), db = std::abs(lam[b]);
        if (!near(da, db)) return da > db;
        if (!near(lam[a], lam[b])) return lam[a] > lam[b];
        return false;
    });
    order.resize(n_modes);
    // tie-break truly degenerate neighbours by angular content
    for (size_t a = 0; a + 1 < order.size(); ++a) {
        size_t b = a;
        while (b + 1 < order.size() && near(lam[order[b + 1]], lam[order[a]]))
            ++b;
        if (b > a) {
            for (size_t k = a; k <= b; ++k) {
                RVec col = phis.col(order[k]);
                peak[order[k]] = fft_peak(col);
            }
            std::stable_sort(order.begin() + a, order.begin() + b + 1,
                             [&](int x, int y) { return peak[x] < peak[y]; });
            a = b;
        }
    }

    sp.eigenvalues.resize(n_modes + 1);
    sp.eigendensities.resize(N, n_modes + 1);
    sp.eigenvalues[0] = 0.5;
    sp.eigendensities.col(0) = phi0;  // automatically H*-normalized
    for (int j = 0; j < n_modes; ++j) {
        sp.eigenvalues[j + 1] = lam[order[j]];
        sp.eigendensities.col(j + 1) = phis.col(order[j]);
        fix_sign(sp.eigendensities.col(j + 1));
    }

    // alpha_j = (lambda_j - 1/2) <S_B1 phi~_j, phi~_j>_{L^2(w)}
    const RMat B = kernels::single_layer_correction(mesh, tables);
    sp.alpha.setZero(n_modes + 1);
    for (int j = 1; j <= n_modes; ++j) {
        const RVec phi = sp.eigendensities.col(j);
        const double quad = phi.dot(mesh.weights.asDiagonal() * (B * phi));
        sp.alpha[j] = (sp.eigenvalues[j] - 0.5) * quad;
    }
    return sp;
}

double mode_coefficient(const NPSpectrum& sp, const Eigen::Vector2d& d, int j) {
    if (j < 0 || j >= sp.eigendensities.cols())
        throw std::domain_error("mode_coefficient: mode index out of range");
    RVec dn = sp.mesh.normal * d;
    return hstar_inner(sp, dn, sp.eigendensities.col(j));
}

}  // namespace plasmode::spectral
