#include "plasmode/timedomain.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace plasmode::timedomain {

namespace {
const cplx kI(0.0, 1.0);
}

ScatterProblem ScatterProblem::make(const geometry::BoundaryMesh& mesh,
                                    const DrudeMaterial& mat, double delta,
                                    const Eigen::Vector2d& d,
                                    const Eigen::Vector2d& z,
                                    const Pulse& pulse) {
    mat.validate();
    if (!(delta > 0)) throw std::domain_error("ScatterProblem: delta > 0");
    if (std::abs(d.norm() - 1.0) > 1e-12)
        throw std::domain_error("ScatterProblem: d must be a unit vector");
    ScatterProblem pr;
    pr.mesh = mesh;
    pr.tables = kernels::make_tables(mesh);
    pr.mat = mat;
    pr.delta = delta;
    pr.d = d;
    pr.z = z;
    pr.pulse = pulse;
    return pr;
}

namespace {

// Transmission system matrix at (possibly complex) frequency omega; its
// singular frequencies in the lower half-plane are the scattering poles.
Eigen::MatrixXcd transmission_matrix(const ScatterProblem& pr, cplx omega) {
    const int N = pr.mesh.N;
    const double c = pr.mat.c();
    const cplx eps_c = resonance::permittivity(pr.mat, omega);
    const cplx eps_m(pr.mat.eps_m, 0.0);
    if (std::abs(eps_c - eps_m) < 1e-12 * std::abs(eps_m))
        throw std::domain_error("transmission_matrix: eps_c == eps_m");

    const cplx km_d = omega * pr.delta / c;  // k_m delta
    const cplx kc_d = omega * pr.delta * std::sqrt(eps_c * pr.mat.mu0);

    const auto Hm = kernels::helmholtz_pair(pr.mesh, pr.tables, km_d);
    const auto Hc = kernels::helmholtz_pair(pr.mesh, pr.tables, kc_d);

    Eigen::MatrixXcd A(2 * N, 2 * N);
    A.topLeftCorner(N, N) = Hm.S;
    A.topRightCorner(N, N) = -Hc.S;
    A.bottomLeftCorner(N, N) =
        (0.5 * Eigen::MatrixXcd::Identity(N, N) + Hm.K) / eps_m;
    A.bottomRightCorner(N, N) =
        (0.5 * Eigen::MatrixXcd::Identity(N, N) - Hc.K) / eps_c;
    return A;
}

}  // namespace

BoundaryDensities solve_boundary_system(const ScatterProblem& pr, double omega) {
    const int N = pr.mesh.N;
    const double c = pr.mat.c();
    const cplx eps_m(pr.mat.eps_m, 0.0);
    const Eigen::MatrixXcd A = transmission_matrix(pr, cplx(omega, 0.0));

    // incident plane wave at the boundary nodes x = z + delta X
    const cplx f = pr.pulse.spectrum(cplx(omega, 0.0));
    Eigen::VectorXcd b(2 * N);
    for (int i = 0; i < N; ++i) {
        const double phase =
            omega / c *
            (pr.d.x() * (pr.z.x() + pr.delta * pr.mesh.nodes(i, 0)) +
             pr.d.y() * (pr.z.y() + pr.delta * pr.mesh.nodes(i, 1)));
        const cplx uin = std::exp(kI * phase) * f;
        const double dn = pr.d.x() * pr.mesh.normal(i, 0) +
                          pr.d.y() * pr.mesh.normal(i, 1);
        b[i] = -uin / pr.delta;                              // F1 / delta
        b[N + i] = -kI * (omega / c) * dn * uin / eps_m;     // F2
    }

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const Eigen::VectorXcd x = lu.solve(b);
    BoundaryDensities out;
    out.psi = x.head(N);
    out.phi = x.tail(N);
    const double bnorm = b.norm();
    out.residual = bnorm > 0 ? (A * x - b).norm() / bnorm : 0.0;
    if (!std::isfinite(out.residual) || out.residual > 1e-8)
        throw std::runtime_error("solve_boundary_system: singular system");
    return out;
}

Eigen::VectorXcd scattered_field_frequency(const ScatterProblem& pr,
                                           const Eigen::VectorXcd& psi,
                                           double omega,
                                           const Eigen::MatrixX2d& points) {
    const cplx km_d = omega * pr.delta / pr.mat.c();
    return pr.delta * kernels::eval_single_layer(pr.mesh, psi, km_d, points);
}

SweepResult run_frequency_sweep(const ScatterProblem& pr,
                                const FrequencyGrid& grid,
                                const Eigen::MatrixX2d& points, int threads) {
    grid.validate(pr.delta, pr.mat.c());
    SweepResult sw;
    sw.omegas = grid.nodes();
    sw.weights = grid.weights();
    const int L = static_cast<int>(sw.omegas.size());
    sw.fields.resize(points.rows(), L);

    if (threads < 1)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, L);
    std::atomic<int> next(0);
    std::atomic<bool> failed(false);
    std::string error_msg;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            const int l = next.fetch_add(1);
            if (l >= L || failed.load()) return;
            try {
                const auto dens = solve_boundary_system(pr, sw.omegas[l]);
                sw.fields.col(l) =
                    scattered_field_frequency(pr, dens.psi, sw.omegas[l], points);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mutex);
                error_msg = e.what();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load())
        throw std::runtime_error("run_frequency_sweep: " + error_msg);
    return sw;
}

void polish_resonances(const ScatterProblem& pr, const NPSpectrum& sp,
                       resonance::ResonanceSet& rs) {
    const int N = pr.mesh.N;
    double amax = 0.0;
    for (const auto& m : rs.modes) amax = std::max(amax, std::abs(m.alpha));
    for (auto& mr : rs.modes) {
        // decoupled modes carry no weight in the expansion; skip them
        if (amax > 0.0 && std::abs(mr.alpha) <= 1e-10 * amax) continue;
        // probe with the mode's own eigendensity: h(omega) =
        // 1 / (v^H A(omega)^{-1} v) has a simple zero at the mode's pole,
        // and poles of other symmetry sectors (which can sit within a
        // linewidth) are projected out exactly
        Eigen::VectorXcd v(2 * N);
        v.head(N) = sp.eigendensities.col(mr.j).cast<cplx>();
        v.tail(N) = v.head(N);
        auto h = [&](cplx w) {
            const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(
                transmission_matrix(pr, w));
            return 1.0 / v.dot(lu.solve(v));
        };
        const cplx start = mr.corrected.plus;
        cplx w0 = start, w1 = start * cplx(1.0 + 1e-4, 0.0);
        cplx h0 = h(w0), h1 = h(w1);
        bool converged = false;
        for (int it = 0; it < 40; ++it) {
            cplx step = -h1 * (w1 - w0) / (h1 - h0);
            const double cap = 2e12;  // stay inside the basin of this pole
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            const cplx w2 = w1 + step;
            if (std::abs(w2 - w1) < 1e-8 * std::abs(w2)) {
                w1 = w2;
                converged = true;
                break;
            }
            w0 = w1;
            h0 = h1;
            w1 = w2;
            h1 = h(w2);
        }
        // keep the closed form if the iteration left the neighbourhood
        if (!converged || w1.imag() >= 0.0 || std::abs(w1 - start) > 1e14)
            continue;
        const cplx Om = w1;
        mr.corrected.plus = Om;
        mr.corrected.minus = -std::conj(Om);
        const cplx a = mr.corrected.a_plus;
        const cplx num = Om * Om + kI * Om / pr.mat.T -
                         pr.mat.omega_p * pr.mat.omega_p;
        const cplx partner = -kI / (a * pr.mat.T) - Om;
        mr.C_plus = pr.mat.eps0 * num / (a * (Om - partner));
        mr.C_minus = -std::conj(mr.C_plus);
    }
}

std::vector<double> uniform_time_grid(double t0, double t1, int n) {
    if (n < 2 || !(t1 > t0))
        throw std::domain_error("uniform_time_grid: bad window");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = t0 + (t1 - t0) * i / (n - 1);
    return v;
}

std::pair<double, double> arrival_times(const ScatterProblem& pr,
                                        const Eigen::Vector2d& X) {
    const double c = pr.mat.c();
    const double dist = pr.delta * X.norm();  // |x - z| for x = z + delta X
    const double dz = pr.d.dot(pr.z);
    const double t0m = (dist + dz - 2.0 * pr.delta) / c - pr.pulse.C1;
    const double t0p = (dist + dz + 2.0 * pr.delta) / c + pr.pulse.C1;
    return {t0m, t0p};
}

TimeTrace reference_solution(const ScatterProblem& pr, const SweepResult& sweep,
                             int point_index, const Eigen::Vector2d& X,
                             const std::vector<double>& times) {
    if (point_index < 0 || point_index >= sweep.fields.rows())
        throw std::domain_error("reference_solution: bad point index");
    if (sweep.omegas.size() != sweep.weights.size() ||
        static_cast<int>(sweep.omegas.size()) != sweep.fields.cols())
        throw std::domain_error("reference_solution: grid/field mismatch");
    TimeTrace tr;
    tr.X = X;
    tr.times = times;
    tr.values.assign(times.size(), cplx(0.0, 0.0));
    tr.provenance = "reference";
    std::tie(tr.t0_minus, tr.t0_plus) = arrival_times(pr, X);
    const int L = static_cast<int>(sweep.omegas.size());
    for (size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        cplx acc(0.0, 0.0);
        for (int l = 0; l < L; ++l) {
            const cplx u = sweep.fields(point_index, l);
            const cplx ph = std::exp(-kI * sweep.omegas[l] * t);
            // negative-frequency half by conjugate symmetry of real data
            acc += sweep.weights[l] * (ph * u + std::conj(ph * u));
        }
        tr.values[it] = acc;
    }
    return tr;
}

namespace {

// Amplitude of one (j, sign) modal term at the observation points:
// -2 pi i C f(Om) (i Om delta/c) e^{i Om d.z/c} (1/eps_c - 1/eps_m)
//   <d.nu, phi_j> S_B^{Om delta/c}[phi_j](X)  e^{-i Om t}.
// The -2 pi i carries the clockwise orientation of the synthesis contour
// closed around the lower-half-plane poles.
Eigen::VectorXcd mode_term_amplitude(const ScatterProblem& pr,
                                     const NPSpectrum& sp,
                                     const resonance::ModeResonance& mr,
                                     int sign, const Eigen::MatrixX2d& points,
                                     cplx* Omega_out) {
    if (sign < 0) {
        // mirror pole of the reflected continuation: the whole term is the
        // complex conjugate of the plus-family term
        cplx Om_plus;
        const Eigen::VectorXcd amp =
            mode_term_amplitude(pr, sp, mr, +1, points, &Om_plus);
        *Omega_out = -std::conj(Om_plus);
        return amp.conjugate();
    }
    const cplx Om = mr.corrected.plus;
    const cplx C = mr.C_plus;
    const double c = pr.mat.c();
    const cplx eps_c = resonance::permittivity(pr.mat, Om);
    const cplx fw = pr.pulse.spectrum(Om);
    const cplx Ffac = fw * (kI * Om * pr.delta / c) *
                      std::exp(kI * Om * pr.d.dot(pr.z) / c) *
                      (1.0 / eps_c - 1.0 / cplx(pr.mat.eps_m, 0.0)) / pr.delta *
                      spectral::mode_coefficient(sp, pr.d, mr.j);
    const Eigen::VectorXcd field = kernels::eval_single_layer(
        pr.mesh, sp.eigendensities.col(mr.j).cast<cplx>(), Om * pr.delta / c,
        points);
    *Omega_out = Om;
    return (-2.0 * std::numbers::pi * kI * C * Ffac * pr.delta) * field;
}

}  // namespace

TimeTrace modal_solution(const ScatterProblem& pr, const NPSpectrum& sp,
                         const ResonanceSet& rs, const Eigen::Vector2d& X,
                         const std::vector<double>& times, int J,
                         const std::vector<int>& modes) {
    std::vector<int> sel = modes;
    if (sel.empty())
        for (int j = 1; j <= J; ++j) sel.push_back(j);
    for (int j : sel)
        if (j < 1 || j > static_cast<int>(rs.modes.size()))
            throw std::domain_error("modal_solution: J exceeds spectrum size");

    TimeTrace tr;
    tr.X = X;
    tr.times = times;
    tr.values.assign(times.size(), cplx(0.0, 0.0));
    tr.provenance = "modal(" + std::to_string(sel.size()) + ")";
    std::tie(tr.t0_minus, tr.t0_plus) = arrival_times(pr, X);

    Eigen::MatrixX2d pts(1, 2);
    pts << X.x(), X.y();
    for (int j : sel) {
        const auto& mr = rs.modes[j - 1];
        for (int sign : {+1, -1}) {
            cplx Om;
            const cplx amp = mode_term_amplitude(pr, sp, mr, sign, pts, &Om)[0];
            for (size_t it = 0; it < times.size(); ++it)
                tr.values[it] += amp * std::exp(-kI * Om * times[it]);
        }
    }
    return tr;
}

std::vector<double> modal_mode_amplitudes(const ScatterProblem& pr,
                                          const NPSpectrum& sp,
                                          const ResonanceSet& rs,
                                          const Eigen::Vector2d& X,
                                          const std::vector<double>& times) {
    Eigen::MatrixX2d pts(1, 2);
    pts << X.x(), X.y();
    std::vector<double> amps;
    for (const auto& mr : rs.modes) {
        cplx Om_p, Om_m;
        const cplx amp_p = mode_term_amplitude(pr, sp, mr, +1, pts, &Om_p)[0];
        const cplx amp_m = mode_term_amplitude(pr, sp, mr, -1, pts, &Om_m)[0];
        double peak = 0.0;
        for (double t : times) {
            const cplx v = amp_p * std::exp(-kI * Om_p * t) +
                           amp_m * std::exp(-kI * Om_m * t);
            peak = std::max(peak, std::abs(v.real()));
        }
        amps.push_back(peak);
    }
    return amps;
}

Eigen::VectorXcd quasi_normal_mode(const ScatterProblem& pr,
                                   const NPSpectrum& sp, int j, cplx Omega,
                                   const Eigen::MatrixX2d& points, bool causal) {
    if (j < 1 || j >= sp.eigendensities.cols())
        throw std::domain_error("quasi_normal_mode: mode index out of range");
    const double c = pr.mat.c();
    Eigen::VectorXcd vals = kernels::eval_single_layer(
        pr.mesh, sp.eigendensities.col(j).cast<cplx>(), Omega * pr.delta / c,
        points);
    if (causal) {
        for (int p = 0; p < points.rows(); ++p) {
            const double dist = pr.delta * points.row(p).norm();  // |x - z|
            vals[p] *= std::exp(-kI * Omega * dist / c);
        }
    }
    return vals;
}

Misfit misfit(const TimeTrace& ref, const TimeTrace& approx, double t_a,
              double t_b) {
    if (ref.times != approx.times)
        throw std::domain_error("misfit: traces on different time grids");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < ref.times.size(); ++i) {
        if (ref.times[i] < t_a || ref.times[i] > t_b) continue;
        const double r = ref.values[i].real();
        const double a = approx.values[i].real();
        num += (r - a) * (r - a);
        den += r * r;
    }
    if (den == 0.0) throw std::domain_error("misfit: zero reference norm");
    Misfit m;
    m.relative_L2 = std::sqrt(num / den);
    m.reconstruction_pct = 100.0 * (1.0 - m.relative_L2);
    return m;
}

TimeTrace incident_trace(const Pulse& pulse, const Eigen::Vector2d& d,
                         const Eigen::Vector2d& x_physical, double c,
                         const std::vector<double>& times) {
    TimeTrace tr;
    tr.X = x_physical;
    tr.times = times;
    tr.provenance = "incident";
    const double shift = d.dot(x_physical) / c;
    tr.values.reserve(times.size());
    for (double t : times) tr.values.emplace_back(pulse.eval(t - shift), 0.0);
    return tr;
}

}  // namespace plasmode::timedomain
