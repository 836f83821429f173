#include "plasmode/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <vector>

#include <json.hpp>

namespace plasmode::runner {

namespace fs = std::filesystem;
using nlohmann::json;
using config::ScenarioConfig;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string bytes_of(const double* p, size_t n) {
    return std::string(reinterpret_cast<const char*>(p), n * sizeof(double));
}

struct RunContext {
    const ScenarioConfig& cfg;
    fs::path out;
    std::vector<fs::path> written;
    json timings = json::object();

    explicit RunContext(const ScenarioConfig& c) : cfg(c), out(c.out_dir) {
        fs::create_directories(out);
    }

    std::ofstream open(const std::string& name) {
        const fs::path p = out / name;
        written.push_back(p);
        std::ofstream f(p);
        if (!f) throw std::runtime_error("cannot write " + p.string());
        return f;
    }

    void cleanup() {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

class StageTimer {
  public:
    StageTimer(RunContext& ctx, std::string name)
        : ctx_(ctx), name_(std::move(name)),
          t0_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const auto dt = std::chrono::steady_clock::now() - t0_;
        ctx_.timings[name_] =
            std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    }

  private:
    RunContext& ctx_;
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
};

void write_gnuplot(RunContext& ctx, const std::string& name,
                   const std::string& body) {
    auto f = ctx.open(name);
    f << "set datafile separator ','\n" << body;
}

struct Pipeline {
    geometry::BoundaryMesh mesh;
    spectral::NPSpectrum spectrum;
    timedomain::ScatterProblem problem;
};

Pipeline build_pipeline(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    Pipeline p;
    {
        StageTimer t(ctx, "mesh_ms");
        p.mesh = geometry::discretize(cfg.make_curve(), cfg.n_boundary);
    }
    {
        StageTimer t(ctx, "spectrum_ms");
        p.spectrum = spectral::np_decomposition(p.mesh, cfg.n_modes);
    }
    p.problem = timedomain::ScatterProblem::make(p.mesh, cfg.material, cfg.delta,
                                                 cfg.direction, cfg.center,
                                                 cfg.pulse);
    p.problem.mesh = p.mesh;  // ensure shared mesh
    return p;
}

void scenario_spectrum(RunContext& ctx, const Pipeline& p) {
    auto f = ctx.open("spectrum.csv");
    f << "j, lambda_j, alpha_j, abs_coefficient\n";
    for (int j = 0; j <= ctx.cfg.n_modes; ++j) {
        const double coef =
            std::abs(spectral::mode_coefficient(p.spectrum, ctx.cfg.direction, j));
        f << j << ", " << fmt(p.spectrum.eigenvalues[j]) << ", "
          << fmt(p.spectrum.alpha[j]) << ", " << fmt(coef) << "\n";
    }
    write_gnuplot(ctx, "spectrum.gp",
                  "set logscale y\nplot 'spectrum.csv' every ::2 using 1:4 "
                  "with linespoints title 'coefficient decay'\n");
}

resonance::ResonanceSet make_resonances(RunContext& ctx, const Pipeline& p) {
    StageTimer t(ctx, "resonances_ms");
    auto rs = resonance::build_resonance_set(ctx.cfg.material, p.spectrum,
                                             ctx.cfg.delta, ctx.cfg.n_modes,
                                             false);
    // optional polish against the exact discretized dispersion, which also
    // recovers the higher-order radiative damping the closed form misses
    if (ctx.cfg.polish_roots)
        timedomain::polish_resonances(p.problem, p.spectrum, rs);
    return rs;
}

void scenario_resonances(RunContext& ctx, const Pipeline& p) {
    const auto rs = make_resonances(ctx, p);
    auto f = ctx.open("resonances.csv");
    f << "j, lambda_j, alpha_j, re_omega_s_plus, im_omega_s_plus, "
         "re_omega_s_minus, im_omega_s_minus, re_omega_plus, im_omega_plus, "
         "re_omega_minus, im_omega_minus, re_C_plus, im_C_plus, re_C_minus, "
         "im_C_minus\n";
    for (const auto& m : rs.modes) {
        f << m.j << ", " << fmt(m.lambda) << ", " << fmt(m.alpha) << ", "
          << fmt(m.statics.plus.real()) << ", " << fmt(m.statics.plus.imag())
          << ", " << fmt(m.statics.minus.real()) << ", "
          << fmt(m.statics.minus.imag()) << ", " << fmt(m.corrected.plus.real())
          << ", " << fmt(m.corrected.plus.imag()) << ", "
          << fmt(m.corrected.minus.real()) << ", "
          << fmt(m.corrected.minus.imag()) << ", " << fmt(m.C_plus.real())
          << ", " << fmt(m.C_plus.imag()) << ", " << fmt(m.C_minus.real())
          << ", " << fmt(m.C_minus.imag()) << "\n";
    }
    auto g = ctx.open("resonance_radius.csv");
    g << "shape, R_rad_per_s, ratio\n";
    g << ctx.cfg.shape << ", " << fmt(rs.radius) << ", "
      << fmt(rs.validity_ratio) << "\n";
    write_gnuplot(ctx, "resonances.gp",
                  "plot 'resonances.csv' every ::2 using 8:9 title 'plus "
                  "family', 'resonances.csv' every ::2 using 10:11 title "
                  "'minus family'\n");
}

void scenario_table2(RunContext& ctx) {
    StageTimer t(ctx, "table2_ms");
    auto f = ctx.open("table2.csv");
    f << "shape, R_rad_per_s, ratio\n";
    for (const std::string shape : {"diamond", "ellipse", "flower"}) {
        const auto curve = geometry::make_shape(shape);
        const auto mesh = geometry::discretize(curve, ctx.cfg.n_boundary);
        const auto sp = spectral::np_decomposition(mesh, ctx.cfg.n_modes);
        const auto rs = resonance::build_resonance_set(
            ctx.cfg.material, sp, ctx.cfg.delta, ctx.cfg.n_modes, false);
        f << shape << ", " << fmt(rs.radius) << ", " << fmt(rs.validity_ratio)
          << "\n";
    }
}

// Frequency sweep with an on-disk cache keyed by everything the per-omega
// fields depend on (mesh, material, grid, pulse, geometry of the run).
timedomain::SweepResult cached_sweep(RunContext& ctx, const Pipeline& p) {
    const auto& cfg = ctx.cfg;
    std::string key;
    key += bytes_of(p.mesh.nodes.data(), p.mesh.nodes.size());
    const double matv[] = {cfg.material.eps0, cfg.material.mu0,
                           cfg.material.omega_p, cfg.material.T,
                           cfg.material.eps_m};
    key += bytes_of(matv, 5);
    const double gridv[] = {cfg.grid.eps, cfg.grid.rho, double(cfg.grid.L),
                            cfg.grid.high_order ? 1.0 : 0.0, cfg.pulse.C1,
                            cfg.delta, cfg.direction.x(), cfg.direction.y(),
                            cfg.center.x(), cfg.center.y()};
    key += bytes_of(gridv, 10);
    key += bytes_of(cfg.observation_points.data(), cfg.observation_points.size());
    const std::string h = fnv1a_hex(key);
    const fs::path bin = ctx.out / ("cache_sweep_" + h + ".bin");

    timedomain::SweepResult sw;
    const int P = static_cast<int>(cfg.observation_points.rows());
    if (fs::exists(bin)) {
        std::ifstream in(bin, std::ios::binary);
        std::int64_t np = 0, nl = 0;
        in.read(reinterpret_cast<char*>(&np), 8);
        in.read(reinterpret_cast<char*>(&nl), 8);
        if (in && np == P && nl > 0) {
            sw.omegas.resize(nl);
            sw.weights.resize(nl);
            sw.fields.resize(np, nl);
            in.read(reinterpret_cast<char*>(sw.omegas.data()), nl * 8);
            in.read(reinterpret_cast<char*>(sw.weights.data()), nl * 8);
            in.read(reinterpret_cast<char*>(sw.fields.data()), np * nl * 16);
            if (in) {
                ctx.timings["sweep_ms"] = 0;
                return sw;
            }
        }
    }
    {
        StageTimer t(ctx, "sweep_ms");
        sw = timedomain::run_frequency_sweep(p.problem, cfg.grid,
                                             cfg.observation_points, cfg.threads);
    }
    std::ofstream outb(bin, std::ios::binary);
    const std::int64_t np = P, nl = static_cast<std::int64_t>(sw.omegas.size());
    outb.write(reinterpret_cast<const char*>(&np), 8);
    outb.write(reinterpret_cast<const char*>(&nl), 8);
    outb.write(reinterpret_cast<const char*>(sw.omegas.data()), nl * 8);
    outb.write(reinterpret_cast<const char*>(sw.weights.data()), nl * 8);
    outb.write(reinterpret_cast<const char*>(sw.fields.data()), np * nl * 16);
    std::ofstream side(ctx.out / ("cache_sweep_" + h + ".json"));
    json sj;
    sj["mesh_hash"] = fnv1a_hex(bytes_of(p.mesh.nodes.data(), p.mesh.nodes.size()));
    sj["material_hash"] = fnv1a_hex(bytes_of(matv, 5));
    sj["grid_hash"] = fnv1a_hex(bytes_of(gridv, 10));
    sj["J"] = cfg.n_modes;
    side << sj.dump(2) << "\n";
    return sw;
}

void write_trace(RunContext& ctx, const std::string& name,
                 const timedomain::TimeTrace& tr) {
    auto f = ctx.open(name);
    f << "t_s, re_field, im_field, provenance\n";
    for (size_t i = 0; i < tr.times.size(); ++i)
        f << fmt(tr.times[i]) << ", " << fmt(tr.values[i].real()) << ", "
          << fmt(tr.values[i].imag()) << ", " << tr.provenance << "\n";
}

void scenario_timedomain(RunContext& ctx, const Pipeline& p) {
    const auto& cfg = ctx.cfg;
    const auto rs = make_resonances(ctx, p);
    const auto sw = cached_sweep(ctx, p);
    const auto times =
        timedomain::uniform_time_grid(cfg.time_start, cfg.time_end, cfg.time_samples);

    StageTimer t(ctx, "synthesis_ms");
    auto rep = ctx.open("misfit_report.csv");
    rep << "point_index, X1, X2, J, t0_minus_s, t0_plus_s, relative_L2, "
           "reconstruction_pct\n";
    for (int q = 0; q < cfg.observation_points.rows(); ++q) {
        const Eigen::Vector2d X = cfg.observation_points.row(q);
        const auto ref = timedomain::reference_solution(p.problem, sw, q, X, times);
        const auto mod =
            timedomain::modal_solution(p.problem, p.spectrum, rs, X, times,
                                       cfg.n_modes);
        const Eigen::Vector2d xphys = cfg.center + cfg.delta * X;
        const auto inc = timedomain::incident_trace(cfg.pulse, cfg.direction,
                                                    xphys, cfg.material.c(), times);
        const std::string tag = std::to_string(q);
        write_trace(ctx, "trace_reference_p" + tag + ".csv", ref);
        write_trace(ctx, "trace_modal_p" + tag + ".csv", mod);
        write_trace(ctx, "trace_incident_p" + tag + ".csv", inc);
        const auto m = timedomain::misfit(ref, mod, ref.t0_plus, cfg.time_end);
        rep << q << ", " << fmt(X.x()) << ", " << fmt(X.y()) << ", "
            << cfg.n_modes << ", " << fmt(ref.t0_minus) << ", "
            << fmt(ref.t0_plus) << ", " << fmt(m.relative_L2) << ", "
            << fmt(m.reconstruction_pct) << "\n";
        write_gnuplot(ctx, "trace_p" + tag + ".gp",
                      "plot 'trace_reference_p" + tag +
                          ".csv' every ::2 using 1:2 with lines title "
                          "'reference', 'trace_modal_p" +
                          tag +
                          ".csv' every ::2 using 1:2 with lines title 'modal'\n");
    }
}

void scenario_decay(RunContext& ctx, const Pipeline& p) {
    StageTimer t(ctx, "decay_ms");
    const auto& cfg = ctx.cfg;
    const int ndir = 16, ncirc = 64;
    const double far_radius = 100.0;
    Eigen::MatrixX2d circle(ncirc, 2);
    for (int i = 0; i < ncirc; ++i) {
        const double a = 2.0 * std::numbers::pi * i / ncirc;
        circle(i, 0) = far_radius * std::cos(a);
        circle(i, 1) = far_radius * std::sin(a);
    }
    const std::complex<double> k_p =
        cfg.material.omega_p * cfg.delta / cfg.material.c();
    auto f = ctx.open("decay.csv");
    f << "j, avg_abs_coefficient, avg_abs_mode_field\n";
    for (int j = 1; j <= cfg.n_modes; ++j) {
        double csum = 0.0;
        for (int a = 0; a < ndir; ++a) {
            const double ang = 2.0 * std::numbers::pi * a / ndir;
            csum += std::abs(spectral::mode_coefficient(
                p.spectrum, Eigen::Vector2d(std::cos(ang), std::sin(ang)), j));
        }
        const auto field = kernels::eval_single_layer(
            p.mesh, p.spectrum.eigendensities.col(j).cast<std::complex<double>>(),
            k_p, circle);
        f << j << ", " << fmt(csum / ndir) << ", "
          << fmt(field.cwiseAbs().mean()) << "\n";
    }
    write_gnuplot(ctx, "decay.gp",
                  "set logscale y\nplot 'decay.csv' every ::2 using 1:2 with "
                  "linespoints title 'coefficients', 'decay.csv' every ::2 "
                  "using 1:3 with linespoints title 'mode fields'\n");
}

void scenario_qnm_map(RunContext& ctx, const Pipeline& p) {
    StageTimer t(ctx, "qnm_map_ms");
    const auto& cfg = ctx.cfg;
    const auto rs = make_resonances(ctx, p);
    const std::complex<double> Om = rs.modes.front().corrected.plus;
    const double rmin = 1.5 * p.mesh.nodes.rowwise().norm().maxCoeff();
    const int nr = 40, na = 48;
    Eigen::MatrixX2d pts(nr * na, 2);
    for (int r = 0; r < nr; ++r) {
        const double rad = rmin + (100.0 - rmin) * r / (nr - 1);
        for (int a = 0; a < na; ++a) {
            const double ang = 2.0 * std::numbers::pi * a / na;
            pts(r * na + a, 0) = rad * std::cos(ang);
            pts(r * na + a, 1) = rad * std::sin(ang);
        }
    }
    const auto e = timedomain::quasi_normal_mode(p.problem, p.spectrum, 1, Om,
                                                 pts, false);
    const auto E = timedomain::quasi_normal_mode(p.problem, p.spectrum, 1, Om,
                                                 pts, true);
    auto f = ctx.open("qnm_map.csv");
    f << "X1, X2, re_e, im_e, abs_e, abs_E\n";
    for (int i = 0; i < pts.rows(); ++i)
        f << fmt(pts(i, 0)) << ", " << fmt(pts(i, 1)) << ", "
          << fmt(e[i].real()) << ", " << fmt(e[i].imag()) << ", "
          << fmt(std::abs(e[i])) << ", " << fmt(std::abs(E[i])) << "\n";
}

}  // namespace

int run(const ScenarioConfig& cfg) {
    RunContext ctx(cfg);
    try {
        if (cfg.scenario == "table2") {
            scenario_table2(ctx);
        } else {
            const Pipeline p = build_pipeline(ctx);
            if (cfg.scenario == "spectrum") {
                scenario_spectrum(ctx, p);
            } else if (cfg.scenario == "resonances") {
                scenario_resonances(ctx, p);
            } else if (cfg.scenario == "timedomain") {
                scenario_timedomain(ctx, p);
            } else if (cfg.scenario == "decay") {
                scenario_decay(ctx, p);
            } else if (cfg.scenario == "qnm_map") {
                scenario_qnm_map(ctx, p);
            } else if (cfg.scenario == "all") {
                scenario_spectrum(ctx, p);
                scenario_resonances(ctx, p);
                scenario_decay(ctx, p);
                scenario_timedomain(ctx, p);
            } else {
                throw std::invalid_argument("config: unknown scenario " +
                                            cfg.scenario);
            }
        }
        json manifest;
        manifest["config_hash"] = fnv1a_hex(cfg.canonical_dump());
        manifest["scenario"] = cfg.scenario;
        manifest["stage_timings"] = ctx.timings;
        auto mf = ctx.open("run_manifest.json");
        mf << manifest.dump(2) << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        ctx.cleanup();
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        ctx.cleanup();
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace plasmode::runner
