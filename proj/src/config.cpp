#include "plasmode/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace plasmode::config {

namespace {

using nlohmann::json;

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] != b[j - 1])});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

void check_keys(const json& obj, const std::set<std::string>& known,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (known.count(it.key())) continue;
        std::string best;
        int bestd = 1 << 30;
        for (const auto& k : known) {
            const int d = edit_distance(it.key(), k);
            if (d < bestd) {
                bestd = d;
                best = k;
            }
        }
        fail("unknown key \"" + where + it.key() + "\" (did you mean \"" +
             best + "\"?)");
    }
}

double get_num(const json& obj, const std::string& key, double defv,
               const std::string& where) {
    if (!obj.contains(key)) return defv;
    if (!obj[key].is_number()) fail("\"" + where + key + "\" must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& key, int defv,
            const std::string& where) {
    if (!obj.contains(key)) return defv;
    if (!obj[key].is_number_integer())
        fail("\"" + where + key + "\" must be an integer");
    return obj[key].get<int>();
}

Eigen::Vector2d get_vec2(const json& obj, const std::string& key,
                         const Eigen::Vector2d& defv, const std::string& where) {
    if (!obj.contains(key)) return defv;
    const auto& v = obj[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail("\"" + where + key + "\" must be [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

geometry::ParametricCurve ScenarioConfig::make_curve() const {
    if (shape == "custom") return geometry::load_custom_curve(custom_curve_path);
    if (shape == "disk") {
        geometry::ShapeParams p = shape_params;
        p.a = p.b = 1.0;
        auto c = geometry::make_shape("ellipse", p);
        c.name = "disk";
        return c;
    }
    return geometry::make_shape(shape, shape_params);
}

ScenarioConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");

    check_keys(j, {"scenario", "shape", "shape_params", "n_boundary", "n_modes",
                   "material", "delta_m", "direction", "center_m",
                   "pulse_support_s", "grid", "observation_points_B",
                   "time_window_s", "time_samples", "out_dir", "threads"},
               "");

    ScenarioConfig c;
    if (j.contains("scenario")) c.scenario = j["scenario"].get<std::string>();
    const std::set<std::string> scenarios = {"spectrum",  "resonances", "timedomain",
                                             "decay",     "qnm_map",    "table2",
                                             "all"};
    if (!scenarios.count(c.scenario)) fail("unknown scenario \"" + c.scenario + "\"");

    if (j.contains("shape")) c.shape = j["shape"].get<std::string>();
    const std::set<std::string> shapes = {"ellipse", "diamond", "flower", "disk",
                                          "custom"};
    if (!shapes.count(c.shape)) fail("unknown shape \"" + c.shape + "\"");

    if (j.contains("shape_params")) {
        const auto& sp = j["shape_params"];
        check_keys(sp, {"a", "b", "diamond_c", "flower_base", "flower_amp",
                        "flower_petals", "custom_path"},
                   "shape_params.");
        c.shape_params.a = get_num(sp, "a", c.shape_params.a, "shape_params.");
        c.shape_params.b = get_num(sp, "b", c.shape_params.b, "shape_params.");
        c.shape_params.diamond_c =
            get_num(sp, "diamond_c", c.shape_params.diamond_c, "shape_params.");
        c.shape_params.flower_base =
            get_num(sp, "flower_base", c.shape_params.flower_base, "shape_params.");
        c.shape_params.flower_amp =
            get_num(sp, "flower_amp", c.shape_params.flower_amp, "shape_params.");
        c.shape_params.flower_petals = get_int(sp, "flower_petals",
                                               c.shape_params.flower_petals,
                                               "shape_params.");
        if (sp.contains("custom_path"))
            c.custom_curve_path = sp["custom_path"].get<std::string>();
    }
    if (c.shape == "custom" && c.custom_curve_path.empty())
        fail("shape \"custom\" requires shape_params.custom_path");

    c.n_boundary = get_int(j, "n_boundary", c.n_boundary, "");
    if (c.n_boundary < 16 || c.n_boundary % 2 != 0)
        fail("n_boundary must be even and >= 16");
    c.n_modes = get_int(j, "n_modes", c.n_modes, "");
    if (c.n_modes < 1 || c.n_modes > c.n_boundary / 4)
        fail("n_modes must be in [1, n_boundary/4]");

    if (j.contains("material")) {
        const auto& m = j["material"];
        check_keys(m, {"omega_p_rad_per_s", "collision_time_s", "eps0_F_per_m",
                       "mu0_H_per_m", "eps_m_F_per_m"},
                   "material.");
        c.material.omega_p =
            get_num(m, "omega_p_rad_per_s", c.material.omega_p, "material.");
        c.material.T = get_num(m, "collision_time_s", c.material.T, "material.");
        c.material.eps0 = get_num(m, "eps0_F_per_m", c.material.eps0, "material.");
        c.material.mu0 = get_num(m, "mu0_H_per_m", c.material.mu0, "material.");
        c.material.eps_m = m.contains("eps_m_F_per_m")
                               ? get_num(m, "eps_m_F_per_m", 0.0, "material.")
                               : c.material.eps0;
    }
    try {
        c.material.validate();
    } catch (const std::exception& e) {
        fail(e.what());
    }

    c.delta = get_num(j, "delta_m", c.delta, "");
    if (!(c.delta > 0)) fail("delta_m must be positive");
    c.direction = get_vec2(j, "direction", c.direction, "");
    if (c.direction.norm() == 0.0) fail("direction must be nonzero");
    c.direction.normalize();
    c.center = get_vec2(j, "center_m", c.center, "");
    c.pulse.C1 = get_num(j, "pulse_support_s", c.pulse.C1, "");
    if (!(c.pulse.C1 > 0)) fail("pulse_support_s must be positive");

    c.grid.eps = c.material.omega_p / 4.0;
    c.grid.rho = c.material.omega_p;
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        check_keys(g, {"eps_rad_per_s", "rho_rad_per_s", "samples_per_half_band"},
                   "grid.");
        c.grid.eps = get_num(g, "eps_rad_per_s", c.grid.eps, "grid.");
        c.grid.rho = get_num(g, "rho_rad_per_s", c.grid.rho, "grid.");
        c.grid.L = get_int(g, "samples_per_half_band", c.grid.L, "grid.");
    }
    try {
        c.grid.validate(c.delta, c.material.c());
    } catch (const std::exception& e) {
        fail(e.what());
    }

    if (j.contains("observation_points_B")) {
        const auto& pts = j["observation_points_B"];
        if (!pts.is_array() || pts.empty()) fail("observation_points_B must be a list");
        c.observation_points.resize(pts.size(), 2);
        for (size_t p = 0; p < pts.size(); ++p) {
            if (!pts[p].is_array() || pts[p].size() != 2)
                fail("observation_points_B entries must be [x, y]");
            c.observation_points(p, 0) = pts[p][0].get<double>();
            c.observation_points(p, 1) = pts[p][1].get<double>();
        }
    } else {
        // Fig. 6 defaults: A(15, 0 deg), B(15, 45 deg), C(15, 90 deg), D(300, 45 deg)
        const double s = 1.0 / std::sqrt(2.0);
        c.observation_points.resize(4, 2);
        c.observation_points << 15.0, 0.0, 15.0 * s, 15.0 * s, 0.0, 15.0,
            300.0 * s, 300.0 * s;
    }

    if (j.contains("time_window_s")) {
        const auto& w = j["time_window_s"];
        if (!w.is_array() || w.size() != 2) fail("time_window_s must be [t0, t1]");
        c.time_start = w[0].get<double>();
        c.time_end = w[1].get<double>();
        if (!(c.time_end > c.time_start)) fail("time_window_s must increase");
    }
    c.time_samples = get_int(j, "time_samples", c.time_samples, "");
    if (c.time_samples < 2) fail("time_samples must be >= 2");

    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    c.threads = get_int(j, "threads", c.threads, "");
    if (c.threads < 0) fail("threads must be >= 0");
    return c;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string ScenarioConfig::canonical_dump() const {
    json j;
    j["scenario"] = scenario;
    j["shape"] = shape;
    j["shape_params"] = {{"a", shape_params.a},
                         {"b", shape_params.b},
                         {"diamond_c", shape_params.diamond_c},
                         {"flower_base", shape_params.flower_base},
                         {"flower_amp", shape_params.flower_amp},
                         {"flower_petals", shape_params.flower_petals},
                         {"custom_path", custom_curve_path}};
    j["n_boundary"] = n_boundary;
    j["n_modes"] = n_modes;
    j["material"] = {{"omega_p_rad_per_s", material.omega_p},
                     {"collision_time_s", material.T},
                     {"eps0_F_per_m", material.eps0},
                     {"mu0_H_per_m", material.mu0},
                     {"eps_m_F_per_m", material.eps_m}};
    j["delta_m"] = delta;
    j["direction"] = {direction.x(), direction.y()};
    j["center_m"] = {center.x(), center.y()};
    j["pulse_support_s"] = pulse.C1;
    j["grid"] = {{"eps_rad_per_s", grid.eps},
                 {"rho_rad_per_s", grid.rho},
                 {"samples_per_half_band", grid.L},
                 {"high_order", grid.high_order}};
    std::vector<std::vector<double>> pts;
    for (int p = 0; p < observation_points.rows(); ++p)
        pts.push_back({observation_points(p, 0), observation_points(p, 1)});
    j["observation_points_B"] = pts;
    j["time_window_s"] = {time_start, time_end};
    j["time_samples"] = time_samples;
    j["polish_roots"] = polish_roots;
    return j.dump();
}

}  // namespace plasmode::config
