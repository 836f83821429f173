#pragma once

// JSON scenario configuration: strict schema, Table-1 physical defaults,
// explicit unit suffixes in key names.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "plasmode/geometry.hpp"
#include "plasmode/resonance.hpp"
#include "plasmode/timedomain.hpp"

namespace plasmode::config {

struct ScenarioConfig {
    std::string scenario = "spectrum";  // spectrum|resonances|timedomain|decay|qnm_map|table2|all
    std::string shape = "ellipse";      // ellipse|diamond|flower|disk|custom
    geometry::ShapeParams shape_params;
    std::string custom_curve_path;

    int n_boundary = 256;
    int n_modes = 30;

    resonance::DrudeMaterial material;
    double delta = 1e-8;                       // m
    Eigen::Vector2d direction{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    Eigen::Vector2d center{0.0, 0.0};          // m
    timedomain::Pulse pulse;
    timedomain::FrequencyGrid grid;

    Eigen::MatrixX2d observation_points;       // B-coordinates
    double time_start = 0.0, time_end = 60e-15;
    int time_samples = 2048;

    std::string out_dir = "out";
    int threads = 0;                            // 0 = hardware concurrency
    bool polish_roots = false;
    bool high_order_ift = false;

    geometry::ParametricCurve make_curve() const;
    std::string canonical_dump() const;         // for hashing / manifests
};

// Throws std::invalid_argument with a key/line diagnostic on schema
// violations; unknown keys are rejected with a nearest-key suggestion.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& json_text);

}  // namespace plasmode::config
