// plasmode: plasmonic quasi-normal-mode solver front end.
//   plasmode run <config.json> [--out DIR] [--threads K] [--polish-roots]
//                [--high-order-ift]

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plasmode/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"plasmode: time-domain modal approximation for 2D plasmonic resonators"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = -1;
    bool polish = false, high_order = false;
    auto* runcmd = app.add_subcommand("run", "run a scenario config");
    runcmd->add_option("config", config_path, "JSON scenario config")->required();
    runcmd->add_option("--out", out_dir, "output directory override");
    runcmd->add_option("--threads", threads, "worker threads for the sweep");
    runcmd->add_flag("--polish-roots", polish,
                     "Newton-polish resonances on the full dispersion relation");
    runcmd->add_flag("--high-order-ift", high_order,
                     "composite-Simpson synthesis instead of the plain Riemann sum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    plasmode::config::ScenarioConfig cfg;
    try {
        cfg = plasmode::config::parse_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads >= 0) {
        cfg.threads = threads;
    } else if (const char* env = std::getenv("PLASMODE_THREADS")) {
        cfg.threads = std::max(0, std::atoi(env));
    }
    cfg.polish_roots = polish;
    cfg.high_order_ift = high_order;
    cfg.grid.high_order = high_order;

    return plasmode::runner::run(cfg);
}
