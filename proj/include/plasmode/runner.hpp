#pragma once

// Scenario orchestration for the CLI: builds the pipeline from a
// ScenarioConfig, writes CSV artifacts, caches frequency sweeps, and
// emits a run manifest with per-stage timings.

#include <string>

#include "plasmode/config.hpp"

namespace plasmode::runner {

// Runs one scenario; returns the process exit code (0 success,
// 2 configuration error, 3 numerical failure). Partial outputs are
// removed when a stage fails.
int run(const config::ScenarioConfig& cfg);

// FNV-1a hash of a byte string, used for cache keys and the manifest.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace plasmode::runner
