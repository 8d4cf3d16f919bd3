#pragma once

#include <string>

#include "fatou/raster.hpp"

namespace fatou {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One reproducible run.  Loaded from a flat key = value file; every field
// has a config key of the same name (complex values split into _re/_im,
// lists comma-separated).  Unknown keys are rejected.
struct RunConfig {
    MapParams params;
    Window window{Complex{0.0, 0.0}, 2.2, 2.2};
    int resolution = 1024;
    int max_iter = 500;  // render cap; structural analysis derives its own
    double k1 = 1.0;
    int threads = 0;  // 0 = hardware concurrency
    std::string out_dir = ".";
    bool ring_window = true;  // also analyze the zoomed ring window
    double ring_halfwidth_factor = 5.0;
    int ring_resolution = 0;  // 0 = same as resolution
    int64_t min_component_px = 10000;  // hard-check floor
    int64_t record_floor_px = 64;
    int require_depth = 1;   // guaranteed witnesses this shallow must be seen
    int analysis_depth = 2;  // extra escape-time headroom for structure grids
    int witness_imax = 4, witness_jmax = 3, witness_lmax = 8;
    int escape_samples = 100000;

    void validate() const;  // throws ConfigError / InvalidParams
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

}  // namespace fatou
