#pragma once

#include "fatou/pipeline.hpp"

namespace fatou {

struct NotFoundInRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonSurroundingCapture : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One scan sample along the lambda ray.
struct ScanPoint {
    double t = 0.0;
    int ring_index = -1;  // first iterate of nu_lambda inside the outer circle
    int escape = -1;      // escape time of nu_lambda (small = mid-trap landing)
    bool regime_ok = false;
};

struct SearchResult {
    Complex lambda_found{};
    int m = 0;
    ItineraryRecord verification;        // grid-certified: verification.k == m
    ConnectivityWitness requested;       // GUARANTEED under k = m
    bool measured_found = false;         // requested kappa seen on a grid
    std::vector<ScanPoint> scan;
    AnalysisResult analysis;             // full pipeline at lambda_found
};

// Ring index of one candidate lambda: the first iterate of nu_lambda whose
// modulus drops below r_outer.  Cheap (no raster); the capture depth is
// certified afterwards by the grid itinerary.
int scan_ring_index(const MapParams& p, double k1, int max_steps = 64);

// Scans t geometrically from t_hi down to t_lo along lambda = t e^{i angle},
// locates the band with ring index m, refines both band edges by bisection
// and certifies an interior lambda with the full grid pipeline.
SearchResult find_lambda_for_m(const RunConfig& base, int m, double ray_angle,
                               double t_hi, double t_lo);

// Chooses the minimal capture depth m making (i, j, l) guaranteed
// (m = ceil(l/j) + 1 for j > 0, m = 1 for j = l = 0), finds lambda, runs the
// full pipeline, and reports whether a component of the requested
// connectivity was measured.
SearchResult realize_connectivity(const RunConfig& base, int i, int j, int l,
                                  double ray_angle, double t_hi, double t_lo);

}  // namespace fatou
