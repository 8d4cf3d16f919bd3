#pragma once

#include "fatou/config.hpp"
#include "fatou/connectivity.hpp"

namespace fatou {

// Everything one structural run produces.  The ring analysis exists only
// for perturbed maps whose regime validation succeeded.
struct AnalysisResult {
    RunConfig cfg;
    RadiiModel radii;
    CriticalSet crit;
    bool perturbed = false;
    bool has_ring = false;
    bool has_disk = false;
    bool has_inner = false;
    PlaneAnalysis global;
    PlaneAnalysis ring;
    PlaneAnalysis disk;   // zoom around w_lambda; its component is trap-door sized
    PlaneAnalysis inner;  // zoom inside the annulus hole, where U_d preimages live
    ItineraryRecord itinerary;
    std::vector<ConnectivityWitness> witnesses;
    std::vector<CheckResult> checks;
    int global_cap = 0;
    int ring_cap = 0;
    int disk_cap = 0;
    int inner_cap = 0;

    bool all_pass() const;
    const CheckResult* find_check(const std::string& name) const;
};

// Ring window centered at the origin, sized from the outer ring radius.
Window ring_window(const RadiiModel& radii, double halfwidth_factor);

// Zoom window around w_lambda, where the degree-one preimage of the trap
// door lives (it is far too small for the global window).
Window disk_window(const RadiiModel& radii, const CriticalSet& crit);

// Zoom window just inside the annulus hole: everything within it except the
// frame collar lies in the region the annulus bounds.
Window inner_window(const RadiiModel& radii);

// Baseline escape-time caps for the structural grids.  A saturated band at
// the cap is what separates adjacent Fatou components on the raster;
// run_analysis refines these baselines by relabeling the escape grid at
// increasing caps until the target structure separates.
int ring_cap_for(const MapParams& p, const RadiiModel& radii,
                 const CriticalSet& crit, int extra_depth);
int global_cap_for(const MapParams& p, const RadiiModel& radii,
                   const CriticalSet& crit, int extra_depth);

// Full structural pipeline: radii gate, roots, both grids, itinerary,
// witness table, invariant checks.
AnalysisResult run_analysis(const RunConfig& cfg);

}  // namespace fatou
