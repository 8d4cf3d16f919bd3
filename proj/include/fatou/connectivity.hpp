#pragma once

#include "fatou/raster.hpp"

namespace fatou {

struct OffGrid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RegionTag : uint8_t { U_1, U_D, U_N, U_NP1, BDD_A, OTHER };
const char* region_name(RegionTag t);

// Itinerary of the free critical orbit: k is the minimal number of
// iterations mapping nu_lambda into the region bounded by the critical
// annulus (the annulus included).
struct ItineraryRecord {
    enum class Terminal : uint8_t { LANDS_IN_A, LANDS_IN_UD, NOT_CAPTURED };
    int k = 0;
    std::vector<RegionTag> steps;  // tags of iterates 1..k
    bool u_nu_surrounds = false;
    Terminal terminal = Terminal::NOT_CAPTURED;
};

// Membership of a point in Bdd(annulus component) on a grid: flood the
// complement of the component from the point's pixel; inside iff bounded.
// Points outside the window are outside.  Throws OffGrid when the pixel is
// needed but cannot be classified.
bool inside_bdd(const LabelGrid& g, int component_id, Complex z);

// Region tag of one point with respect to the ring/global structure.
RegionTag classify_region(const PlaneAnalysis& ring, const PlaneAnalysis& global,
                          Complex z);

// Walks the orbit of nu_lambda over the analyzed grids.
ItineraryRecord critical_itinerary(const MapParams& p, const RadiiModel& radii,
                                   const CriticalSet& crit,
                                   const PlaneAnalysis& ring,
                                   const PlaneAnalysis& global, int max_steps = 64);

enum class WitnessStatus : uint8_t { GUARANTEED, POSSIBLE, EXCLUDED };
const char* status_name(WitnessStatus s);

// One (i, j, l) exponent triple and kappa = (n+1)^i d^j n^l + 2.
// GUARANTEED when l <= j(k-1), POSSIBLE when l <= jk, else EXCLUDED.
struct ConnectivityWitness {
    int i = 0, j = 0, l = 0;
    unsigned long long kappa = 3;
    bool overflow = false;  // kappa would exceed 2^63 - 1
    WitnessStatus status = WitnessStatus::EXCLUDED;
};

std::vector<ConnectivityWitness> enumerate_attainable(const MapParams& p, int k,
                                                      int i_max, int j_max,
                                                      int l_max);

// One backward Riemann-Hurwitz step through a region of the given mapping
// degree: deg * (kappa - 2) + 2.
unsigned long long propagate_rh(unsigned long long kappa_image, RegionTag step,
                                const MapParams& p);

// Exact integer factorization kappa - 2 = (n+1)^i d^j n^l with l <= jk.
// Any admissible triple counts; returns false when none exists.
bool admissible_kappa(const MapParams& p, int k, unsigned long long kappa,
                      ConnectivityWitness* found = nullptr);

struct CheckResult {
    std::string name;
    bool pass = true;
    bool skipped = false;
    std::string details;
};

// A record is trusted for the hard digraph checks when it is large enough,
// does not touch the frame, and its core sits at least two escape-time
// levels below the grid cap (components at the cap layer lose holes to the
// saturated collar and merge through pinholes; they are resolution
// artifacts, not measurements).
bool trusted_record(const ComponentRecord& r, const LabelGrid& g, int64_t min_px);

// Report-only comparison of measured component connectivities against the
// witness table: every measured kappa >= 3 must admit a witness, and every
// GUARANTEED witness of depth i+j+l <= require_depth must be measured.
CheckResult verify_measured(const MapParams& p, int k,
                            const std::vector<const PlaneAnalysis*>& grids,
                            int64_t min_px, int require_depth);

// Digraph and orbit invariants; each returns a named pass/fail record.
CheckResult check_rh_admissibility(const MapParams& p, const CriticalSet& crit,
                                   const PlaneAnalysis& a, int64_t min_px);
CheckResult check_nonsurrounding_rigidity(const PlaneAnalysis& a, int64_t min_px);
CheckResult check_no_promotion(const PlaneAnalysis& a, int64_t min_px);
CheckResult check_forward_consistency(const MapParams& p, const RadiiModel& radii,
                                      const PlaneAnalysis& a);
CheckResult check_escape_monotone(const MapParams& p, const RadiiModel& radii,
                                  int samples, int max_iter);
CheckResult check_preimage_census(const PlaneAnalysis& ring,
                                  const PlaneAnalysis& global, int64_t min_px);
CheckResult check_itinerary_bound(const PlaneAnalysis& ring,
                                  const PlaneAnalysis& global, int k,
                                  int64_t min_px);

}  // namespace fatou
