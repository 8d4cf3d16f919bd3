#pragma once

#include <cstdint>
#include <string>

#include "fatou/orbits.hpp"
#include "fatou/roots.hpp"

namespace fatou {

struct RoleConflict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Window {
    Complex center{};
    double width = 2.0;
    double height = 2.0;
};

inline constexpr int32_t SATURATED = -1;  // escape grid value
inline constexpr int32_t NO_COMPONENT = -1;
inline constexpr int FT_EXTERIOR = -2;    // forward target left the window
inline constexpr int FT_UNRESOLVED = -3;  // forward target on a saturated pixel

// Rasterized dynamical plane: per-pixel escape time and component label.
// Components are 4-connected regions of non-saturated pixels; saturated
// pixels separate Fatou components and carry no label.
struct LabelGrid {
    Window window;
    int px = 0, py = 0;
    std::vector<int32_t> escape;  // SATURATED or escape time
    std::vector<int32_t> comp;    // NO_COMPONENT or component id
    int n_components = 0;
    int max_iter = 0;
    double k_esc = 0.0;

    size_t idx(int ix, int iy) const { return size_t(iy) * px + ix; }
    Complex pixel_center(int ix, int iy) const;
    // pixel containing z, or -1 when z is outside the window
    long pixel_of(Complex z) const;
    bool contains(Complex z) const;
};

// Escape-time raster over row blocks (0 threads = hardware count), then
// 4-connected labeling of the non-saturated pixels.  Output is identical
// for any thread count.
LabelGrid rasterize(const MapParams& p, const Window& w, int px, int py,
                    const RadiiModel& radii, int max_iter, int threads = 0);

// Relabel the components of an existing escape grid (4-connected union-find).
void relabel_components(LabelGrid& g);

// Copy of the grid with every escape time above `cap` saturated, relabeled.
// Lets one expensive raster serve several separation depths.
LabelGrid relabeled_with_cap(const LabelGrid& g, int cap);

struct ConnectivityMeasure {
    int connectivity = 1;      // 1 + number of bounded complement regions
    bool touches_frame = false;  // connectivity is then only a lower bound
};

// Flood-fill measurement: 8-connected complement regions of the component
// that do not reach the frame are its holes.
ConnectivityMeasure measure_connectivity(const LabelGrid& g, int id);

// Same value for every component at once via 2x2 quad counts (Euler
// characteristic, 4-connected foreground / 8-connected background).
std::vector<int> measure_all_connectivity(const LabelGrid& g);

struct SurroundsResult {
    bool surrounds = false;
    bool origin_inside_component = false;  // reported distinctly
};

// True iff the 8-connected complement region of component `id` containing
// the origin pixel is bounded.  Requires the window to contain the origin.
SurroundsResult surrounds_origin(const LabelGrid& g, int id);

enum class Role : uint8_t { GENERIC, A_INF, TRAP_DOOR, ANNULUS_A, DISK_D, U_NU };
const char* role_name(Role r);

struct ComponentRecord {
    int id = NO_COMPONENT;
    int64_t pixel_count = 0;
    int connectivity = 1;
    bool touches_frame = false;
    bool surrounds_origin = false;
    bool surrounds_known = false;
    Role role = Role::GENERIC;
    int forward_target = FT_UNRESOLVED;
    Complex representative{};
    int rep_escape_time = NOT_ESCAPED;
};

// One analyzed window: the grid plus a record per component above the floor.
struct PlaneAnalysis {
    LabelGrid grid;
    std::vector<ComponentRecord> records;  // indexed by position, not id
    std::vector<std::string> warnings;
    bool global_scale = true;  // ring windows never meet the basin of infinity

    const ComponentRecord* find_id(int id) const;
    const ComponentRecord* find_role(Role r) const;
};

// Measures every component with at least record_floor_px pixels:
// connectivity, representative (deepest interior pixel), forward target,
// surrounds flag, and the structural role tags.  Records are ordered by id.
PlaneAnalysis analyze_plane(const MapParams& p, const Window& w, int px, int py,
                            const RadiiModel& radii, const CriticalSet& crit,
                            int max_iter, int threads = 0,
                            int64_t record_floor_px = 64,
                            bool global_scale = true);

// Same measurement pass over a grid that is already rasterized and labeled.
PlaneAnalysis analyze_grid(LabelGrid grid, const MapParams& p,
                           const RadiiModel& radii, const CriticalSet& crit,
                           int64_t record_floor_px = 64,
                           bool global_scale = true);

// Role tagging on an existing analysis (already called by analyze_plane).
// Colliding tags signal under-resolution and are recorded as warnings.
void tag_roles(PlaneAnalysis& a, const MapParams& p, const RadiiModel& radii,
               const CriticalSet& crit);

}  // namespace fatou
