#pragma once

#include "fatou/map.hpp"

namespace fatou {

struct RegimeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoEscapeRadius : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The scalar radii controlling one run:
//   k_esc   escape radius (forward invariant growth zone, sampled),
//   r_trap  trap-door inclusion radius  K1 |lambda|^{n/(n+d)},
//   r_inner/r_outer  the straight critical annulus  c_i |lambda|^{1/(n+d)}.
// For lambda in range they are ordered r_trap < r_inner < r_outer < k_esc.
struct RadiiModel {
    double k_esc = 0.0;
    double r_trap = 0.0;
    double r_inner = 0.0;
    double r_outer = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double k1 = 1.0;
};

// Smallest doubling-search radius K with |S(z)| >= 2|z| on 64 samples of
// each of the circles K, 2K, 4K.  Depends only weakly on lambda.
double estimate_K(const MapParams& p);

// Computes c1, c2, the radii, checks the ordering invariant and that the
// geometric-mean circle of the annulus maps strictly inside the inner circle
// and escapes within three more steps.  Throws RegimeViolation when |lambda|
// is too large for the asymptotic regime; this is the per-run substitute for
// the unknown smallness constant.
RadiiModel radii_model(const MapParams& p, double k1 = 1.0);

inline constexpr int NOT_ESCAPED = -1;

struct EscapeRecord {
    int escape_time = NOT_ESCAPED;
    std::vector<SpherePoint> orbit_prefix;
    double final_modulus = 0.0;
};

// Iterates z until |z_t| > k_esc or t == max_iter.  A pole hit counts as
// escape at the following step.
EscapeRecord classify_point(const MapParams& p, Complex z, const RadiiModel& radii,
                            int max_iter, int prefix_cap = 32);

// Lean path used by the rasterizer: escape time only, NOT_ESCAPED if capped.
int escape_time(const MapParams& p, Complex z, double k_esc, int max_iter);

}  // namespace fatou
