#include "fatou/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fatou {

bool AnalysisResult::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass && !c.skipped) return false;
    return true;
}

const CheckResult* AnalysisResult::find_check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

Window ring_window(const RadiiModel& radii, double halfwidth_factor) {
    double hw = halfwidth_factor * radii.r_outer;
    return Window{Complex{0.0, 0.0}, 2.0 * hw, 2.0 * hw};
}

Window disk_window(const RadiiModel& radii, const CriticalSet& crit) {
    double hw = 2.0 * radii.r_inner;
    return Window{crit.w_lambda, 2.0 * hw, 2.0 * hw};
}

Window inner_window(const RadiiModel& radii) {
    double hw = 1.25 * radii.r_inner;
    return Window{Complex{0.0, 0.0}, 2.0 * hw, 2.0 * hw};
}

namespace {

int orbit_escape(const MapParams& p, Complex z, double k_esc) {
    return escape_time(p, z, k_esc, 4096);
}

}  // namespace

int ring_cap_for(const MapParams& p, const RadiiModel& radii,
                 const CriticalSet& crit, int extra_depth) {
    // In range the ring structure has fixed core times: the ring zeros map
    // 0 -> infinity in exactly two steps and the critical annulus funnels
    // out through the trap door in three.  Orbit maxima are useless here:
    // boundary-adjacent landings take arbitrarily long.
    (void)p;
    (void)radii;
    (void)crit;
    return 3 + extra_depth;
}

int global_cap_for(const MapParams& p, const RadiiModel& radii,
                   const CriticalSet& crit, int extra_depth) {
    int t = orbit_escape(p, crit.nu_lambda, radii.k_esc);
    if (t == NOT_ESCAPED) t = 8;  // free critical orbit captured elsewhere
    return t + extra_depth;
}

namespace {

// A ring labeling qualifies when the component carrying every ring zero also
// carries every ring critical point, surrounds the origin, stays off the
// frame, and is separate from the component over the trap-door core.
bool ring_grid_qualifies(const LabelGrid& g, const RadiiModel& radii,
                         const CriticalSet& crit) {
    if (crit.ring_zeros.empty()) return false;
    int band = NO_COMPONENT;
    for (const auto& z : crit.ring_zeros) {
        long i = g.pixel_of(z);
        if (i < 0 || g.comp[i] == NO_COMPONENT) return false;
        if (band == NO_COMPONENT) band = g.comp[i];
        else if (band != g.comp[i]) return false;
    }
    for (const auto& c : crit.free_ring) {
        long i = g.pixel_of(c);
        if (i < 0 || g.comp[i] != band) return false;
    }
    for (int ix = 0; ix < g.px; ++ix)
        if (g.comp[g.idx(ix, 0)] == band || g.comp[g.idx(ix, g.py - 1)] == band)
            return false;
    for (int iy = 0; iy < g.py; ++iy)
        if (g.comp[g.idx(0, iy)] == band || g.comp[g.idx(g.px - 1, iy)] == band)
            return false;
    long ti = g.pixel_of(Complex{0.5 * radii.r_trap, 0.0});
    if (ti < 0 || g.comp[ti] == NO_COMPONENT || g.comp[ti] == band) return false;
    // the trap-door component is confined to the disk the annulus bounds
    int trap = g.comp[ti];
    for (int iy = 0; iy < g.py; ++iy)
        for (int ix = 0; ix < g.px; ++ix)
            if (g.comp[g.idx(ix, iy)] == trap &&
                std::abs(g.pixel_center(ix, iy)) > radii.r_inner)
                return false;
    return surrounds_origin(g, band).surrounds;
}

// A global labeling qualifies when the free critical point sits on a labeled
// component separated from the frame.
bool global_grid_qualifies(const LabelGrid& g, const CriticalSet& crit) {
    long ni = g.pixel_of(crit.nu_lambda);
    if (ni < 0 || g.comp[ni] == NO_COMPONENT) return false;
    int id = g.comp[ni];
    for (int ix = 0; ix < g.px; ++ix)
        if (g.comp[g.idx(ix, 0)] == id || g.comp[g.idx(ix, g.py - 1)] == id)
            return false;
    for (int iy = 0; iy < g.py; ++iy)
        if (g.comp[g.idx(0, iy)] == id || g.comp[g.idx(g.px - 1, iy)] == id)
            return false;
    return true;
}

bool disk_grid_qualifies(const LabelGrid& g, const CriticalSet& crit) {
    long wi = g.pixel_of(crit.w_lambda);
    if (wi < 0 || g.comp[wi] == NO_COMPONENT) return false;
    int id = g.comp[wi];
    for (int ix = 0; ix < g.px; ++ix)
        if (g.comp[g.idx(ix, 0)] == id || g.comp[g.idx(ix, g.py - 1)] == id)
            return false;
    for (int iy = 0; iy < g.py; ++iy)
        if (g.comp[g.idx(0, iy)] == id || g.comp[g.idx(g.px - 1, iy)] == id)
            return false;
    return true;
}

// Window inside the annulus hole: the trap-door component must be labeled,
// stay off the frame, and keep within the inner circle.
bool inner_grid_qualifies(const LabelGrid& g, const RadiiModel& radii) {
    long ti = g.pixel_of(Complex{0.5 * radii.r_trap, 0.0});
    if (ti < 0 || g.comp[ti] == NO_COMPONENT) return false;
    int trap = g.comp[ti];
    for (int ix = 0; ix < g.px; ++ix)
        if (g.comp[g.idx(ix, 0)] == trap || g.comp[g.idx(ix, g.py - 1)] == trap)
            return false;
    for (int iy = 0; iy < g.py; ++iy)
        if (g.comp[g.idx(0, iy)] == trap || g.comp[g.idx(g.px - 1, iy)] == trap)
            return false;
    for (int iy = 0; iy < g.py; ++iy)
        for (int ix = 0; ix < g.px; ++ix)
            if (g.comp[g.idx(ix, iy)] == trap &&
                std::abs(g.pixel_center(ix, iy)) > radii.r_inner)
                return false;
    return true;
}

// Smallest qualifying cap, extended upward by at most `extra` levels while
// the qualification still holds.  -1 when nothing in [lo, hi] qualifies.
template <typename Q>
int select_cap(const LabelGrid& full, int lo, int hi, int extra, Q qualify) {
    int first = -1;
    for (int c = lo; c <= hi && first < 0; ++c)
        if (qualify(relabeled_with_cap(full, c))) first = c;
    if (first < 0) return -1;
    int best = first;
    for (int c = first + 1; c <= std::min(hi, first + extra); ++c)
        if (qualify(relabeled_with_cap(full, c))) best = c;
    return best;
}

void append_structural_checks(AnalysisResult& res) {
    const MapParams& p = res.cfg.params;
    auto& checks = res.checks;

    // ring containment of roots and zeros
    if (res.perturbed) {
        CheckResult c{"critical-ring-containment", true, false, ""};
        int outside = 0;
        auto within = [&](Complex z) {
            double m = std::abs(z);
            return res.radii.r_inner < m && m < res.radii.r_outer;
        };
        for (const auto& z : res.crit.free_ring)
            if (!within(z)) ++outside;
        for (const auto& z : res.crit.ring_zeros)
            if (!within(z)) ++outside;
        if (outside) {
            c.pass = false;
            c.details = std::to_string(outside) + " ring roots outside the straight annulus";
        } else {
            c.details = std::to_string(res.crit.free_ring.size() + res.crit.ring_zeros.size()) +
                        " roots inside";
        }
        checks.push_back(c);
    }

    // skeleton roles; the trap door may resolve on the ring grid or, when
    // it is only a few ring pixels wide, on the inner zoom
    if (res.has_ring) {
        const auto* trap_ring = res.ring.find_role(Role::TRAP_DOOR);
        const auto* trap_inner = res.has_inner ? res.inner.find_role(Role::TRAP_DOOR) : nullptr;
        const auto* trap = trap_inner ? trap_inner : trap_ring;
        const auto* annulus = res.ring.find_role(Role::ANNULUS_A);
        auto lands_on_trap = [&](const SpherePoint& img) {
            if (img.at_infinity) return false;
            if (trap_inner && res.inner.grid.contains(img.value)) {
                long i = res.inner.grid.pixel_of(img.value);
                return res.inner.grid.comp[i] == trap_inner->id;
            }
            if (trap_ring && res.ring.grid.contains(img.value)) {
                long i = res.ring.grid.pixel_of(img.value);
                return res.ring.grid.comp[i] == trap_ring->id;
            }
            return false;
        };
        {
            CheckResult c{"trap-door-simply-connected", true, false, ""};
            if (!trap) {
                c.pass = false;
                c.details = "trap door unresolved";
            } else if (trap->connectivity != 1) {
                c.pass = false;
                c.details = "measured connectivity " + std::to_string(trap->connectivity);
            } else {
                c.details = "connectivity 1";
            }
            checks.push_back(c);
        }
        {
            CheckResult c{"annulus-doubly-connected", true, false, ""};
            if (!annulus) {
                c.pass = false;
                c.details = "annulus unresolved on the ring grid";
            } else if (annulus->connectivity != 2 || !annulus->surrounds_origin) {
                c.pass = false;
                c.details = "connectivity " + std::to_string(annulus->connectivity) +
                            (annulus->surrounds_origin ? ", surrounds" : ", does not surround");
            } else {
                c.details = "connectivity 2, surrounds the origin";
            }
            checks.push_back(c);
        }
        {
            CheckResult c{"ring-criticals-on-annulus", true, false, ""};
            int off = 0;
            if (annulus) {
                for (const auto& cp : res.crit.free_ring) {
                    long i = res.ring.grid.pixel_of(cp);
                    if (i < 0 || res.ring.grid.comp[i] != annulus->id) ++off;
                }
            } else {
                off = int(res.crit.free_ring.size());
            }
            if (off) {
                c.pass = false;
                c.details = std::to_string(off) + " ring critical points off the annulus";
            } else {
                c.details = "all " + std::to_string(res.crit.free_ring.size()) + " on it";
            }
            checks.push_back(c);
        }
        {
            CheckResult c{"annulus-maps-to-trap", true, false, ""};
            if (annulus &&
                lands_on_trap(eval_perturbed(p, SpherePoint::finite(annulus->representative))))
                c.details = "forward target is the trap door";
            else {
                c.pass = false;
                c.details = "annulus forward target is not the trap door";
            }
            checks.push_back(c);
        }
        {
            CheckResult c{"disk-d", true, false, ""};
            const auto* disk = res.has_disk ? res.disk.find_role(Role::DISK_D) : nullptr;
            if (!disk) disk = res.global.find_role(Role::DISK_D);
            if (!disk) {
                c.pass = false;
                c.details = "w_lambda component unresolved";
            } else if (disk->connectivity != 1 ||
                       (disk->surrounds_known && disk->surrounds_origin)) {
                c.pass = false;
                c.details = "connectivity " + std::to_string(disk->connectivity);
            } else if (!lands_on_trap(eval_perturbed(p, SpherePoint::finite(disk->representative)))) {
                c.pass = false;
                c.details = "disk image did not land in the trap door";
            } else {
                c.details = "connectivity 1, maps into the trap door";
            }
            checks.push_back(c);
        }
    }
}

}  // namespace

AnalysisResult run_analysis(const RunConfig& cfg) {
    cfg.validate();
    AnalysisResult res;
    res.cfg = cfg;
    const MapParams& p = cfg.params;
    res.perturbed = p.perturbed();

    if (res.perturbed) {
        res.radii = radii_model(p, cfg.k1);  // throws RegimeViolation when out of range
        res.crit = critical_set(p);
    } else {
        res.radii.k_esc = estimate_K(p);
        res.radii.k1 = cfg.k1;
        res.crit = identify_distinguished(p, {}, {});
    }

    int threads = cfg.threads;
    int ring_res = cfg.ring_resolution > 0 ? cfg.ring_resolution : cfg.resolution;

    if (!res.perturbed) {
        res.global_cap = std::min(cfg.max_iter, 64);
        res.global = analyze_plane(p, cfg.window, cfg.resolution, cfg.resolution,
                                   res.radii, res.crit, res.global_cap, threads,
                                   cfg.record_floor_px);
    } else {
        // The separation cap is chosen per grid by structural qualification:
        // raster once at a generous cap, then relabel at increasing caps until
        // the structure of interest is separated, extending while it stays so.
        int glo_base = global_cap_for(p, res.radii, res.crit, 0);
        int glo_hi = glo_base + cfg.analysis_depth + 8;
        LabelGrid gfull = rasterize(p, cfg.window, cfg.resolution, cfg.resolution,
                                    res.radii, glo_hi, threads);
        res.global_cap = select_cap(gfull, std::max(3, glo_base - 1), glo_hi,
                                    cfg.analysis_depth,
                                    [&](const LabelGrid& g) {
                                        return global_grid_qualifies(g, res.crit);
                                    });
        bool glo_fallback = res.global_cap < 0;
        if (glo_fallback) res.global_cap = glo_base + cfg.analysis_depth;
        res.global = analyze_grid(relabeled_with_cap(gfull, res.global_cap), p,
                                  res.radii, res.crit, cfg.record_floor_px);
        if (glo_fallback)
            res.global.warnings.push_back(
                "no qualifying separation cap; free critical component may touch the frame");
    }

    if (res.perturbed && cfg.ring_window) {
        // smallest qualifying cap only: extending the ring cap lets the trap
        // door swallow pinholed pieces of the inner annulus zone
        int ring_base = ring_cap_for(p, res.radii, res.crit, 0);
        int ring_hi = ring_base + cfg.analysis_depth + 12;
        LabelGrid rfull = rasterize(p, ring_window(res.radii, cfg.ring_halfwidth_factor),
                                    ring_res, ring_res, res.radii, ring_hi, threads);
        res.ring_cap = select_cap(rfull, ring_base, ring_hi, 0,
                                  [&](const LabelGrid& g) {
                                      return ring_grid_qualifies(g, res.radii, res.crit);
                                  });
        bool ring_fallback = res.ring_cap < 0;
        if (ring_fallback) res.ring_cap = ring_base + cfg.analysis_depth;
        res.ring = analyze_grid(relabeled_with_cap(rfull, res.ring_cap), p,
                                res.radii, res.crit, cfg.record_floor_px,
                                /*global_scale=*/false);
        if (ring_fallback)
            res.ring.warnings.push_back(
                "no qualifying separation cap; the critical annulus did not separate");
        res.has_ring = true;

        int disk_base = 3;
        int disk_hi = disk_base + cfg.analysis_depth + 8;
        LabelGrid dfull = rasterize(p, disk_window(res.radii, res.crit), ring_res,
                                    ring_res, res.radii, disk_hi, threads);
        res.disk_cap = select_cap(dfull, 2, disk_hi, 0,
                                  [&](const LabelGrid& g) {
                                      return disk_grid_qualifies(g, res.crit);
                                  });
        if (res.disk_cap < 0) res.disk_cap = disk_base + cfg.analysis_depth;
        res.disk = analyze_grid(relabeled_with_cap(dfull, res.disk_cap), p,
                                res.radii, res.crit, cfg.record_floor_px,
                                /*global_scale=*/false);
        res.has_disk = true;

        int inner_hi = 3 + cfg.analysis_depth + 8;
        LabelGrid ifull = rasterize(p, inner_window(res.radii), ring_res, ring_res,
                                    res.radii, inner_hi, threads);
        res.inner_cap = select_cap(ifull, 2, inner_hi, cfg.analysis_depth,
                                   [&](const LabelGrid& g) {
                                       return inner_grid_qualifies(g, res.radii);
                                   });
        if (res.inner_cap < 0) res.inner_cap = 3 + cfg.analysis_depth;
        res.inner = analyze_grid(relabeled_with_cap(ifull, res.inner_cap), p,
                                 res.radii, res.crit, cfg.record_floor_px,
                                 /*global_scale=*/false);
        res.has_inner = true;
    }

    if (res.has_ring) {
        try {
            res.itinerary = critical_itinerary(p, res.radii, res.crit, res.ring,
                                               res.global);
        } catch (const OffGrid&) {
            res.itinerary = ItineraryRecord{};
        }
    }

    // the witness calculus applies only to surrounding captures
    int k = res.itinerary.u_nu_surrounds ? res.itinerary.k : 0;
    if (k >= 1)
        res.witnesses = enumerate_attainable(p, k, cfg.witness_imax,
                                             cfg.witness_jmax, cfg.witness_lmax);

    append_structural_checks(res);

    // orbit and digraph invariants
    res.checks.push_back(check_escape_monotone(p, res.radii, cfg.escape_samples,
                                               10000));
    res.checks.push_back(check_forward_consistency(p, res.radii, res.global));
    res.checks.push_back(check_rh_admissibility(p, res.crit, res.global,
                                                cfg.min_component_px));
    res.checks.push_back(check_nonsurrounding_rigidity(res.global, cfg.min_component_px));
    res.checks.push_back(check_no_promotion(res.global, cfg.min_component_px));
    if (res.has_ring) {
        res.checks.push_back(check_rh_admissibility(p, res.crit, res.ring,
                                                    cfg.min_component_px));
        res.checks.back().name += "-ring";
        res.checks.push_back(check_nonsurrounding_rigidity(res.ring, cfg.min_component_px));
        res.checks.back().name += "-ring";
        res.checks.push_back(check_no_promotion(res.ring, cfg.min_component_px));
        res.checks.back().name += "-ring";
        res.checks.push_back(check_preimage_census(res.ring, res.global,
                                                   cfg.min_component_px));
        res.checks.push_back(check_itinerary_bound(res.ring, res.global, k,
                                                   cfg.min_component_px));
        std::vector<const PlaneAnalysis*> grids{&res.global, &res.ring};
        if (res.has_inner) grids.push_back(&res.inner);
        if (res.has_disk) grids.push_back(&res.disk);
        res.checks.push_back(verify_measured(p, k, grids, cfg.min_component_px,
                                             cfg.require_depth));
        {
            CheckResult c{"itinerary", true, false, ""};
            if (res.itinerary.terminal == ItineraryRecord::Terminal::NOT_CAPTURED) {
                c.skipped = true;
                c.details = "free critical orbit not captured by the annulus chain";
            } else {
                std::ostringstream os;
                os << "k = " << k << ", "
                   << (res.itinerary.u_nu_surrounds ? "surrounding" : "non-surrounding");
                if (res.itinerary.u_nu_surrounds) {
                    for (int j = 0; j + 1 < k; ++j) {
                        if (res.itinerary.steps[j] != RegionTag::U_N) {
                            c.pass = false;
                            os << "; intermediate step " << j + 1 << " is "
                               << region_name(res.itinerary.steps[j]);
                            break;
                        }
                    }
                }
                c.details = os.str();
            }
            res.checks.push_back(c);
        }
    }

    return res;
}

}  // namespace fatou
