#include "fatou/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

namespace fatou {

const char* region_name(RegionTag t) {
    switch (t) {
        case RegionTag::U_1: return "U_1";
        case RegionTag::U_D: return "U_D";
        case RegionTag::U_N: return "U_N";
        case RegionTag::U_NP1: return "U_NP1";
        case RegionTag::BDD_A: return "BDD_A";
        default: return "OTHER";
    }
}

const char* status_name(WitnessStatus s) {
    switch (s) {
        case WitnessStatus::GUARANTEED: return "GUARANTEED";
        case WitnessStatus::POSSIBLE: return "POSSIBLE";
        default: return "EXCLUDED";
    }
}

namespace {

// 8-connected labeling of the complement of one component, with a
// boundedness flag per complement region.
struct ComplementMap {
    int id = NO_COMPONENT;
    std::vector<int32_t> region;  // -1 on the component itself
    std::vector<uint8_t> bounded;
    int32_t origin_region = -1;

    static ComplementMap build(const LabelGrid& g, int id) {
        ComplementMap m;
        m.id = id;
        m.region.assign(g.comp.size(), -1);
        const int px = g.px, py = g.py;
        std::deque<size_t> queue;
        int32_t next = 0;
        for (size_t start = 0; start < g.comp.size(); ++start) {
            if (m.region[start] >= 0 || g.comp[start] == id) continue;
            int32_t r = next++;
            bool frame = false;
            m.region[start] = r;
            queue.push_back(start);
            while (!queue.empty()) {
                size_t i = queue.front();
                queue.pop_front();
                int ix = int(i % px), iy = int(i / px);
                if (ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1) frame = true;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        int nx = ix + dx, ny = iy + dy;
                        if (nx < 0 || ny < 0 || nx >= px || ny >= py) continue;
                        size_t j = g.idx(nx, ny);
                        if (m.region[j] < 0 && g.comp[j] != id) {
                            m.region[j] = r;
                            queue.push_back(j);
                        }
                    }
                }
            }
            m.bounded.push_back(frame ? 0 : 1);
        }
        long oi = g.contains(Complex{}) ? g.pixel_of(Complex{}) : -1;
        if (oi >= 0) m.origin_region = m.region[oi];
        return m;
    }
};

}  // namespace

bool inside_bdd(const LabelGrid& g, int component_id, Complex z) {
    if (!g.contains(z)) return false;
    long i = g.pixel_of(z);
    if (g.comp[i] == component_id) return true;
    // single-point query: flood the complement from the pixel
    const int px = g.px, py = g.py;
    std::vector<uint8_t> seen(g.comp.size(), 0);
    std::deque<size_t> queue;
    seen[i] = 1;
    queue.push_back(size_t(i));
    while (!queue.empty()) {
        size_t cur = queue.front();
        queue.pop_front();
        int ix = int(cur % px), iy = int(cur / px);
        if (ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1) return false;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                size_t j = g.idx(ix + dx, iy + dy);
                if (!seen[j] && g.comp[j] != component_id) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
            }
        }
    }
    return true;
}

RegionTag classify_region(const PlaneAnalysis& ring, const PlaneAnalysis& global,
                          Complex z) {
    const ComponentRecord* annulus = ring.find_role(Role::ANNULUS_A);
    if (annulus && inside_bdd(ring.grid, annulus->id, z)) return RegionTag::BDD_A;
    const ComponentRecord* unu = global.find_role(Role::U_NU);
    if (!unu || !global.grid.contains(z)) return RegionTag::OTHER;
    long i = global.grid.pixel_of(z);
    if (global.grid.comp[i] == unu->id) return RegionTag::OTHER;  // on U_nu itself
    ComplementMap m = ComplementMap::build(global.grid, unu->id);
    int32_t r = m.region[i];
    if (r < 0) return RegionTag::OTHER;
    if (!m.bounded[r]) return RegionTag::U_NP1;
    return r == m.origin_region ? RegionTag::U_N : RegionTag::U_1;
}

ItineraryRecord critical_itinerary(const MapParams& p, const RadiiModel& radii,
                                   const CriticalSet& crit,
                                   const PlaneAnalysis& ring,
                                   const PlaneAnalysis& global, int max_steps) {
    ItineraryRecord rec;
    const ComponentRecord* unu = global.find_role(Role::U_NU);
    rec.u_nu_surrounds = unu && unu->surrounds_known && unu->surrounds_origin;
    const ComponentRecord* annulus = ring.find_role(Role::ANNULUS_A);
    if (!annulus) throw OffGrid("critical itinerary needs the annulus resolved on the ring grid");

    // reuse one complement labeling of U_nu for all steps
    ComplementMap unu_map;
    if (unu) unu_map = ComplementMap::build(global.grid, unu->id);

    SpherePoint z = SpherePoint::finite(crit.nu_lambda);
    for (int j = 1; j <= max_steps; ++j) {
        z = eval_perturbed(p, z);
        if (z.at_infinity || z.modulus() > radii.k_esc) {
            rec.terminal = ItineraryRecord::Terminal::NOT_CAPTURED;
            rec.k = 0;
            return rec;
        }
        if (inside_bdd(ring.grid, annulus->id, z.value)) {
            rec.steps.push_back(RegionTag::BDD_A);
            rec.k = j;
            long i = ring.grid.pixel_of(z.value);
            bool on_annulus = i >= 0 && ring.grid.comp[i] == annulus->id;
            rec.terminal = on_annulus ? ItineraryRecord::Terminal::LANDS_IN_A
                                      : ItineraryRecord::Terminal::LANDS_IN_UD;
            return rec;
        }
        RegionTag tag = RegionTag::OTHER;
        if (unu && global.grid.contains(z.value)) {
            long i = global.grid.pixel_of(z.value);
            int32_t r = unu_map.region[i];
            if (global.grid.comp[i] == unu->id) tag = RegionTag::OTHER;
            else if (r >= 0 && !unu_map.bounded[r]) tag = RegionTag::U_NP1;
            else if (r >= 0) tag = r == unu_map.origin_region ? RegionTag::U_N : RegionTag::U_1;
        }
        rec.steps.push_back(tag);
    }
    rec.terminal = ItineraryRecord::Terminal::NOT_CAPTURED;
    rec.k = 0;
    return rec;
}

namespace {

bool mul_check(unsigned long long& acc, unsigned long long f) {
    unsigned long long out;
    if (__builtin_mul_overflow(acc, f, &out) || out > 0x7fffffffffffffffULL)
        return false;
    acc = out;
    return true;
}

// (n+1)^i d^j n^l, 2^63-1 cap; false on overflow
bool kappa_minus_two(const MapParams& p, int i, int j, int l,
                     unsigned long long& out) {
    out = 1;
    for (int t = 0; t < i; ++t)
        if (!mul_check(out, (unsigned long long)(p.n + 1))) return false;
    for (int t = 0; t < j; ++t)
        if (!mul_check(out, (unsigned long long)p.d)) return false;
    for (int t = 0; t < l; ++t)
        if (!mul_check(out, (unsigned long long)p.n)) return false;
    return true;
}

}  // namespace

std::vector<ConnectivityWitness> enumerate_attainable(const MapParams& p, int k,
                                                      int i_max, int j_max,
                                                      int l_max) {
    if (k < 1) throw InvalidParams("enumerate_attainable requires k >= 1");
    std::vector<ConnectivityWitness> out;
    for (int i = 0; i <= i_max; ++i) {
        for (int j = 0; j <= j_max; ++j) {
            for (int l = 0; l <= l_max; ++l) {
                ConnectivityWitness w;
                w.i = i;
                w.j = j;
                w.l = l;
                unsigned long long km2 = 0;
                if (kappa_minus_two(p, i, j, l, km2)) {
                    w.kappa = km2 + 2;
                } else {
                    w.overflow = true;
                    w.kappa = 0;
                }
                if ((long long)l <= (long long)j * (k - 1))
                    w.status = WitnessStatus::GUARANTEED;
                else if ((long long)l <= (long long)j * k)
                    w.status = WitnessStatus::POSSIBLE;
                else
                    w.status = WitnessStatus::EXCLUDED;
                out.push_back(w);
            }
        }
    }
    return out;
}

unsigned long long propagate_rh(unsigned long long kappa_image, RegionTag step,
                                const MapParams& p) {
    if (kappa_image < 3) throw InvalidParams("propagate_rh requires kappa >= 3");
    unsigned long long deg;
    switch (step) {
        case RegionTag::U_1: deg = 1; break;
        case RegionTag::U_D: deg = (unsigned long long)p.d; break;
        case RegionTag::U_N: deg = (unsigned long long)p.n; break;
        case RegionTag::U_NP1: deg = (unsigned long long)(p.n + 1); break;
        default: throw InvalidParams("propagate_rh needs a zone with a mapping degree");
    }
    return deg * (kappa_image - 2) + 2;
}

bool admissible_kappa(const MapParams& p, int k, unsigned long long kappa,
                      ConnectivityWitness* found) {
    if (kappa < 3) return false;
    unsigned long long target = kappa - 2;
    unsigned long long pi = 1;
    for (int i = 0; pi <= target; ++i) {
        if (target % pi == 0) {
            unsigned long long rem_i = target / pi;
            unsigned long long pj = 1;
            for (int j = 0; pj <= rem_i; ++j) {
                if (rem_i % pj == 0) {
                    unsigned long long rem_j = rem_i / pj;
                    // rem_j must be a pure power of n
                    unsigned long long pn = 1;
                    int l = 0;
                    while (pn < rem_j) {
                        if (__builtin_mul_overflow(pn, (unsigned long long)p.n, &pn)) break;
                        ++l;
                    }
                    if (pn == rem_j && (long long)l <= (long long)j * k) {
                        if (found) {
                            found->i = i;
                            found->j = j;
                            found->l = l;
                            found->kappa = kappa;
                            found->status = (long long)l <= (long long)j * (k - 1)
                                                ? WitnessStatus::GUARANTEED
                                                : WitnessStatus::POSSIBLE;
                        }
                        return true;
                    }
                }
                if (__builtin_mul_overflow(pj, (unsigned long long)p.d, &pj)) break;
            }
        }
        if (__builtin_mul_overflow(pi, (unsigned long long)(p.n + 1), &pi)) break;
    }
    return false;
}

bool trusted_record(const ComponentRecord& r, const LabelGrid& g, int64_t min_px) {
    return r.pixel_count >= min_px && !r.touches_frame &&
           r.rep_escape_time >= 0 && r.rep_escape_time + 2 <= g.max_iter;
}

namespace {

std::string kappa_list(const std::vector<unsigned long long>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size() && i < 8; ++i) os << (i ? "," : "") << v[i];
    if (v.size() > 8) os << ",...";
    return os.str();
}

}  // namespace

CheckResult verify_measured(const MapParams& p, int k,
                            const std::vector<const PlaneAnalysis*>& grids,
                            int64_t min_px, int require_depth) {
    CheckResult res{"theorem-form-compliance", true, false, ""};
    // k < 1 signals a capture that does not surround the origin; then no
    // connectivity beyond 3 can occur and no witness is guaranteed.
    std::vector<unsigned long long> bad;
    bool any = false;
    for (const auto* a : grids) {
        for (const auto& r : a->records) {
            if (!trusted_record(r, a->grid, min_px)) continue;
            if (r.connectivity < 3) continue;
            any = true;
            bool ok = k >= 1
                          ? admissible_kappa(p, k, (unsigned long long)r.connectivity)
                          : r.connectivity == 3;
            if (!ok) bad.push_back((unsigned long long)r.connectivity);
        }
    }
    if (!bad.empty()) {
        res.pass = false;
        res.details = "measured connectivities without admissible (i,j,l): " + kappa_list(bad);
        return res;
    }
    // every guaranteed witness shallow enough to resolve must be measured
    std::vector<unsigned long long> missing;
    if (k >= 1) {
        for (int i = 0; i + 0 <= require_depth; ++i) {
            for (int j = 0; i + j <= require_depth; ++j) {
                for (int l = 0; i + j + l <= require_depth; ++l) {
                    if ((long long)l > (long long)j * (k - 1)) continue;
                    unsigned long long km2;
                    if (!kappa_minus_two(p, i, j, l, km2)) continue;
                    unsigned long long kappa = km2 + 2;
                    bool found = false;
                    for (const auto* a : grids)
                        for (const auto& r : a->records)
                            if (!r.touches_frame &&
                                (unsigned long long)r.connectivity == kappa)
                                found = true;
                    if (!found) missing.push_back(kappa);
                }
            }
        }
    }
    if (!missing.empty()) {
        res.pass = false;
        res.details = "guaranteed connectivities not found on any grid: " + kappa_list(missing);
    } else if (!any && res.details.empty()) {
        res.details = "no multiply connected components above the pixel floor";
    }
    return res;
}

CheckResult check_rh_admissibility(const MapParams& p, const CriticalSet& crit,
                                   const PlaneAnalysis& a, int64_t min_px) {
    CheckResult res{"riemann-hurwitz-admissibility", true, false, ""};
    const LabelGrid& g = a.grid;
    auto has_critical = [&](int id) {
        auto on = [&](Complex c) {
            long i = g.pixel_of(c);
            return i >= 0 && g.comp[i] == id;
        };
        for (const auto& c : crit.free_ring)
            if (on(c)) return true;
        for (const auto& c : crit.infinity_side)
            if (on(c)) return true;
        return on(crit.nu_lambda) || on(Complex{});  // origin is critical (pole)
    };
    int pairs = 0, artifacts = 0;
    std::vector<unsigned long long> bad;
    for (const auto& u : a.records) {
        if (u.forward_target < 0) continue;
        const ComponentRecord* v = a.find_id(u.forward_target);
        if (!v || u.touches_frame || v->touches_frame) continue;
        if (has_critical(u.id)) continue;
        long long ku = u.connectivity - 2, kv = v->connectivity - 2;
        bool ok = false;
        for (long long s : {1LL, (long long)p.n, (long long)p.d,
                            (long long)p.n + 1, (long long)p.n + p.d})
            ok = ok || ku == s * kv;
        if (!trusted_record(u, a.grid, min_px) || !trusted_record(*v, a.grid, min_px)) {
            if (!ok) ++artifacts;  // below the trust floor: resolution artifact
            continue;
        }
        ++pairs;
        if (!ok) bad.push_back((unsigned long long)u.connectivity);
    }
    std::ostringstream os;
    os << pairs << " resolved pairs";
    if (artifacts) os << ", " << artifacts << " sub-floor artifacts flagged";
    if (!bad.empty()) {
        res.pass = false;
        os << ", violations at kappa " << kappa_list(bad);
    }
    res.details = os.str();
    return res;
}

CheckResult check_nonsurrounding_rigidity(const PlaneAnalysis& a, int64_t min_px) {
    CheckResult res{"nonsurrounding-rigidity", true, false, ""};
    int pairs = 0;
    for (const auto& u : a.records) {
        if (u.forward_target < 0 || !trusted_record(u, a.grid, min_px)) continue;
        const ComponentRecord* v = a.find_id(u.forward_target);
        if (!v || !trusted_record(*v, a.grid, min_px)) continue;
        if (!u.surrounds_known || !v->surrounds_known) continue;
        if (u.surrounds_origin || v->surrounds_origin) continue;
        ++pairs;
        if (u.connectivity != v->connectivity) {
            res.pass = false;
            res.details = "chain connectivity changed " +
                          std::to_string(u.connectivity) + " -> " +
                          std::to_string(v->connectivity);
            return res;
        }
    }
    res.details = std::to_string(pairs) + " non-surrounding pairs";
    return res;
}

CheckResult check_no_promotion(const PlaneAnalysis& a, int64_t min_px) {
    CheckResult res{"no-promotion", true, false, ""};
    int pairs = 0;
    for (const auto& u : a.records) {
        if (u.forward_target < 0 || !trusted_record(u, a.grid, min_px)) continue;
        const ComponentRecord* v = a.find_id(u.forward_target);
        if (!v || !trusted_record(*v, a.grid, min_px)) continue;
        if (!u.surrounds_known || !v->surrounds_known) continue;
        if (v->surrounds_origin) continue;
        ++pairs;
        if (u.surrounds_origin) {
            res.pass = false;
            res.details = "component " + std::to_string(u.id) +
                          " surrounds the origin but its image does not";
            return res;
        }
    }
    res.details = std::to_string(pairs) + " pairs with non-surrounding image";
    return res;
}

CheckResult check_forward_consistency(const MapParams& p, const RadiiModel& radii,
                                      const PlaneAnalysis& a) {
    CheckResult res{"forward-map-consistency", true, false, ""};
    int checked = 0;
    for (const auto& r : a.records) {
        if (r.forward_target < 0 || r.rep_escape_time <= 0) continue;
        SpherePoint img = eval_perturbed(p, SpherePoint::finite(r.representative));
        int t_img = img.at_infinity
                        ? 0
                        : escape_time(p, img.value, radii.k_esc, a.grid.max_iter + 2);
        ++checked;
        if (t_img + 1 != r.rep_escape_time) {
            res.pass = false;
            res.details = "escape time of the mapped representative is not one less";
            return res;
        }
    }
    res.details = std::to_string(checked) + " representatives";
    return res;
}

CheckResult check_escape_monotone(const MapParams& p, const RadiiModel& radii,
                                  int samples, int max_iter) {
    CheckResult res{"escape-monotone", true, false, ""};
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int tested = 0;
    for (int s = 0; s < samples; ++s) {
        Complex z{u(rng) * 1.25 * radii.k_esc, u(rng) * 1.25 * radii.k_esc};
        int t = escape_time(p, z, radii.k_esc, max_iter);
        if (t <= 0) continue;
        SpherePoint img = eval_perturbed(p, SpherePoint::finite(z));
        int t1 = img.at_infinity ? 0 : escape_time(p, img.value, radii.k_esc, max_iter);
        ++tested;
        if (t1 != t - 1) {
            res.pass = false;
            res.details = "escape time did not drop by one after one step";
            return res;
        }
    }
    res.details = std::to_string(tested) + " escaping samples";
    return res;
}

CheckResult check_preimage_census(const PlaneAnalysis& ring,
                                  const PlaneAnalysis& global, int64_t min_px) {
    CheckResult res{"preimage-curve-census", true, false, ""};
    const ComponentRecord* annulus = ring.find_role(Role::ANNULUS_A);
    if (!annulus) {
        res.skipped = true;
        res.details = "annulus unresolved";
        return res;
    }
    int checked = 0;
    for (const auto* a : {&ring, &global}) {
        for (const auto& w : a->records) {
            if (!trusted_record(w, a->grid, min_px) || !w.surrounds_known ||
                !w.surrounds_origin)
                continue;
            if (w.role == Role::TRAP_DOOR || w.role == Role::A_INF) continue;
            int in_zone = 0, out_zone = 0;
            for (const auto& u : a->records) {
                if (u.forward_target != w.id) continue;
                if (!u.surrounds_known || !u.surrounds_origin) continue;
                bool in_bdd = (a == &ring)
                                  ? inside_bdd(ring.grid, annulus->id, u.representative)
                                  : false;
                if (u.role == Role::ANNULUS_A || u.role == Role::TRAP_DOOR) continue;
                if (in_bdd) ++in_zone;
                else ++out_zone;
            }
            ++checked;
            if (in_zone > 1 || out_zone > 1) {
                res.pass = false;
                res.details = "component " + std::to_string(w.id) + " has " +
                              std::to_string(in_zone) + " inner / " +
                              std::to_string(out_zone) + " outer surrounding preimages";
                return res;
            }
        }
    }
    res.details = std::to_string(checked) + " surrounding components";
    return res;
}

CheckResult check_itinerary_bound(const PlaneAnalysis& ring,
                                  const PlaneAnalysis& global, int k,
                                  int64_t min_px) {
    CheckResult res{"itinerary-run-bound", true, false, ""};
    if (k < 1) {
        res.skipped = true;
        res.details = "no capture depth";
        return res;
    }
    const ComponentRecord* annulus = ring.find_role(Role::ANNULUS_A);
    const ComponentRecord* unu = global.find_role(Role::U_NU);
    if (!annulus || !unu) {
        res.skipped = true;
        res.details = "zones unresolved";
        return res;
    }
    int chains = 0;
    for (const auto& start : global.records) {
        if (start.pixel_count < min_px || !start.surrounds_origin) continue;
        RegionTag z0 = classify_region(ring, global, start.representative);
        if (z0 != RegionTag::U_N) continue;
        int run = 0;
        const ComponentRecord* cur = &start;
        while (cur && run <= k + 1) {
            RegionTag z = classify_region(ring, global, cur->representative);
            if (z == RegionTag::BDD_A) break;
            if (z != RegionTag::U_N) {
                run = -1;  // chain left the zone without reaching the annulus
                break;
            }
            ++run;
            cur = cur->forward_target >= 0 ? global.find_id(cur->forward_target)
                                           : nullptr;
        }
        if (!cur || run < 0) continue;  // unresolved chain
        ++chains;
        if (run > k) {
            res.pass = false;
            res.details = "a measured chain stays in the middle zone for " +
                          std::to_string(run) + " > k = " + std::to_string(k) +
                          " steps";
            return res;
        }
    }
    res.details = std::to_string(chains) + " resolvable chains";
    return res;
}

}  // namespace fatou
