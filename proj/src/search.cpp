#include "fatou/search.hpp"

#include <algorithm>
#include <cmath>

namespace fatou {

int scan_ring_index(const MapParams& p, double k1, int max_steps) {
    RadiiModel radii = radii_model(p, k1);
    CriticalSet crit = critical_set(p);
    SpherePoint z = SpherePoint::finite(crit.nu_lambda);
    for (int j = 1; j <= max_steps; ++j) {
        z = eval_perturbed(p, z);
        if (z.at_infinity || z.modulus() > radii.k_esc) return -1;  // escaped first
        if (z.modulus() < radii.r_outer) return j;
    }
    return -1;
}

namespace {

MapParams with_lambda(const MapParams& base, Complex lambda) {
    MapParams p = base;
    p.lambda = lambda;
    return p;
}

struct Probe {
    int ring_index = -2;  // -2 = out of regime or degenerate roots
    int escape = -1;
};

Probe probe_lambda(const MapParams& p, double k1) {
    Probe res;
    try {
        RadiiModel radii = radii_model(p, k1);
        CriticalSet crit = critical_set(p);
        SpherePoint z = SpherePoint::finite(crit.nu_lambda);
        res.ring_index = -1;
        for (int j = 1; j <= 256; ++j) {
            z = eval_perturbed(p, z);
            if (res.ring_index < 0 && !z.at_infinity &&
                z.modulus() < radii.r_outer)
                res.ring_index = j;
            if (z.at_infinity || z.modulus() > radii.k_esc) {
                res.escape = j;
                break;
            }
        }
        if (res.escape < 0) res.ring_index = -1;  // captured elsewhere
    } catch (const RegimeViolation&) {
    } catch (const AmbiguousPartition&) {
    } catch (const NoConvergence&) {
    }
    return res;
}

// grid certification of one candidate; scan resolution kept modest
bool certify(const RunConfig& base, Complex lambda, int m, int resolution,
             AnalysisResult* out) {
    RunConfig cfg = base;
    cfg.params.lambda = lambda;
    cfg.resolution = resolution;
    cfg.ring_resolution = resolution;
    try {
        AnalysisResult res = run_analysis(cfg);
        if (res.itinerary.terminal == ItineraryRecord::Terminal::NOT_CAPTURED)
            return false;
        if (res.itinerary.k != m || !res.itinerary.u_nu_surrounds) return false;
        if (out) *out = std::move(res);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

}  // namespace

SearchResult find_lambda_for_m(const RunConfig& base, int m, double ray_angle,
                               double t_hi, double t_lo) {
    if (m < 1) throw InvalidParams("capture depth m must be >= 1");
    if (!(t_hi > t_lo && t_lo > 0))
        throw InvalidParams("need t_hi > t_lo > 0");
    SearchResult result;
    result.m = m;
    const Complex dir{std::cos(ray_angle), std::sin(ray_angle)};
    auto index_at = [&](double t) {
        return probe_lambda(with_lambda(base.params, t * dir), base.k1);
    };

    // geometric scan, factor 0.8
    double upper_edge_hi = -1, upper_edge_lo = -1;  // bracket of the m-band upper edge
    double lower_edge_hi = -1, lower_edge_lo = -1;  // and of its lower edge
    double prev_t = -1;
    int prev_r = INT32_MIN;
    for (double t = t_hi; t >= t_lo; t *= 0.8) {
        Probe pr = index_at(t);
        result.scan.push_back({t, pr.ring_index, pr.escape, pr.ring_index != -2});
        if (pr.ring_index >= m && prev_t > 0 && prev_r < m) {
            upper_edge_hi = prev_t;
            upper_edge_lo = t;
        }
        if (pr.ring_index > m && prev_t > 0 && prev_r == m) {
            lower_edge_hi = prev_t;
            lower_edge_lo = t;
        }
        if (upper_edge_hi > 0 && lower_edge_hi > 0) break;
        prev_t = t;
        prev_r = pr.ring_index;
    }
    if (upper_edge_hi < 0)
        throw NotFoundInRange("no lambda with ring index " + std::to_string(m) +
                              " in the scanned range");
    auto bisect_edge = [&](double hi, double lo, bool want_ge_m) {
        for (int it = 0; it < 60 && hi / lo > 1.0001; ++it) {
            double mid = std::sqrt(hi * lo);
            int r = index_at(mid).ring_index;
            bool sat = want_ge_m ? r >= m : r > m;
            if (sat) lo = mid;  // property holds at and below this t
            else hi = mid;
        }
        return std::sqrt(hi * lo);
    };
    double band_top = bisect_edge(upper_edge_hi, upper_edge_lo, true);
    double band_bot;
    if (lower_edge_hi > 0) {
        band_bot = bisect_edge(lower_edge_hi, lower_edge_lo, false);
    } else {
        band_bot = result.scan.back().t;  // band extends past the scan floor
    }

    // Certify interior candidates.  Prefer positions where the free critical
    // orbit exits fastest: those land mid trap door, where the capture
    // component is fattest and the grids stay tame.
    std::vector<std::pair<int, double>> candidates;
    for (int s = 1; s <= 11; ++s) {
        double q = s / 12.0;
        double t = std::exp(std::log(band_bot) +
                            q * (std::log(band_top) - std::log(band_bot)));
        Probe pr = index_at(t);
        if (pr.ring_index == m && pr.escape > 0) candidates.push_back({pr.escape, t});
    }
    std::sort(candidates.begin(), candidates.end());
    bool capture_failure = false;
    int attempts = 0;
    for (const auto& [esc, t] : candidates) {
        if (++attempts > 6) break;
        AnalysisResult res;
        if (certify(base, t * dir, m, 512, &res)) {
            result.lambda_found = t * dir;
            result.verification = res.itinerary;
            return result;
        }
        capture_failure = true;
    }
    if (capture_failure)
        throw NonSurroundingCapture(
            "ring-index band found but the free critical component is not a "
            "surrounding capture; retry with a perturbed ray angle");
    throw NotFoundInRange("band located but no certifiable lambda inside");
}

SearchResult realize_connectivity(const RunConfig& base, int i, int j, int l,
                                  double ray_angle, double t_hi, double t_lo) {
    if (i < 0 || j < 0 || l < 0) throw InvalidParams("exponents must be non-negative");
    if (j == 0 && l != 0)
        throw InvalidParams("unrealizable request: j = 0 forces l = 0");
    const int m = j > 0 ? (l + j - 1) / j + 1 : 1;

    SearchResult res = find_lambda_for_m(base, m, ray_angle, t_hi, t_lo);

    RunConfig cfg = base;
    cfg.params.lambda = res.lambda_found;
    res.analysis = run_analysis(cfg);
    res.verification = res.analysis.itinerary;
    if (res.verification.k != m || !res.verification.u_nu_surrounds)
        throw NonSurroundingCapture(
            "full-resolution verification lost the k-certificate");

    unsigned long long km2 = 0;
    ConnectivityWitness w;
    w.i = i;
    w.j = j;
    w.l = l;
    unsigned long long acc = 1;
    bool ok = true;
    for (int t = 0; t < i && ok; ++t)
        ok = !__builtin_mul_overflow(acc, (unsigned long long)(base.params.n + 1), &acc);
    for (int t = 0; t < j && ok; ++t)
        ok = !__builtin_mul_overflow(acc, (unsigned long long)base.params.d, &acc);
    for (int t = 0; t < l && ok; ++t)
        ok = !__builtin_mul_overflow(acc, (unsigned long long)base.params.n, &acc);
    km2 = acc;
    w.overflow = !ok;
    w.kappa = ok ? km2 + 2 : 0;
    w.status = WitnessStatus::GUARANTEED;  // l <= j(m-1) by the choice of m
    res.requested = w;

    res.measured_found = false;
    auto scan_grid = [&](const PlaneAnalysis& a) {
        for (const auto& r : a.records)
            if (!r.touches_frame && (unsigned long long)r.connectivity == w.kappa)
                res.measured_found = true;
    };
    scan_grid(res.analysis.global);
    if (res.analysis.has_ring) scan_grid(res.analysis.ring);
    if (res.analysis.has_inner) scan_grid(res.analysis.inner);
    return res;
}

}  // namespace fatou
