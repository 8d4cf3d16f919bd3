#include "fatou/orbits.hpp"

#include <cmath>

namespace fatou {

namespace {

bool growth_circle_ok(const MapParams& p, double radius) {
    for (int s = 0; s < 64; ++s) {
        double ang = 2.0 * M_PI * s / 64;
        Complex z = radius * Complex{std::cos(ang), std::sin(ang)};
        SpherePoint w = eval_perturbed(p, SpherePoint::finite(z));
        if (w.at_infinity) continue;
        if (std::abs(w.value) < 2.0 * radius) return false;
    }
    return true;
}

}  // namespace

double estimate_K(const MapParams& p) {
    p.validate();
    if (std::abs(p.bn()) >= 1.0)
        throw NoEscapeRadius("|b_n| >= 1: infinity is not attracting");
    for (double k = 1.0; k <= double(1ULL << 40); k *= 2.0) {
        if (growth_circle_ok(p, k) && growth_circle_ok(p, 2.0 * k) &&
            growth_circle_ok(p, 4.0 * k))
            return k;
    }
    throw NoEscapeRadius("doubling search found no radius with |S(z)| >= 2|z|");
}

RadiiModel radii_model(const MapParams& p, double k1) {
    p.validate();
    if (!p.perturbed()) throw InvalidParams("radii_model requires lambda != 0");
    const int m = p.n + p.d;
    const double al = std::abs(p.lambda);
    RadiiModel r;
    r.k1 = k1;
    double gc = std::pow(std::abs(double(p.d) * p.q0() / (double(p.n) * p.a)), 1.0 / m);
    double gz = std::pow(std::abs(p.q0() / p.a), 1.0 / m);
    r.c1 = 0.5 * std::min(gc, gz);
    r.c2 = 2.0 * std::max(gc, gz);
    r.r_inner = r.c1 * std::pow(al, 1.0 / m);
    r.r_outer = r.c2 * std::pow(al, 1.0 / m);
    r.r_trap = k1 * std::pow(al, double(p.n) / m);
    r.k_esc = estimate_K(p);

    if (!(r.r_trap < r.r_inner && r.r_inner < r.r_outer && r.r_outer < r.k_esc))
        throw RegimeViolation("radius ordering r_trap < r_inner < r_outer < K failed; |lambda| too large");

    // One full iterate of the mid-circle of the annulus must land strictly
    // inside the inner circle and funnel straight out through the trap door:
    // escape within three steps of the sample.  Bouncing landings mean the
    // annulus does not map into the trap-door component at this lambda.
    double mid = std::sqrt(r.r_inner * r.r_outer);
    for (int s = 0; s < 64; ++s) {
        double ang = 2.0 * M_PI * s / 64;
        Complex z = mid * Complex{std::cos(ang), std::sin(ang)};
        SpherePoint w = eval_perturbed(p, SpherePoint::finite(z));
        if (w.at_infinity || std::abs(w.value) >= r.r_inner)
            throw RegimeViolation("annulus mid-circle does not map inside the inner circle");
        if (escape_time(p, w.value, r.k_esc, 2) == NOT_ESCAPED)
            throw RegimeViolation("annulus image does not funnel out through the trap door");
    }
    return r;
}

EscapeRecord classify_point(const MapParams& p, Complex z, const RadiiModel& radii,
                            int max_iter, int prefix_cap) {
    EscapeRecord rec;
    SpherePoint cur = SpherePoint::finite(z);
    if (prefix_cap > 0) rec.orbit_prefix.push_back(cur);
    if (std::abs(z) > radii.k_esc) {
        rec.escape_time = 0;
        rec.final_modulus = std::abs(z);
        return rec;
    }
    for (int t = 1; t <= max_iter; ++t) {
        cur = eval_perturbed(p, cur);
        if (static_cast<int>(rec.orbit_prefix.size()) < prefix_cap)
            rec.orbit_prefix.push_back(cur);
        if (cur.modulus() > radii.k_esc) {
            rec.escape_time = t;
            rec.final_modulus = cur.modulus();
            return rec;
        }
    }
    rec.final_modulus = cur.modulus();
    return rec;
}

int escape_time(const MapParams& p, Complex z, double k_esc, int max_iter) {
    SpherePoint cur = SpherePoint::finite(z);
    if (std::abs(z) > k_esc) return 0;
    for (int t = 1; t <= max_iter; ++t) {
        cur = eval_perturbed(p, cur);
        if (cur.modulus() > k_esc) return t;
    }
    return NOT_ESCAPED;
}

}  // namespace fatou
