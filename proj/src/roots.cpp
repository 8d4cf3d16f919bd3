#include "fatou/roots.hpp"

#include <algorithm>
#include <cmath>

namespace fatou {

namespace {

// trim exact-zero leading coefficients
Poly trimmed(const Poly& p) {
    Poly r = p;
    while (r.size() > 1 && r.back() == Complex{}) r.pop_back();
    return r;
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& coeffs, double tol, int max_iter) {
    Poly p = trimmed(coeffs);
    if (p.size() < 2 || p.back() == Complex{})
        throw InvalidParams("poly_roots needs degree >= 1 with nonzero leading coefficient");

    std::vector<Complex> roots;
    // factor out exact roots at the origin
    size_t low = 0;
    while (low + 1 < p.size() && p[low] == Complex{}) ++low;
    if (low > 0) {
        roots.assign(low, Complex{});
        p.erase(p.begin(), p.begin() + low);
    }
    const int deg = static_cast<int>(p.size()) - 1;
    if (deg == 0) return roots;
    if (deg == 1) {
        roots.push_back(-p[0] / p[1]);
        return roots;
    }

    double coeff_norm = 0.0;
    for (const auto& c : p) coeff_norm = std::max(coeff_norm, std::abs(c));

    // Cauchy bound radius, fixed angular offset so the start configuration
    // never aligns with a real-axis symmetry of the input
    double cauchy = 0.0;
    for (int i = 0; i < deg; ++i)
        cauchy = std::max(cauchy, std::abs(p[i] / p[deg]));
    double radius = 1.0 + cauchy;
    std::vector<Complex> x(deg);
    for (int k = 0; k < deg; ++k) {
        double ang = 2.0 * M_PI * k / deg + 0.41;
        x[k] = radius * Complex{std::cos(ang), std::sin(ang)};
    }

    Poly pd = poly_derivative(p);
    const double step_eps = 1e-15;
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
        double max_rel_step = 0.0;
        for (int k = 0; k < deg; ++k) {
            Complex pv = poly_eval(p, x[k]);
            if (pv == Complex{}) continue;
            Complex dv = poly_eval(pd, x[k]);
            Complex newton = (dv == Complex{}) ? Complex{} : pv / dv;
            Complex rep{};
            for (int j = 0; j < deg; ++j) {
                if (j == k) continue;
                Complex diff = x[k] - x[j];
                if (diff == Complex{}) diff = Complex{step_eps, 0.0};
                rep += 1.0 / diff;
            }
            Complex corr;
            if (dv == Complex{}) {
                // fall back to a plain Weierstrass step at a critical point
                Complex prod = p[deg];
                for (int j = 0; j < deg; ++j)
                    if (j != k) prod *= x[k] - x[j];
                corr = pv / prod;
            } else {
                corr = newton / (1.0 - newton * rep);
            }
            x[k] -= corr;
            max_rel_step = std::max(max_rel_step,
                                    std::abs(corr) / (1.0 + std::abs(x[k])));
        }
        converged = max_rel_step < step_eps;
    }
    if (!converged) {
        // accept anyway if residuals already meet the bound
        for (const auto& r : x)
            if (std::abs(poly_eval(p, r)) >= tol * coeff_norm)
                throw NoConvergence("root iteration did not settle within max_iter sweeps");
    }
    for (const auto& r : x) {
        if (std::abs(poly_eval(p, r)) >= tol * coeff_norm)
            throw NoConvergence("root residual above tolerance");
        roots.push_back(r);
    }
    return roots;
}

namespace {

std::vector<Complex> ring_predictions(const MapParams& p, Complex constant) {
    const int m = p.n + p.d;
    Complex base = std::pow(constant, 1.0 / m) * std::pow(p.lambda, 1.0 / m);
    std::vector<Complex> out(m);
    for (int k = 0; k < m; ++k) {
        double ang = 2.0 * M_PI * k / m;
        out[k] = base * Complex{std::cos(ang), std::sin(ang)};
    }
    return out;
}

}  // namespace

std::vector<Complex> asymptotic_critical(const MapParams& p) {
    p.validate();
    if (!p.perturbed()) throw InvalidParams("asymptotic_critical requires lambda != 0");
    return ring_predictions(p, double(p.d) * p.q0() / (-double(p.n) * p.a));
}

std::vector<Complex> asymptotic_zeros(const MapParams& p) {
    p.validate();
    if (!p.perturbed()) throw InvalidParams("asymptotic_zeros requires lambda != 0");
    return ring_predictions(p, p.q0() / p.a);
}

std::vector<Complex> pair_to_asymptotics(const std::vector<Complex>& roots,
                                         const std::vector<Complex>& predictions) {
    if (roots.size() < predictions.size())
        throw AmbiguousPartition("fewer roots than predictions");
    std::vector<int> taken(roots.size(), 0);
    std::vector<Complex> matched(predictions.size());
    for (size_t k = 0; k < predictions.size(); ++k) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < roots.size(); ++j) {
            double dist = std::abs(roots[j] - predictions[k]);
            if (dist < best_d) {
                best_d = dist;
                best = static_cast<int>(j);
            }
        }
        if (best < 0 || taken[best])
            throw AmbiguousPartition("nearest-root matching is not injective");
        taken[best] = 1;
        matched[k] = roots[best];
    }
    return matched;
}

Complex unperturbed_free_critical(const MapParams& p) {
    Poly cp = unperturbed_critical_poly(p);
    std::vector<Complex> cand = poly_roots(cp);
    std::vector<Complex> in_basin;
    MapParams p0 = p;
    p0.lambda = Complex{};
    for (const auto& c : cand) {
        SpherePoint z = SpherePoint::finite(c);
        bool to_zero = false;
        for (int it = 0; it < 512; ++it) {
            z = eval_unperturbed(p0, z);
            if (z.at_infinity || z.modulus() > 1e8) break;
            if (z.modulus() < 1e-10) {
                to_zero = true;
                break;
            }
        }
        if (to_zero) in_basin.push_back(c);
    }
    if (in_basin.size() != 1)
        throw AmbiguousPartition(
            "expected exactly one unperturbed critical point attracted to the origin");
    return in_basin[0];
}

CriticalSet identify_distinguished(const MapParams& p,
                                   const std::vector<Complex>& all_critical,
                                   const std::vector<Complex>& all_zeros) {
    p.validate();
    CriticalSet out;
    out.nu_zero = unperturbed_free_critical(p);
    if (!p.perturbed()) {
        out.nu_lambda = out.nu_zero;
        out.w_lambda = p.a;
        return out;
    }

    out.free_ring = pair_to_asymptotics(all_critical, asymptotic_critical(p));
    out.ring_zeros = pair_to_asymptotics(all_zeros, asymptotic_zeros(p));

    auto in_ring = [&](Complex r) {
        for (const auto& c : out.free_ring)
            if (c == r) return true;
        return false;
    };
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < all_critical.size(); ++j) {
        if (in_ring(all_critical[j])) continue;
        double dist = std::abs(all_critical[j] - out.nu_zero);
        if (dist < best_d) {
            best_d = dist;
            best = static_cast<int>(j);
        }
    }
    if (best < 0) throw AmbiguousPartition("no critical root left for nu_lambda");
    double drift_cap = std::pow(std::abs(p.lambda), 1.0 / (2.0 * (p.n + p.d)));
    if (best_d > drift_cap)
        throw AmbiguousPartition(
            "nu_lambda drifted further than |lambda|^{1/(2(n+d))} from nu_0; "
            "lambda is outside the asymptotic regime");
    out.nu_lambda = all_critical[best];
    for (size_t j = 0; j < all_critical.size(); ++j)
        if (static_cast<int>(j) != best && !in_ring(all_critical[j]))
            out.infinity_side.push_back(all_critical[j]);

    int bz = -1;
    double bz_d = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < all_zeros.size(); ++j) {
        double dist = std::abs(all_zeros[j] - p.a);
        if (dist < bz_d) {
            bz_d = dist;
            bz = static_cast<int>(j);
        }
    }
    out.w_lambda = all_zeros[bz];
    return out;
}

CriticalSet critical_set(const MapParams& p) {
    p.validate();
    if (!p.perturbed()) return identify_distinguished(p, {}, {});
    std::vector<Complex> crit = poly_roots(critical_numerator_poly(p));
    std::vector<Complex> zer = poly_roots(zeros_poly(p));
    return identify_distinguished(p, crit, zer);
}

}  // namespace fatou
