// Test-only oracles, independent of the library implementation paths they
// check: extended-precision map evaluation, argument-principle root
// counting, and brute-force optimal assignment for small matchings.
#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include "fatou/map.hpp"

namespace oracles {

using LComplex = std::complex<long double>;

// term-by-term evaluation of z^n (z-a)/Q + lambda/z^d in long double
inline LComplex eval_extended(const fatou::MapParams& p, LComplex z) {
    LComplex q{};
    for (size_t i = p.q.size(); i-- > 0;)
        q = q * z + LComplex{p.q[i].real(), p.q[i].imag()};
    LComplex zn{1.0L};
    for (int i = 0; i < p.n; ++i) zn *= z;
    LComplex a{p.a.real(), p.a.imag()};
    LComplex out = zn * (z - a) / q;
    if (p.lambda != fatou::Complex{}) {
        LComplex zd{1.0L};
        for (int i = 0; i < p.d; ++i) zd *= z;
        out += LComplex{p.lambda.real(), p.lambda.imag()} / zd;
    }
    return out;
}

// winding number of P over the circle |z| = r = number of roots inside,
// computed from the accumulated argument over a dense sampling
inline long roots_inside(const fatou::Poly& poly, double r, int samples = 1 << 14) {
    long double total = 0.0L;
    LComplex prev{};
    for (int s = 0; s <= samples; ++s) {
        long double ang = 2.0L * M_PIl * s / samples;
        LComplex z = LComplex{r * std::cos((double)ang), r * std::sin((double)ang)};
        LComplex v{};
        for (size_t i = poly.size(); i-- > 0;)
            v = v * z + LComplex{poly[i].real(), poly[i].imag()};
        if (s > 0) total += std::arg((std::complex<long double>)(v / prev));
        prev = v;
    }
    return std::lround((double)(total / (2.0L * M_PIl)));
}

// bisection on the radius until exactly `count` roots lie inside
inline double modulus_where_count(const fatou::Poly& poly, long count, double lo,
                                  double hi) {
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (roots_inside(poly, mid) >= count) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// optimal assignment (minimal worst pair distance) by brute force; returns
// the minimal over permutations of the maximal pair distance
inline double optimal_matching_cost(const std::vector<fatou::Complex>& a,
                                    const std::vector<fatou::Complex>& b) {
    std::vector<int> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace oracles
