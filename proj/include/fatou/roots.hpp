#pragma once

#include "fatou/map.hpp"

namespace fatou {

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguousPartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All critical points and zeros of one perturbed map, split into the
// perturbation-born ring near the origin, the distinguished continuations
// nu_lambda / w_lambda, and the critical points that stay on the infinity
// side of the plane.
struct CriticalSet {
    std::vector<Complex> free_ring;   // n+d roots paired 1:1 with ring asymptotics
    Complex nu_lambda{};              // continuation of nu_0
    Complex nu_zero{};                // unperturbed free critical point in the basin of 0
    Complex w_lambda{};               // zero continuing w_0 = a
    std::vector<Complex> ring_zeros;  // n+d zeros paired with their asymptotics
    std::vector<Complex> infinity_side;
};

// All complex roots, simultaneous Ehrlich-Aberth iteration with a fixed
// initial configuration on a circle sized by the Cauchy bound.  Exact roots
// at the origin are factored out first.  Deterministic for identical input.
// Each root satisfies |P(r)| < tol * max_i |c_i|; throws NoConvergence after
// max_iter sweeps.
std::vector<Complex> poly_roots(const Poly& coeffs, double tol = 1e-12,
                                int max_iter = 1000);

// First-order ring predictions xi (d Q(0) / (-n a))^{1/(n+d)} lambda^{1/(n+d)}
// over all (n+d)-th roots of unity xi; principal branch throughout.
std::vector<Complex> asymptotic_critical(const MapParams& p);

// Same with constant (Q(0)/a)^{1/(n+d)} for the zeros.
std::vector<Complex> asymptotic_zeros(const MapParams& p);

// Nearest-neighbour pairing of roots to predictions, injective by
// construction; throws AmbiguousPartition when two predictions claim the
// same root.  Returns roots reordered so entry k matches prediction k.
std::vector<Complex> pair_to_asymptotics(const std::vector<Complex>& roots,
                                         const std::vector<Complex>& predictions);

// Unperturbed free critical point nu_0: the root of
// unperturbed_critical_poly whose forward orbit converges to 0.
Complex unperturbed_free_critical(const MapParams& p);

// Partition of the critical and zero root lists.  For lambda == 0 returns
// the degenerate set (empty ring, nu_lambda = nu_0, w_lambda = a).
CriticalSet identify_distinguished(const MapParams& p,
                                   const std::vector<Complex>& all_critical,
                                   const std::vector<Complex>& all_zeros);

// Convenience: solve both polynomials and partition.
CriticalSet critical_set(const MapParams& p);

}  // namespace fatou
