#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fatou {

using Complex = std::complex<double>;

// Polynomial coefficients in ascending degree order.
using Poly = std::vector<Complex>;

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IndeterminateValue : std::domain_error {
    using std::domain_error::domain_error;
};

// Point on the Riemann sphere: a finite complex value or the point at
// infinity, never both.
struct SpherePoint {
    Complex value{};
    bool at_infinity = false;

    static SpherePoint infinity() { return {Complex{}, true}; }
    static SpherePoint finite(Complex z) { return {z, false}; }
    double modulus() const {
        return at_infinity ? std::numeric_limits<double>::infinity()
                           : std::abs(value);
    }
};

// One map of the family  z^n (z - a) / Q(z) + lambda / z^d.
// lambda == 0 selects the unperturbed rational map.
struct MapParams {
    int n = 2;
    int d = 3;
    Complex a{1.0, 0.0};
    Poly q{Complex{1.0, 0.0}};  // b_0 .. b_m, m <= n
    Complex lambda{0.0, 0.0};

    Complex q0() const { return q.empty() ? Complex{} : q[0]; }
    // coefficient of z^n in Q (zero when deg Q < n)
    Complex bn() const {
        return static_cast<int>(q.size()) > n ? q[n] : Complex{};
    }
    bool perturbed() const { return lambda != Complex{}; }

    // Throws InvalidParams unless:
    //   n, d >= 2 with 1/n + 1/d < 1,  a != 0,  deg Q <= n,
    //   Q(0) != 0,  |b_n| < 1.
    void validate() const;
};

Complex poly_eval(const Poly& p, Complex z);
Poly poly_derivative(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& p, Complex s);
Poly poly_shift(const Poly& p, int k);  // multiply by z^k
int poly_degree(const Poly& p);         // index of last nonzero coefficient

// Perturbed map, evaluated as a (numerator, denominator) pair with the
// division last so that values near the pole do not overflow.
// z = 0 with lambda != 0 maps to infinity; z = infinity maps to infinity.
// Throws IndeterminateValue when numerator and denominator vanish together
// (degenerate Q).
SpherePoint eval_perturbed(const MapParams& p, const SpherePoint& z);

// Unperturbed map z^n (z - a) / Q(z) regardless of p.lambda.
SpherePoint eval_unperturbed(const MapParams& p, const SpherePoint& z);

// Derivative of the perturbed map at a finite point.
SpherePoint eval_derivative(const MapParams& p, Complex z);

// z^{d+1} [ (n+1) z^n Q - z^{n+1} Q' - a n z^{n-1} Q + a z^n Q' ] - lambda d Q^2.
// For lambda != 0 its roots are exactly the finite free critical points.
Poly critical_numerator_poly(const MapParams& p);

// z^{n+d} (z - a) + lambda Q(z); roots are all zeros of the perturbed map.
Poly zeros_poly(const MapParams& p);

// (n+1) z Q - z^2 Q' - a n Q + a z Q'; roots are the finite nonzero
// critical points of the unperturbed map.
Poly unperturbed_critical_poly(const MapParams& p);

}  // namespace fatou
