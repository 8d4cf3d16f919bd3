#include <doctest.h>

#include "fatou/orbits.hpp"

using namespace fatou;

namespace {

MapParams milnor(Complex lambda = Complex{}) {
    MapParams p;
    p.n = 2;
    p.d = 3;
    p.a = Complex{1.0, 0.0};
    p.q = {Complex{1.0, 0.0}};
    p.lambda = lambda;
    return p;
}

}  // namespace

TEST_CASE("escape radius estimate") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    double k = estimate_K(p);
    CHECK(k <= 4.0);  // |z^2(z-1)| >= 2|z| already holds from radius 3

    // insensitive to shrinking lambda
    MapParams p2 = milnor(Complex{1e-11, 0.0});
    CHECK(estimate_K(p2) == k);

    // Blaschke-type Q still terminates
    MapParams pb;
    pb.n = 2;
    pb.d = 3;
    pb.a = Complex{0.5, 0.0};
    pb.q = {Complex{1.0, 0.0}, Complex{-0.5, 0.0}};
    pb.lambda = Complex{2e-8, 0.0};
    CHECK_NOTHROW(estimate_K(pb));
}

TEST_CASE("radii model values") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    RadiiModel r = radii_model(p, 1.0);
    CHECK(r.c1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.c2 == doctest::Approx(2.1689435).epsilon(1e-6));
    CHECK(r.r_trap == doctest::Approx(1e-4).epsilon(1e-10));
    CHECK(r.r_inner == doctest::Approx(0.5e-2).epsilon(1e-10));
    CHECK(r.r_outer == doctest::Approx(2.1689435e-2).epsilon(1e-6));
    CHECK(r.r_trap < r.r_inner);
    CHECK(r.r_inner < r.r_outer);
    CHECK(r.r_outer < r.k_esc);

    // trap/inner ratio shrinks as lambda does (exponent (n-1)/(n+d) > 0)
    RadiiModel r2 = radii_model(milnor(Complex{1e-12, 0.0}), 1.0);
    CHECK(r2.r_trap / r2.r_inner < r.r_trap / r.r_inner);
}

TEST_CASE("radii model rejects large lambda") {
    CHECK_THROWS_AS(radii_model(milnor(Complex{0.5, 0.0}), 1.0), RegimeViolation);
}

TEST_CASE("point classification") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    RadiiModel r = radii_model(p, 1.0);

    EscapeRecord far = classify_point(p, Complex{10.0, 0.0}, r, 100);
    CHECK(far.escape_time == 0);

    EscapeRecord pole = classify_point(p, Complex{}, r, 100);
    CHECK(pole.escape_time == 1);  // the pole maps straight to infinity

    // trap-door disk samples leave within two steps
    for (int s = 0; s < 32; ++s) {
        double ang = 2 * M_PI * s / 32;
        Complex z = 0.7 * r.r_trap * Complex{std::cos(ang), std::sin(ang)};
        EscapeRecord e = classify_point(p, z, r, 100);
        CHECK(e.escape_time >= 1);
        CHECK(e.escape_time <= 2);
    }

    // annulus mid-circle samples pass through the trap door and out
    double mid = std::sqrt(r.r_inner * r.r_outer);
    for (int s = 0; s < 32; ++s) {
        double ang = 2 * M_PI * s / 32;
        Complex z = mid * Complex{std::cos(ang), std::sin(ang)};
        EscapeRecord e = classify_point(p, z, r, 100);
        CHECK(e.escape_time >= 2);
        CHECK(e.escape_time <= 3);
    }
}

TEST_CASE("escape monotonicity and conjugation symmetry") {
    MapParams p = milnor(Complex{1e-8, 0.0});
    RadiiModel r = radii_model(p, 1.0);
    for (int s = 0; s < 500; ++s) {
        Complex z{-1.5 + 3.0 * (s % 25) / 24.0, -1.5 + 3.0 * (s / 25) / 19.0};
        int t = escape_time(p, z, r.k_esc, 200);
        if (t >= 1) {
            SpherePoint w = eval_perturbed(p, SpherePoint::finite(z));
            int t1 = w.at_infinity ? 0 : escape_time(p, w.value, r.k_esc, 200);
            CHECK(t1 == t - 1);
        }
        // real coefficients: conjugation preserves escape times
        int tc = escape_time(p, std::conj(z), r.k_esc, 200);
        CHECK(tc == t);
    }
}

TEST_CASE("orbit prefix bookkeeping") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    RadiiModel r = radii_model(p, 1.0);
    EscapeRecord e = classify_point(p, Complex{0.01, 0.0}, r, 50, 8);
    CHECK(e.escape_time >= 1);
    CHECK(int(e.orbit_prefix.size()) <= 8);
    CHECK(!e.orbit_prefix.empty());
    CHECK(e.final_modulus > r.k_esc);
}
