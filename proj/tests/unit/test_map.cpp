#include <doctest.h>

#include "fatou/map.hpp"
#include "oracles.hpp"

using namespace fatou;

namespace {

MapParams milnor(Complex lambda = Complex{}, Complex a = Complex{1.0, 0.0}) {
    MapParams p;
    p.n = 2;
    p.d = 3;
    p.a = a;
    p.q = {Complex{1.0, 0.0}};
    p.lambda = lambda;
    return p;
}

}  // namespace

TEST_CASE("parameter invariants") {
    MapParams p = milnor();
    CHECK_NOTHROW(p.validate());

    MapParams bad = p;
    bad.n = 2;
    bad.d = 2;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);  // 1/n + 1/d = 1

    bad = p;
    bad.a = Complex{};
    CHECK_THROWS_AS(bad.validate(), InvalidParams);

    bad = p;
    bad.q = {Complex{}};  // Q(0) = 0
    CHECK_THROWS_AS(bad.validate(), InvalidParams);

    bad = p;
    bad.q = {Complex{1.0, 0.0}, Complex{}, Complex{1.5, 0.0}};  // |b_n| >= 1
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
}

TEST_CASE("unperturbed evaluation reduces to the plain rational") {
    MapParams p = milnor();
    SpherePoint w = eval_perturbed(p, SpherePoint::finite(Complex{2.0, 0.0}));
    CHECK(!w.at_infinity);
    CHECK(w.value.real() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(w.value.imag() == doctest::Approx(0.0));

    // lambda = 0 consistency against the direct formula over a point cloud
    for (int s = 0; s < 200; ++s) {
        double x = -2.0 + 4.0 * (s % 20) / 19.0;
        double y = -2.0 + 4.0 * (s / 20) / 9.0;
        Complex z{x, y};
        if (std::abs(z) < 1e-3) continue;
        Complex direct = z * z * (z - p.a);
        SpherePoint got = eval_perturbed(p, SpherePoint::finite(z));
        REQUIRE(!got.at_infinity);
        CHECK(std::abs(got.value - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("pole and infinity handling") {
    MapParams p = milnor(Complex{1e-6, 0.0});
    CHECK(eval_perturbed(p, SpherePoint::finite(Complex{})).at_infinity);
    CHECK(eval_perturbed(p, SpherePoint::infinity()).at_infinity);
}

TEST_CASE("perturbed evaluation against the extended-precision oracle") {
    MapParams p = milnor(Complex{1e-6, 0.0});
    SpherePoint w = eval_perturbed(p, SpherePoint::finite(Complex{0.01, 0.0}));
    REQUIRE(!w.at_infinity);
    CHECK(w.value.real() == doctest::Approx(0.999901).epsilon(1e-9));

    for (int s = 0; s < 100; ++s) {
        double r = std::pow(10.0, -4.0 + 4.0 * s / 99.0);
        Complex z = r * Complex{std::cos(0.7 * s), std::sin(0.7 * s)};
        auto want = oracles::eval_extended(p, {z.real(), z.imag()});
        SpherePoint got = eval_perturbed(p, SpherePoint::finite(z));
        REQUIRE(!got.at_infinity);
        double scale = std::max(1.0, (double)std::abs(want));
        CHECK(std::abs(got.value - Complex{(double)want.real(), (double)want.imag()}) <=
              1e-12 * scale);
    }
}

TEST_CASE("critical numerator polynomial") {
    MapParams p = milnor(Complex{1e-8, 0.0});
    Poly cp = critical_numerator_poly(p);
    // 3 z^6 - 2 z^5 - 3 lambda for the n=2, d=3, Q = 1, a = 1 family
    REQUIRE(poly_degree(cp) == 6);
    CHECK(std::abs(cp[6] - Complex{3.0, 0.0}) < 1e-15);
    CHECK(std::abs(cp[5] - Complex{-2.0, 0.0}) < 1e-15);
    CHECK(std::abs(cp[0] - Complex{-3e-8, 0.0}) < 1e-22);
    for (int i = 1; i <= 4; ++i) CHECK(std::abs(cp[i]) == 0.0);

    // lambda = 0: z^5 (3z - 2)
    MapParams p0 = milnor();
    Poly cp0 = critical_numerator_poly(p0);
    CHECK(std::abs(poly_eval(cp0, Complex{2.0 / 3.0, 0.0})) < 1e-14);
    for (int i = 0; i <= 4; ++i) CHECK(std::abs(cp0[i]) == 0.0);
}

TEST_CASE("zeros polynomial") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    Poly zp = zeros_poly(p);
    REQUIRE(poly_degree(zp) == 6);
    CHECK(std::abs(zp[6] - Complex{1.0, 0.0}) == 0.0);
    CHECK(std::abs(zp[5] - Complex{-1.0, 0.0}) == 0.0);
    CHECK(std::abs(zp[0] - Complex{1e-10, 0.0}) == 0.0);
    CHECK_THROWS_AS(zeros_poly(milnor()), InvalidParams);
}

TEST_CASE("degree bookkeeping with nontrivial Q") {
    // Blaschke-style Q(z) = 1 - conj(a) z
    MapParams p;
    p.n = 2;
    p.d = 3;
    p.a = Complex{0.5, 0.0};
    p.q = {Complex{1.0, 0.0}, Complex{-0.5, 0.0}};
    p.lambda = Complex{2e-8, 0.0};
    Poly cp = critical_numerator_poly(p);
    // d + 1 + n + deg Q = 3 + 1 + 2 + 1
    CHECK(poly_degree(cp) == 7);
    Poly zp = zeros_poly(p);
    CHECK(poly_degree(zp) == p.n + p.d + 1);
}

TEST_CASE("derivative evaluation matches a finite difference") {
    MapParams p = milnor(Complex{1e-7, 0.0});
    Complex z{0.31, 0.17};
    double h = 1e-7;
    SpherePoint fp = eval_perturbed(p, SpherePoint::finite(z + h));
    SpherePoint fm = eval_perturbed(p, SpherePoint::finite(z - h));
    Complex fd = (fp.value - fm.value) / (2 * h);
    SpherePoint dv = eval_derivative(p, z);
    REQUIRE(!dv.at_infinity);
    CHECK(std::abs(dv.value - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
}
