#include <doctest.h>

#include <algorithm>

#include "fatou/roots.hpp"
#include "oracles.hpp"

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

TEST_CASE("poly_roots on closed forms") {
    auto r = poly_roots({Complex{-1.0, 0.0}, Complex{}, Complex{1.0, 0.0}});  // z^2 - 1
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(r[0] - Complex{-1.0, 0.0}) < 1e-12);
    CHECK(std::abs(r[1] - Complex{1.0, 0.0}) < 1e-12);

    // z^5 - 1e-10: radicals, fifth-roots-of-unity phases
    Poly p(6, Complex{});
    p[0] = Complex{-1e-10, 0.0};
    p[5] = Complex{1.0, 0.0};
    auto rr = poly_roots(p);
    REQUIRE(rr.size() == 5);
    for (const auto& root : rr) CHECK(std::abs(root) == doctest::Approx(1e-2).epsilon(1e-10));
    std::vector<double> phases;
    for (const auto& root : rr) phases.push_back(std::arg(root));
    std::sort(phases.begin(), phases.end());
    for (size_t i = 1; i < phases.size(); ++i)
        CHECK(phases[i] - phases[i - 1] == doctest::Approx(2 * M_PI / 5).epsilon(1e-9));
}

TEST_CASE("poly_roots resolves two scales in one polynomial") {
    // 3 z^6 - 2 z^5 - 3e-10: five tiny ring roots plus one near 2/3
    Poly p(7, Complex{});
    p[0] = Complex{-3e-10, 0.0};
    p[5] = Complex{-2.0, 0.0};
    p[6] = Complex{3.0, 0.0};
    auto r = poly_roots(p);
    REQUIRE(r.size() == 6);
    std::sort(r.begin(), r.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    // ring modulus bracketed by the argument-principle oracle
    CHECK(oracles::roots_inside(p, 2e-2) == 5);
    double ring_mod = oracles::modulus_where_count(p, 5, 1e-3, 2e-2);
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(r[i]) == doctest::Approx(ring_mod).epsilon(5e-3));
    CHECK(std::abs(r[5] - Complex{2.0 / 3.0, 0.0}) < 1e-9);
}

TEST_CASE("exact origin roots are factored out") {
    // z^5 (3z - 2)
    Poly p(7, Complex{});
    p[5] = Complex{-2.0, 0.0};
    p[6] = Complex{3.0, 0.0};
    auto r = poly_roots(p);
    REQUIRE(r.size() == 6);
    int zeros = 0;
    for (const auto& root : r)
        if (root == Complex{}) ++zeros;
    CHECK(zeros == 5);
}

TEST_CASE("asymptotic ring predictions") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    auto ac = asymptotic_critical(p);
    REQUIRE(ac.size() == 5);
    double want = std::pow(1.5, 0.2) * 1e-2;
    for (const auto& c : ac) CHECK(std::abs(c) == doctest::Approx(want).epsilon(1e-12));
    // consecutive phases differ by exactly 2 pi / (n+d)
    for (size_t i = 1; i < ac.size(); ++i) {
        double dphi = std::arg(ac[i] / ac[i - 1]);
        CHECK(dphi == doctest::Approx(2 * M_PI / 5).epsilon(1e-12));
    }

    auto az = asymptotic_zeros(p);
    REQUIRE(az.size() == 5);
    for (const auto& z : az) CHECK(std::abs(z) == doctest::Approx(1e-2).epsilon(1e-12));
    // real positive lambda, xi = 1: prediction real positive
    CHECK(az[0].real() > 0);
    CHECK(az[0].imag() == doctest::Approx(0.0));
}

TEST_CASE("pairing residual shrinks with lambda (little-o behaviour)") {
    auto residual = [&](double lam) {
        MapParams p = milnor(Complex{lam, 0.0});
        auto roots = poly_roots(critical_numerator_poly(p));
        auto pred = asymptotic_critical(p);
        auto matched = pair_to_asymptotics(roots, pred);
        double worst = 0.0;
        for (size_t i = 0; i < pred.size(); ++i)
            worst = std::max(worst, std::abs(matched[i] - pred[i]));
        return worst / std::pow(lam, 0.2);
    };
    double r6 = residual(1e-6);
    double r12 = residual(1e-12);
    CHECK(r12 * 10.0 <= r6);
}

TEST_CASE("greedy pairing agrees with the optimal assignment") {
    MapParams p = milnor(Complex{1e-8, 0.0});
    auto roots = poly_roots(zeros_poly(p));
    auto pred = asymptotic_zeros(p);
    auto matched = pair_to_asymptotics(roots, pred);
    double worst = 0.0;
    for (size_t i = 0; i < pred.size(); ++i)
        worst = std::max(worst, std::abs(matched[i] - pred[i]));
    // keep the oracle cheap: only the five ring roots permute
    std::vector<Complex> ring(roots.begin(), roots.end());
    ring.erase(std::remove_if(ring.begin(), ring.end(),
                              [](Complex z) { return std::abs(z) > 0.5; }),
               ring.end());
    REQUIRE(ring.size() == 5);
    double optimal = oracles::optimal_matching_cost(pred, ring);
    CHECK(worst == doctest::Approx(optimal).epsilon(1e-9));
}

TEST_CASE("distinguished points") {
    // unperturbed free critical point of the Milnor family: a n / (n+1)
    MapParams p0 = milnor();
    CHECK(std::abs(unperturbed_free_critical(p0) - Complex{2.0 / 3.0, 0.0}) < 1e-12);

    CriticalSet cs0 = critical_set(p0);
    CHECK(cs0.free_ring.empty());
    CHECK(std::abs(cs0.nu_lambda - cs0.nu_zero) == 0.0);
    CHECK(std::abs(cs0.w_lambda - p0.a) == 0.0);

    MapParams p = milnor(Complex{1e-10, 0.0});
    CriticalSet cs = critical_set(p);
    REQUIRE(cs.free_ring.size() == 5);
    REQUIRE(cs.ring_zeros.size() == 5);
    for (const auto& c : cs.free_ring)
        CHECK(std::abs(c) == doctest::Approx(std::pow(1.5, 0.2) * 1e-2).epsilon(1e-3));
    CHECK(std::abs(cs.nu_lambda - Complex{2.0 / 3.0, 0.0}) < 1e-6);
    CHECK(cs.infinity_side.empty());
    CHECK(std::abs(cs.w_lambda - p.a) < 1e-9);

    // implicit-function continuity: drift shrinks with lambda
    MapParams p2 = milnor(Complex{1e-12, 0.0});
    CriticalSet cs2 = critical_set(p2);
    CHECK(std::abs(cs2.nu_lambda - Complex{2.0 / 3.0, 0.0}) <
          std::abs(cs.nu_lambda - Complex{2.0 / 3.0, 0.0}));
}

TEST_CASE("blaschke family splits ring and infinity-side critical points") {
    MapParams p;
    p.n = 2;
    p.d = 3;
    p.a = Complex{0.5, 0.0};
    p.q = {Complex{1.0, 0.0}, Complex{-0.5, 0.0}};
    p.lambda = Complex{2e-8, 0.0};
    CriticalSet cs = critical_set(p);
    CHECK(cs.free_ring.size() == 5);
    CHECK(cs.infinity_side.size() == 1);  // continuation of the outer critical point
    CHECK(std::abs(cs.nu_zero) < 1.0);
    CHECK(std::abs(cs.infinity_side[0]) > 1.0);
}

TEST_CASE("ring containment between the straight circles") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    CriticalSet cs = critical_set(p);
    double c1 = 0.5, c2 = 2.0 * std::pow(1.5, 0.2);
    double lo = c1 * 1e-2, hi = c2 * 1e-2;
    for (const auto& c : cs.free_ring) {
        CHECK(std::abs(c) > lo);
        CHECK(std::abs(c) < hi);
    }
    for (const auto& z : cs.ring_zeros) {
        CHECK(std::abs(z) > lo);
        CHECK(std::abs(z) < hi);
    }
}
