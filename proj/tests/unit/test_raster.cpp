#include <doctest.h>

#include "fatou/raster.hpp"

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

// synthetic grid: mark pixels escaping (time 1) where mask returns true,
// everything else saturated
template <typename F>
LabelGrid synthetic(int n, F mask) {
    LabelGrid g;
    g.window = Window{Complex{}, 2.0, 2.0};
    g.px = g.py = n;
    g.max_iter = 10;
    g.k_esc = 2.0;
    g.escape.assign(size_t(n) * n, SATURATED);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            if (mask(g.pixel_center(ix, iy))) g.escape[g.idx(ix, iy)] = 1;
    relabel_components(g);
    return g;
}

int id_at(const LabelGrid& g, Complex z) {
    long i = g.pixel_of(z);
    REQUIRE(i >= 0);
    return g.comp[i];
}

}  // namespace

TEST_CASE("solid disk is simply connected") {
    LabelGrid g = synthetic(128, [](Complex z) { return std::abs(z) < 0.6; });
    int id = id_at(g, Complex{});
    auto m = measure_connectivity(g, id);
    CHECK(m.connectivity == 1);
    CHECK(!m.touches_frame);
    CHECK(measure_all_connectivity(g)[id] == 1);
    CHECK(!surrounds_origin(g, id).surrounds);
    CHECK(surrounds_origin(g, id).origin_inside_component);
}

TEST_CASE("ring has one hole and surrounds the origin") {
    LabelGrid g = synthetic(128, [](Complex z) {
        double r = std::abs(z);
        return r > 0.4 && r < 0.7;
    });
    int id = id_at(g, Complex{0.55, 0.0});
    auto m = measure_connectivity(g, id);
    CHECK(m.connectivity == 2);
    CHECK(measure_all_connectivity(g)[id] == 2);
    CHECK(surrounds_origin(g, id).surrounds);
}

TEST_CASE("disk with two disks removed is triply connected") {
    LabelGrid g = synthetic(256, [](Complex z) {
        if (std::abs(z) >= 0.8) return false;
        if (std::abs(z - Complex{0.4, 0.0}) < 0.12) return false;
        if (std::abs(z - Complex{-0.4, 0.0}) < 0.12) return false;
        return true;
    });
    int id = id_at(g, Complex{0.0, 0.6});
    auto m = measure_connectivity(g, id);
    CHECK(m.connectivity == 3);  // two holes
    CHECK(measure_all_connectivity(g)[id] == 3);
}

TEST_CASE("ring with two extra punches in its band has three holes") {
    LabelGrid g = synthetic(256, [](Complex z) {
        double r = std::abs(z);
        if (r <= 0.4 || r >= 0.8) return false;
        if (std::abs(z - Complex{0.6, 0.0}) < 0.08) return false;
        if (std::abs(z - Complex{-0.6, 0.0}) < 0.08) return false;
        return true;
    });
    int id = id_at(g, Complex{0.0, 0.6});
    auto m = measure_connectivity(g, id);
    CHECK(m.connectivity == 4);  // centre hole plus the two punches
    CHECK(measure_all_connectivity(g)[id] == 4);
    CHECK(surrounds_origin(g, id).surrounds);
}

TEST_CASE("euler sweep agrees with the flood-fill oracle on every component") {
    // an awkward scene: stripes plus blobs
    LabelGrid g = synthetic(96, [](Complex z) {
        if (std::abs(z) < 0.15) return true;
        if (z.real() > 0.3 && z.real() < 0.5) return std::abs(z.imag()) < 0.8;
        if (std::abs(z - Complex{-0.5, 0.4}) < 0.2) return true;
        double r = std::abs(z - Complex{-0.3, -0.4});
        return r > 0.12 && r < 0.25;
    });
    auto fast = measure_all_connectivity(g);
    for (int id = 0; id < g.n_components; ++id)
        CHECK(fast[id] == measure_connectivity(g, id).connectivity);
}

TEST_CASE("component touching the frame is flagged") {
    LabelGrid g = synthetic(64, [](Complex z) { return z.real() > 0.2; });
    int id = id_at(g, Complex{0.8, 0.0});
    CHECK(measure_connectivity(g, id).touches_frame);
}

TEST_CASE("unperturbed raster: one escaping component, interior saturates") {
    MapParams p = milnor();  // Julia set is a quasicircle
    RadiiModel radii;
    radii.k_esc = estimate_K(p);
    LabelGrid g = rasterize(p, Window{Complex{0.2, 0.0}, 3.0, 3.0}, 256, 256, radii, 60);
    // every non-saturated pixel belongs to the single exterior component
    CHECK(g.n_components == 1);
    bool some_saturated = false;
    for (auto t : g.escape) some_saturated |= t == SATURATED;
    CHECK(some_saturated);
    // exterior touches the frame
    auto m = measure_connectivity(g, 0);
    CHECK(m.touches_frame);
}

TEST_CASE("raster output independent of thread count") {
    MapParams p = milnor(Complex{-1e-7, 0.0});
    RadiiModel radii = radii_model(p, 1.0);
    Window w{Complex{0.3, 0.2}, 2.6, 2.6};
    LabelGrid a = rasterize(p, w, 128, 128, radii, 40, 1);
    LabelGrid b = rasterize(p, w, 128, 128, radii, 40, 3);
    CHECK(a.escape == b.escape);
    CHECK(a.comp == b.comp);
}

TEST_CASE("window inside the escape zone is one zero-time component") {
    MapParams p = milnor(Complex{1e-10, 0.0});
    RadiiModel radii = radii_model(p, 1.0);
    Window w{Complex{3.0 * radii.k_esc, 0.0}, 0.5, 0.5};
    LabelGrid g = rasterize(p, w, 64, 64, radii, 20);
    CHECK(g.n_components == 1);
    for (auto t : g.escape) CHECK(t == 0);
}
