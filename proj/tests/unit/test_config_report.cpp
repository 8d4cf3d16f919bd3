#include <doctest.h>

#include "fatou/png.hpp"
#include "fatou/report.hpp"

using namespace fatou;

namespace {

const char* kSample =
    "# Milnor archetype\n"
    "n = 2\n"
    "d = 3\n"
    "a_re = 0.9\n"
    "a_im = 0.6\n"
    "q_re = 1\n"
    "lambda_re = -1e-7\n"
    "lambda_im = 0\n"
    "window_cx = 0.3\n"
    "window_cy = 0.2\n"
    "window_w = 2.6\n"
    "window_h = 2.6\n"
    "resolution = 256\n"
    "max_iter = 200\n"
    "k1 = 1.0\n";

}  // namespace

TEST_CASE("config parsing") {
    RunConfig c = parse_config(kSample);
    CHECK(c.params.n == 2);
    CHECK(c.params.d == 3);
    CHECK(c.params.a == Complex{0.9, 0.6});
    CHECK(c.params.lambda == Complex{-1e-7, 0.0});
    CHECK(c.window.width == 2.6);
    CHECK(c.resolution == 256);
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_config("nonsense = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("n = x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("n = 2\nn = 3\n"), ConfigError);
    // condition (a): Q(0) != 0
    std::string bad = std::string(kSample) + "q_re = 0,1\n";
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    // resolution floor
    CHECK_THROWS_AS(parse_config(std::string(kSample) + "resolution = 16\n"),
                    ConfigError);
}

TEST_CASE("report round-trips floats exactly") {
    RunConfig cfg = parse_config(kSample);
    cfg.resolution = 96;
    cfg.escape_samples = 500;
    cfg.record_floor_px = 16;
    AnalysisResult res = run_analysis(cfg);
    std::string text = report_string(res);
    Json back = Json::parse(text);

    CHECK(complex_from_json(back["params"]["lambda"]) == cfg.params.lambda);
    CHECK(complex_from_json(back["params"]["a"]) == cfg.params.a);
    CHECK(back["radii"]["k_esc"].get<double>() == res.radii.k_esc);
    CHECK(back["radii"]["r_outer"].get<double>() == res.radii.r_outer);
    CHECK(complex_from_json(back["roots"]["nu_lambda"]) == res.crit.nu_lambda);
    for (size_t i = 0; i < res.crit.free_ring.size(); ++i)
        CHECK(complex_from_json(back["roots"]["free_ring"][i]) == res.crit.free_ring[i]);
    CHECK(back["itinerary"]["k"].get<int>() == res.itinerary.k);

    // serialization is stable
    CHECK(report_string(res) == text);
}

TEST_CASE("png encoder emits a valid deterministic stream") {
    std::vector<uint8_t> img(16 * 16 * 3, 0);
    for (size_t i = 0; i < img.size(); i += 3) img[i] = uint8_t(i);
    auto a = encode_png_rgb8(img.data(), 16, 16);
    auto b = encode_png_rgb8(img.data(), 16, 16);
    CHECK(a == b);
    REQUIRE(a.size() > 8);
    const uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    for (int i = 0; i < 8; ++i) CHECK(a[i] == sig[i]);
}
