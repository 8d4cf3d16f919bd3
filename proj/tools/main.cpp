#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fatou/png.hpp"
#include "fatou/report.hpp"
#include "fatou/search.hpp"

namespace fs = std::filesystem;
using namespace fatou;

namespace {

constexpr int EXIT_CHECK_FAILURE = 1;
constexpr int EXIT_CONFIG_ERROR = 2;
constexpr int EXIT_REGIME_VIOLATION = 3;

struct SharedFlags {
    std::string config_path;
    std::string out_dir;
    int resolution = 0;
    int max_iter = 0;
    std::vector<double> window;
    bool ring = false;
    bool no_ring = false;
    int threads = -1;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
    cmd->add_option("--config", f.config_path, "run configuration file")->required();
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--resolution", f.resolution, "raster resolution (pixels per side)");
    cmd->add_option("--max-iter", f.max_iter, "render escape-time cap");
    cmd->add_option("--window", f.window, "global window CX,CY,W,H")->delimiter(',')->expected(4);
    cmd->add_flag("--ring-window", f.ring, "force the auto ring window on");
    cmd->add_flag("--no-ring-window", f.no_ring, "skip the ring window");
    cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
}

RunConfig make_config(const SharedFlags& f) {
    RunConfig cfg = load_config(f.config_path);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (f.resolution > 0) cfg.resolution = f.resolution;
    if (f.max_iter > 0) cfg.max_iter = f.max_iter;
    if (f.window.size() == 4) {
        cfg.window.center = Complex{f.window[0], f.window[1]};
        cfg.window.width = f.window[2];
        cfg.window.height = f.window[3];
    }
    if (f.ring) cfg.ring_window = true;
    if (f.no_ring) cfg.ring_window = false;
    if (f.threads >= 0) cfg.threads = f.threads;
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    return cfg;
}

void emit_pngs(const AnalysisResult& res, const RunConfig& cfg) {
    // render-quality grids use the configured cap, not the analysis cap
    LabelGrid global = rasterize(cfg.params, cfg.window, cfg.resolution,
                                 cfg.resolution, res.radii, cfg.max_iter,
                                 cfg.threads);
    write_grid_png(cfg.out_dir + "/render_global.png", global);
    if (res.has_ring) {
        LabelGrid ring = rasterize(cfg.params,
                                   ring_window(res.radii, cfg.ring_halfwidth_factor),
                                   cfg.resolution, cfg.resolution, res.radii,
                                   cfg.max_iter, cfg.threads);
        write_grid_png(cfg.out_dir + "/render_ring.png", ring);
    }
    write_grid_png(cfg.out_dir + "/components_global.png", res.global.grid,
                   ColorMode::Components);
    if (res.has_ring)
        write_grid_png(cfg.out_dir + "/components_ring.png", res.ring.grid,
                       ColorMode::Components);
}

int cmd_render(const SharedFlags& f) {
    RunConfig cfg = make_config(f);
    std::fprintf(stderr, "render: analyzing\n");
    AnalysisResult res = run_analysis(cfg);
    std::fprintf(stderr, "render: writing images\n");
    emit_pngs(res, cfg);
    write_report(cfg.out_dir + "/report.json", res);
    std::fprintf(stderr, "render: done -> %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_roots(const SharedFlags& f) {
    RunConfig cfg = make_config(f);
    const MapParams& p = cfg.params;
    CriticalSet crit = critical_set(p);
    Json j;
    j["schema_version"] = 1;
    j["nu_zero"] = json_complex(crit.nu_zero);
    j["nu_lambda"] = json_complex(crit.nu_lambda);
    j["w_lambda"] = json_complex(crit.w_lambda);
    Json ring = Json::array(), zeros = Json::array(), inf = Json::array();
    for (const auto& c : crit.free_ring) ring.push_back(json_complex(c));
    for (const auto& c : crit.ring_zeros) zeros.push_back(json_complex(c));
    for (const auto& c : crit.infinity_side) inf.push_back(json_complex(c));
    j["free_ring"] = ring;
    j["ring_zeros"] = zeros;
    j["infinity_side"] = inf;
    if (p.perturbed()) {
        Json ac = Json::array(), az = Json::array();
        for (const auto& c : asymptotic_critical(p)) ac.push_back(json_complex(c));
        for (const auto& c : asymptotic_zeros(p)) az.push_back(json_complex(c));
        j["asymptotic_critical"] = ac;
        j["asymptotic_zeros"] = az;
    }
    std::string out = j.dump(2) + "\n";
    std::ofstream file(cfg.out_dir + "/roots.json", std::ios::binary);
    file << out;
    std::cout << out;
    return 0;
}

int cmd_verify(const SharedFlags& f) {
    RunConfig cfg = make_config(f);
    std::fprintf(stderr, "verify: analyzing\n");
    AnalysisResult res = run_analysis(cfg);
    emit_pngs(res, cfg);
    write_report(cfg.out_dir + "/report.json", res);
    for (const auto& c : res.checks)
        std::printf("%-34s %s  %s\n", c.name.c_str(),
                    c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL"),
                    c.details.c_str());
    return res.all_pass() ? 0 : EXIT_CHECK_FAILURE;
}

int cmd_itinerary(const SharedFlags& f) {
    RunConfig cfg = make_config(f);
    AnalysisResult res = run_analysis(cfg);
    write_report(cfg.out_dir + "/report.json", res);
    std::printf("k = %d  surrounds = %s  terminal = %s\n", res.itinerary.k,
                res.itinerary.u_nu_surrounds ? "yes" : "no",
                res.itinerary.terminal == ItineraryRecord::Terminal::LANDS_IN_A
                    ? "LANDS_IN_A"
                    : res.itinerary.terminal == ItineraryRecord::Terminal::LANDS_IN_UD
                          ? "LANDS_IN_UD"
                          : "NOT_CAPTURED");
    for (size_t s = 0; s < res.itinerary.steps.size(); ++s)
        std::printf("  step %zu: %s\n", s + 1, region_name(res.itinerary.steps[s]));
    return 0;
}

int cmd_enumerate(const SharedFlags& f, int k_opt) {
    RunConfig cfg = make_config(f);
    int k = k_opt;
    if (k < 1) {
        AnalysisResult res = run_analysis(cfg);
        k = res.itinerary.k;
        if (k < 1) {
            std::fprintf(stderr, "enumerate: no capture depth measured; pass --k\n");
            return EXIT_CHECK_FAILURE;
        }
    }
    auto witnesses = enumerate_attainable(cfg.params, k, cfg.witness_imax,
                                          cfg.witness_jmax, cfg.witness_lmax);
    std::printf("k = %d\n", k);
    for (const auto& w : witnesses) {
        if (w.status == WitnessStatus::EXCLUDED) continue;
        if (w.overflow)
            std::printf("  (%d,%d,%d)  kappa overflow  %s\n", w.i, w.j, w.l,
                        status_name(w.status));
        else
            std::printf("  (%d,%d,%d)  kappa = %llu  %s\n", w.i, w.j, w.l, w.kappa,
                        status_name(w.status));
    }
    return 0;
}

int cmd_search(const SharedFlags& f, int i, int j, int l, double t_hi, double t_lo) {
    RunConfig cfg = make_config(f);
    double angle = cfg.params.perturbed() ? std::arg(cfg.params.lambda) : M_PI;
    std::fprintf(stderr, "search: hunting (i,j,l) = (%d,%d,%d) on ray angle %.4f\n",
                 i, j, l, angle);
    SearchResult res = realize_connectivity(cfg, i, j, l, angle, t_hi, t_lo);
    std::printf("lambda = %.17g %+.17gi  (m = %d, k = %d)\n",
                res.lambda_found.real(), res.lambda_found.imag(), res.m,
                res.verification.k);
    std::printf("kappa = %llu  %s  measured: %s\n", res.requested.kappa,
                status_name(res.requested.status),
                res.measured_found ? "yes" : "predicted only");
    Json out;
    out["schema_version"] = 1;
    out["lambda"] = json_complex(res.lambda_found);
    out["m"] = res.m;
    out["k"] = res.verification.k;
    out["requested"] = Json{{"i", i}, {"j", j}, {"l", l}, {"kappa", res.requested.kappa}};
    out["measured_found"] = res.measured_found;
    Json scan = Json::array();
    for (const auto& s : res.scan)
        scan.push_back(Json{{"t", s.t}, {"ring_index", s.ring_index}});
    out["scan"] = scan;
    std::ofstream file(cfg.out_dir + "/search.json", std::ios::binary);
    file << out.dump(2) << "\n";
    RunConfig found = cfg;
    found.params.lambda = res.lambda_found;
    emit_pngs(res.analysis, found);
    write_report(cfg.out_dir + "/report.json", res.analysis);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Connectivity of Fatou components for singularly perturbed rational maps"};
    app.require_subcommand(1);

    SharedFlags f;
    int en_k = 0;
    int si = 0, sj = 1, sl = 0;
    double t_hi = 1e-3, t_lo = 1e-12;

    CLI::App* render = app.add_subcommand("render", "escape-time images plus JSON sidecar");
    add_shared(render, f);
    CLI::App* roots = app.add_subcommand("roots", "critical points, zeros and asymptotics");
    add_shared(roots, f);
    CLI::App* verify = app.add_subcommand("verify", "full invariant suite, exit 0 iff all pass");
    add_shared(verify, f);
    CLI::App* itinerary = app.add_subcommand("itinerary", "free critical orbit itinerary");
    add_shared(itinerary, f);
    CLI::App* enumerate = app.add_subcommand("enumerate", "attainable connectivity table");
    add_shared(enumerate, f);
    enumerate->add_option("--k", en_k, "capture depth (measured when omitted)");
    CLI::App* search = app.add_subcommand("search", "find lambda realizing a connectivity");
    add_shared(search, f);
    search->add_option("--i", si, "exponent of n+1");
    search->add_option("--j", sj, "exponent of d");
    search->add_option("--l", sl, "exponent of n");
    search->add_option("--t-hi", t_hi, "scan start |lambda|");
    search->add_option("--t-lo", t_lo, "scan floor |lambda|");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? EXIT_CONFIG_ERROR : 0;
    }

    try {
        if (render->parsed()) return cmd_render(f);
        if (roots->parsed()) return cmd_roots(f);
        if (verify->parsed()) return cmd_verify(f);
        if (itinerary->parsed()) return cmd_itinerary(f);
        if (enumerate->parsed()) return cmd_enumerate(f, en_k);
        if (search->parsed()) return cmd_search(f, si, sj, sl, t_hi, t_lo);
    } catch (const RegimeViolation& e) {
        std::fprintf(stderr, "regime violation: %s\n", e.what());
        return EXIT_REGIME_VIOLATION;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG_ERROR;
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return EXIT_CONFIG_ERROR;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return EXIT_CHECK_FAILURE;
    }
    return 0;
}
