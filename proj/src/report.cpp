#include "fatou/report.hpp"

#include <fstream>

namespace fatou {

Json json_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
}

namespace {

Json json_complex_list(const std::vector<Complex>& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(json_complex(z));
    return out;
}

Json json_grid(const PlaneAnalysis& a, const std::string& name, int cap) {
    Json g;
    g["name"] = name;
    g["window"] = Json::array({a.grid.window.center.real(), a.grid.window.center.imag(),
                               a.grid.window.width, a.grid.window.height});
    g["resolution"] = Json::array({a.grid.px, a.grid.py});
    g["max_iter"] = cap;
    g["n_components"] = a.grid.n_components;
    Json comps = Json::array();
    for (const auto& r : a.records) {
        Json c;
        c["id"] = r.id;
        c["pixels"] = r.pixel_count;
        c["connectivity"] = r.connectivity;
        c["touches_frame"] = r.touches_frame;
        if (r.surrounds_known) c["surrounds_origin"] = r.surrounds_origin;
        c["role"] = role_name(r.role);
        c["forward_target"] = r.forward_target;
        c["representative"] = json_complex(r.representative);
        c["rep_escape_time"] = r.rep_escape_time;
        comps.push_back(c);
    }
    g["components"] = comps;
    g["warnings"] = a.warnings;
    return g;
}

}  // namespace

Json report_json(const AnalysisResult& res) {
    const MapParams& p = res.cfg.params;
    Json j;
    j["schema_version"] = 1;
    Json params;
    params["n"] = p.n;
    params["d"] = p.d;
    params["a"] = json_complex(p.a);
    params["q"] = json_complex_list(p.q);
    params["lambda"] = json_complex(p.lambda);
    j["params"] = params;
    j["k1"] = res.cfg.k1;
    Json radii;
    radii["k_esc"] = res.radii.k_esc;
    radii["r_trap"] = res.radii.r_trap;
    radii["r_inner"] = res.radii.r_inner;
    radii["r_outer"] = res.radii.r_outer;
    radii["c1"] = res.radii.c1;
    radii["c2"] = res.radii.c2;
    j["radii"] = radii;
    Json roots;
    roots["free_ring"] = json_complex_list(res.crit.free_ring);
    roots["ring_zeros"] = json_complex_list(res.crit.ring_zeros);
    roots["nu_lambda"] = json_complex(res.crit.nu_lambda);
    roots["nu_zero"] = json_complex(res.crit.nu_zero);
    roots["w_lambda"] = json_complex(res.crit.w_lambda);
    roots["infinity_side"] = json_complex_list(res.crit.infinity_side);
    j["roots"] = roots;
    Json grids = Json::array();
    grids.push_back(json_grid(res.global, "global", res.global_cap));
    if (res.has_ring) grids.push_back(json_grid(res.ring, "ring", res.ring_cap));
    if (res.has_disk) grids.push_back(json_grid(res.disk, "disk", res.disk_cap));
    if (res.has_inner) grids.push_back(json_grid(res.inner, "inner", res.inner_cap));
    j["grids"] = grids;
    if (res.has_ring) {
        Json it;
        it["k"] = res.itinerary.k;
        it["u_nu_surrounds"] = res.itinerary.u_nu_surrounds;
        it["terminal"] = res.itinerary.terminal == ItineraryRecord::Terminal::LANDS_IN_A
                             ? "LANDS_IN_A"
                             : res.itinerary.terminal == ItineraryRecord::Terminal::LANDS_IN_UD
                                   ? "LANDS_IN_UD"
                                   : "NOT_CAPTURED";
        Json steps = Json::array();
        for (const auto& s : res.itinerary.steps) steps.push_back(region_name(s));
        it["steps"] = steps;
        j["itinerary"] = it;
    }
    Json wit = Json::array();
    for (const auto& w : res.witnesses) {
        Json e;
        e["i"] = w.i;
        e["j"] = w.j;
        e["l"] = w.l;
        if (w.overflow) e["kappa"] = "overflow";
        else e["kappa"] = w.kappa;
        e["status"] = status_name(w.status);
        wit.push_back(e);
    }
    j["witnesses"] = wit;
    Json checks = Json::array();
    for (const auto& c : res.checks) {
        Json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (c.skipped) e["skipped"] = true;
        e["details"] = c.details;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["all_pass"] = res.all_pass();
    return j;
}

std::string report_string(const AnalysisResult& res) {
    return report_json(res).dump(2) + "\n";
}

void write_report(const std::string& path, const AnalysisResult& res) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::string s = report_string(res);
    f.write(s.data(), std::streamsize(s.size()));
}

}  // namespace fatou
