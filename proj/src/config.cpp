#include "fatou/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace fatou {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: " + v);
    }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    if (resolution < 64) throw ConfigError("resolution must be at least 64");
    if (max_iter < 1) throw ConfigError("max_iter must be positive");
    if (window.width <= 0 || window.height <= 0)
        throw ConfigError("window must have positive extent");
    if (k1 <= 0) throw ConfigError("k1 must be positive");
}

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (kv.count(key))
            throw ConfigError("duplicate config key '" + key + "'");
        kv[key] = val;
    }

    RunConfig c;
    auto take = [&](const char* key) -> std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        return &it->second;
    };
    if (auto* v = take("n")) c.params.n = int(to_long("n", *v));
    if (auto* v = take("d")) c.params.d = int(to_long("d", *v));
    double are = 1.0, aim = 0.0;
    if (auto* v = take("a_re")) are = to_double("a_re", *v);
    if (auto* v = take("a_im")) aim = to_double("a_im", *v);
    c.params.a = Complex{are, aim};
    std::vector<double> qre{1.0}, qim{};
    if (auto* v = take("q_re")) qre = to_list("q_re", *v);
    if (auto* v = take("q_im")) qim = to_list("q_im", *v);
    if (!qim.empty() && qim.size() != qre.size())
        throw ConfigError("q_re and q_im must have equal length");
    c.params.q.clear();
    for (size_t i = 0; i < qre.size(); ++i)
        c.params.q.push_back(Complex{qre[i], i < qim.size() ? qim[i] : 0.0});
    double lre = 0.0, lim = 0.0;
    if (auto* v = take("lambda_re")) lre = to_double("lambda_re", *v);
    if (auto* v = take("lambda_im")) lim = to_double("lambda_im", *v);
    c.params.lambda = Complex{lre, lim};

    if (auto* v = take("window_cx")) c.window.center.real(to_double("window_cx", *v));
    if (auto* v = take("window_cy")) c.window.center.imag(to_double("window_cy", *v));
    if (auto* v = take("window_w")) c.window.width = to_double("window_w", *v);
    if (auto* v = take("window_h")) c.window.height = to_double("window_h", *v);
    if (auto* v = take("resolution")) c.resolution = int(to_long("resolution", *v));
    if (auto* v = take("max_iter")) c.max_iter = int(to_long("max_iter", *v));
    if (auto* v = take("k1")) c.k1 = to_double("k1", *v);
    if (auto* v = take("threads")) c.threads = int(to_long("threads", *v));
    if (auto* v = take("out_dir")) c.out_dir = *v;
    if (auto* v = take("ring_window")) c.ring_window = to_long("ring_window", *v) != 0;
    if (auto* v = take("ring_halfwidth_factor"))
        c.ring_halfwidth_factor = to_double("ring_halfwidth_factor", *v);
    if (auto* v = take("ring_resolution")) c.ring_resolution = int(to_long("ring_resolution", *v));
    if (auto* v = take("min_component_px")) c.min_component_px = to_long("min_component_px", *v);
    if (auto* v = take("record_floor_px")) c.record_floor_px = to_long("record_floor_px", *v);
    if (auto* v = take("require_depth")) c.require_depth = int(to_long("require_depth", *v));
    if (auto* v = take("analysis_depth")) c.analysis_depth = int(to_long("analysis_depth", *v));
    if (auto* v = take("witness_imax")) c.witness_imax = int(to_long("witness_imax", *v));
    if (auto* v = take("witness_jmax")) c.witness_jmax = int(to_long("witness_jmax", *v));
    if (auto* v = take("witness_lmax")) c.witness_lmax = int(to_long("witness_lmax", *v));
    if (auto* v = take("escape_samples")) c.escape_samples = int(to_long("escape_samples", *v));

    static const char* known[] = {
        "n", "d", "a_re", "a_im", "q_re", "q_im", "lambda_re", "lambda_im",
        "window_cx", "window_cy", "window_w", "window_h", "resolution",
        "max_iter", "k1", "threads", "out_dir", "ring_window",
        "ring_halfwidth_factor", "ring_resolution", "min_component_px",
        "record_floor_px", "require_depth", "analysis_depth", "witness_imax",
        "witness_jmax", "witness_lmax", "escape_samples"};
    for (const auto& [key, val] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }

    try {
        c.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("invalid map parameters: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace fatou
