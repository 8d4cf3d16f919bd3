#include "fatou/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <thread>

namespace fatou {

Complex LabelGrid::pixel_center(int ix, int iy) const {
    double x = window.center.real() - window.width / 2 +
               (ix + 0.5) * window.width / px;
    double y = window.center.imag() + window.height / 2 -
               (iy + 0.5) * window.height / py;
    return {x, y};
}

bool LabelGrid::contains(Complex z) const {
    double dx = z.real() - window.center.real();
    double dy = z.imag() - window.center.imag();
    return std::abs(dx) < window.width / 2 && std::abs(dy) < window.height / 2;
}

long LabelGrid::pixel_of(Complex z) const {
    if (!contains(z)) return -1;
    int ix = int((z.real() - (window.center.real() - window.width / 2)) / window.width * px);
    int iy = int(((window.center.imag() + window.height / 2) - z.imag()) / window.height * py);
    ix = std::clamp(ix, 0, px - 1);
    iy = std::clamp(iy, 0, py - 1);
    return long(idx(ix, iy));
}

namespace {

struct UnionFind {
    std::vector<int32_t> parent;
    int32_t make() {
        parent.push_back(int32_t(parent.size()));
        return parent.back();
    }
    int32_t find(int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

void relabel_components(LabelGrid& g) {
    g.comp.assign(g.escape.size(), NO_COMPONENT);
    UnionFind uf;
    // first pass, provisional labels
    for (int iy = 0; iy < g.py; ++iy) {
        for (int ix = 0; ix < g.px; ++ix) {
            size_t i = g.idx(ix, iy);
            if (g.escape[i] == SATURATED) continue;
            int32_t left = ix > 0 ? g.comp[i - 1] : NO_COMPONENT;
            int32_t up = iy > 0 ? g.comp[i - g.px] : NO_COMPONENT;
            if (left != NO_COMPONENT && up != NO_COMPONENT) {
                g.comp[i] = std::min(uf.find(left), uf.find(up));
                uf.unite(left, up);
            } else if (left != NO_COMPONENT) {
                g.comp[i] = left;
            } else if (up != NO_COMPONENT) {
                g.comp[i] = up;
            } else {
                g.comp[i] = uf.make();
            }
        }
    }
    // second pass, compact ids in row-major first-appearance order
    std::vector<int32_t> remap(uf.parent.size(), NO_COMPONENT);
    int32_t next = 0;
    for (auto& c : g.comp) {
        if (c == NO_COMPONENT) continue;
        int32_t root = uf.find(c);
        if (remap[root] == NO_COMPONENT) remap[root] = next++;
        c = remap[root];
    }
    g.n_components = next;
}

LabelGrid rasterize(const MapParams& p, const Window& w, int px, int py,
                    const RadiiModel& radii, int max_iter, int threads) {
    p.validate();
    if (px < 1 || py < 1) throw InvalidParams("resolution must be positive");
    LabelGrid g;
    g.window = w;
    g.px = px;
    g.py = py;
    g.max_iter = max_iter;
    g.k_esc = radii.k_esc;
    g.escape.assign(size_t(px) * py, SATURATED);

    int nthreads = threads > 0 ? threads
                               : int(std::max(1u, std::thread::hardware_concurrency()));
    nthreads = std::min(nthreads, py);
    auto work = [&](int y0, int y1) {
        for (int iy = y0; iy < y1; ++iy) {
            for (int ix = 0; ix < px; ++ix) {
                Complex z = g.pixel_center(ix, iy);
                int t = escape_time(p, z, radii.k_esc, max_iter);
                g.escape[g.idx(ix, iy)] = t == NOT_ESCAPED ? SATURATED : t;
            }
        }
    };
    if (nthreads <= 1) {
        work(0, py);
    } else {
        std::vector<std::thread> pool;
        int rows = (py + nthreads - 1) / nthreads;
        for (int k = 0; k < nthreads; ++k) {
            int y0 = k * rows, y1 = std::min(py, y0 + rows);
            if (y0 < y1) pool.emplace_back(work, y0, y1);
        }
        for (auto& t : pool) t.join();
    }
    relabel_components(g);
    return g;
}

ConnectivityMeasure measure_connectivity(const LabelGrid& g, int id) {
    ConnectivityMeasure m;
    const int px = g.px, py = g.py;
    std::vector<uint8_t> seen(g.comp.size(), 0);
    std::deque<size_t> queue;
    auto complement = [&](size_t i) { return g.comp[i] != id; };

    for (size_t i = 0; i < g.comp.size(); ++i) {
        if (g.comp[i] == id) {
            int ix = int(i % px), iy = int(i / px);
            if (ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1)
                m.touches_frame = true;
        }
    }

    int holes = 0;
    for (size_t start = 0; start < g.comp.size(); ++start) {
        if (seen[start] || !complement(start)) continue;
        bool reaches_frame = false;
        seen[start] = 1;
        queue.clear();
        queue.push_back(start);
        while (!queue.empty()) {
            size_t i = queue.front();
            queue.pop_front();
            int ix = int(i % px), iy = int(i / px);
            if (ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1)
                reaches_frame = true;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int nx = ix + dx, ny = iy + dy;
                    if (nx < 0 || ny < 0 || nx >= px || ny >= py) continue;
                    size_t j = g.idx(nx, ny);
                    if (!seen[j] && complement(j)) {
                        seen[j] = 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        if (!reaches_frame) ++holes;
    }
    m.connectivity = holes + 1;
    return m;
}

std::vector<int> measure_all_connectivity(const LabelGrid& g) {
    // Euler characteristic per component from 2x2 quad counts:
    //   chi = (Q1 - Q3 - 2 Qd) / 4   (4-connected foreground)
    // and for a connected component, holes = 1 - chi.
    std::vector<int64_t> q1(g.n_components, 0), q3(g.n_components, 0),
        qd(g.n_components, 0);
    const int px = g.px, py = g.py;
    auto at = [&](int ix, int iy) -> int32_t {
        if (ix < 0 || iy < 0 || ix >= px || iy >= py) return NO_COMPONENT;
        return g.comp[g.idx(ix, iy)];
    };
    for (int iy = -1; iy < py; ++iy) {
        for (int ix = -1; ix < px; ++ix) {
            int32_t v[4] = {at(ix, iy), at(ix + 1, iy), at(ix, iy + 1),
                            at(ix + 1, iy + 1)};
            for (int c = 0; c < 4; ++c) {
                int32_t id = v[c];
                if (id == NO_COMPONENT) continue;
                bool dup = false;
                for (int b = 0; b < c; ++b) dup |= v[b] == id;
                if (dup) continue;
                int mask = (v[0] == id) | ((v[1] == id) << 1) |
                           ((v[2] == id) << 2) | ((v[3] == id) << 3);
                int bits = __builtin_popcount(unsigned(mask));
                if (bits == 1) ++q1[id];
                else if (bits == 3) ++q3[id];
                else if (mask == 0b1001 || mask == 0b0110) ++qd[id];
            }
        }
    }
    std::vector<int> out(g.n_components, 1);
    for (int id = 0; id < g.n_components; ++id) {
        int64_t chi4 = q1[id] - q3[id] + 2 * qd[id];  // 4 * chi
        out[id] = int(1 + (4 - chi4) / 4);            // 1 + holes
    }
    return out;
}

SurroundsResult surrounds_origin(const LabelGrid& g, int id) {
    SurroundsResult r;
    long oi = g.pixel_of(Complex{0.0, 0.0});
    if (oi < 0) throw InvalidParams("surrounds_origin requires the origin inside the window");
    if (g.comp[oi] == id) {
        r.origin_inside_component = true;
        return r;
    }
    const int px = g.px, py = g.py;
    std::vector<uint8_t> seen(g.comp.size(), 0);
    std::deque<size_t> queue;
    seen[oi] = 1;
    queue.push_back(size_t(oi));
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        int ix = int(i % px), iy = int(i / px);
        if (ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1) return r;  // unbounded
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                size_t j = g.idx(ix + dx, iy + dy);
                if (!seen[j] && g.comp[j] != id) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
            }
        }
    }
    r.surrounds = true;
    return r;
}

const char* role_name(Role r) {
    switch (r) {
        case Role::A_INF: return "A_INF";
        case Role::TRAP_DOOR: return "TRAP_DOOR";
        case Role::ANNULUS_A: return "ANNULUS_A";
        case Role::DISK_D: return "DISK_D";
        case Role::U_NU: return "U_NU";
        default: return "GENERIC";
    }
}

const ComponentRecord* PlaneAnalysis::find_id(int id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

const ComponentRecord* PlaneAnalysis::find_role(Role role) const {
    for (const auto& r : records)
        if (r.role == role) return &r;
    return nullptr;
}

namespace {

// deepest-interior pixel per component by multi-source BFS from all
// component boundaries; ties resolved toward the smaller pixel index
std::vector<long> representatives(const LabelGrid& g) {
    const int px = g.px, py = g.py;
    std::vector<int32_t> dist(g.comp.size(), -1);
    std::deque<size_t> queue;
    for (int iy = 0; iy < py; ++iy) {
        for (int ix = 0; ix < px; ++ix) {
            size_t i = g.idx(ix, iy);
            if (g.comp[i] == NO_COMPONENT) continue;
            bool boundary = ix == 0 || iy == 0 || ix == px - 1 || iy == py - 1;
            if (!boundary) {
                int32_t c = g.comp[i];
                boundary = g.comp[i - 1] != c || g.comp[i + 1] != c ||
                           g.comp[i - px] != c || g.comp[i + px] != c;
            }
            if (boundary) {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
    }
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        int ix = int(i % px), iy = int(i / px);
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int nx = ix + dx[k], ny = iy + dy[k];
            if (nx < 0 || ny < 0 || nx >= px || ny >= py) continue;
            size_t j = g.idx(nx, ny);
            if (g.comp[j] == g.comp[i] && dist[j] < 0) {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    std::vector<long> rep(g.n_components, -1);
    std::vector<int32_t> best(g.n_components, -1);
    for (size_t i = 0; i < g.comp.size(); ++i) {
        int32_t c = g.comp[i];
        if (c == NO_COMPONENT) continue;
        if (dist[i] > best[c]) {
            best[c] = dist[i];
            rep[c] = long(i);
        }
    }
    return rep;
}

}  // namespace

void tag_roles(PlaneAnalysis& a, const MapParams& p, const RadiiModel& radii,
               const CriticalSet& crit) {
    const LabelGrid& g = a.grid;
    auto record_of = [&](int id) -> ComponentRecord* {
        for (auto& r : a.records)
            if (r.id == id) return &r;
        return nullptr;
    };
    auto assign = [&](int id, Role role) {
        ComponentRecord* r = record_of(id);
        if (!r) {
            a.warnings.push_back(std::string(role_name(role)) +
                                 " component below the record floor");
            return;
        }
        if (r->role != Role::GENERIC && r->role != role) {
            a.warnings.push_back(std::string("role-conflict: component claims both ") +
                                 role_name(r->role) + " and " + role_name(role));
            return;
        }
        r->role = role;
    };

    // A_INF: escaping frame component of minimal escape time
    if (a.global_scale) {
        int best_id = NO_COMPONENT;
        int32_t best_t = INT32_MAX;
        auto consider = [&](size_t i) {
            if (g.comp[i] == NO_COMPONENT) return;
            if (g.escape[i] < best_t) {
                best_t = g.escape[i];
                best_id = g.comp[i];
            }
        };
        for (int ix = 0; ix < g.px; ++ix) {
            consider(g.idx(ix, 0));
            consider(g.idx(ix, g.py - 1));
        }
        for (int iy = 0; iy < g.py; ++iy) {
            consider(g.idx(0, iy));
            consider(g.idx(g.px - 1, iy));
        }
        if (best_id != NO_COMPONENT) assign(best_id, Role::A_INF);
    }

    // TRAP_DOOR: component of the non-saturated pixel nearest the origin
    if (p.perturbed() && g.contains(Complex{})) {
        long oi = g.pixel_of(Complex{});
        int ox = int(oi % g.px), oy = int(oi / g.px);
        int found = NO_COMPONENT;
        for (int ring = 0; ring < std::max(g.px, g.py) && found == NO_COMPONENT; ++ring) {
            for (int iy = oy - ring; iy <= oy + ring && found == NO_COMPONENT; ++iy) {
                for (int ix = ox - ring; ix <= ox + ring; ++ix) {
                    if (std::max(std::abs(ix - ox), std::abs(iy - oy)) != ring) continue;
                    if (ix < 0 || iy < 0 || ix >= g.px || iy >= g.py) continue;
                    size_t i = g.idx(ix, iy);
                    if (g.comp[i] != NO_COMPONENT) {
                        found = g.comp[i];
                        break;
                    }
                }
            }
        }
        if (found != NO_COMPONENT) assign(found, Role::TRAP_DOOR);
    }

    // ANNULUS_A: component carrying the perturbation-born critical ring
    if (!crit.free_ring.empty()) {
        int ring_id = NO_COMPONENT;
        bool unanimous = true, all_on = true;
        for (const auto& c : crit.free_ring) {
            long i = g.pixel_of(c);
            if (i < 0 || g.comp[i] == NO_COMPONENT) {
                all_on = false;
                continue;
            }
            if (ring_id == NO_COMPONENT) ring_id = g.comp[i];
            else if (ring_id != g.comp[i]) unanimous = false;
        }
        if (ring_id != NO_COMPONENT && g.contains(Complex{})) {
            if (!all_on) a.warnings.push_back("free-ring critical point off grid or saturated");
            if (!unanimous) a.warnings.push_back("free-ring critical points span several components");
            assign(ring_id, Role::ANNULUS_A);
        }
    }

    // DISK_D: component of w_lambda
    if (p.perturbed()) {
        long wi = g.pixel_of(crit.w_lambda);
        if (wi >= 0) {
            if (g.comp[wi] != NO_COMPONENT) assign(g.comp[wi], Role::DISK_D);
            else a.warnings.push_back("w_lambda pixel saturated");
        }
    }

    // U_NU: component of nu_lambda
    long ni = g.pixel_of(crit.nu_lambda);
    if (ni >= 0) {
        if (g.comp[ni] != NO_COMPONENT) assign(g.comp[ni], Role::U_NU);
        else a.warnings.push_back("nu_lambda pixel saturated; U_NU unresolved");
    }
}

LabelGrid relabeled_with_cap(const LabelGrid& g, int cap) {
    LabelGrid out = g;
    out.max_iter = cap;
    for (auto& t : out.escape)
        if (t > cap) t = SATURATED;
    relabel_components(out);
    return out;
}

PlaneAnalysis analyze_plane(const MapParams& p, const Window& w, int px, int py,
                            const RadiiModel& radii, const CriticalSet& crit,
                            int max_iter, int threads, int64_t record_floor_px,
                            bool global_scale) {
    return analyze_grid(rasterize(p, w, px, py, radii, max_iter, threads), p,
                        radii, crit, record_floor_px, global_scale);
}

PlaneAnalysis analyze_grid(LabelGrid grid, const MapParams& p,
                           const RadiiModel& radii, const CriticalSet& crit,
                           int64_t record_floor_px, bool global_scale) {
    PlaneAnalysis a;
    a.global_scale = global_scale;
    a.grid = std::move(grid);
    const LabelGrid& g = a.grid;

    std::vector<int64_t> count(g.n_components, 0);
    std::vector<uint8_t> frame(g.n_components, 0);
    for (size_t i = 0; i < g.comp.size(); ++i) {
        int32_t c = g.comp[i];
        if (c == NO_COMPONENT) continue;
        ++count[c];
        int ix = int(i % g.px), iy = int(i / g.px);
        if (ix == 0 || iy == 0 || ix == g.px - 1 || iy == g.py - 1) frame[c] = 1;
    }
    std::vector<int> conn = measure_all_connectivity(g);
    std::vector<long> reps = representatives(g);

    for (int id = 0; id < g.n_components; ++id) {
        if (count[id] < record_floor_px) continue;
        ComponentRecord r;
        r.id = id;
        r.pixel_count = count[id];
        r.connectivity = conn[id];
        r.touches_frame = frame[id] != 0;
        if (reps[id] >= 0) {
            r.representative = g.pixel_center(int(reps[id] % g.px), int(reps[id] / g.px));
            r.rep_escape_time = g.escape[reps[id]];
        }
        a.records.push_back(r);
    }

    // forward target: image of the representative located on this grid
    for (auto& r : a.records) {
        SpherePoint img = eval_perturbed(p, SpherePoint::finite(r.representative));
        if (img.at_infinity || !g.contains(img.value)) {
            r.forward_target = FT_EXTERIOR;
            continue;
        }
        long i = g.pixel_of(img.value);
        r.forward_target = g.comp[i] == NO_COMPONENT ? FT_UNRESOLVED : g.comp[i];
    }

    // surrounds flag: only components meeting the rightward ray from the
    // origin can separate it from the frame
    if (g.contains(Complex{})) {
        long oi = g.pixel_of(Complex{});
        int ox = int(oi % g.px), oy = int(oi / g.px);
        std::vector<uint8_t> on_ray(g.n_components, 0);
        for (int ix = ox; ix < g.px; ++ix) {
            int32_t c = g.comp[g.idx(ix, oy)];
            if (c != NO_COMPONENT) on_ray[c] = 1;
        }
        for (auto& r : a.records) {
            r.surrounds_known = true;
            if (!on_ray[r.id]) {
                r.surrounds_origin = false;
                continue;
            }
            SurroundsResult s = surrounds_origin(g, r.id);
            r.surrounds_origin = s.surrounds;
        }
    }

    tag_roles(a, p, radii, crit);
    return a;
}

}  // namespace fatou
