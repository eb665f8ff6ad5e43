#include "mrmp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mrmp {

namespace {

constexpr double kSepTol = 1e-9;

struct GridFrame {
    const PolygonalRegion* f = nullptr;
    double h = 0.0;
    long ix0 = 0, iy0 = 0;
    long nx = 0, ny = 0;
    mutable std::vector<int8_t> free_cache;  // 0 unknown, 1 free, 2 blocked

    long cells() const { return nx * ny; }
    long id(long ix, long iy) const { return (iy - iy0) * nx + (ix - ix0); }
    bool in_frame(long ix, long iy) const {
        return ix >= ix0 && ix < ix0 + nx && iy >= iy0 && iy < iy0 + ny;
    }
    Point pt(long ix, long iy) const { return {ix * h, iy * h}; }
    bool free(long ix, long iy) const {
        if (!in_frame(ix, iy)) return false;
        int8_t& c = free_cache[id(ix, iy)];
        if (c == 0) c = f->contains(pt(ix, iy)) ? 1 : 2;
        return c == 1;
    }
};

GridFrame make_frame(const PolygonalRegion& f, double h) {
    GridFrame g;
    g.f = &f;
    g.h = h;
    Box b = f.bounds();
    g.ix0 = static_cast<long>(std::floor(b.min_x / h)) - 1;
    g.iy0 = static_cast<long>(std::floor(b.min_y / h)) - 1;
    g.nx = static_cast<long>(std::floor(b.max_x / h)) + 2 - g.ix0;
    g.ny = static_cast<long>(std::floor(b.max_y / h)) + 2 - g.iy0;
    g.free_cache.assign(static_cast<size_t>(g.cells()), 0);
    return g;
}

const int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
const int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

// Single-robot grid Dijkstra from a position; used both as an admissible
// heuristic and for reachability pruning.
std::vector<float> grid_dijkstra(const GridFrame& g, long six, long siy) {
    std::vector<float> dist(static_cast<size_t>(g.cells()),
                            std::numeric_limits<float>::infinity());
    if (!g.free(six, siy)) return dist;
    struct Item {
        float d;
        long ix, iy;
        bool operator<(const Item& o) const { return d > o.d; }
    };
    std::priority_queue<Item> pq;
    dist[g.id(six, siy)] = 0;
    pq.push({0, six, siy});
    const float diag = static_cast<float>(g.h * std::sqrt(2.0));
    const float straight = static_cast<float>(g.h);
    while (!pq.empty()) {
        auto [d, ix, iy] = pq.top();
        pq.pop();
        if (d > dist[g.id(ix, iy)] + 1e-12f) continue;
        for (int k = 0; k < 8; ++k) {
            long jx = ix + kDx[k], jy = iy + kDy[k];
            if (!g.free(jx, jy)) continue;
            float nd = d + ((k & 1) ? diag : straight);
            if (nd < dist[g.id(jx, jy)] - 1e-12f) {
                dist[g.id(jx, jy)] = nd;
                pq.push({nd, jx, jy});
            }
        }
    }
    return dist;
}

// Open-addressed state table keyed by packed (posA, posB).
class StateTable {
public:
    static constexpr uint64_t kEmpty = ~0ULL;

    explicit StateTable(size_t initial_pow2 = 20) { resize(size_t{1} << initial_pow2); }

    struct Slot {
        float g = 0;
        uint8_t act = 0xFF;
        uint8_t closed = 0;
    };

    size_t size() const { return count_; }

    // Returns slot index; inserts with g=+inf when absent.
    size_t probe(uint64_t key) {
        if (count_ * 10 > keys_.size() * 7) resize(keys_.size() * 2);
        size_t m = keys_.size() - 1;
        size_t i = splitmix(key) & m;
        while (true) {
            if (keys_[i] == kEmpty) {
                keys_[i] = key;
                slots_[i] = {std::numeric_limits<float>::infinity(), 0xFF, 0};
                ++count_;
                return i;
            }
            if (keys_[i] == key) return i;
            i = (i + 1) & m;
        }
    }
    size_t find(uint64_t key) const {
        size_t m = keys_.size() - 1;
        size_t i = splitmix(key) & m;
        while (true) {
            if (keys_[i] == kEmpty) return ~size_t{0};
            if (keys_[i] == key) return i;
            i = (i + 1) & m;
        }
    }
    Slot& at(size_t i) { return slots_[i]; }
    const Slot& at(size_t i) const { return slots_[i]; }

private:
    static uint64_t splitmix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    void resize(size_t n) {
        std::vector<uint64_t> old_keys = std::move(keys_);
        std::vector<Slot> old_slots = std::move(slots_);
        keys_.assign(n, kEmpty);
        slots_.assign(n, Slot{});
        count_ = 0;
        size_t m = n - 1;
        for (size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == kEmpty) continue;
            size_t j = splitmix(old_keys[i]) & m;
            while (keys_[j] != kEmpty) j = (j + 1) & m;
            keys_[j] = old_keys[i];
            slots_[j] = old_slots[i];
            ++count_;
        }
    }

    std::vector<uint64_t> keys_;
    std::vector<Slot> slots_;
    size_t count_ = 0;
};

struct SnapCandidate {
    long ix, iy;
    double d;
};

std::vector<SnapCandidate> snap_candidates(const GridFrame& g, const Point& p, const Box* restrict_box) {
    std::vector<SnapCandidate> out;
    long cx = std::lround(p.x / g.h), cy = std::lround(p.y / g.h);
    for (long dx = -2; dx <= 2; ++dx) {
        for (long dy = -2; dy <= 2; ++dy) {
            long ix = cx + dx, iy = cy + dy;
            if (!g.free(ix, iy)) continue;
            Point q = g.pt(ix, iy);
            if (restrict_box && !restrict_box->contains(q, kSepTol)) continue;
            out.push_back({ix, iy, dist_l2(p, q)});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SnapCandidate& a, const SnapCandidate& b) { return a.d < b.d; });
    if (out.size() > 6) out.resize(6);
    return out;
}

// The two connector moves between an exact configuration and its grid
// snapshot; feasible order found by trying both.
std::optional<std::vector<Move>> connector_moves(const PolygonalRegion& f, const Configuration& from,
                                                 const Configuration& to) {
    for (int order = 0; order < 2; ++order) {
        Robot first = order == 0 ? Robot::A : Robot::B;
        Robot second = other(first);
        Configuration mid = from;
        mid.of(first) = to.of(first);
        auto seg_ok = [&](const Point& a, const Point& b, const Point& parked) {
            if (near(a, b, kEta)) return true;
            return f.contains_segment(a, b) && min_separation_linf(parked, a, b) >= 2.0 - kSepTol;
        };
        if (!seg_ok(from.of(first), to.of(first), from.of(second))) continue;
        if (!seg_ok(from.of(second), to.of(second), mid.of(first))) continue;
        std::vector<Move> moves;
        if (!near(from.of(first), to.of(first), kEta))
            moves.push_back({first, {from.of(first), to.of(first)}, from.of(second)});
        if (!near(from.of(second), to.of(second), kEta))
            moves.push_back({second, {from.of(second), to.of(second)}, to.of(first)});
        return moves;
    }
    return std::nullopt;
}

void append_run(Plan& plan, Robot r, const Polyline& pts, const Point& parked) {
    if (pts.size() < 2) return;
    // Merge collinear steps.
    Polyline simp{pts.front()};
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        Point d1 = pts[i] - simp.back();
        Point d2 = pts[i + 1] - pts[i];
        if (std::abs(cross(d1, d2)) < 1e-12 && dot(d1, d2) > 0) continue;
        simp.push_back(pts[i]);
    }
    simp.push_back(pts.back());
    plan.moves.push_back({r, std::move(simp), parked});
}

}  // namespace

bool single_robot_reachable(const PolygonalRegion& f, const Point& a, const Point& b, double h) {
    if (!f.has_area() && f.filaments().empty()) return false;
    GridFrame g = make_frame(f, h);
    auto ca = snap_candidates(g, a, nullptr);
    auto cb = snap_candidates(g, b, nullptr);
    if (ca.empty() || cb.empty()) return false;
    auto dist = grid_dijkstra(g, ca[0].ix, ca[0].iy);
    return std::isfinite(dist[g.id(cb[0].ix, cb[0].iy)]);
}

std::optional<OracleResult> oracle_plan_in_free(const PolygonalRegion& f, const Configuration& s,
                                                const Configuration& t, double h,
                                                const OracleOptions& opts) {
    if (h <= 0 || h > 0.25) throw std::invalid_argument("oracle: h must be in (0, 0.25]");

    if (near(s.a, t.a, kEta) && near(s.b, t.b, kEta)) {
        OracleResult r;
        r.cost = 0.0;
        r.plan.source = s;
        r.plan.target = t;
        r.resolution = h;
        r.slack = 4 * h;
        return r;
    }

    GridFrame g = make_frame(f, h);

    const Box* ra = opts.restrict_a ? &*opts.restrict_a : nullptr;
    const Box* rb = opts.restrict_b ? &*opts.restrict_b : nullptr;
    auto ca_s = snap_candidates(g, s.a, ra);
    auto cb_s = snap_candidates(g, s.b, rb);
    auto ca_t = snap_candidates(g, t.a, ra);
    auto cb_t = snap_candidates(g, t.b, rb);
    if (ca_s.empty() || cb_s.empty() || ca_t.empty() || cb_t.empty()) return std::nullopt;

    // Pick snapped endpoint pairs with feasible connectors.
    struct Snapped {
        Configuration cfg;
        std::vector<Move> moves;
        double cost = 0;
    };
    auto pick = [&](const Configuration& exact, const std::vector<SnapCandidate>& cas,
                    const std::vector<SnapCandidate>& cbs,
                    bool from_exact) -> std::optional<Snapped> {
        std::optional<Snapped> best;
        for (const auto& a : cas) {
            for (const auto& b : cbs) {
                Configuration cfg{g.pt(a.ix, a.iy), g.pt(b.ix, b.iy)};
                if (cfg.separation() < 2.0 - kSepTol) continue;
                double cost = a.d + b.d;
                if (best && cost >= best->cost) continue;
                auto mv = from_exact ? connector_moves(f, exact, cfg)
                                     : connector_moves(f, cfg, exact);
                if (!mv) continue;
                best = Snapped{cfg, *mv, cost};
            }
        }
        return best;
    };
    auto snap_s = pick(s, ca_s, cb_s, true);
    auto snap_t = pick(t, ca_t, cb_t, false);
    if (!snap_s || !snap_t) return std::nullopt;

    auto key_of = [&](long axi, long ayi, long bxi, long byi) {
        uint64_t ka = static_cast<uint64_t>(g.id(axi, ayi));
        uint64_t kb = static_cast<uint64_t>(g.id(bxi, byi));
        return (ka << 32) | kb;
    };
    auto unpack = [&](uint64_t key, long& axi, long& ayi, long& bxi, long& byi) {
        long ia = static_cast<long>(key >> 32), ib = static_cast<long>(key & 0xFFFFFFFFULL);
        axi = g.ix0 + ia % g.nx;
        ayi = g.iy0 + ia / g.nx;
        bxi = g.ix0 + ib % g.nx;
        byi = g.iy0 + ib / g.nx;
    };

    long sa_ix = std::lround(snap_s->cfg.a.x / h), sa_iy = std::lround(snap_s->cfg.a.y / h);
    long sb_ix = std::lround(snap_s->cfg.b.x / h), sb_iy = std::lround(snap_s->cfg.b.y / h);
    long ta_ix = std::lround(snap_t->cfg.a.x / h), ta_iy = std::lround(snap_t->cfg.a.y / h);
    long tb_ix = std::lround(snap_t->cfg.b.x / h), tb_iy = std::lround(snap_t->cfg.b.y / h);

    // Heuristic: per-robot grid distances to the snapped targets when the
    // frame is small enough, Euclidean lower bound otherwise.
    bool grid_heur = g.cells() <= 400'000;
    std::vector<float> ha, hb;
    if (grid_heur) {
        ha = grid_dijkstra(g, ta_ix, ta_iy);
        hb = grid_dijkstra(g, tb_ix, tb_iy);
        if (!std::isfinite(ha[g.id(sa_ix, sa_iy)]) || !std::isfinite(hb[g.id(sb_ix, sb_iy)]))
            return std::nullopt;
    }
    auto heur = [&](long axi, long ayi, long bxi, long byi) -> double {
        if (grid_heur) {
            float v = ha[g.id(axi, ayi)] + hb[g.id(bxi, byi)];
            return v;
        }
        return dist_l2(g.pt(axi, ayi), snap_t->cfg.a) + dist_l2(g.pt(bxi, byi), snap_t->cfg.b);
    };

    auto assemble = [&](std::vector<std::pair<Robot, Polyline>> runs, double travel) {
        OracleResult r;
        r.plan.source = s;
        r.plan.target = t;
        Configuration cur = s;
        for (const Move& m : snap_s->moves) {
            r.plan.moves.push_back(m);
            cur.of(m.robot) = m.path.back();
        }
        for (auto& [robot, pts] : runs) {
            append_run(r.plan, robot, pts, cur.of(other(robot)));
            if (!pts.empty()) cur.of(robot) = pts.back();
        }
        for (const Move& m : snap_t->moves) {
            r.plan.moves.push_back(m);
            cur.of(m.robot) = m.path.back();
        }
        r.plan = compress(r.plan);
        (void)travel;
        r.cost = plan_cost(r.plan).first;
        r.resolution = h;
        r.slack = 4 * h * (1 + r.cost) + snap_s->cost + snap_t->cost;
        return r;
    };

    // Independent-motion short circuit: if one robot can follow its solo
    // shortest grid path while the other is parked (in either order), the
    // lower bound is attained and no 4-D search is needed.
    if (grid_heur) {
        auto walk_down = [&](const std::vector<float>& dist, long ix, long iy) {
            Polyline path{g.pt(ix, iy)};
            while (dist[g.id(ix, iy)] > 1e-12f) {
                float cur = dist[g.id(ix, iy)];
                bool advanced = false;
                for (int k = 0; k < 8; ++k) {
                    long jx = ix + kDx[k], jy = iy + kDy[k];
                    if (!g.free(jx, jy)) continue;
                    float step = (k & 1) ? static_cast<float>(h * std::sqrt(2.0))
                                         : static_cast<float>(h);
                    if (std::abs(dist[g.id(jx, jy)] + step - cur) < 1e-6f * (1 + cur)) {
                        ix = jx;
                        iy = jy;
                        path.push_back(g.pt(ix, iy));
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) return Polyline{};
            }
            return path;
        };
        auto run_clear = [&](const Polyline& path, const Point& parked) {
            for (size_t i = 0; i + 1 < path.size(); ++i)
                if (min_separation_linf(parked, path[i], path[i + 1]) < 2.0 - kSepTol)
                    return false;
            return !path.empty();
        };
        Polyline pa = walk_down(ha, sa_ix, sa_iy);
        Polyline pb = walk_down(hb, sb_ix, sb_iy);
        double lb = ha[g.id(sa_ix, sa_iy)] + hb[g.id(sb_ix, sb_iy)];
        if (!pa.empty() && !pb.empty()) {
            if (run_clear(pa, snap_s->cfg.b) && run_clear(pb, snap_t->cfg.a)) {
                auto r = assemble({{Robot::A, pa}, {Robot::B, pb}}, lb);
                if (validate_plan_in_free(f, s, t, r.plan).feasible) return r;
            }
            if (run_clear(pb, snap_s->cfg.a) && run_clear(pa, snap_t->cfg.b)) {
                auto r = assemble({{Robot::B, pb}, {Robot::A, pa}}, lb);
                if (validate_plan_in_free(f, s, t, r.plan).feasible) return r;
            }
        }
    }

    // A* over joint states.
    StateTable table;
    struct PqItem {
        float f, gval;
        uint64_t key;
        bool operator<(const PqItem& o) const {
            if (f != o.f) return f > o.f;
            return gval < o.gval;  // prefer deeper states on ties
        }
    };
    std::priority_queue<PqItem> pq;
    uint64_t skey = key_of(sa_ix, sa_iy, sb_ix, sb_iy);
    uint64_t gkey = key_of(ta_ix, ta_iy, tb_ix, tb_iy);
    {
        size_t slot = table.probe(skey);
        table.at(slot).g = 0;
        pq.push({static_cast<float>(heur(sa_ix, sa_iy, sb_ix, sb_iy)), 0, skey});
    }
    const double diag = h * std::sqrt(2.0);
    size_t expanded = 0;
    bool found = false;
    while (!pq.empty()) {
        auto [fv, gv, key] = pq.top();
        pq.pop();
        size_t slot = table.find(key);
        auto& rec = table.at(slot);
        if (rec.closed) continue;
        if (gv > rec.g + 1e-7f) continue;
        rec.closed = 1;
        const double gcur = rec.g;  // rec dangles once probe() rehashes below
        if (key == gkey) {
            found = true;
            break;
        }
        if (++expanded > opts.node_cap)
            throw StateSpaceTooLarge("oracle: node cap exceeded");
        long axi, ayi, bxi, byi;
        unpack(key, axi, ayi, bxi, byi);
        Point pa = g.pt(axi, ayi), pb = g.pt(bxi, byi);
        for (int robot = 0; robot < 2; ++robot) {
            long cx = robot == 0 ? axi : bxi;
            long cy = robot == 0 ? ayi : byi;
            const Point& parked = robot == 0 ? pb : pa;
            const Box* rr = robot == 0 ? ra : rb;
            for (int k = 0; k < 8; ++k) {
                long jx = cx + kDx[k], jy = cy + kDy[k];
                if (!g.free(jx, jy)) continue;
                Point np = g.pt(jx, jy);
                if (rr && !rr->contains(np, kSepTol)) continue;
                if (linf_distance(np, parked) < 2.0 - kSepTol) continue;
                if (min_separation_linf(parked, g.pt(cx, cy), np) < 2.0 - kSepTol) continue;
                uint64_t nkey = robot == 0 ? key_of(jx, jy, bxi, byi) : key_of(axi, ayi, jx, jy);
                double ng = gcur + ((k & 1) ? diag : h);
                size_t nslot = table.probe(nkey);
                auto& nrec = table.at(nslot);
                if (nrec.closed || ng >= nrec.g - 1e-9) continue;
                nrec.g = static_cast<float>(ng);
                nrec.act = static_cast<uint8_t>(robot * 8 + k);
                double hx = robot == 0 ? heur(jx, jy, bxi, byi) : heur(axi, ayi, jx, jy);
                if (!std::isfinite(hx)) continue;
                pq.push({static_cast<float>(ng + hx), static_cast<float>(ng), nkey});
            }
        }
    }
    if (!found) return std::nullopt;

    // Replay actions backward from the goal.
    std::vector<std::pair<Robot, Point>> steps;  // robot moved INTO this point
    uint64_t cur = gkey;
    double travel = table.at(table.find(gkey)).g;
    while (cur != skey) {
        size_t slot = table.find(cur);
        uint8_t act = table.at(slot).act;
        int robot = act / 8, k = act % 8;
        long axi, ayi, bxi, byi;
        unpack(cur, axi, ayi, bxi, byi);
        steps.push_back({robot == 0 ? Robot::A : Robot::B,
                         robot == 0 ? g.pt(axi, ayi) : g.pt(bxi, byi)});
        if (robot == 0)
            cur = key_of(axi - kDx[k], ayi - kDy[k], bxi, byi);
        else
            cur = key_of(axi, ayi, bxi - kDx[k], byi - kDy[k]);
    }
    std::reverse(steps.begin(), steps.end());

    std::vector<std::pair<Robot, Polyline>> runs;
    Configuration cursor = snap_s->cfg;
    for (const auto& [robot, to] : steps) {
        if (runs.empty() || runs.back().first != robot)
            runs.push_back({robot, {cursor.of(robot)}});
        runs.back().second.push_back(to);
        cursor.of(robot) = to;
    }
    return assemble(std::move(runs), travel);
}

std::optional<OracleResult> oracle_plan(const PolygonalRegion& w, const Configuration& s,
                                        const Configuration& t, double h,
                                        const OracleOptions& opts) {
    return oracle_plan_in_free(erode_to_free_space(w), s, t, h, opts);
}

}  // namespace mrmp
