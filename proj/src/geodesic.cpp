#include "mrmp/geodesic.hpp"

#include <algorithm>
#include <mutex>
#include <queue>
#include <unordered_map>

namespace mrmp {

namespace {

std::vector<Point> dedup_points(std::vector<Point> pts) {
    std::vector<Point> out;
    for (const Point& p : pts) {
        bool dup = false;
        for (const Point& q : out)
            if (near(p, q, 2 * kEta)) { dup = true; break; }
        if (!dup) out.push_back(p);
    }
    return out;
}

struct Pq {
    double dist;
    int node;
    bool operator<(const Pq& o) const { return dist > o.dist; }
};

}  // namespace

VisibilityGraph::VisibilityGraph(const PolygonalRegion& region)
    : region_(std::make_shared<PolygonalRegion>(region)) {
    nodes_ = dedup_points(region.node_points());
    size_t n = nodes_.size();
    vis_.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i) {
        vis_[i * n + i] = 1;
        for (size_t j = i + 1; j < n; ++j) {
            char v = region.contains_segment(nodes_[i], nodes_[j]) ? 1 : 0;
            vis_[i * n + j] = v;
            vis_[j * n + i] = v;
        }
    }
}

std::shared_ptr<const VisibilityGraph> VisibilityGraph::for_region(const PolygonalRegion& region) {
    static std::mutex mu;
    static std::unordered_map<uint64_t, std::shared_ptr<const VisibilityGraph>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(region.fingerprint());
        if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const VisibilityGraph>(region);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.try_emplace(region.fingerprint(), built);
    return it->second;
}

namespace {

// Dijkstra over graph nodes plus a source; returns distances and predecessors
// (graph-node indices; -1 for "direct from source").
struct SourceSolve {
    std::vector<double> dist;  // per graph node
    std::vector<int> pred;
    std::vector<char> vis_from_source;
};

SourceSolve solve_from(const VisibilityGraph& g, const Point& a) {
    const auto& nodes = g.nodes();
    size_t n = nodes.size();
    SourceSolve s;
    s.dist.assign(n, std::numeric_limits<double>::infinity());
    s.pred.assign(n, -2);
    s.vis_from_source.assign(n, 0);
    std::priority_queue<Pq> pq;
    for (size_t i = 0; i < n; ++i) {
        if (g.region().contains_segment(a, nodes[i])) {
            s.vis_from_source[i] = 1;
            s.dist[i] = dist_l2(a, nodes[i]);
            s.pred[i] = -1;
            pq.push({s.dist[i], static_cast<int>(i)});
        }
    }
    std::vector<char> done(n, 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (size_t v = 0; v < n; ++v) {
            if (done[v] || !g.visible(u, static_cast<int>(v))) continue;
            double nd = d + dist_l2(nodes[u], nodes[v]);
            if (nd < s.dist[v] - 1e-15) {
                s.dist[v] = nd;
                s.pred[v] = u;
                pq.push({nd, static_cast<int>(v)});
            }
        }
    }
    return s;
}

}  // namespace

std::optional<GeodesicResult> shortest_path(const PolygonalRegion& region, const Point& a,
                                            const Point& b) {
    if (region.classify(a).cls == PointClass::Outside)
        throw PointOutsideRegion("shortest_path: source outside region");
    if (region.classify(b).cls == PointClass::Outside)
        throw PointOutsideRegion("shortest_path: target outside region");
    if (near(a, b, kEta)) return GeodesicResult{0.0, {a, b}};
    if (region.contains_segment(a, b)) return GeodesicResult{dist_l2(a, b), {a, b}};

    auto g = VisibilityGraph::for_region(region);
    const auto& nodes = g->nodes();
    SourceSolve s = solve_from(*g, a);

    double best = std::numeric_limits<double>::infinity();
    int best_node = -1;
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(s.dist[i])) continue;
        if (!g->region().contains_segment(nodes[i], b)) continue;
        double d = s.dist[i] + dist_l2(nodes[i], b);
        if (d < best) {
            best = d;
            best_node = static_cast<int>(i);
        }
    }
    if (best_node < 0) return std::nullopt;

    Polyline rev{b};
    for (int u = best_node; u >= 0; u = s.pred[u]) {
        rev.push_back(nodes[u]);
        if (s.pred[u] == -1) break;
    }
    rev.push_back(a);
    std::reverse(rev.begin(), rev.end());
    // Drop interior duplicates from near-coincident bend points.
    Polyline path{rev.front()};
    for (size_t i = 1; i < rev.size(); ++i)
        if (!near(rev[i], path.back(), kEta)) path.push_back(rev[i]);
    if (path.size() < 2) path.push_back(b);
    return GeodesicResult{best, std::move(path)};
}

std::vector<std::optional<double>> shortest_paths_from(const PolygonalRegion& region,
                                                       const Point& a,
                                                       const std::vector<Point>& targets) {
    if (region.classify(a).cls == PointClass::Outside)
        throw PointOutsideRegion("shortest_paths_from: source outside region");
    auto g = VisibilityGraph::for_region(region);
    const auto& nodes = g->nodes();
    SourceSolve s = solve_from(*g, a);

    std::vector<std::optional<double>> out(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) {
        const Point& b = targets[t];
        if (region.classify(b).cls == PointClass::Outside) continue;
        if (near(a, b, kEta)) {
            out[t] = 0.0;
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        if (region.contains_segment(a, b)) best = dist_l2(a, b);
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (!std::isfinite(s.dist[i])) continue;
            double lb = s.dist[i] + dist_l2(nodes[i], b);
            if (lb >= best) continue;
            if (g->region().contains_segment(nodes[i], b)) best = lb;
        }
        if (std::isfinite(best)) out[t] = best;
    }
    return out;
}

}  // namespace mrmp
