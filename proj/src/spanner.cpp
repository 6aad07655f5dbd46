#include "sqspan/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace sqspan {

namespace {

std::vector<std::vector<std::pair<int, double>>> weighted_adjacency(
    const PointSet& ps, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<std::pair<int, double>>> adj(ps.size());
    for (auto& e : edges) {
        double w = dist_l2(ps[e.first], ps[e.second]);
        adj[e.first].push_back({e.second, w});
        adj[e.second].push_back({e.first, w});
    }
    return adj;
}

ShortestPathTree dijkstra(const std::vector<std::vector<std::pair<int, double>>>& adj, int source) {
    const int n = static_cast<int>(adj.size());
    ShortestPathTree t;
    t.source = source;
    t.dist.assign(n, std::numeric_limits<double>::infinity());
    t.pred.assign(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    t.dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > t.dist[v]) continue;
        for (auto& [u, w] : adj[v]) {
            double nd = d + w;
            if (nd < t.dist[u]) {
                t.dist[u] = nd;
                t.pred[u] = v;
                pq.push({nd, u});
            }
        }
    }
    return t;
}

std::vector<std::pair<int, int>> edge_pairs(const Triangulation& t) {
    std::vector<std::pair<int, int>> out;
    out.reserve(t.edges.size());
    for (auto& e : t.edges) out.push_back({e.a, e.b});
    return out;
}

}  // namespace

ShortestPathTree shortest_paths_from(const PointSet& ps,
                                     const std::vector<std::pair<int, int>>& edges, int source) {
    if (source < 0 || source >= static_cast<int>(ps.size()))
        throw std::invalid_argument("shortest_paths_from: unknown source id");
    return dijkstra(weighted_adjacency(ps, edges), source);
}

ShortestPathTree shortest_paths_from(const Triangulation& t, int source) {
    return shortest_paths_from(t.points(), edge_pairs(t), source);
}

PathInGraph path_from_tree(const ShortestPathTree& tree, const PointSet& ps, int target) {
    PathInGraph p;
    if (std::isinf(tree.dist[target])) return p;
    int v = target;
    while (v != -1) {
        p.vertices.push_back(v);
        v = tree.pred[v];
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
        p.length += dist_l2(ps[p.vertices[i]], ps[p.vertices[i + 1]]);
    return p;
}

StretchReport stretch_factor(const PointSet& ps, const std::vector<std::pair<int, int>>& edges,
                             const AnalyzeOptions& opts) {
    const int n = static_cast<int>(ps.size());
    if (n < 2) throw std::invalid_argument("stretch_factor: need at least 2 points");
    StretchReport rep;
    rep.n = static_cast<std::size_t>(n);
    auto adj = weighted_adjacency(ps, edges);
    for (int a = 0; a < n; ++a) {
        auto tree = dijkstra(adj, a);
        for (int b = a + 1; b < n; ++b) {
            double dt = tree.dist[b];
            double d2 = dist_l2(ps[a], ps[b]);
            Rat dx = abs(ps[a].x - ps[b].x);
            Rat dy = abs(ps[a].y - ps[b].y);
            double dinf = to_double(dx > dy ? dx : dy);
            double dmin = to_double(dx > dy ? dy : dx);
            double ratio = dt / d2;
            double margin = (1.0 + kSqrt2) * dinf + dmin - dt;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.argmax_a = a;
                rep.argmax_b = b;
            }
            if (margin < rep.min_margin) {
                rep.min_margin = margin;
                rep.min_margin_a = a;
                rep.min_margin_b = b;
            }
            if (opts.collect_pairs) rep.pairs.push_back({a, b, dt, d2, ratio, margin});
        }
    }
    return rep;
}

StretchReport stretch_factor(const Triangulation& t, const AnalyzeOptions& opts) {
    return stretch_factor(t.points(), edge_pairs(t), opts);
}

BoundCheck verify_theorem_bound(const Triangulation& t) {
    auto rep = stretch_factor(t, AnalyzeOptions{true});
    BoundCheck c;
    c.min_margin = rep.min_margin;
    c.argmin_a = rep.min_margin_a;
    c.argmin_b = rep.min_margin_b;
    const double tol = 1e-9 * t.points().bbox_extent();
    for (auto& pr : rep.pairs)
        if (pr.margin < -tol) ++c.violations;
    return c;
}

CorollaryMax corollary_maximizer() {
    // g(u) = ((1+sqrt2) + u)/sqrt(1+u^2) over u = y/x in (0, 1]; coarse grid
    // followed by ternary refinement (g is unimodal on the interval).
    auto g = [](double u) { return (1.0 + kSqrt2 + u) / std::sqrt(1.0 + u * u); };
    double best_u = 1e-6, best = g(best_u);
    const int grid = 200000;
    for (int i = 1; i <= grid; ++i) {
        double u = static_cast<double>(i) / grid;
        double v = g(u);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    double lo = std::max(1e-12, best_u - 2.0 / grid), hi = std::min(1.0, best_u + 2.0 / grid);
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2))
            lo = m1;
        else
            hi = m2;
    }
    double u = (lo + hi) / 2.0;
    CorollaryMax out;
    out.value = g(u);
    out.x_over_y = 1.0 / u;
    return out;
}

}  // namespace sqspan
