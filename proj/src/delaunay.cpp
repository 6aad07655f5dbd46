#include "sqspan/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sqspan {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

// CCW-from-east angular order of neighbor directions around v.
struct AngularLess {
    const PointSet& ps;
    int v;
    int half(int u) const {
        const Point& pv = ps[v];
        const Point& pu = ps[u];
        if (pu.y > pv.y) return 0;
        if (pu.y < pv.y) return 1;
        return pu.x > pv.x ? 0 : 1;
    }
    bool operator()(int a, int b) const {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        int s = orient_sign(ps[v], ps[a], ps[b]);
        if (s != 0) return s > 0;
        return a < b;  // collinear rays cannot happen for empty-square edges
    }
};

}  // namespace

FaceSet extract_faces(const PointSet& domain, const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(domain.size());
    std::vector<std::vector<int>> adj(n);
    for (auto& e : edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (int v = 0; v < n; ++v) std::sort(adj[v].begin(), adj[v].end(), AngularLess{domain, v});

    std::unordered_map<std::int64_t, int> pos;  // (v,u) -> index of u in adj[v]
    pos.reserve(edges.size() * 4 + 8);
    auto key = [](int a, int b) {
        return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    for (int v = 0; v < n; ++v)
        for (std::size_t i = 0; i < adj[v].size(); ++i) pos[key(v, adj[v][i])] = static_cast<int>(i);

    FaceSet out;
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges) {
        for (auto start : {std::make_pair(e.first, e.second), std::make_pair(e.second, e.first)}) {
            if (seen.count(start)) continue;
            std::vector<int> walk;
            auto cur = start;
            Rat area2 = 0;
            do {
                seen.insert(cur);
                walk.push_back(cur.first);
                const Point& p = domain[cur.first];
                const Point& q = domain[cur.second];
                area2 += p.x * q.y - q.x * p.y;
                // next dart: ccw-next neighbor of cur.second after cur.first
                const auto& ring = adj[cur.second];
                int i = pos[key(cur.second, cur.first)];
                int j = (i + 1) % static_cast<int>(ring.size());
                cur = {cur.second, ring[j]};
            } while (cur != start);
            if (area2 > 0)
                out.internal_faces.push_back(std::move(walk));
            else
                out.outer_walks.push_back(std::move(walk));
        }
    }
    return out;
}

bool Triangulation::has_edge(int a, int b) const {
    auto p = ordered(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), p, [](const Edge& e, const std::pair<int, int>& q) {
        return std::make_pair(e.a, e.b) < q;
    });
    return it != edges.end() && it->a == p.first && it->b == p.second;
}

const std::vector<int>& Triangulation::neighbors(int v) const { return adj_[v]; }

int Triangulation::triangle_left_of(int a, int b) const {
    auto it = tri_left_.find({a, b});
    return it == tri_left_.end() ? -1 : it->second;
}

void Triangulation::rebuild_tables() {
    const int n = static_cast<int>(domain->size());
    adj_.assign(n, {});
    for (auto& e : edges) {
        adj_[e.a].push_back(e.b);
        adj_[e.b].push_back(e.a);
    }
    for (int v = 0; v < n; ++v) std::sort(adj_[v].begin(), adj_[v].end(), AngularLess{*domain, v});
    tri_left_.clear();
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& tr = triangles[t].v;
        for (int i = 0; i < 3; ++i) tri_left_[{tr[i], tr[(i + 1) % 3]}] = static_cast<int>(t);
    }
}

PointSet rotate_for_l1(const PointSet& ps) {
    std::vector<Point> pts;
    pts.reserve(ps.size());
    for (auto& p : ps.points()) pts.emplace_back(p.id, p.x - p.y, p.x + p.y);
    return PointSet(std::move(pts));
}

namespace {

struct Builder {
    const PointSet& ps;
    const TriangulateOptions& opts;
    std::set<std::pair<int, int>> tested;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> edgeset;
    std::vector<int> byx;  // ids sorted by x (double) for the rectangle prefilter

    explicit Builder(const PointSet& ps_, const TriangulateOptions& o) : ps(ps_), opts(o) {
        byx.resize(ps.size());
        std::iota(byx.begin(), byx.end(), 0);
        std::sort(byx.begin(), byx.end(), [&](int a, int b) { return ps[a].xd < ps[b].xd; });
    }

    bool test_pair(int a, int b) {
        auto p = ordered(a, b);
        if (!tested.insert(p).second) return false;
        auto w = empty_square_exists(ps, p.first, p.second);
        if (!w) return false;
        edges.push_back({p.first, p.second, *w});
        edgeset.insert(p);
        return true;
    }

    // Conservative emptiness prefilter for the open rectangle of (a,b):
    // returns false only when a point is certainly strictly inside.
    bool rect_maybe_empty(int a, int b) const {
        const double eta = 1e-12 * std::max(1.0, ps.scale());
        double xlo = std::min(ps[a].xd, ps[b].xd), xhi = std::max(ps[a].xd, ps[b].xd);
        double ylo = std::min(ps[a].yd, ps[b].yd), yhi = std::max(ps[a].yd, ps[b].yd);
        auto lo = std::lower_bound(byx.begin(), byx.end(), xlo - eta,
                                   [&](int id, double v) { return ps[id].xd < v; });
        for (auto it = lo; it != byx.end() && ps[*it].xd <= xhi + eta; ++it) {
            int i = *it;
            if (i == a || i == b) continue;
            const Point& p = ps[i];
            if (p.xd > xlo + eta && p.xd < xhi - eta && p.yd > ylo + eta && p.yd < yhi - eta)
                return false;
        }
        return true;
    }

    void candidates() {
        const int n = static_cast<int>(ps.size());
        const int k_all = 8, k_quad = 3;
        std::vector<std::pair<double, int>> buf;
        for (int i = 0; i < n; ++i) {
            buf.clear();
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                double d = std::max(std::abs(ps[i].xd - ps[j].xd), std::abs(ps[i].yd - ps[j].yd));
                buf.push_back({d, j});
            }
            int kk = std::min<int>(k_all, static_cast<int>(buf.size()));
            std::partial_sort(buf.begin(), buf.begin() + kk, buf.end());
            for (int t = 0; t < kk; ++t) test_pair(i, buf[t].second);
            // nearest few per quadrant
            for (int q = 0; q < 4; ++q) {
                std::vector<std::pair<double, int>> qb;
                for (auto& [d, j] : buf) {
                    double dx = ps[j].xd - ps[i].xd, dy = ps[j].yd - ps[i].yd;
                    int quad = (dx >= 0 ? (dy >= 0 ? 0 : 3) : (dy >= 0 ? 1 : 2));
                    if (quad == q) qb.push_back({d, j});
                }
                int kq = std::min<int>(k_quad, static_cast<int>(qb.size()));
                std::partial_sort(qb.begin(), qb.begin() + kq, qb.end());
                for (int t = 0; t < kq; ++t) test_pair(i, qb[t].second);
            }
        }
    }

    void bridge_components() {
        const int n = static_cast<int>(ps.size());
        std::vector<int> comp(n);
        auto recompute = [&]() {
            std::iota(comp.begin(), comp.end(), 0);
            std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
            for (auto& e : edges) comp[find(e.a)] = find(e.b);
            std::set<int> roots;
            for (int i = 0; i < n; ++i) roots.insert(find(i));
            for (int i = 0; i < n; ++i) comp[i] = find(i);
            return static_cast<int>(roots.size());
        };
        int guard = 0;
        while (recompute() > 1) {
            if (++guard > n) throw std::runtime_error("bridge_components failed to converge");
            // closest pair across components in Linf; the midpoint square of
            // such a pair is always empty, so it is always an edge.
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (comp[i] == comp[j]) continue;
                    double d = std::max(std::abs(ps[i].xd - ps[j].xd), std::abs(ps[i].yd - ps[j].yd));
                    best = std::min(best, d);
                }
            const double eta = 1e-9 * std::max(1.0, ps.scale());
            std::vector<std::pair<int, int>> near;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (comp[i] == comp[j]) continue;
                    double d = std::max(std::abs(ps[i].xd - ps[j].xd), std::abs(ps[i].yd - ps[j].yd));
                    if (d <= best + eta) near.push_back({i, j});
                }
            // exact argmin with id tie-break
            std::pair<int, int> arg = near.front();
            Rat bestr = dist_linf_exact(ps[arg.first], ps[arg.second]);
            for (auto& pr : near) {
                Rat d = dist_linf_exact(ps[pr.first], ps[pr.second]);
                if (d < bestr || (d == bestr && pr < arg)) {
                    bestr = d;
                    arg = pr;
                }
            }
            tested.erase(arg);  // allow retest in case a candidate test missed it
            if (!test_pair(arg.first, arg.second))
                throw std::runtime_error("closest inter-component pair is not an edge");
        }
    }

    void repair() {
        int guard = 0;
        while (true) {
            if (++guard > 10 * static_cast<int>(ps.size()) + 10)
                throw std::runtime_error("triangulation repair failed to converge");
            std::vector<std::pair<int, int>> epairs;
            epairs.reserve(edges.size());
            for (auto& e : edges) epairs.push_back({e.a, e.b});
            FaceSet fs = extract_faces(ps, epairs);
            bool added = false;
            auto handle = [&](const std::vector<int>& walk, bool internal) {
                std::vector<int> vs(walk);
                std::sort(vs.begin(), vs.end());
                vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
                if (internal && vs.size() <= 3) return;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j) {
                        auto p = ordered(vs[i], vs[j]);
                        if (edgeset.count(p) || tested.count(p)) continue;
                        if (!rect_maybe_empty(p.first, p.second)) {
                            tested.insert(p);
                            continue;
                        }
                        if (test_pair(p.first, p.second)) added = true;
                    }
            };
            for (auto& fc : fs.internal_faces) handle(fc, true);
            for (auto& ow : fs.outer_walks) handle(ow, false);
            if (!added) break;
        }
    }
};

std::vector<Triangle> assemble_triangles(const PointSet& ps, const std::vector<Edge>& edges) {
    std::vector<std::pair<int, int>> epairs;
    epairs.reserve(edges.size());
    for (auto& e : edges) epairs.push_back({e.a, e.b});
    FaceSet fs = extract_faces(ps, epairs);
    std::vector<Triangle> tris;
    for (auto& fc : fs.internal_faces) {
        std::vector<int> vs(fc);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        if (fc.size() != 3 || vs.size() != 3)
            throw std::runtime_error("internal face is not a triangle (degenerate input?)");
        Triangle t;
        // rotate so the smallest id leads, preserving ccw order
        int lead = 0;
        for (int i = 1; i < 3; ++i)
            if (fc[i] < fc[lead]) lead = i;
        for (int i = 0; i < 3; ++i) t.v[i] = fc[(lead + i) % 3];
        auto squares = squares_through_three(ps[t.v[0]], ps[t.v[1]], ps[t.v[2]]);
        std::vector<AxisSquare> empty;
        for (auto& sq : squares)
            if (square_interior_empty(ps, sq)) empty.push_back(sq);
        if (empty.empty()) throw std::runtime_error("triangle face has no empty circumsquare");
        t.circumsquare = empty.front();
        tris.push_back(std::move(t));
    }
    std::sort(tris.begin(), tris.end(), [](const Triangle& a, const Triangle& b) { return a.v < b.v; });
    return tris;
}

Triangulation build(std::shared_ptr<const PointSet> original, std::shared_ptr<const PointSet> domain,
                    Metric metric, const TriangulateOptions& opts) {
    const PointSet& ps = *domain;
    if (ps.size() < 2) throw std::invalid_argument("triangulate: need at least 2 points");
    if (opts.validate_input) {
        auto viol = validate_general_position(ps, opts.validate_opts);
        if (!viol.empty()) {
            std::string msg = "general position violated:";
            for (auto& v : viol) {
                msg += " " + v.rule + "(";
                for (std::size_t i = 0; i < v.ids.size(); ++i)
                    msg += (i ? "," : "") + std::to_string(v.ids[i]);
                msg += ")";
            }
            throw std::invalid_argument(msg);
        }
    }

    Builder b(ps, opts);
    if (ps.size() <= opts.brute_force_limit) {
        const int n = static_cast<int>(ps.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) b.test_pair(i, j);
    } else {
        b.candidates();
        b.bridge_components();
        b.repair();
    }

    Triangulation t;
    t.metric = metric;
    t.original = std::move(original);
    t.domain = domain;
    t.edges = std::move(b.edges);
    std::sort(t.edges.begin(), t.edges.end(),
              [](const Edge& x, const Edge& y) { return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b); });
    t.triangles = assemble_triangles(ps, t.edges);
    t.rebuild_tables();
    return t;
}

}  // namespace

Triangulation triangulate_linf(std::shared_ptr<const PointSet> ps, const TriangulateOptions& opts) {
    return build(ps, ps, Metric::Linf, opts);
}

Triangulation triangulate_linf(const PointSet& ps, const TriangulateOptions& opts) {
    auto sp = std::make_shared<PointSet>(ps);
    return build(sp, sp, Metric::Linf, opts);
}

Triangulation triangulate_l1(std::shared_ptr<const PointSet> ps, const TriangulateOptions& opts) {
    auto rotated = std::make_shared<PointSet>(rotate_for_l1(*ps));
    return build(std::move(ps), std::move(rotated), Metric::L1, opts);
}

Triangulation triangulate_l1(const PointSet& ps, const TriangulateOptions& opts) {
    return triangulate_l1(std::make_shared<PointSet>(ps), opts);
}

namespace {

bool segments_cross_open(const PointSet& ps, int a, int b, int c, int d) {
    if (a == c || a == d || b == c || b == d) return false;
    int o1 = orient_sign(ps[a], ps[b], ps[c]);
    int o2 = orient_sign(ps[a], ps[b], ps[d]);
    int o3 = orient_sign(ps[c], ps[d], ps[a]);
    int o4 = orient_sign(ps[c], ps[d], ps[b]);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

std::vector<Violation> validate_triangulation(const Triangulation& t,
                                              const TriangulationValidateOptions& opts) {
    std::vector<Violation> out;
    const PointSet& ps = t.domain_points();
    const int n = static_cast<int>(ps.size());

    for (auto& e : t.edges) {
        if (!e.witness.on_boundary(ps[e.a].x, ps[e.a].y) ||
            !e.witness.on_boundary(ps[e.b].x, ps[e.b].y))
            out.push_back({"witness-endpoints", {e.a, e.b}, "endpoint not on witness boundary"});
        if (!square_interior_empty(ps, e.witness))
            out.push_back({"non-empty-witness", {e.a, e.b}, "witness square contains a point"});
    }
    for (auto& tr : t.triangles) {
        const auto& sq = tr.circumsquare;
        auto s0 = point_side_on(sq, ps[tr.v[0]]);
        auto s1 = point_side_on(sq, ps[tr.v[1]]);
        auto s2 = point_side_on(sq, ps[tr.v[2]]);
        if (s0.empty() || s1.empty() || s2.empty()) {
            out.push_back({"circumsquare-boundary", {tr.v[0], tr.v[1], tr.v[2]}, ""});
        } else {
            bool distinct = false;
            for (auto a : s0)
                for (auto b : s1)
                    for (auto c : s2)
                        if (a != b && b != c && a != c) distinct = true;
            if (!distinct)
                out.push_back({"circumsquare-sides", {tr.v[0], tr.v[1], tr.v[2]},
                               "vertices not on three different sides"});
        }
        if (!square_interior_empty(ps, sq))
            out.push_back({"non-empty-circumsquare", {tr.v[0], tr.v[1], tr.v[2]}, ""});
        auto squares = squares_through_three(ps[tr.v[0]], ps[tr.v[1]], ps[tr.v[2]]);
        int empties = 0;
        for (auto& s : squares)
            if (square_interior_empty(ps, s)) ++empties;
        if (empties > 1)
            out.push_back({"ambiguous-circumsquare", {tr.v[0], tr.v[1], tr.v[2]},
                           "both candidate squares are empty"});
    }

    if (opts.check_planarity) {
        for (std::size_t i = 0; i < t.edges.size(); ++i) {
            const auto& e = t.edges[i];
            double exlo = std::min(ps[e.a].xd, ps[e.b].xd), exhi = std::max(ps[e.a].xd, ps[e.b].xd);
            double eylo = std::min(ps[e.a].yd, ps[e.b].yd), eyhi = std::max(ps[e.a].yd, ps[e.b].yd);
            for (std::size_t j = i + 1; j < t.edges.size(); ++j) {
                const auto& g = t.edges[j];
                double gxlo = std::min(ps[g.a].xd, ps[g.b].xd), gxhi = std::max(ps[g.a].xd, ps[g.b].xd);
                double gylo = std::min(ps[g.a].yd, ps[g.b].yd), gyhi = std::max(ps[g.a].yd, ps[g.b].yd);
                const double pad = 1e-9 * ps.scale();
                if (gxlo > exhi + pad || gxhi < exlo - pad || gylo > eyhi + pad || gyhi < eylo - pad)
                    continue;
                if (segments_cross_open(ps, e.a, e.b, g.a, g.b))
                    out.push_back({"planarity", {e.a, e.b, g.a, g.b}, "edges cross"});
            }
        }
    }

    // connectivity + Euler + face structure
    {
        std::vector<std::vector<int>> adj(n);
        std::vector<std::pair<int, int>> epairs;
        for (auto& e : t.edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
            epairs.push_back({e.a, e.b});
        }
        std::vector<int> stack = {0}, seen(n, 0);
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++cnt;
                    stack.push_back(u);
                }
        }
        if (cnt != n) out.push_back({"disconnected", {}, "graph is not connected"});
        if (cnt == n && !t.edges.empty()) {
            FaceSet fs = extract_faces(ps, epairs);
            long long V = n, E = static_cast<long long>(t.edges.size());
            long long F = static_cast<long long>(fs.internal_faces.size()) +
                          static_cast<long long>(fs.outer_walks.size());
            if (V - E + F != 2)
                out.push_back({"euler", {}, "V-E+F = " + std::to_string(V - E + F)});
            std::set<std::array<int, 3>> face_tris, listed;
            for (auto& fc : fs.internal_faces) {
                if (fc.size() != 3) {
                    out.push_back({"non-triangular-face", fc, ""});
                    continue;
                }
                std::array<int, 3> k = {fc[0], fc[1], fc[2]};
                std::sort(k.begin(), k.end());
                face_tris.insert(k);
            }
            for (auto& tr : t.triangles) {
                std::array<int, 3> k = tr.v;
                std::sort(k.begin(), k.end());
                listed.insert(k);
            }
            if (face_tris != listed)
                out.push_back({"face-triangle-mismatch", {},
                               "triangle list does not equal the set of internal faces"});
            if (opts.check_hull_coverage && !fs.outer_walks.empty()) {
                // Informational: the outer walk can strictly contain the hull
                // boundary (pockets), which is a property of the metric, not a
                // construction error.
                auto hull = convex_hull_boundary(ps);
                std::set<std::pair<int, int>> hull_edges;
                for (std::size_t i = 0; i < hull.size(); ++i)
                    hull_edges.insert(ordered(hull[i], hull[(i + 1) % hull.size()]));
                std::set<std::pair<int, int>> outer_edges;
                const auto& ow = fs.outer_walks.front();
                for (std::size_t i = 0; i < ow.size(); ++i)
                    outer_edges.insert(ordered(ow[i], ow[(i + 1) % ow.size()]));
                if (outer_edges != hull_edges)
                    out.push_back({"hull-pocket", {}, "outer face differs from the convex hull"});
            }
        }
    }
    return out;
}

}  // namespace sqspan
