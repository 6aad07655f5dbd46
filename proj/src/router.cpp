#include "sqspan/router.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqspan {

namespace {

constexpr double kOnePlusSqrt2 = 1.0 + kSqrt2;

double frame_eta(const PointSet& ps) { return 1e-12 * std::max(1.0, 4.0 * ps.scale()); }

struct FrameCoords {
    Rat fx, fy;
    double fxd, fyd;
};

FrameCoords fc(const PairFrame& f, const Point& p) {
    FrameCoords c;
    f.map(p.x, p.y, c.fx, c.fy);
    c.fxd = to_double(c.fx);
    c.fyd = to_double(c.fy);
    return c;
}

}  // namespace

const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::DirectEdge: return "direct-edge";
        case StepKind::Case1RegionA: return "case1-regionA";
        case StepKind::Case1RegionB: return "case1-regionB";
        case StepKind::Case1RegionC: return "case1-regionC";
        case StepKind::Case2NoInductive: return "case2-no-inductive";
        case StepKind::Case2InductiveHigh: return "case2-inductive-high";
        case StepKind::Case2InductiveLow: return "case2-inductive-low";
    }
    return "?";
}

PairFrame canonical_frame(const Point& a, const Point& b) {
    if (a.x == b.x && a.y == b.y) throw std::invalid_argument("canonical_frame: identical points");
    return make_pair_frame(a, b);
}

CrossingSequence crossing_sequence(const Triangulation& t, int a, int b) {
    const PointSet& ps = t.domain_points();
    if (a == b) throw std::invalid_argument("crossing_sequence: a == b");
    if (t.has_edge(a, b))
        throw std::invalid_argument("crossing_sequence: (a,b) is an edge; use it directly");

    CrossingSequence seq;
    seq.a = a;
    seq.b = b;
    seq.frame = canonical_frame(ps[a], ps[b]);
    const int sigma = seq.frame.orientation_sign();

    auto on_open_segment = [&](int v) {
        if (orient_sign(ps[a], ps[b], ps[v]) != 0) return false;
        Rat lo = ps[a].x < ps[b].x ? ps[a].x : ps[b].x;
        Rat hi = ps[a].x < ps[b].x ? ps[b].x : ps[a].x;
        return ps[v].x > lo && ps[v].x < hi;
    };

    // First triangle: the fan triangle at a whose wedge contains direction a->b.
    int cur = -1;
    for (int u : t.neighbors(a)) {
        int ti = t.triangle_left_of(a, u);
        if (ti < 0) continue;
        const auto& tv = t.triangles[ti].v;
        int ia = 0;
        while (tv[ia] != a) ++ia;
        int u2 = tv[(ia + 1) % 3];
        int w2 = tv[(ia + 2) % 3];
        int s1 = orient_sign(ps[a], ps[u2], ps[b]);
        int s2 = orient_sign(ps[a], ps[w2], ps[b]);
        if (s1 == 0 && on_open_segment(u2))
            throw std::runtime_error("crossing_sequence: vertex on segment");
        if (s2 == 0 && on_open_segment(w2))
            throw std::runtime_error("crossing_sequence: vertex on segment");
        if (s1 > 0 && s2 < 0) {
            cur = ti;
            break;
        }
    }
    if (cur < 0)
        throw std::runtime_error("crossing_sequence: segment leaves the triangulated region at a");

    std::pair<int, int> entry{-1, -1};
    int guard = 0;
    const int cap = static_cast<int>(t.triangles.size()) + 2;
    while (true) {
        if (++guard > cap) throw std::runtime_error("crossing_sequence: walk did not terminate");
        const auto& tv = t.triangles[cur].v;
        seq.tris.push_back(cur);
        if (tv[0] == b || tv[1] == b || tv[2] == b) break;
        int found = 0;
        std::pair<int, int> exit{-1, -1};
        for (int e = 0; e < 3; ++e) {
            int p = tv[e], q = tv[(e + 1) % 3];
            if ((p == entry.first && q == entry.second) || (p == entry.second && q == entry.first))
                continue;
            int o1 = orient_sign(ps[a], ps[b], ps[p]);
            int o2 = orient_sign(ps[a], ps[b], ps[q]);
            if (o1 == 0 && on_open_segment(p))
                throw std::runtime_error("crossing_sequence: vertex on segment");
            if (o2 == 0 && on_open_segment(q))
                throw std::runtime_error("crossing_sequence: vertex on segment");
            if (o1 * o2 >= 0) continue;
            int o3 = orient_sign(ps[p], ps[q], ps[a]);
            int o4 = orient_sign(ps[p], ps[q], ps[b]);
            if (o3 * o4 >= 0) continue;
            exit = {p, q};
            ++found;
        }
        if (found != 1)
            throw std::runtime_error("crossing_sequence: expected exactly one exit edge");
        int sp = orient_sign(ps[a], ps[b], ps[exit.first]) * sigma;
        int hi = sp > 0 ? exit.first : exit.second;
        int lo = sp > 0 ? exit.second : exit.first;
        seq.h.push_back(hi);
        seq.l.push_back(lo);
        int t1 = t.triangle_left_of(exit.first, exit.second);
        int t2 = t.triangle_left_of(exit.second, exit.first);
        int next = (t1 == cur) ? t2 : t1;
        if (next < 0)
            throw std::runtime_error("crossing_sequence: segment leaves the triangulated region");
        entry = exit;
        cur = next;
    }
    const int k = static_cast<int>(seq.tris.size());
    if (k < 2) throw std::runtime_error("crossing_sequence: degenerate sequence");
    // prepend/append label conventions
    seq.h.insert(seq.h.begin(), a);
    seq.l.insert(seq.l.begin(), a);
    seq.h.push_back(b);
    seq.l.push_back(seq.l.back());
    // squares and frontier abscissae
    seq.sq.resize(k + 1);
    seq.x.resize(k + 1);
    seq.x[0] = 0;
    for (int i = 1; i <= k; ++i) {
        seq.sq[i] = seq.frame.map_square(t.triangles[seq.tris[i - 1]].circumsquare);
        seq.x[i] = seq.sq[i].east();
    }
    return seq;
}

std::vector<CrossingEdgeClass> classify_crossing_edges(const Triangulation& t,
                                                       const CrossingSequence& seq,
                                                       std::vector<std::string>* violations) {
    const PointSet& ps = t.domain_points();
    std::vector<std::string> local;
    auto viol = [&](const std::string& s) { local.push_back(s); };
    const int k = seq.k();
    const Rat& w = seq.frame.w;
    const Rat& h = seq.frame.h;

    auto sides_of = [&](int i, int v) {
        auto c = fc(seq.frame, ps[v]);
        return point_side_on(seq.sq[i], c.fx, c.fy);
    };
    auto has = [](const std::vector<Side>& s, Side x) {
        return std::find(s.begin(), s.end(), x) != s.end();
    };

    if (!has(sides_of(1, seq.a), Side::W)) viol("a not on the W side of S_1");
    if (!has(sides_of(k, seq.b), Side::E)) viol("b not on the E side of S_k");
    for (int i = 1; i < k; ++i) {
        auto ch = fc(seq.frame, ps[seq.h[i]]);
        auto cl = fc(seq.frame, ps[seq.l[i]]);
        if (!(ch.fx > 0 && ch.fx < w && ch.fy > h))
            viol("h_" + std::to_string(i) + " not above R(a,b)");
        if (!(cl.fx > 0 && cl.fx < w && cl.fy < 0))
            viol("l_" + std::to_string(i) + " not below R(a,b)");
    }

    std::vector<CrossingEdgeClass> out;
    static const std::pair<Side, Side> kHighAllowed[] = {
        {Side::W, Side::N}, {Side::W, Side::E}, {Side::N, Side::E}};
    static const std::pair<Side, Side> kLowAllowed[] = {
        {Side::W, Side::S}, {Side::W, Side::E}, {Side::S, Side::E}};
    for (int i = 2; i < k; ++i) {
        bool hc = seq.h[i] != seq.h[i - 1];
        bool lc = seq.l[i] != seq.l[i - 1];
        if (hc == lc) {
            viol("exactly one label must change at i=" + std::to_string(i));
            continue;
        }
        int e1 = hc ? seq.h[i - 1] : seq.l[i - 1];
        int e2 = hc ? seq.h[i] : seq.l[i];
        auto s1 = sides_of(i, e1);
        auto s2 = sides_of(i, e2);
        bool matched = false;
        CrossingEdgeClass cls{i, hc, Side::W, Side::N};
        for (auto& pr : (hc ? kHighAllowed : kLowAllowed)) {
            if (has(s1, pr.first) && has(s2, pr.second)) {
                cls.from_side = pr.first;
                cls.to_side = pr.second;
                matched = true;
                break;
            }
        }
        if (!matched) {
            viol("edge label outside the allowed set at i=" + std::to_string(i));
            continue;
        }
        out.push_back(cls);
    }

    if (violations) {
        violations->insert(violations->end(), local.begin(), local.end());
    } else if (!local.empty()) {
        std::string msg = "crossing-sequence structure violated:";
        for (auto& s : local) msg += " [" + s + "]";
        throw std::runtime_error(msg);
    }
    return out;
}

SquareStatus potential_status(const Triangulation& t, const CrossingSequence& seq, int i,
                              const ShortestPathTree& tree) {
    const PointSet& ps = t.domain_points();
    SquareStatus st;
    st.i = i;
    auto ch = fc(seq.frame, ps[seq.h[i]]);
    auto cl = fc(seq.frame, ps[seq.l[i]]);
    Rat adx = abs(ch.fx - cl.fx);
    Rat ady = abs(ch.fy - cl.fy);
    st.inductive = ady <= adx;
    if (st.inductive) st.inductive_point = (ch.fx > cl.fx) ? seq.h[i] : seq.l[i];
    auto sides_h = point_side_on(seq.sq[i], ch.fx, ch.fy);
    auto sides_l = point_side_on(seq.sq[i], cl.fx, cl.fy);
    st.h_promising = std::find(sides_h.begin(), sides_h.end(), Side::E) != sides_h.end();
    st.l_promising = std::find(sides_l.begin(), sides_l.end(), Side::E) != sides_l.end();
    double ds = to_double(clockwise_boundary_distance_exact(seq.sq[i], ch.fx, ch.fy, cl.fx, cl.fy));
    double lhs = tree.dist[seq.h[i]] + tree.dist[seq.l[i]] + ds;
    double rhs = 4.0 * to_double(seq.x[i]);
    st.potential_ok = lhs <= rhs + 4e-9 * ps.bbox_extent();
    return st;
}

namespace {

bool promising_at(const PointSet& ps, const CrossingSequence& seq, int idx, bool high) {
    int v = high ? seq.h[idx] : seq.l[idx];
    auto c = fc(seq.frame, ps[v]);
    auto sides = point_side_on(seq.sq[idx], c.fx, c.fy);
    return std::find(sides.begin(), sides.end(), Side::E) != sides.end();
}

LabelRun label_run(const Triangulation& t, const CrossingSequence& seq, int j, bool high) {
    const PointSet& ps = t.domain_points();
    const auto& lab = high ? seq.h : seq.l;
    LabelRun run;
    if (promising_at(ps, seq, j, high)) {
        run.start_index = j;
        run.path = {lab[j]};
        return run;
    }
    int i = j - 1;
    while (i >= 1 && !promising_at(ps, seq, i, high)) --i;
    if (i < 1) i = 0;
    run.start_index = i;
    run.path.push_back(lab[i]);
    for (int s = i; s < j; ++s) {
        if (lab[s + 1] == lab[s]) continue;
        // run edges must be WN (high) / WS (low) in the square they change in
        auto c1 = fc(seq.frame, ps[lab[s]]);
        auto c2 = fc(seq.frame, ps[lab[s + 1]]);
        auto s1 = point_side_on(seq.sq[s + 1], c1.fx, c1.fy);
        auto s2 = point_side_on(seq.sq[s + 1], c2.fx, c2.fy);
        Side want = high ? Side::N : Side::S;
        bool ok = std::find(s1.begin(), s1.end(), Side::W) != s1.end() &&
                  std::find(s2.begin(), s2.end(), want) != s2.end();
        if (!ok)
            throw std::runtime_error(std::string("maximal ") + (high ? "high" : "low") +
                                     " path edge is not a W" + (high ? "N" : "S") + " edge");
        run.path.push_back(lab[s + 1]);
    }
    return run;
}

}  // namespace

LabelRun maximal_high_path(const Triangulation& t, const CrossingSequence& seq, int j) {
    return label_run(t, seq, j, true);
}

LabelRun maximal_low_path(const Triangulation& t, const CrossingSequence& seq, int j) {
    return label_run(t, seq, j, false);
}

Extension monotone_extension(const Triangulation& t, const CrossingSequence& seq, int i, bool high) {
    const PointSet& ps = t.domain_points();
    const auto& lab = high ? seq.h : seq.l;
    const Rat& bx = seq.frame.w;
    const Rat& by = seq.frame.h;
    auto good = [&](int v) {
        auto c = fc(seq.frame, ps[v]);
        Rat dx = bx - c.fx;
        Rat dy = abs(by - c.fy);
        return dx >= dy;
    };
    Extension ext;
    ext.path.push_back(lab[i]);
    int idx = i;
    const int k = seq.k();
    while (!good(lab[idx])) {
        int nxt = idx + 1;
        while (nxt <= k && lab[nxt] == lab[idx]) ++nxt;
        if (nxt > k) {
            ext.exhausted = true;
            break;
        }
        auto c1 = fc(seq.frame, ps[lab[idx]]);
        auto c2 = fc(seq.frame, ps[lab[nxt]]);
        auto s1 = point_side_on(seq.sq[nxt], c1.fx, c1.fy);
        auto s2 = point_side_on(seq.sq[nxt], c2.fx, c2.fy);
        Side from = high ? Side::N : Side::S;
        bool ok = std::find(s1.begin(), s1.end(), from) != s1.end() &&
                  std::find(s2.begin(), s2.end(), Side::E) != s2.end();
        if (!ok)
            throw std::runtime_error(std::string("monotone extension edge is not a ") +
                                     (high ? "NE" : "SE") + " edge");
        ext.path.push_back(lab[nxt]);
        idx = nxt;
    }
    ext.end_index = idx;
    return ext;
}

namespace {

struct Sub {
    RouteStep step;
    std::vector<int> path;
};

struct Ctx {
    const Triangulation& t;
    const PointSet& ps;
    double tol;
    int depth_cap;
};

void record(Ctx& c, RouteStep& st, const std::string& label, double bound, double value) {
    double slack = bound - value;
    st.checks.push_back({label, bound, value, slack});
    if (slack < -c.tol) {
        std::ostringstream os;
        os << "certificate slack violation at '" << label << "': bound " << bound << " value "
           << value << " slack " << slack << " (pair " << st.a << "," << st.b << ")";
        throw CertificateError(os.str());
    }
}

std::vector<int> rect_interior_points(const PointSet& ps, int a, int b) {
    const Point& pa = ps[a];
    const Point& pb = ps[b];
    Rat xlo = pa.x < pb.x ? pa.x : pb.x, xhi = pa.x < pb.x ? pb.x : pa.x;
    Rat ylo = pa.y < pb.y ? pa.y : pb.y, yhi = pa.y < pb.y ? pb.y : pa.y;
    const double eta = frame_eta(ps);
    const double xlod = to_double(xlo), xhid = to_double(xhi);
    const double ylod = to_double(ylo), yhid = to_double(yhi);
    std::vector<int> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (static_cast<int>(i) == a || static_cast<int>(i) == b) continue;
        const Point& p = ps[i];
        if (p.xd < xlod - eta || p.xd > xhid + eta || p.yd < ylod - eta || p.yd > yhid + eta)
            continue;
        if (p.x > xlo && p.x < xhi && p.y > ylo && p.y < yhi) out.push_back(static_cast<int>(i));
    }
    return out;
}

// Argmin of max(fx, fy) over points strictly inside the frame quadrant at a
// (growing empty square with a as the frame-SW corner). Returns the border
// points (argmin set), empty if the quadrant is empty.
std::vector<int> square_border_points(Ctx& c, const PairFrame& f, int a, int b, bool from_b) {
    const PointSet& ps = c.ps;
    const double eta = frame_eta(ps);
    const double wd = to_double(f.w), hd = to_double(f.h);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> cand;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const int ii = static_cast<int>(i);
        if (ii == a || ii == b) continue;
        double fx, fy;
        f.map_approx(ps[i].xd, ps[i].yd, fx, fy);
        if (from_b) {
            fx = wd - fx;
            fy = hd - fy;
        }
        if (fx < -eta || fy < -eta) continue;
        if (fx <= eta || fy <= eta) {
            // near an axis: settle quadrant membership exactly
            Rat rx, ry;
            f.map(ps[i].x, ps[i].y, rx, ry);
            if (from_b) {
                rx = f.w - rx;
                ry = f.h - ry;
            }
            if (!(rx > 0 && ry > 0)) continue;
        }
        double m = std::max(fx, fy);
        if (m < best - eta) {
            best = m;
            cand.assign(1, ii);
        } else if (m <= best + eta) {
            cand.push_back(ii);
            if (m < best) best = m;
        }
    }
    if (cand.empty()) return cand;
    // exact argmin among the candidates
    Rat bestr;
    bool first = true;
    std::vector<int> arg;
    for (int id : cand) {
        Rat rx, ry;
        f.map(ps[id].x, ps[id].y, rx, ry);
        if (from_b) {
            rx = f.w - rx;
            ry = f.h - ry;
        }
        if (!(rx > 0 && ry > 0)) continue;
        Rat m = rx > ry ? rx : ry;
        if (first || m < bestr) {
            bestr = m;
            arg.assign(1, id);
            first = false;
        } else if (m == bestr) {
            arg.push_back(id);
        }
    }
    std::sort(arg.begin(), arg.end());
    return arg;
}

Sub route_rec(Ctx& c, int a, int b, int depth);

Sub case2(Ctx& c, int a, int b, RouteStep st, int depth) {
    const PointSet& ps = c.ps;
    Sub out;
    CrossingSequence seq = crossing_sequence(c.t, a, b);
    const int k = seq.k();
    const double xd = to_double(seq.frame.w), yd = to_double(seq.frame.h);

    // Walked companion paths: prefix lengths of the distinct h- and l-chains.
    std::vector<double> lenH(k + 1, 0.0), lenL(k + 1, 0.0);
    for (int i = 1; i <= k; ++i) {
        lenH[i] = lenH[i - 1] + (seq.h[i] != seq.h[i - 1]
                                     ? dist_l2(ps[seq.h[i - 1]], ps[seq.h[i]])
                                     : 0.0);
        lenL[i] = lenL[i - 1] + (seq.l[i] != seq.l[i - 1]
                                     ? dist_l2(ps[seq.l[i - 1]], ps[seq.l[i]])
                                     : 0.0);
    }

    // First inductive square: gentle (l_i, h_i) edge, frame coordinates.
    int j = -1;
    for (int i = 1; i <= k; ++i) {
        auto chh = fc(seq.frame, ps[seq.h[i]]);
        auto cll = fc(seq.frame, ps[seq.l[i]]);
        if (abs(chh.fy - cll.fy) <= abs(chh.fx - cll.fx)) {
            j = i;
            break;
        }
    }

    // Walk-potential invariant along the prefix (companion paths version).
    const int limit = (j == -1) ? k : j;
    for (int i = 1; i <= limit; ++i) {
        auto chh = fc(seq.frame, ps[seq.h[i]]);
        auto cll = fc(seq.frame, ps[seq.l[i]]);
        double ds =
            to_double(clockwise_boundary_distance_exact(seq.sq[i], chh.fx, chh.fy, cll.fx, cll.fy));
        record(c, st, "potential walk invariant at i=" + std::to_string(i),
               4.0 * to_double(seq.x[i]) + 3.0 * c.tol, lenH[i] + lenL[i] + ds);
    }

    auto dedupe_labels = [&](const std::vector<int>& lab, int upto) {
        std::vector<int> p;
        for (int i = 0; i <= upto; ++i)
            if (p.empty() || p.back() != lab[i]) p.push_back(lab[i]);
        return p;
    };

    // Path to the promising (or initial) label at index i0 with length <= 2 x_{i0}.
    auto path_to_label = [&](int i0, bool low, RouteStep& stp) -> std::pair<std::vector<int>, double> {
        if (i0 == 0) return {{a}, 0.0};
        const double budget = 2.0 * to_double(seq.x[i0]);
        if (low) {
            if (lenL[i0] <= budget + c.tol) {
                record(c, stp, "promising start (own chain) <= 2 x_i", budget, lenL[i0]);
                return {dedupe_labels(seq.l, i0), lenL[i0]};
            }
            if (!c.t.has_edge(seq.h[i0], seq.l[i0]))
                throw CertificateError("expected crossing edge (h_i, l_i) in T");
            double len = lenH[i0] + dist_l2(ps[seq.h[i0]], ps[seq.l[i0]]);
            record(c, stp, "promising start (opposite chain + edge) <= 2 x_i", budget, len);
            auto p = dedupe_labels(seq.h, i0);
            p.push_back(seq.l[i0]);
            return {p, len};
        }
        if (lenH[i0] <= budget + c.tol) {
            record(c, stp, "promising start (own chain) <= 2 x_i", budget, lenH[i0]);
            return {dedupe_labels(seq.h, i0), lenH[i0]};
        }
        if (!c.t.has_edge(seq.h[i0], seq.l[i0]))
            throw CertificateError("expected crossing edge (h_i, l_i) in T");
        double len = lenL[i0] + dist_l2(ps[seq.l[i0]], ps[seq.h[i0]]);
        record(c, stp, "promising start (opposite chain + edge) <= 2 x_i", budget, len);
        auto p = dedupe_labels(seq.l, i0);
        p.push_back(seq.h[i0]);
        return {p, len};
    };

    auto append_path = [&](std::vector<int>& path, double& len, const std::vector<int>& rest) {
        for (int v : rest) {
            if (!path.empty() && path.back() == v) continue;
            if (!path.empty()) len += dist_l2(ps[path.back()], ps[v]);
            path.push_back(v);
        }
    };

    if (j == -1) {
        st.kind = StepKind::Case2NoInductive;
        const double budget = 2.0 * to_double(seq.x[k]);
        std::vector<int> path;
        double len = 0.0;
        if (lenH[k] <= budget + c.tol) {
            path = dedupe_labels(seq.h, k);
            len = lenH[k];
            record(c, st, "promising b (high chain) <= 2 x_k", budget, len);
        } else {
            if (!c.t.has_edge(seq.l[k], b))
                throw CertificateError("expected edge (l_k, b) in T");
            path = dedupe_labels(seq.l, k);
            len = lenL[k];
            append_path(path, len, {b});
            record(c, st, "promising b (low chain + edge) <= 2 x_k", budget, len);
        }
        record(c, st, "no inductive square: total <= (1+sqrt2) x + y", st.bound, len);
        st.length = len;
        out.step = std::move(st);
        out.path = std::move(path);
        return out;
    }

    st.inductive_index = j;
    auto ch = fc(seq.frame, ps[seq.h[j]]);
    auto cl = fc(seq.frame, ps[seq.l[j]]);
    const bool high = ch.fx > cl.fx;
    st.kind = high ? StepKind::Case2InductiveHigh : StepKind::Case2InductiveLow;
    st.via = high ? seq.h[j] : seq.l[j];

    LabelRun run = high ? maximal_low_path(c.t, seq, j) : maximal_high_path(c.t, seq, j);
    st.run_start = run.path.front();
    st.run_end = run.path.back();

    auto [path, len] = path_to_label(run.start_index, /*low=*/high, st);
    {
        double before = len;
        append_path(path, len, run.path);
        auto c_start = fc(seq.frame, ps[run.path.front()]);
        auto c_end = fc(seq.frame, ps[run.path.back()]);
        double bnd = high ? (c_end.fxd - c_start.fxd) + (c_start.fyd - c_end.fyd)
                          : (c_end.fxd - c_start.fxd) + (c_end.fyd - c_start.fyd);
        record(c, st, "maximal path length <= dx + |dy|", bnd + 2.0 * c.tol, len - before);
    }
    // gentle crossing edge to the inductive point
    {
        int from = high ? seq.l[j] : seq.h[j];
        int to = high ? seq.h[j] : seq.l[j];
        if (!c.t.has_edge(from, to))
            throw CertificateError("expected gentle crossing edge in T");
        double d = dist_l2(ps[from], ps[to]);
        record(c, st, "gentle edge <= sqrt2 * dx", kSqrt2 * std::abs(ch.fxd - cl.fxd) + c.tol, d);
        append_path(path, len, {to});
    }
    // the inductive-point inequality, companion-path version
    if (high) {
        record(c, st, "inductive point: len + (y_c - y) <= (1+sqrt2) x_c",
               kOnePlusSqrt2 * ch.fxd, len + (ch.fyd - yd));
    } else {
        record(c, st, "inductive point: len - y_c <= (1+sqrt2) x_c", kOnePlusSqrt2 * cl.fxd,
               len - cl.fyd);
    }

    Extension ext = monotone_extension(c.t, seq, j, high);
    {
        auto c_from = fc(seq.frame, ps[ext.path.front()]);
        auto c_to = fc(seq.frame, ps[ext.path.back()]);
        double before = len;
        append_path(path, len, ext.path);
        double bnd = (c_to.fxd - c_from.fxd) + std::abs(c_from.fyd - c_to.fyd);
        record(c, st, "monotone extension length <= dx + |dy|", bnd + 2.0 * c.tol, len - before);
    }
    st.ext_end = path.back();

    if (ext.exhausted) {
        // Low chain ran out while still in bad position: l_{k-1} is a vertex
        // of T_k, so the edge to b closes the route within the L1 bound.
        int e = path.back();
        if (!c.t.has_edge(e, b)) throw CertificateError("expected terminal edge (l_k, b) in T");
        st.terminal_edge = true;
        auto ce = fc(seq.frame, ps[e]);
        double d = dist_l2(ps[e], ps[b]);
        record(c, st, "terminal edge <= dx + dy", (xd - ce.fxd) + (yd - ce.fyd) + c.tol, d);
        append_path(path, len, {b});
    } else if (path.back() != b) {
        Sub child = route_rec(c, path.back(), b, depth + 1);
        record(c, st, "inductive tail (recursive) <= (1+sqrt2) dx + dy",
               child.step.bound + c.tol, child.step.length);
        append_path(path, len, child.path);
        st.children.push_back(std::move(child.step));
    }
    record(c, st, "case 2 total <= (1+sqrt2) x + y", st.bound, len);
    st.length = len;
    out.step = std::move(st);
    out.path = std::move(path);
    return out;
}

Sub route_rec(Ctx& c, int a, int b, int depth) {
    if (depth > c.depth_cap) throw CertificateError("route recursion depth cap exceeded");
    const PointSet& ps = c.ps;
    RouteStep st;
    st.a = a;
    st.b = b;
    st.frame = canonical_frame(ps[a], ps[b]);
    const double xd = to_double(st.frame.w), yd = to_double(st.frame.h);
    st.bound = kOnePlusSqrt2 * xd + yd;

    if (c.t.has_edge(a, b)) {
        st.kind = StepKind::DirectEdge;
        st.length = dist_l2(ps[a], ps[b]);
        record(c, st, "direct edge <= (1+sqrt2) x + y", st.bound, st.length);
        Sub out;
        out.path = {a, b};
        out.step = std::move(st);
        return out;
    }

    std::vector<int> inside = rect_interior_points(ps, a, b);
    if (!inside.empty()) {
        // Case 1. Region B first: both frame offsets dominated.
        const double eta = frame_eta(ps);
        std::vector<int> bs;
        for (int id : inside) {
            double fx, fy;
            st.frame.map_approx(ps[id].xd, ps[id].yd, fx, fy);
            bool maybe = fy <= fx + eta && (yd - fy) <= (xd - fx) + eta;
            if (!maybe) continue;
            Rat rx, ry;
            st.frame.map(ps[id].x, ps[id].y, rx, ry);
            if (ry <= rx && st.frame.h - ry <= st.frame.w - rx) bs.push_back(id);
        }
        if (!bs.empty()) {
            // deterministic pick: minimize d_inf(a,c) + d_inf(c,b), then id
            int bestid = -1;
            Rat bestv;
            for (int id : bs) {
                Rat v = dist_linf_exact(ps[a], ps[id]) + dist_linf_exact(ps[id], ps[b]);
                if (bestid < 0 || v < bestv || (v == bestv && id < bestid)) {
                    bestid = id;
                    bestv = v;
                }
            }
            st.kind = StepKind::Case1RegionB;
            st.via = bestid;
            Sub left = route_rec(c, a, bestid, depth + 1);
            Sub right = route_rec(c, bestid, b, depth + 1);
            record(c, st, "region B left <= (1+sqrt2) x_c + y_c", left.step.bound + c.tol,
                   left.step.length);
            record(c, st, "region B right <= (1+sqrt2)(x-x_c) + (y-y_c)", right.step.bound + c.tol,
                   right.step.length);
            Sub out;
            out.path = left.path;
            double len = left.step.length + right.step.length;
            for (std::size_t i = 1; i < right.path.size(); ++i) out.path.push_back(right.path[i]);
            record(c, st, "region B total <= (1+sqrt2) x + y", st.bound, len);
            st.length = len;
            st.children.push_back(std::move(left.step));
            st.children.push_back(std::move(right.step));
            out.step = std::move(st);
            return out;
        }

        // No region-B point: a border point of the largest empty corner
        // square at a (or at b) must lie inside R.
        auto pick_in_R = [&](const std::vector<int>& border) {
            for (int id : border) {  // sorted by id
                Rat rx, ry;
                st.frame.map(ps[id].x, ps[id].y, rx, ry);
                if (rx > 0 && rx < st.frame.w && ry > 0 && ry < st.frame.h) return id;
            }
            return -1;
        };
        int cA = pick_in_R(square_border_points(c, st.frame, a, b, false));
        int cC = (cA >= 0) ? -1 : pick_in_R(square_border_points(c, st.frame, a, b, true));
        if (cA < 0 && cC < 0)
            throw CertificateError("case 1: no corner-square border point inside R(a,b)");
        const bool from_a = cA >= 0;
        int cid = from_a ? cA : cC;
        Rat rx, ry;
        st.frame.map(ps[cid].x, ps[cid].y, rx, ry);
        // region A: fy > fx; region C: (h - fy) > (w - fx)
        st.kind = (ry > rx) ? StepKind::Case1RegionA : StepKind::Case1RegionC;
        st.via = cid;
        Sub out;
        double len;
        if (from_a) {
            if (!c.t.has_edge(a, cid))
                throw CertificateError("case 1: corner-square border point is not adjacent to a");
            double d = dist_l2(ps[a], ps[cid]);
            record(c, st, "border edge <= x_c + y_c", to_double(rx) + to_double(ry) + c.tol, d);
            Sub child = route_rec(c, cid, b, depth + 1);
            record(c, st, "case 1 tail <= (1+sqrt2) dinf + dmin", child.step.bound + c.tol,
                   child.step.length);
            out.path = {a};
            len = d + child.step.length;
            for (int v : child.path) out.path.push_back(v);
            st.children.push_back(std::move(child.step));
        } else {
            if (!c.t.has_edge(cid, b))
                throw CertificateError("case 1: corner-square border point is not adjacent to b");
            double d = dist_l2(ps[cid], ps[b]);
            record(c, st, "border edge <= (x-x_c) + (y-y_c)",
                   to_double(st.frame.w - rx) + to_double(st.frame.h - ry) + c.tol, d);
            Sub child = route_rec(c, a, cid, depth + 1);
            record(c, st, "case 1 tail <= (1+sqrt2) dinf + dmin", child.step.bound + c.tol,
                   child.step.length);
            out.path = child.path;
            len = child.step.length + d;
            out.path.push_back(b);
            st.children.push_back(std::move(child.step));
        }
        record(c, st, "case 1 total <= (1+sqrt2) x + y", st.bound, len);
        st.length = len;
        out.step = std::move(st);
        return out;
    }

    return case2(c, a, b, std::move(st), depth);
}

}  // namespace

RouteCertificate route(const Triangulation& t, int a, int b) {
    const PointSet& ps = t.domain_points();
    if (a == b) throw std::invalid_argument("route: a == b");
    Ctx c{t, ps, 1e-9 * ps.bbox_extent(),
          static_cast<int>(ps.size() * ps.size()) + 16};
    Sub s = route_rec(c, a, b, 0);
    RouteCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.frame = s.step.frame;
    cert.path.vertices = std::move(s.path);
    cert.path.length = s.step.length;
    cert.bound = s.step.bound;
    cert.slack = cert.bound - cert.path.length;
    cert.tolerance = c.tol;
    cert.trace = std::move(s.step);
    return cert;
}

bool replay_certificate(const Triangulation& t, const RouteCertificate& cert, std::string* why) {
    const PointSet& ps = t.domain_points();
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const auto& vs = cert.path.vertices;
    if (vs.empty() || vs.front() != cert.a || vs.back() != cert.b)
        return fail("path endpoints do not match the pair");
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        if (!t.has_edge(vs[i], vs[i + 1]))
            return fail("path step " + std::to_string(i) + " is not an edge");
        len += dist_l2(ps[vs[i]], ps[vs[i + 1]]);
    }
    double scale = std::max({1.0, std::abs(len), std::abs(cert.path.length)});
    if (std::abs(len - cert.path.length) > 1e-12 * scale)
        return fail("replayed length deviates from the recorded length");
    if (cert.slack < -cert.tolerance) return fail("negative slack");
    if (std::abs((cert.bound - cert.path.length) - cert.slack) > 1e-9 * scale)
        return fail("slack does not match bound - length");
    return true;
}

std::vector<std::string> audit_lemmas(const Triangulation& t, int a, int b,
                                      const ShortestPathTree& tree) {
    std::vector<std::string> v;
    const PointSet& ps = t.domain_points();
    const double tol = 1e-9 * ps.bbox_extent();
    CrossingSequence seq;
    try {
        seq = crossing_sequence(t, a, b);
    } catch (const std::exception& e) {
        v.push_back(std::string("crossing-sequence: ") + e.what());
        return v;
    }
    classify_crossing_edges(t, seq, &v);
    const int k = seq.k();
    int j = k + 1;
    std::vector<SquareStatus> sts(k + 1);
    for (int i = 1; i <= k; ++i) {
        sts[i] = potential_status(t, seq, i, tree);
        if (sts[i].inductive && j > k) j = i;
    }
    const int limit = std::min(j, k);
    for (int i = 1; i <= limit; ++i) {
        const auto& st = sts[i];
        if (!st.potential_ok)
            v.push_back("potential fails at i=" + std::to_string(i));
        auto check_promising = [&](int pt) {
            auto cpt = fc(seq.frame, ps[pt]);
            double lhs = tree.dist[pt];
            double rhs = 2.0 * cpt.fxd;
            if (lhs > rhs + tol)
                v.push_back("promising point bound fails at i=" + std::to_string(i) +
                            " point " + std::to_string(pt));
        };
        if (st.h_promising) check_promising(seq.h[i]);
        if (st.l_promising) check_promising(seq.l[i]);
    }
    if (j <= k) {
        const auto& st = sts[j];
        auto cc = fc(seq.frame, ps[st.inductive_point]);
        const double yd = to_double(seq.frame.h);
        if (st.inductive_point == seq.h[j]) {
            double lhs = tree.dist[st.inductive_point] + (cc.fyd - yd);
            if (lhs > kOnePlusSqrt2 * cc.fxd + tol)
                v.push_back("high inductive-point inequality fails at j=" + std::to_string(j));
        } else {
            double lhs = tree.dist[st.inductive_point] - cc.fyd;
            if (lhs > kOnePlusSqrt2 * cc.fxd + tol)
                v.push_back("low inductive-point inequality fails at j=" + std::to_string(j));
        }
    }
    return v;
}

}  // namespace sqspan
