#include "sqspan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sqspan {

const char* side_name(Side s) {
    switch (s) {
        case Side::N: return "N";
        case Side::E: return "E";
        case Side::S: return "S";
        case Side::W: return "W";
    }
    return "?";
}

Point::Point(int id_, Rat x_, Rat y_) : id(id_), x(std::move(x_)), y(std::move(y_)) {
    xd = to_double(x);
    yd = to_double(y);
}

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) return;
    min_x_ = max_x_ = pts_[0].x;
    min_y_ = max_y_ = pts_[0].y;
    for (auto& p : pts_) {
        if (p.x < min_x_) min_x_ = p.x;
        if (p.x > max_x_) max_x_ = p.x;
        if (p.y < min_y_) min_y_ = p.y;
        if (p.y > max_y_) max_y_ = p.y;
        scale_ = std::max({scale_, std::abs(p.xd), std::abs(p.yd)});
    }
    bbox_extent_ = std::max({1e-300, to_double(max_x_ - min_x_), to_double(max_y_ - min_y_)});
}

PointSet PointSet::from_coords(const std::vector<std::pair<Rat, Rat>>& coords) {
    std::vector<Point> pts;
    pts.reserve(coords.size());
    int id = 0;
    for (auto& c : coords) pts.emplace_back(id++, c.first, c.second);
    return PointSet(std::move(pts));
}

bool AxisSquare::contains_open(const Rat& x, const Rat& y) const {
    return x > west && x < east() && y > south && y < north();
}

bool AxisSquare::contains_closed(const Rat& x, const Rat& y) const {
    return x >= west && x <= east() && y >= south && y <= north();
}

bool AxisSquare::on_boundary(const Rat& x, const Rat& y) const {
    return contains_closed(x, y) && !contains_open(x, y);
}

double metric(const Point& u, const Point& v, Metric kind) {
    switch (kind) {
        case Metric::L1: return to_double(dist_l1_exact(u, v));
        case Metric::Linf: return to_double(dist_linf_exact(u, v));
        case Metric::L2: return dist_l2(u, v);
    }
    return 0.0;
}

Rat dist_linf_exact(const Point& u, const Point& v) {
    Rat dx = abs(u.x - v.x);
    Rat dy = abs(u.y - v.y);
    return dx > dy ? dx : dy;
}

Rat dist_l1_exact(const Point& u, const Point& v) {
    return abs(u.x - v.x) + abs(u.y - v.y);
}

double dist_l2(const Point& u, const Point& v) {
    Rat dx = u.x - v.x;
    Rat dy = u.y - v.y;
    return std::sqrt(to_double(dx * dx + dy * dy));
}

namespace {

// Squares with r on the boundary given two points already pinned on sides.
// Enumerate a side assignment per point; each assignment pins west/south/side
// through linear relations, then gets checked for consistency.
struct SidePin {
    // x-pins: side W fixes west = x; side E fixes west + side = x.
    // y-pins: side S fixes south = y; side N fixes south + side = y.
};

}  // namespace

std::vector<Violation> validate_general_position(const PointSet& ps, const ValidateOptions& opts) {
    std::vector<Violation> out;
    const auto n = ps.size();

    // Rule 1: pairwise distinct abscissae and ordinates.
    {
        std::vector<int> byx(n), byy(n);
        for (std::size_t i = 0; i < n; ++i) byx[i] = byy[i] = static_cast<int>(i);
        std::sort(byx.begin(), byx.end(), [&](int a, int b) { return ps[a].x < ps[b].x; });
        std::sort(byy.begin(), byy.end(), [&](int a, int b) { return ps[a].y < ps[b].y; });
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (ps[byx[i]].x == ps[byx[i + 1]].x)
                out.push_back({"shared-abscissa", {byx[i], byx[i + 1]}, ""});
            if (ps[byy[i]].y == ps[byy[i + 1]].y)
                out.push_back({"shared-ordinate", {byy[i], byy[i + 1]}, ""});
        }
    }

    // Rule 2: no four points on one square boundary. Exhaustive over triples,
    // feasible at desk scale only.
    if (n >= 4 && n <= opts.cosquare_limit) {
        std::set<std::array<int, 4>> quads;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    auto squares = squares_through_three(ps[i], ps[j], ps[k]);
                    for (const auto& sq : squares) {
                        for (std::size_t l = 0; l < n; ++l) {
                            if (l == i || l == j || l == k) continue;
                            if (sq.on_boundary(ps[l].x, ps[l].y)) {
                                std::array<int, 4> ids = {static_cast<int>(i), static_cast<int>(j),
                                                          static_cast<int>(k), static_cast<int>(l)};
                                std::sort(ids.begin(), ids.end());
                                quads.insert(ids);
                            }
                        }
                    }
                }
        for (const auto& q : quads)
            out.push_back({"co-square", {q[0], q[1], q[2], q[3]}, ""});
    }
    return out;
}

std::vector<Side> point_side_on(const AxisSquare& s, const Rat& x, const Rat& y) {
    std::vector<Side> sides;
    if (!s.contains_closed(x, y)) return sides;
    if (y == s.north()) sides.push_back(Side::N);
    if (x == s.east()) sides.push_back(Side::E);
    if (y == s.south) sides.push_back(Side::S);
    if (x == s.west) sides.push_back(Side::W);
    return sides;
}

std::vector<Side> point_side_on(const AxisSquare& s, const Point& p) {
    return point_side_on(s, p.x, p.y);
}

SlopeClass classify_slope(const Point& u, const Point& v) {
    Rat dx = abs(u.x - v.x);
    Rat dy = abs(u.y - v.y);
    return dy <= dx ? SlopeClass::Gentle : SlopeClass::Steep;
}

int orient_sign_exact(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
                      const Rat& cx, const Rat& cy) {
    Rat cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if (cross > 0) return 1;
    if (cross < 0) return -1;
    return 0;
}

int orient_sign(const Point& a, const Point& b, const Point& c) {
    const double det = (b.xd - a.xd) * (c.yd - a.yd) - (b.yd - a.yd) * (c.xd - a.xd);
    const double mags = std::abs(b.xd - a.xd) * std::abs(c.yd - a.yd) +
                        std::abs(b.yd - a.yd) * std::abs(c.xd - a.xd);
    // 2^-46 relative slack against ~2^-50 accumulated rounding.
    const double slack = mags * 1.42e-14 + 1e-300;
    if (det > slack) return 1;
    if (det < -slack) return -1;
    return orient_sign_exact(a.x, a.y, b.x, b.y, c.x, c.y);
}

std::vector<AxisSquare> squares_through_three(const Point& p, const Point& q, const Point& r) {
    const Point* pts[3] = {&p, &q, &r};
    std::vector<AxisSquare> found;
    // Side assignment per point: 0=W (west = x), 1=E (west + side = x),
    // 2=S (south = y), 3=N (south + side = y).
    for (int a0 = 0; a0 < 4; ++a0)
        for (int a1 = 0; a1 < 4; ++a1)
            for (int a2 = 0; a2 < 4; ++a2) {
                int assign[3] = {a0, a1, a2};
                // Gather pins: x-type contribute (coef of side, value), likewise y.
                // west = xval - side*xcoef must be consistent across x-pins.
                std::optional<std::pair<Rat, int>> xpin[2], ypin[2];  // by coef 0/1
                bool bad = false;
                for (int t = 0; t < 3 && !bad; ++t) {
                    const Point& pt = *pts[t];
                    int a = assign[t];
                    if (a == 0 || a == 1) {
                        int coef = (a == 1) ? 1 : 0;
                        if (!xpin[coef])
                            xpin[coef] = {pt.x, t};
                        else if (xpin[coef]->first != pt.x)
                            bad = true;
                    } else {
                        int coef = (a == 3) ? 1 : 0;
                        if (!ypin[coef])
                            ypin[coef] = {pt.y, t};
                        else if (ypin[coef]->first != pt.y)
                            bad = true;
                    }
                }
                if (bad) continue;
                // Solve for side. Need both coef levels present on one axis,
                // or one on each axis cannot determine side alone.
                Rat side;
                bool have_side = false;
                if (xpin[0] && xpin[1]) {
                    side = xpin[1]->first - xpin[0]->first;
                    have_side = true;
                }
                if (ypin[0] && ypin[1]) {
                    Rat s2 = ypin[1]->first - ypin[0]->first;
                    if (have_side && s2 != side) continue;
                    side = s2;
                    have_side = true;
                }
                if (!have_side) continue;  // underdetermined; covered by other assignments
                if (side <= 0) continue;
                // Need west and south pinned.
                Rat west, south;
                if (xpin[0])
                    west = xpin[0]->first;
                else if (xpin[1])
                    west = xpin[1]->first - side;
                else
                    continue;
                if (ypin[0])
                    south = ypin[0]->first;
                else if (ypin[1])
                    south = ypin[1]->first - side;
                else
                    continue;
                AxisSquare sq{west, south, side};
                bool ok = sq.on_boundary(p.x, p.y) && sq.on_boundary(q.x, q.y) &&
                          sq.on_boundary(r.x, r.y);
                if (!ok) continue;
                if (std::find(found.begin(), found.end(), sq) == found.end()) found.push_back(sq);
            }
    return found;
}

namespace {

// Clockwise arc-length parameter starting at the NW corner:
// N (west->east), then E (north->south), S (east->west), W (south->north).
Rat clockwise_param(const AxisSquare& s, const Rat& x, const Rat& y) {
    if (y == s.north()) return x - s.west;
    if (x == s.east()) return s.side + (s.north() - y);
    if (y == s.south) return 2 * s.side + (s.east() - x);
    if (x == s.west) return 3 * s.side + (y - s.south);
    throw std::invalid_argument("point not on square boundary");
}

}  // namespace

Rat clockwise_boundary_distance_exact(const AxisSquare& s, const Rat& px, const Rat& py,
                                      const Rat& qx, const Rat& qy) {
    if (!s.on_boundary(px, py) || !s.on_boundary(qx, qy))
        throw std::invalid_argument("clockwise_boundary_distance: point not on boundary");
    Rat perim = 4 * s.side;
    Rat tp = clockwise_param(s, px, py);
    Rat tq = clockwise_param(s, qx, qy);
    Rat d = tq - tp;
    if (d < 0) d += perim;
    if (d >= perim) d -= perim;
    return d;
}

double clockwise_boundary_distance(const AxisSquare& s, const Point& p, const Point& q) {
    return to_double(clockwise_boundary_distance_exact(s, p.x, p.y, q.x, q.y));
}

std::vector<int> convex_hull_boundary(const PointSet& ps) {
    const int n = static_cast<int>(ps.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    if (n <= 2) return idx;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (ps[a].x != ps[b].x) return ps[a].x < ps[b].x;
        return ps[a].y < ps[b].y;
    });
    // Monotone chain keeping collinear boundary points (pop only right turns).
    auto build = [&](bool lower) {
        std::vector<int> chain;
        for (int t = 0; t < n; ++t) {
            int i = idx[lower ? t : n - 1 - t];
            while (chain.size() >= 2) {
                int b = chain[chain.size() - 1], a = chain[chain.size() - 2];
                if (orient_sign(ps[a], ps[b], ps[i]) < 0)
                    chain.pop_back();
                else
                    break;
            }
            chain.push_back(i);
        }
        return chain;
    };
    std::vector<int> lower = build(true), upper = build(false);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

}  // namespace sqspan
