#include "sqspan/empty_square.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqspan {

void PairFrame::map(const Rat& x, const Rat& y, Rat& fx, Rat& fy) const {
    Rat rx = x - ux;
    Rat ry = y - uy;
    if (sx < 0) rx = -rx;
    if (sy < 0) ry = -ry;
    if (transpose) std::swap(rx, ry);
    fx = std::move(rx);
    fy = std::move(ry);
}

void PairFrame::map_approx(double x, double y, double& fx, double& fy) const {
    double rx = x - uxd;
    double ry = y - uyd;
    if (sx < 0) rx = -rx;
    if (sy < 0) ry = -ry;
    if (transpose) std::swap(rx, ry);
    fx = rx;
    fy = ry;
}

AxisSquare PairFrame::map_square(const AxisSquare& ws) const {
    Rat x1, y1, x2, y2;
    map(ws.west, ws.south, x1, y1);
    map(ws.east(), ws.north(), x2, y2);
    return AxisSquare{x1 < x2 ? x1 : x2, y1 < y2 ? y1 : y2, ws.side};
}

AxisSquare PairFrame::unmap(const AxisSquare& fs) const {
    // Invert the coordinate swap first, then the reflections, then translate.
    Rat fx_lo = fs.west, fy_lo = fs.south;
    if (transpose) std::swap(fx_lo, fy_lo);
    Rat wx = (sx > 0) ? fx_lo : -(fx_lo + fs.side);
    Rat sy_ = (sy > 0) ? fy_lo : -(fy_lo + fs.side);
    return AxisSquare{wx + ux, sy_ + uy, fs.side};
}

PairFrame make_pair_frame(const Point& u, const Point& v) {
    PairFrame f;
    f.ux = u.x;
    f.uy = u.y;
    f.uxd = u.xd;
    f.uyd = u.yd;
    Rat dx = v.x - u.x;
    Rat dy = v.y - u.y;
    f.sx = dx < 0 ? -1 : 1;
    f.sy = dy < 0 ? -1 : 1;
    Rat adx = abs(dx), ady = abs(dy);
    f.transpose = ady > adx;
    if (f.transpose) std::swap(adx, ady);
    f.w = adx;
    f.h = ady;
    return f;
}

AxisSquare family_square_at(const PairFrame& f, const Rat& t) {
    Rat hw = f.h - f.w;
    if (t <= hw) return AxisSquare{Rat(0), t, f.h - t};
    if (t <= 0) return AxisSquare{Rat(0), t, f.w};
    return AxisSquare{-t, Rat(0), f.w + t};
}

SquareFamily square_family_through(const Point& u, const Point& v) {
    if (u.x == v.x && u.y == v.y)
        throw std::invalid_argument("square_family_through: identical points");
    SquareFamily fam;
    fam.frame = make_pair_frame(u, v);
    fam.min_side = fam.frame.w;
    fam.free_axis = fam.frame.transpose ? 'x' : 'y';
    AxisSquare lo = fam.frame.unmap(family_square_at(fam.frame, fam.frame.h - fam.frame.w));
    AxisSquare hi = fam.frame.unmap(family_square_at(fam.frame, Rat(0)));
    Rat a = (fam.free_axis == 'y') ? lo.south : lo.west;
    Rat b = (fam.free_axis == 'y') ? hi.south : hi.west;
    if (a > b) std::swap(a, b);
    fam.free_lo = a;
    fam.free_hi = b;
    return fam;
}

bool square_interior_empty(const PointSet& ps, const AxisSquare& sq, int ignore_a, int ignore_b) {
    const double eta = 1e-12 * std::max(1.0, ps.scale());
    const double wlo = to_double(sq.west), slo = to_double(sq.south);
    const double sd = to_double(sq.side);
    const double whi = wlo + sd, shi = slo + sd;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const int ii = static_cast<int>(i);
        if (ii == ignore_a || ii == ignore_b) continue;
        const Point& p = ps[i];
        if (p.xd < wlo - eta || p.xd > whi + eta || p.yd < slo - eta || p.yd > shi + eta)
            continue;  // clearly outside
        if (p.xd > wlo + eta && p.xd < whi - eta && p.yd > slo + eta && p.yd < shi - eta)
            return false;  // clearly inside
        if (sq.contains_open(p.x, p.y)) return false;
    }
    return true;
}

namespace {

constexpr int kNegInf = -1;
constexpr int kFinite = 0;
constexpr int kPosInf = 1;

// Blocked parameter interval of one third point, frame coordinates:
// { t : p strictly inside family_square_at(t) } is the open interval
// ( max(ta, td), min(tb, tc) ) with
//   ta = (px > 0 ? -inf : -px)      tb = (px < w ? +inf : h-px)
//   tc = (py > 0 ? +inf : py)       td = (py < h ? -inf : py-w)
// Each bound is monotone in t, which makes every blocked set convex.
struct BlockedExact {
    int lo_kind = kNegInf, hi_kind = kPosInf;
    Rat lo, hi;
    bool nonempty = true;
};

BlockedExact blocked_exact(const PairFrame& f, const Rat& px, const Rat& py) {
    BlockedExact b;
    if (px <= 0) {
        b.lo_kind = kFinite;
        b.lo = -px;
    }
    if (py >= f.h) {
        Rat td = py - f.w;
        if (b.lo_kind == kNegInf || td > b.lo) {
            b.lo_kind = kFinite;
            b.lo = td;
        }
    }
    if (px >= f.w) {
        b.hi_kind = kFinite;
        b.hi = f.h - px;
    }
    if (py <= 0) {
        if (b.hi_kind == kPosInf || py < b.hi) {
            b.hi_kind = kFinite;
            b.hi = py;
        }
    }
    if (b.lo_kind == kFinite && b.hi_kind == kFinite && b.lo >= b.hi) b.nonempty = false;
    return b;
}

struct Interval {
    int lo_kind, hi_kind;
    double lo = 0.0, hi = 0.0;
    int pid = -1;
    bool has_exact = false;
    Rat lo_ex, hi_ex;
};

// Fully exact decision; the filtered walk escalates here when it cannot
// certify. Returns a free parameter value or nullopt if all t are blocked.
std::optional<Rat> free_parameter_exact(const PointSet& ps, int u, int v, const PairFrame& f) {
    std::vector<BlockedExact> ivs;
    ivs.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (static_cast<int>(i) == u || static_cast<int>(i) == v) continue;
        Rat px, py;
        f.map(ps[i].x, ps[i].y, px, py);
        BlockedExact b = blocked_exact(f, px, py);
        if (!b.nonempty) continue;
        if (b.lo_kind == kNegInf && b.hi_kind == kPosInf) return std::nullopt;
        ivs.push_back(std::move(b));
    }
    if (ivs.empty()) return Rat(0);
    std::sort(ivs.begin(), ivs.end(), [](const BlockedExact& a, const BlockedExact& b) {
        if (a.lo_kind != b.lo_kind) return a.lo_kind < b.lo_kind;
        if (a.lo_kind != kFinite) return false;
        return a.lo < b.lo;
    });
    int fr_kind = kNegInf;
    Rat fr;
    for (const auto& iv : ivs) {
        bool starts_covered;
        if (iv.lo_kind == kNegInf)
            starts_covered = true;
        else if (fr_kind == kNegInf)
            starts_covered = false;
        else if (fr_kind == kPosInf)
            starts_covered = true;
        else
            starts_covered = iv.lo < fr;
        if (!starts_covered) {
            if (fr_kind == kNegInf) return iv.lo - 1;
            if (iv.lo == fr) return fr;  // measure-zero gap at the junction
            return (fr + iv.lo) / 2;
        }
        if (iv.hi_kind == kPosInf)
            fr_kind = kPosInf;
        else if (fr_kind != kPosInf && (fr_kind == kNegInf || iv.hi > fr)) {
            fr_kind = kFinite;
            fr = iv.hi;
        }
    }
    if (fr_kind == kPosInf) return std::nullopt;
    return fr_kind == kNegInf ? Rat(0) : fr + 1;
}

}  // namespace

std::optional<AxisSquare> empty_square_exists(const PointSet& ps, int u, int v) {
    if (u == v) throw std::invalid_argument("empty_square_exists: u == v");
    const Point& pu = ps[u];
    const Point& pv = ps[v];
    PairFrame f = make_pair_frame(pu, pv);
    const double eta = 1e-12 * std::max(1.0, 4.0 * ps.scale());
    const double wd = to_double(f.w), hd = to_double(f.h);

    auto finish = [&](const Rat& t) -> std::optional<AxisSquare> {
        return f.unmap(family_square_at(f, t));
    };
    auto exact_path = [&]() -> std::optional<AxisSquare> {
        auto t = free_parameter_exact(ps, u, v, f);
        if (!t) return std::nullopt;
        return finish(*t);
    };

    // Filtered interval construction; points near a decision boundary are
    // resolved exactly up front.
    std::vector<Interval> ivs;
    ivs.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const int ii = static_cast<int>(i);
        if (ii == u || ii == v) continue;
        double px, py;
        f.map_approx(ps[i].xd, ps[i].yd, px, py);
        Interval iv;
        iv.pid = ii;
        const bool fuzzy = std::abs(px) <= eta || std::abs(px - wd) <= eta ||
                           std::abs(py) <= eta || std::abs(py - hd) <= eta;
        if (fuzzy) {
            Rat rx, ry;
            f.map(ps[i].x, ps[i].y, rx, ry);
            BlockedExact b = blocked_exact(f, rx, ry);
            if (!b.nonempty) continue;
            iv.lo_kind = b.lo_kind;
            iv.hi_kind = b.hi_kind;
            iv.has_exact = true;
            iv.lo_ex = b.lo;
            iv.hi_ex = b.hi;
            if (b.lo_kind == kFinite) iv.lo = to_double(b.lo);
            if (b.hi_kind == kFinite) iv.hi = to_double(b.hi);
        } else {
            iv.lo_kind = kNegInf;
            iv.hi_kind = kPosInf;
            if (px < 0) {
                iv.lo_kind = kFinite;
                iv.lo = -px;
            }
            if (py > hd) {
                const double td = py - wd;
                if (iv.lo_kind == kNegInf || td > iv.lo) {
                    iv.lo_kind = kFinite;
                    iv.lo = td;
                }
            }
            if (px > wd) {
                iv.hi_kind = kFinite;
                iv.hi = hd - px;
            }
            if (py < 0) {
                if (iv.hi_kind == kPosInf || py < iv.hi) {
                    iv.hi_kind = kFinite;
                    iv.hi = py;
                }
            }
            if (iv.lo_kind == kFinite && iv.hi_kind == kFinite && iv.lo >= iv.hi - eta) {
                if (iv.lo >= iv.hi + eta) continue;  // clearly empty
                Rat rx, ry;
                f.map(ps[i].x, ps[i].y, rx, ry);
                BlockedExact b = blocked_exact(f, rx, ry);
                if (!b.nonempty) continue;
                iv.has_exact = true;
                iv.lo_ex = b.lo;
                iv.hi_ex = b.hi;
            }
        }
        if (iv.lo_kind == kNegInf && iv.hi_kind == kPosInf) return std::nullopt;
        ivs.push_back(std::move(iv));
    }
    if (ivs.empty()) return finish(Rat(0));

    auto exact_lo = [&](const Interval& iv) -> Rat {
        if (iv.has_exact) return iv.lo_ex;
        Rat rx, ry;
        f.map(ps[iv.pid].x, ps[iv.pid].y, rx, ry);
        return blocked_exact(f, rx, ry).lo;
    };
    auto exact_hi = [&](const Interval& iv) -> Rat {
        if (iv.has_exact) return iv.hi_ex;
        Rat rx, ry;
        f.map(ps[iv.pid].x, ps[iv.pid].y, rx, ry);
        return blocked_exact(f, rx, ry).hi;
    };

    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
        if (a.lo_kind != b.lo_kind) return a.lo_kind < b.lo_kind;
        if (a.lo_kind != kFinite) return false;
        return a.lo < b.lo;
    });

    // Frontier walk over the sorted blocked intervals. A witness candidate is
    // always verified exactly before being accepted; any verification failure
    // escalates to the fully exact path.
    int fr_kind = kNegInf;
    double frd = 0.0;
    int fr_iv = -1;  // index of the interval whose hi is the frontier
    for (std::size_t idx = 0; idx < ivs.size(); ++idx) {
        const Interval& iv = ivs[idx];
        bool gap = false;
        bool zero_width = false;
        Rat gap_lo;  // valid when fr_kind == kFinite and gap
        if (iv.lo_kind != kNegInf && fr_kind != kPosInf) {
            if (fr_kind == kNegInf) {
                gap = true;
            } else if (iv.lo > frd + 2 * eta) {
                gap = true;
            } else if (iv.lo >= frd - 2 * eta) {
                Rat lo_ex = exact_lo(iv);
                Rat fr_ex = exact_hi(ivs[fr_iv]);
                if (lo_ex > fr_ex) {
                    gap = true;
                    gap_lo = fr_ex;
                } else if (lo_ex == fr_ex) {
                    gap = true;
                    zero_width = true;
                    gap_lo = fr_ex;
                }
            }
        }
        if (gap) {
            Rat t;
            if (fr_kind == kNegInf)
                t = exact_lo(iv) - 1;
            else if (zero_width)
                t = gap_lo;
            else {
                Rat fr_ex = exact_hi(ivs[fr_iv]);
                t = (fr_ex + exact_lo(iv)) / 2;
            }
            AxisSquare cand = f.unmap(family_square_at(f, t));
            if (square_interior_empty(ps, cand, u, v)) return cand;
            return exact_path();  // sorted order was too fuzzy here
        }
        // merge hi into the frontier
        if (iv.hi_kind == kPosInf) {
            fr_kind = kPosInf;
        } else if (fr_kind == kNegInf) {
            fr_kind = kFinite;
            frd = iv.hi;
            fr_iv = static_cast<int>(idx);
        } else if (fr_kind == kFinite) {
            if (iv.hi > frd + 2 * eta) {
                frd = iv.hi;
                fr_iv = static_cast<int>(idx);
            } else if (iv.hi > frd - 2 * eta) {
                if (exact_hi(iv) > exact_hi(ivs[fr_iv])) {
                    frd = iv.hi;
                    fr_iv = static_cast<int>(idx);
                }
            }
        }
    }
    if (fr_kind != kPosInf) {
        Rat t = (fr_kind == kNegInf) ? Rat(0) : exact_hi(ivs[fr_iv]) + 1;
        AxisSquare cand = f.unmap(family_square_at(f, t));
        if (square_interior_empty(ps, cand, u, v)) return cand;
        return exact_path();
    }
    // Covered everywhere: every junction was certified (clear margin or
    // exact), so there is no empty square.
    return std::nullopt;
}

bool rectangle_empty(const PointSet& ps, int a, int b) {
    const Point& pa = ps[a];
    const Point& pb = ps[b];
    Rat xlo = pa.x < pb.x ? pa.x : pb.x;
    Rat xhi = pa.x < pb.x ? pb.x : pa.x;
    Rat ylo = pa.y < pb.y ? pa.y : pb.y;
    Rat yhi = pa.y < pb.y ? pb.y : pa.y;
    const double eta = 1e-12 * std::max(1.0, ps.scale());
    const double xlod = to_double(xlo), xhid = to_double(xhi);
    const double ylod = to_double(ylo), yhid = to_double(yhi);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (static_cast<int>(i) == a || static_cast<int>(i) == b) continue;
        const Point& p = ps[i];
        if (p.xd < xlod - eta || p.xd > xhid + eta || p.yd < ylod - eta || p.yd > yhid + eta)
            continue;
        if (p.x > xlo && p.x < xhi && p.y > ylo && p.y < yhi) return false;
    }
    return true;
}

}  // namespace sqspan
