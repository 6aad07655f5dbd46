#pragma once

#include <optional>
#include <utility>

#include "sqspan/geometry.hpp"

namespace sqspan {

/// Similarity frame that sends a point pair to u = (0,0), v = (w,h) with
/// 0 <= h <= w. Composed of a translation, axis reflections and an optional
/// coordinate swap; axis-parallel squares map to axis-parallel squares.
struct PairFrame {
    Rat ux, uy;
    double uxd = 0.0, uyd = 0.0;
    int sx = 1, sy = 1;
    bool transpose = false;
    Rat w, h;

    void map(const Rat& x, const Rat& y, Rat& fx, Rat& fy) const;
    void map_approx(double x, double y, double& fx, double& fy) const;
    AxisSquare map_square(const AxisSquare& world_square) const;
    AxisSquare unmap(const AxisSquare& frame_square) const;

    /// -1 when the transform flips orientation (odd number of reflections
    /// plus the swap), +1 otherwise.
    int orientation_sign() const {
        int s = 1;
        if (sx < 0) s = -s;
        if (sy < 0) s = -s;
        if (transpose) s = -s;
        return s;
    }
};

PairFrame make_pair_frame(const Point& u, const Point& v);

/// The one-parameter family of axis squares through the pair, in frame
/// coordinates, keyed by t = south - west:
///   t <= h-w : [0, h-t] x [t, h]        (v on N, u on W; grows south-east)
///   h-w..0   : [0, w]   x [t, t+w]      (minimal side, free south placement)
///   t >= 0   : [-t, w]  x [0, w+t]      (u on S, v on E; grows north-west)
AxisSquare family_square_at(const PairFrame& f, const Rat& t);

/// Parametric description of all axis-parallel squares with u and v on the
/// boundary (the spec of the family realized by family_square_at).
struct SquareFamily {
    PairFrame frame;
    Rat min_side;      // = max(|dx|, |dy|)
    char free_axis;    // world axis ('x' or 'y') that is free at the minimal side
    Rat free_lo, free_hi;  // world placement interval (west or south) at min_side

    AxisSquare square_at(const Rat& t) const { return frame.unmap(family_square_at(frame, t)); }
};

SquareFamily square_family_through(const Point& u, const Point& v);

/// True iff no point of ps lies strictly inside the square. Double-filtered
/// with exact fallback; ignore_a/ignore_b are skipped (pass -1 to disable).
bool square_interior_empty(const PointSet& ps, const AxisSquare& world_square,
                           int ignore_a = -1, int ignore_b = -1);

/// Exact decision: is there an axis-parallel square with u and v on the
/// boundary and no point of ps strictly inside? Returns a witness if so.
std::optional<AxisSquare> empty_square_exists(const PointSet& ps, int u, int v);

/// True iff the open axis-parallel rectangle spanned by a and b contains no
/// point of ps.
bool rectangle_empty(const PointSet& ps, int a, int b);

}  // namespace sqspan
