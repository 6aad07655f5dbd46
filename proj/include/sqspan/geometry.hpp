#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqspan/rational.hpp"

namespace sqspan {

enum class Side : int { N = 0, E = 1, S = 2, W = 3 };

const char* side_name(Side s);

enum class Metric { L1, L2, Linf };

enum class SlopeClass { Gentle, Steep };

struct Point {
    int id = -1;
    Rat x, y;
    // Cached double images of x and y, used by filter fast paths only.
    double xd = 0.0, yd = 0.0;

    Point() = default;
    Point(int id_, Rat x_, Rat y_);
};

/// Immutable ordered point collection. Ids are the positions in the list.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> pts);

    static PointSet from_coords(const std::vector<std::pair<Rat, Rat>>& coords);

    std::size_t size() const { return pts_.size(); }
    const Point& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }

    /// max(1, largest |coordinate|) as a double; used to scale filter slack.
    double scale() const { return scale_; }

    const Rat& min_x() const { return min_x_; }
    const Rat& max_x() const { return max_x_; }
    const Rat& min_y() const { return min_y_; }
    const Rat& max_y() const { return max_y_; }

    /// Largest bounding-box extent as a double (>= smallest positive normal).
    double bbox_extent() const { return bbox_extent_; }

private:
    std::vector<Point> pts_;
    Rat min_x_, max_x_, min_y_, max_y_;
    double scale_ = 1.0;
    double bbox_extent_ = 1.0;
};

/// Closed axis-parallel square: [west, west+side] x [south, south+side].
/// The interior is the open square; the boundary is the four closed sides.
struct AxisSquare {
    Rat west, south, side;

    Rat east() const { return west + side; }
    Rat north() const { return south + side; }

    bool contains_open(const Rat& x, const Rat& y) const;
    bool contains_closed(const Rat& x, const Rat& y) const;
    bool on_boundary(const Rat& x, const Rat& y) const;

    bool operator==(const AxisSquare& o) const {
        return west == o.west && south == o.south && side == o.side;
    }
};

struct Violation {
    std::string rule;       // "shared-abscissa", "shared-ordinate", "co-square", ...
    std::vector<int> ids;
    std::string detail;
};

struct ValidateOptions {
    // The four-points-on-a-square rule is checked exhaustively only up to
    // this size; generated families guarantee it by construction.
    std::size_t cosquare_limit = 48;
};

/// Distance between two points. L1 and Linf are exact values converted at
/// the end; L2 is sqrt of the exact squared distance.
double metric(const Point& u, const Point& v, Metric kind);

Rat dist_linf_exact(const Point& u, const Point& v);
Rat dist_l1_exact(const Point& u, const Point& v);
double dist_l2(const Point& u, const Point& v);

/// Both general-position rules; empty result means the set is valid.
std::vector<Violation> validate_general_position(const PointSet& ps,
                                                 const ValidateOptions& opts = {});

/// Which closed sides of S contain p. Corners yield two labels, interior
/// and exterior points none.
std::vector<Side> point_side_on(const AxisSquare& s, const Point& p);
std::vector<Side> point_side_on(const AxisSquare& s, const Rat& x, const Rat& y);

/// Gentle iff |dy| <= |dx|.
SlopeClass classify_slope(const Point& u, const Point& v);

/// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear.
/// Double-filtered with an exact rational fallback.
int orient_sign(const Point& a, const Point& b, const Point& c);
int orient_sign_exact(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
                      const Rat& cx, const Rat& cy);

/// All axis-parallel squares with p, q, r on the boundary (at most two in
/// general position; corner placements are deduplicated).
std::vector<AxisSquare> squares_through_three(const Point& p, const Point& q, const Point& r);

/// Euclidean length of the clockwise boundary walk from p to q.
/// Both points must lie on the boundary of s.
double clockwise_boundary_distance(const AxisSquare& s, const Point& p, const Point& q);
Rat clockwise_boundary_distance_exact(const AxisSquare& s, const Rat& px, const Rat& py,
                                      const Rat& qx, const Rat& qy);

/// Indices of the convex hull in counterclockwise boundary order; collinear
/// boundary points are kept (sorted along their hull edge).
std::vector<int> convex_hull_boundary(const PointSet& ps);

}  // namespace sqspan
