#pragma once

#include <limits>
#include <vector>

#include "sqspan/delaunay.hpp"

namespace sqspan {

inline constexpr double kSqrt2 = 1.4142135623730951;

struct PathInGraph {
    std::vector<int> vertices;
    double length = 0.0;
};

struct ShortestPathTree {
    int source = -1;
    std::vector<double> dist;  // +inf where unreachable
    std::vector<int> pred;     // -1 at the source / unreachable
};

struct PairRecord {
    int a, b;
    double d_t;     // graph distance, Euclidean weights
    double d_2;     // straight-line distance
    double ratio;   // d_t / d_2
    double margin;  // (1+sqrt2)*d_inf + min(dx,dy) - d_t
};

struct StretchReport {
    std::size_t n = 0;
    double max_ratio = 1.0;
    int argmax_a = -1, argmax_b = -1;
    double min_margin = std::numeric_limits<double>::infinity();
    int min_margin_a = -1, min_margin_b = -1;
    std::vector<PairRecord> pairs;  // filled when collect_pairs was set
};

struct AnalyzeOptions {
    bool collect_pairs = true;
};

/// Single-source shortest paths over the triangulation edges with Euclidean
/// weights computed from the original coordinates.
ShortestPathTree shortest_paths_from(const Triangulation& t, int source);

/// Edge-list variant (ids into ps); used by tests that perturb edge sets.
ShortestPathTree shortest_paths_from(const PointSet& ps,
                                     const std::vector<std::pair<int, int>>& edges, int source);

PathInGraph path_from_tree(const ShortestPathTree& tree, const PointSet& ps, int target);

/// All-pairs stretch and Theorem-bound margins over the triangulation.
StretchReport stretch_factor(const Triangulation& t, const AnalyzeOptions& opts = {});
StretchReport stretch_factor(const PointSet& ps, const std::vector<std::pair<int, int>>& edges,
                             const AnalyzeOptions& opts = {});

/// Per-pair margins of d_T <= (1+sqrt2)*max(dx,dy) + min(dx,dy); all margins
/// of a valid triangulation are >= -1e-9 after unit-box normalization.
struct BoundCheck {
    double min_margin = std::numeric_limits<double>::infinity();
    int argmin_a = -1, argmin_b = -1;
    std::size_t violations = 0;  // margins below -1e-9 * bbox extent
};
BoundCheck verify_theorem_bound(const Triangulation& t);

/// Numeric maximization of ((1+sqrt2)x + y)/sqrt(x^2+y^2) over 0 < y <= x.
struct CorollaryMax {
    double value = 0.0;     // sqrt(4 + 2*sqrt2)
    double x_over_y = 0.0;  // 1 + sqrt2 at the maximizer
};
CorollaryMax corollary_maximizer();

}  // namespace sqspan
