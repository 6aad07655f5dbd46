#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "sqspan/empty_square.hpp"
#include "sqspan/geometry.hpp"

namespace sqspan {

struct Edge {
    int a, b;  // a < b
    AxisSquare witness;
};

struct Triangle {
    std::array<int, 3> v;  // counterclockwise, rotated so v[0] is smallest
    AxisSquare circumsquare;
};

/// Plane graph of empty-square edges together with its triangular faces.
/// For Metric::L1 the predicates run on the rotated copy of the points
/// ( (x,y) -> (x-y, x+y) ) and all stored squares live in that rotated frame.
class Triangulation {
public:
    Metric metric = Metric::Linf;
    std::shared_ptr<const PointSet> original;  // input points
    std::shared_ptr<const PointSet> domain;    // predicate domain (== original for Linf)
    std::vector<Edge> edges;                   // sorted by (a, b)
    std::vector<Triangle> triangles;           // sorted by vertex triple

    const PointSet& points() const { return *original; }
    const PointSet& domain_points() const { return *domain; }

    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int v) const;  // sorted by ccw angle (domain coords)

    /// Triangle indices incident to the directed edge (a,b): the triangle
    /// lying to the left of a->b in domain coordinates, or -1.
    int triangle_left_of(int a, int b) const;

    /// Adjacency and incidence tables are derived from edges/triangles.
    void rebuild_tables();

private:
    std::vector<std::vector<int>> adj_;
    std::map<std::pair<int, int>, int> tri_left_;
};

struct TriangulateOptions {
    // Below this size the plain all-pairs construction is used; above it the
    // candidate-and-repair construction (same predicate, same result).
    std::size_t brute_force_limit = 300;
    bool validate_input = true;
    ValidateOptions validate_opts;
};

Triangulation triangulate_linf(std::shared_ptr<const PointSet> ps,
                               const TriangulateOptions& opts = {});
Triangulation triangulate_linf(const PointSet& ps, const TriangulateOptions& opts = {});

/// L1 triangulation through the rotation duality (x,y) -> (x-y, x+y).
Triangulation triangulate_l1(std::shared_ptr<const PointSet> ps,
                             const TriangulateOptions& opts = {});
Triangulation triangulate_l1(const PointSet& ps, const TriangulateOptions& opts = {});

PointSet rotate_for_l1(const PointSet& ps);

struct TriangulationValidateOptions {
    bool check_planarity = true;
    bool check_hull_coverage = false;  // informational; see validate notes
};

/// Re-checks edge witnesses, triangle circumsquares, planarity, the Euler
/// relation and face structure. Empty result iff everything holds.
std::vector<Violation> validate_triangulation(const Triangulation& t,
                                              const TriangulationValidateOptions& opts = {});

/// Faces of the current edge set in domain coordinates. Internal faces are
/// counterclockwise; the outer walk (clockwise, non-positive signed area) is
/// reported separately. Exposed for construction, validation and tests.
struct FaceSet {
    std::vector<std::vector<int>> internal_faces;  // ccw vertex walks
    std::vector<std::vector<int>> outer_walks;     // one per connected component
};
FaceSet extract_faces(const PointSet& domain, const std::vector<std::pair<int, int>>& edges);

}  // namespace sqspan
