#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sqspan/spanner.hpp"

namespace sqspan {

/// Canonical frame of a pair: a at the origin, b at (x, y) with 0 < y <= x.
/// Realized by the same translate/reflect/swap isometry used for square
/// families; frame.w and frame.h are b's frame coordinates.
PairFrame canonical_frame(const Point& a, const Point& b);

/// The triangles T_1..T_k crossed by segment [ab], their frame squares and
/// the h/l labels of the edge crossed when leaving each triangle.
struct CrossingSequence {
    int a = -1, b = -1;
    PairFrame frame;
    std::vector<int> tris;        // T_1..T_k as triangle indices (size k)
    std::vector<int> h, l;        // size k+1; h[0]=l[0]=a, h[k]=b, l[k]=l[k-1]
    std::vector<AxisSquare> sq;   // size k+1; sq[i] = S_i in frame coords (sq[0] unused)
    std::vector<Rat> x;           // size k+1; x[i] = frame abscissa of S_i's E side, x[0]=0

    int k() const { return static_cast<int>(tris.size()); }
};

/// Throws if (a,b) is an edge, if the segment hits a vertex, or if it ever
/// leaves the triangulated region.
CrossingSequence crossing_sequence(const Triangulation& t, int a, int b);

struct CrossingEdgeClass {
    int i;             // 1 < i < k
    bool high_change;  // true: (h_{i-1}, h_i) changed; false: low edge changed
    Side from_side, to_side;
};

/// Structure checks for an empty R(a,b): endpoints on W/E sides, h/l above
/// and below R, and every changed edge within its allowed side set. Returns
/// the per-index classes; violations are reported through `violations`.
std::vector<CrossingEdgeClass> classify_crossing_edges(const Triangulation& t,
                                                       const CrossingSequence& seq,
                                                       std::vector<std::string>* violations = nullptr);

struct SquareStatus {
    int i = 0;
    bool inductive = false;
    int inductive_point = -1;  // id of the gentle edge's larger-abscissa endpoint
    bool potential_ok = false;
    bool h_promising = false, l_promising = false;
};

/// Evaluates the potential inequality of S_i with the true graph metric
/// (tree must be rooted at seq.a) plus the inductive/promising flags.
SquareStatus potential_status(const Triangulation& t, const CrossingSequence& seq, int i,
                              const ShortestPathTree& tree_from_a);

struct LabelRun {
    int start_index = 0;        // i of the definition
    std::vector<int> path;      // distinct vertices from label i to label j
};

/// Maximal run of high (resp. low) labels ending at index j whose interior
/// members are not promising. Run edges are verified WN (resp. WS).
LabelRun maximal_high_path(const Triangulation& t, const CrossingSequence& seq, int j);
LabelRun maximal_low_path(const Triangulation& t, const CrossingSequence& seq, int j);

struct Extension {
    int end_index = 0;
    std::vector<int> path;     // distinct vertices walked (starts at label i)
    bool exhausted = false;    // low walk ran out of labels while still bad
};

/// Walks the high (resp. low) label chain from index i while the position
/// relative to b is bad; every traversed edge is verified NE (resp. SE).
Extension monotone_extension(const Triangulation& t, const CrossingSequence& seq, int i, bool high);

enum class StepKind {
    DirectEdge,
    Case1RegionA,
    Case1RegionB,
    Case1RegionC,
    Case2NoInductive,
    Case2InductiveHigh,
    Case2InductiveLow,
};

const char* step_kind_name(StepKind k);

struct IneqRecord {
    std::string label;
    double bound = 0.0;
    double value = 0.0;
    double slack = 0.0;  // bound - value, must stay >= -tolerance
};

struct RouteStep {
    StepKind kind = StepKind::DirectEdge;
    int a = -1, b = -1;
    PairFrame frame;
    int via = -1;                      // case-1 point c / inductive point
    int inductive_index = 0;           // sequence index of the first inductive square
    int run_start = -1, run_end = -1;  // maximal high/low path endpoints
    int ext_end = -1;                  // monotone extension landing point
    bool terminal_edge = false;        // low walk exhausted; closed with the T_k edge
    double length = 0.0;               // certified path length of this subtree
    double bound = 0.0;                // (1+sqrt2) x + y for this frame
    std::vector<IneqRecord> checks;
    std::vector<RouteStep> children;
};

struct RouteCertificate {
    int a = -1, b = -1;
    PairFrame frame;
    PathInGraph path;  // ids in the predicate domain; length is Euclidean there
    double bound = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    RouteStep trace;
};

class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Constructive form of the stretch bound: builds the path and audits every
/// inequality that justifies length <= (1+sqrt2) x + y. Negative slack beyond
/// tolerance aborts with CertificateError.
RouteCertificate route(const Triangulation& t, int a, int b);

/// Replays the certificate path against the triangulation: consecutive
/// vertices adjacent and recomputed length within 1e-12 relative error.
bool replay_certificate(const Triangulation& t, const RouteCertificate& cert, std::string* why = nullptr);

/// Structural audit for one pair with empty R(a,b): crossing-sequence
/// invariants, potential propagation, promising bound and inductive-point
/// inequalities, all with the true graph metric. Returns human-readable
/// violations (empty means the pair passes).
std::vector<std::string> audit_lemmas(const Triangulation& t, int a, int b,
                                      const ShortestPathTree& tree_from_a);

}  // namespace sqspan
