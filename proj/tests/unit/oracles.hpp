#pragma once

// Independent oracles used to cross-check the production predicates. These
// deliberately avoid the interval-coverage logic and the floating-point
// filters: decisions are made by exhaustive exact point-in-square tests over
// a dense grid of critical parameters.

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "sqspan/delaunay.hpp"
#include "sqspan/empty_square.hpp"

namespace oracles {

using namespace sqspan;

inline bool square_empty_exhaustive(const PointSet& ps, const AxisSquare& sq, int u, int v) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (static_cast<int>(i) == u || static_cast<int>(i) == v) continue;
        if (sq.contains_open(ps[i].x, ps[i].y)) return false;
    }
    return true;
}

// Critical parameters: for every third point, the t values where it can enter
// or leave the family square, plus the minimal-side breakpoints. An empty
// square exists iff one exists at a critical value or strictly between two
// consecutive ones (probed at midpoints and beyond the extremes).
inline std::optional<AxisSquare> empty_square(const PointSet& ps, int u, int v) {
    PairFrame f = make_pair_frame(ps[u], ps[v]);
    std::vector<Rat> crit = {f.h - f.w, Rat(0)};
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (static_cast<int>(i) == u || static_cast<int>(i) == v) continue;
        Rat px, py;
        f.map(ps[i].x, ps[i].y, px, py);
        crit.push_back(-px);
        crit.push_back(f.h - px);
        crit.push_back(py);
        crit.push_back(py - f.w);
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    std::vector<Rat> probes;
    probes.push_back(crit.front() - 1);
    probes.push_back(crit.back() + 1);
    for (std::size_t i = 0; i < crit.size(); ++i) {
        probes.push_back(crit[i]);
        if (i + 1 < crit.size()) probes.push_back((crit[i] + crit[i + 1]) / 2);
    }
    for (const Rat& t : probes) {
        AxisSquare world = f.unmap(family_square_at(f, t));
        if (square_empty_exhaustive(ps, world, u, v)) return world;
    }
    return std::nullopt;
}

inline std::vector<std::pair<int, int>> delaunay_edges(const PointSet& ps) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(ps.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (empty_square(ps, i, j)) out.push_back({i, j});
    return out;
}

inline std::vector<std::pair<int, int>> edge_pairs(const Triangulation& t) {
    std::vector<std::pair<int, int>> out;
    for (auto& e : t.edges) out.push_back({e.a, e.b});
    return out;
}

// All-pairs shortest paths, cubic recomputation.
inline std::vector<std::vector<double>> floyd_warshall(const PointSet& ps,
                                                       const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(ps.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0.0;
    for (auto& e : edges) {
        double w = dist_l2(ps[e.first], ps[e.second]);
        d[e.first][e.second] = std::min(d[e.first][e.second], w);
        d[e.second][e.first] = d[e.first][e.second];
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

}  // namespace oracles
