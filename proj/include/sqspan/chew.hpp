#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sqspan/geometry.hpp"

namespace sqspan {

/// Parameters of the adversarial ladder family. delta = sqrt(2)/m with
/// sqrt(2) replaced by a continued-fraction convergent whose denominator is
/// bounded by `precision`, so all coordinates are exact rationals.
struct ChewFamilyParams {
    int m = 12;                          // m >= 4; the segment count relation k = m-3
    std::int64_t precision = 1000000000; // sqrt(2) convergent denominator bound
};

struct ChewFamily {
    PointSet points;
    Rat delta;       // rationalized sqrt(2)/m
    Rat sqrt2_rat;   // the convergent used
    int a, b, c1, c2;                 // ids of the named points
    std::vector<int> p;               // p_0 = a, ..., p_{k+1} = c1
    std::vector<int> q;               // q_0 = c2, ..., q_{k+1} = b
    std::vector<std::array<int, 3>> expected_triangles;  // sorted triples
};

/// Ladder of 2(m-1) points whose triangulation stretch tends to
/// sqrt(4 + 2*sqrt(2)) as m grows.
ChewFamily generate_chew_family(const ChewFamilyParams& params);

/// Stretch of the generated family's extreme pair as a function of delta:
/// ( sqrt(delta^2 + (sqrt2 - 2 delta)^2) + sqrt((1-delta)^2 + (1-2 delta)^2) )
///   / sqrt(4 - 2 sqrt2).
/// Valid for 0 < delta < 1/2; tends to sqrt(4 + 2 sqrt2) as delta -> 0.
double chew_stretch_closed_form(double delta);

enum class RandomDist { UniformBox, Clustered, NearCosquare };

/// Deterministic general-position point set generator (exact rational
/// coordinates, fixed power-of-two denominators).
PointSet random_pointset(int n, std::uint64_t seed, RandomDist dist = RandomDist::UniformBox);

}  // namespace sqspan
