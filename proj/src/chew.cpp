#include "sqspan/chew.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace sqspan {

ChewFamily generate_chew_family(const ChewFamilyParams& params) {
    if (params.m < 4) throw std::invalid_argument("chew family requires m >= 4");
    const int m = params.m;
    const int k = m - 3;
    Rat r = sqrt2_convergent(params.precision);
    Rat delta = r / m;
    Rat one(1);

    // Both chains share the direction (delta, (m-2)*delta), so x advances by
    // delta/(m-2) per unit step in the chain index.
    Rat xstep = delta / (m - 2);

    std::vector<std::pair<Rat, Rat>> coords;
    ChewFamily fam;
    fam.delta = delta;
    fam.sqrt2_rat = r;

    auto push = [&](Rat x, Rat y) {
        coords.emplace_back(std::move(x), std::move(y));
        return static_cast<int>(coords.size()) - 1;
    };

    fam.a = push(Rat(0), Rat(0));
    fam.p.push_back(fam.a);
    for (int i = 1; i <= k; ++i) fam.p.push_back(push(i * xstep, i * delta));
    fam.c1 = push(delta, r - 2 * delta);
    fam.p.push_back(fam.c1);
    fam.c2 = push(one - delta, -(one - 2 * delta));
    fam.q.push_back(fam.c2);
    for (int i = 1; i <= k; ++i)
        fam.q.push_back(push(one - delta + i * xstep, -(one - 2 * delta) + i * delta));
    fam.b = push(one, r - 1);
    fam.q.push_back(fam.b);

    fam.points = PointSet::from_coords(coords);

    ValidateOptions vo;
    vo.cosquare_limit = 0;  // pairwise rules only; the ladder handles squares by construction
    auto viol = validate_general_position(fam.points, vo);
    if (!viol.empty())
        throw std::runtime_error(
            "chew family degenerate at this precision; pick a different precision bound");

    for (int i = 0; i <= k; ++i) {
        std::array<int, 3> t1 = {fam.p[i], fam.p[i + 1], fam.q[i]};
        std::array<int, 3> t2 = {fam.q[i], fam.q[i + 1], fam.p[i + 1]};
        std::sort(t1.begin(), t1.end());
        std::sort(t2.begin(), t2.end());
        fam.expected_triangles.push_back(t1);
        fam.expected_triangles.push_back(t2);
    }
    std::sort(fam.expected_triangles.begin(), fam.expected_triangles.end());
    return fam;
}

double chew_stretch_closed_form(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("chew_stretch_closed_form: delta must be in (0, 1/2)");
    const double s2 = std::sqrt(2.0);
    double leg1 = std::sqrt(delta * delta + (s2 - 2 * delta) * (s2 - 2 * delta));
    double leg2 = std::sqrt((1 - delta) * (1 - delta) + (1 - 2 * delta) * (1 - 2 * delta));
    return (leg1 + leg2) / std::sqrt(4 - 2 * s2);
}

namespace {

constexpr std::int64_t kDen = 1 << 20;        // coordinate denominator
constexpr std::int64_t kJitterDen = 1 << 26;  // near-cosquare offset denominator

struct Gen {
    std::mt19937_64 rng;
    std::set<Rat> xs, ys;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::int64_t draw(std::int64_t lo, std::int64_t hi) {
        std::uniform_int_distribution<std::int64_t> d(lo, hi);
        return d(rng);
    }

    bool try_insert(std::vector<std::pair<Rat, Rat>>& coords, Rat x, Rat y) {
        if (xs.count(x) || ys.count(y)) return false;
        xs.insert(x);
        ys.insert(y);
        coords.emplace_back(std::move(x), std::move(y));
        return true;
    }
};

}  // namespace

PointSet random_pointset(int n, std::uint64_t seed, RandomDist dist) {
    if (n < 2) throw std::invalid_argument("random_pointset: n >= 2 required");
    Gen g(seed);
    std::vector<std::pair<Rat, Rat>> coords;
    coords.reserve(n);

    auto fill_uniform = [&]() {
        while (static_cast<int>(coords.size()) < n) {
            Rat x = rat_from_parts(g.draw(0, kDen * 1024), kDen);
            Rat y = rat_from_parts(g.draw(0, kDen * 1024), kDen);
            g.try_insert(coords, std::move(x), std::move(y));
        }
    };

    switch (dist) {
        case RandomDist::UniformBox:
            fill_uniform();
            break;
        case RandomDist::Clustered: {
            const int nclusters = std::max(1, n / 8);
            std::vector<std::pair<std::int64_t, std::int64_t>> centers;
            for (int i = 0; i < nclusters; ++i)
                centers.emplace_back(g.draw(0, kDen * 1024), g.draw(0, kDen * 1024));
            while (static_cast<int>(coords.size()) < n) {
                auto& c = centers[g.draw(0, nclusters - 1)];
                Rat x = rat_from_parts(c.first + g.draw(-kDen * 16, kDen * 16), kDen);
                Rat y = rat_from_parts(c.second + g.draw(-kDen * 16, kDen * 16), kDen);
                g.try_insert(coords, std::move(x), std::move(y));
            }
            break;
        }
        case RandomDist::NearCosquare: {
            // Clusters of four points hugging a shared square boundary, each
            // nudged strictly off it; exercises the exact fallbacks.
            while (static_cast<int>(coords.size()) < n) {
                std::int64_t west = g.draw(0, kDen * 900);
                std::int64_t south = g.draw(0, kDen * 900);
                std::int64_t side = g.draw(kDen * 4, kDen * 100);
                for (int s = 0; s < 4 && static_cast<int>(coords.size()) < n; ++s) {
                    std::int64_t along = g.draw(1, side - 1);
                    std::int64_t off = (g.draw(0, 1) ? 1 : -1);
                    Rat x, y;
                    switch (s) {
                        case 0:  // N
                            x = rat_from_parts(west + along, kDen);
                            y = rat_from_parts(south + side, kDen) + Rat(off, kJitterDen);
                            break;
                        case 1:  // E
                            x = rat_from_parts(west + side, kDen) + Rat(off, kJitterDen);
                            y = rat_from_parts(south + along, kDen);
                            break;
                        case 2:  // S
                            x = rat_from_parts(west + along, kDen);
                            y = rat_from_parts(south, kDen) + Rat(off, kJitterDen);
                            break;
                        default:  // W
                            x = rat_from_parts(west, kDen) + Rat(off, kJitterDen);
                            y = rat_from_parts(south + along, kDen);
                            break;
                    }
                    g.try_insert(coords, std::move(x), std::move(y));
                }
            }
            break;
        }
    }

    // Enforce the square rule by resampling offenders (desk-scale check).
    for (int attempt = 0; attempt < 64; ++attempt) {
        PointSet ps = PointSet::from_coords(coords);
        auto viol = validate_general_position(ps);
        if (viol.empty()) return ps;
        std::set<int> bad;
        for (auto& v : viol) bad.insert(v.ids.back());
        for (int id : bad) {
            g.xs.erase(coords[id].first);
            g.ys.erase(coords[id].second);
            while (true) {
                Rat x = rat_from_parts(g.draw(0, kDen * 1024), kDen);
                Rat y = rat_from_parts(g.draw(0, kDen * 1024), kDen);
                if (g.xs.count(x) || g.ys.count(y)) continue;
                g.xs.insert(x);
                g.ys.insert(y);
                coords[id] = {std::move(x), std::move(y)};
                break;
            }
        }
    }
    throw std::runtime_error("random_pointset: could not reach general position");
}

}  // namespace sqspan
