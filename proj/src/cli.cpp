#include "sqspan/cli.hpp"

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqspan/chew.hpp"
#include "sqspan/io.hpp"

namespace sqspan {

namespace {

Metric parse_metric(const std::string& s) {
    if (s == "linf") return Metric::Linf;
    if (s == "l1") return Metric::L1;
    throw CLI::ValidationError("--metric", "must be 'linf' or 'l1'");
}

Triangulation triangulate_metric(std::shared_ptr<const PointSet> ps, Metric m) {
    return m == Metric::L1 ? triangulate_l1(std::move(ps)) : triangulate_linf(std::move(ps));
}

int cmd_gen(const std::string& family, int m, std::int64_t precision, int random_n,
            std::uint64_t seed, const std::string& dist, const std::string& out) {
    if (!family.empty()) {
        ChewFamilyParams params;
        params.m = m;
        params.precision = precision;
        ChewFamily fam = generate_chew_family(params);
        save_pointset(fam.points, out);
        double delta = to_double(fam.delta);
        std::printf("wrote %zu points (ladder family, m=%d)\n", fam.points.size(), m);
        std::printf("delta = %.12g\n", delta);
        std::printf("closed-form stretch = %.12g\n", chew_stretch_closed_form(delta));
        return 0;
    }
    RandomDist d;
    if (dist == "uniform-box")
        d = RandomDist::UniformBox;
    else if (dist == "clustered")
        d = RandomDist::Clustered;
    else if (dist == "near-cosquare")
        d = RandomDist::NearCosquare;
    else
        throw CLI::ValidationError("--dist", "must be uniform-box, clustered or near-cosquare");
    PointSet ps = random_pointset(random_n, seed, d);
    save_pointset(ps, out);
    std::printf("wrote %zu points (%s, seed %llu)\n", ps.size(), dist.c_str(),
                static_cast<unsigned long long>(seed));
    return 0;
}

int cmd_triangulate(const std::string& in, const std::string& metric, const std::string& out) {
    auto ps = std::make_shared<PointSet>(load_pointset(in));
    Triangulation t = triangulate_metric(ps, parse_metric(metric));
    auto viol = validate_triangulation(t);
    if (!viol.empty()) {
        for (auto& v : viol) std::fprintf(stderr, "validation: %s\n", v.rule.c_str());
        return 1;
    }
    save_triangulation(t, out);
    std::printf("%zu points, %zu edges, %zu triangles\n", ps->size(), t.edges.size(),
                t.triangles.size());
    return 0;
}

int cmd_analyze(const std::string& in, const std::string& metric, const std::vector<int>& pair,
                bool per_pair, const std::string& out) {
    auto ps = std::make_shared<PointSet>(load_pointset(in));
    Metric m = parse_metric(metric);
    Triangulation t = triangulate_metric(ps, m);
    StretchReport rep = stretch_factor(t);
    if (!pair.empty()) {
        StretchReport single;
        single.n = rep.n;
        for (auto& pr : rep.pairs) {
            if ((pr.a == pair[0] && pr.b == pair[1]) || (pr.a == pair[1] && pr.b == pair[0])) {
                single.pairs.push_back(pr);
                single.max_ratio = pr.ratio;
                single.argmax_a = pr.a;
                single.argmax_b = pr.b;
                single.min_margin = pr.margin;
                single.min_margin_a = pr.a;
                single.min_margin_b = pr.b;
            }
        }
        if (single.pairs.empty()) {
            std::fprintf(stderr, "pair (%d, %d) not found\n", pair[0], pair[1]);
            return 1;
        }
        save_stretch_report(single, m, out, true);
        std::printf("pair (%d,%d): ratio %.12g, margin %.12g\n", pair[0], pair[1],
                    single.max_ratio, single.min_margin);
        return 0;
    }
    save_stretch_report(rep, m, out, per_pair);
    std::printf("max stretch %.12g at pair (%d,%d); min margin %.12g\n", rep.max_ratio,
                rep.argmax_a, rep.argmax_b, rep.min_margin);
    return 0;
}

int cmd_route(const std::string& in, const std::string& metric, const std::vector<int>& pair,
              const std::string& out) {
    auto ps = std::make_shared<PointSet>(load_pointset(in));
    Metric m = parse_metric(metric);
    Triangulation t = triangulate_metric(ps, m);
    RouteCertificate cert = route(t, pair[0], pair[1]);
    std::string why;
    if (!replay_certificate(t, cert, &why)) {
        std::fprintf(stderr, "certificate replay failed: %s\n", why.c_str());
        return 1;
    }
    save_certificate(cert, m, out);
    std::printf("route %d -> %d: %zu vertices, length %.12g, bound %.12g, slack %.12g\n", pair[0],
                pair[1], cert.path.vertices.size(), cert.path.length, cert.bound, cert.slack);
    return 0;
}

int cmd_svg(const std::string& in, const std::string& metric, const std::string& route_path,
            const std::vector<int>& square_pair, bool labels, const std::string& out) {
    auto ps = std::make_shared<PointSet>(load_pointset(in));
    Metric m = parse_metric(metric);
    Triangulation t = triangulate_metric(ps, m);
    SvgOptions opts;
    opts.label_points = labels;
    if (!route_path.empty()) opts.route = load_certificate(route_path);
    if (!square_pair.empty()) {
        int a = square_pair[0], b = square_pair[1];
        if (t.has_edge(a, b)) {
            for (auto& e : t.edges)
                if ((e.a == std::min(a, b)) && (e.b == std::max(a, b)))
                    opts.squares.push_back(e.witness);
        } else {
            CrossingSequence seq = crossing_sequence(t, a, b);
            for (int i = 1; i <= seq.k(); ++i)
                opts.squares.push_back(t.triangles[seq.tris[i - 1]].circumsquare);
        }
    }
    std::vector<std::pair<int, int>> edges;
    const PointSet& draw_ps = t.domain_points();  // squares live in the predicate domain
    for (auto& e : t.edges) edges.push_back({e.a, e.b});
    write_svg(draw_ps, edges, opts, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"L-infinity / L1 Delaunay spanners with certified stretch"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a point set");
    std::string family, dist = "uniform-box", out;
    int m = 12, random_n = 0;
    std::int64_t precision = 1000000000;
    std::uint64_t seed = 0;
    gen->add_option("--family", family, "named family: chew");
    gen->add_option("--m", m, "ladder parameter (m >= 4)");
    gen->add_option("--precision", precision, "sqrt(2) rationalization denominator bound");
    gen->add_option("--random", random_n, "number of random points");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--dist", dist, "uniform-box | clustered | near-cosquare");
    gen->add_option("--out", out, "output pointset path")->required();

    // triangulate
    auto* tri = app.add_subcommand("triangulate", "build the triangulation");
    std::string tin, tmetric = "linf", tout;
    tri->add_option("--in", tin, "input pointset")->required();
    tri->add_option("--metric", tmetric, "linf | l1");
    tri->add_option("--out", tout, "output triangulation path")->required();

    // analyze
    auto* ana = app.add_subcommand("analyze", "stretch factors and bound margins");
    std::string ain, ametric = "linf", aout;
    std::vector<int> apair;
    bool per_pair = false;
    ana->add_option("--in", ain)->required();
    ana->add_option("--metric", ametric, "linf | l1");
    ana->add_option("--pair", apair, "restrict to one pair")->expected(2);
    ana->add_flag("--per-pair", per_pair, "serialize every pair record");
    ana->add_option("--out", aout)->required();

    // route
    auto* rt = app.add_subcommand("route", "certified path construction");
    std::string rin, rmetric = "linf", rout;
    std::vector<int> rpair;
    rt->add_option("--in", rin)->required();
    rt->add_option("--metric", rmetric, "linf | l1");
    rt->add_option("--pair", rpair, "source and destination ids")->required()->expected(2);
    rt->add_option("--out", rout)->required();

    // svg
    auto* sv = app.add_subcommand("svg", "render points, edges and overlays");
    std::string sin, smetric = "linf", sroute, sout;
    std::vector<int> spair;
    bool slabels = false;
    sv->add_option("--in", sin)->required();
    sv->add_option("--metric", smetric, "linf | l1");
    sv->add_option("--route", sroute, "route certificate to highlight");
    sv->add_option("--squares", spair, "draw the witness squares of a pair")->expected(2);
    sv->add_flag("--labels", slabels, "draw point ids");
    sv->add_option("--out", sout)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) {
            if (family.empty() && random_n < 2)
                throw std::invalid_argument("gen: pass --family chew or --random N (N >= 2)");
            if (!family.empty() && family != "chew")
                throw std::invalid_argument("gen: unknown family " + family);
            return cmd_gen(family, m, precision, random_n, seed, dist, out);
        }
        if (tri->parsed()) return cmd_triangulate(tin, tmetric, tout);
        if (ana->parsed()) return cmd_analyze(ain, ametric, apair, per_pair, aout);
        if (rt->parsed()) return cmd_route(rin, rmetric, rpair, rout);
        if (sv->parsed()) return cmd_svg(sin, smetric, sroute, spair, slabels, sout);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

}  // namespace sqspan
