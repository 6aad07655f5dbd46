#include "sqspan/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sqspan {

using Json = nlohmann::ordered_json;

namespace {

Json int_json(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

BigInt int_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected integer or integer string");
}

Json rat_json(const Rat& r) {
    return Json::array({int_json(boost::multiprecision::numerator(r)),
                        int_json(boost::multiprecision::denominator(r))});
}

Rat rat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [num, den]");
    BigInt num = int_from_json(j[0]);
    BigInt den = int_from_json(j[1]);
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rat(num, den);
}

Json square_json(const AxisSquare& s) {
    Json j;
    j["west"] = rat_json(s.west);
    j["south"] = rat_json(s.south);
    j["side"] = rat_json(s.side);
    return j;
}

AxisSquare square_from_json(const Json& j) {
    return AxisSquare{rat_from_json(j.at("west")), rat_from_json(j.at("south")),
                      rat_from_json(j.at("side"))};
}

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::L1: return "l1";
        case Metric::L2: return "l2";
        case Metric::Linf: return "linf";
    }
    return "?";
}

Metric metric_from_name(const std::string& s) {
    if (s == "l1") return Metric::L1;
    if (s == "l2") return Metric::L2;
    if (s == "linf") return Metric::Linf;
    throw std::invalid_argument("unknown metric: " + s);
}

Json frame_json(const PairFrame& f) {
    Json j;
    j["tx"] = rat_json(f.ux);
    j["ty"] = rat_json(f.uy);
    j["sx"] = f.sx;
    j["sy"] = f.sy;
    j["swap"] = f.transpose;
    j["x"] = rat_json(f.w);
    j["y"] = rat_json(f.h);
    return j;
}

PairFrame frame_from_json(const Json& j) {
    PairFrame f;
    f.ux = rat_from_json(j.at("tx"));
    f.uy = rat_from_json(j.at("ty"));
    f.uxd = to_double(f.ux);
    f.uyd = to_double(f.uy);
    f.sx = j.at("sx").get<int>();
    f.sy = j.at("sy").get<int>();
    f.transpose = j.at("swap").get<bool>();
    f.w = rat_from_json(j.at("x"));
    f.h = rat_from_json(j.at("y"));
    return f;
}

void write_file(const std::string& path, const Json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << j.dump(2) << "\n";
}

Json read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    Json j;
    is >> j;
    return j;
}

Json points_json(const PointSet& ps) {
    Json arr = Json::array();
    for (auto& p : ps.points()) {
        Json q = Json::array();
        q.push_back(int_json(boost::multiprecision::numerator(p.x)));
        q.push_back(int_json(boost::multiprecision::denominator(p.x)));
        q.push_back(int_json(boost::multiprecision::numerator(p.y)));
        q.push_back(int_json(boost::multiprecision::denominator(p.y)));
        arr.push_back(std::move(q));
    }
    return arr;
}

PointSet points_from_json(const Json& arr) {
    std::vector<std::pair<Rat, Rat>> coords;
    for (auto& q : arr) {
        if (!q.is_array() || q.size() != 4)
            throw std::invalid_argument("point must be [x_num, x_den, y_num, y_den]");
        BigInt xn = int_from_json(q[0]), xd = int_from_json(q[1]);
        BigInt yn = int_from_json(q[2]), yd = int_from_json(q[3]);
        if (xd <= 0 || yd <= 0) throw std::invalid_argument("denominators must be positive");
        coords.emplace_back(Rat(xn, xd), Rat(yn, yd));
    }
    return PointSet::from_coords(coords);
}

}  // namespace

std::string pointset_to_json(const PointSet& ps, const std::vector<std::string>* labels) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "pointset";
    j["points"] = points_json(ps);
    if (labels) j["labels"] = *labels;
    return j.dump(2) + "\n";
}

PointSet pointset_from_json(const std::string& text, std::vector<std::string>* labels) {
    Json j = Json::parse(text);
    if (j.at("kind").get<std::string>() != "pointset")
        throw std::invalid_argument("not a pointset file");
    if (labels && j.contains("labels")) *labels = j["labels"].get<std::vector<std::string>>();
    return points_from_json(j.at("points"));
}

void save_pointset(const PointSet& ps, const std::string& path,
                   const std::vector<std::string>* labels) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << pointset_to_json(ps, labels);
}

PointSet load_pointset(const std::string& path, std::vector<std::string>* labels) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return pointset_from_json(ss.str(), labels);
}

void save_triangulation(const Triangulation& t, const std::string& path) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "triangulation";
    j["metric"] = metric_name(t.metric);
    j["witness_domain"] = (t.metric == Metric::L1) ? "rotated" : "identity";
    j["points"] = points_json(t.points());
    Json edges = Json::array();
    for (auto& e : t.edges) {
        Json ej;
        ej["a"] = e.a;
        ej["b"] = e.b;
        ej["witness"] = square_json(e.witness);
        edges.push_back(std::move(ej));
    }
    j["edges"] = std::move(edges);
    Json tris = Json::array();
    for (auto& tr : t.triangles) {
        Json tj;
        tj["v"] = Json::array({tr.v[0], tr.v[1], tr.v[2]});
        tj["circumsquare"] = square_json(tr.circumsquare);
        tris.push_back(std::move(tj));
    }
    j["triangles"] = std::move(tris);
    write_file(path, j);
}

Triangulation load_triangulation(const std::string& path) {
    Json j = read_file(path);
    if (j.at("kind").get<std::string>() != "triangulation")
        throw std::invalid_argument("not a triangulation file");
    Triangulation t;
    t.metric = metric_from_name(j.at("metric").get<std::string>());
    auto original = std::make_shared<PointSet>(points_from_json(j.at("points")));
    t.original = original;
    t.domain = (t.metric == Metric::L1)
                   ? std::make_shared<PointSet>(rotate_for_l1(*original))
                   : original;
    for (auto& ej : j.at("edges")) {
        Edge e;
        e.a = ej.at("a").get<int>();
        e.b = ej.at("b").get<int>();
        e.witness = square_from_json(ej.at("witness"));
        t.edges.push_back(std::move(e));
    }
    for (auto& tj : j.at("triangles")) {
        Triangle tr;
        auto v = tj.at("v");
        tr.v = {v[0].get<int>(), v[1].get<int>(), v[2].get<int>()};
        tr.circumsquare = square_from_json(tj.at("circumsquare"));
        t.triangles.push_back(std::move(tr));
    }
    t.rebuild_tables();
    return t;
}

void save_stretch_report(const StretchReport& rep, Metric metric, const std::string& path,
                         bool per_pair) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "stretch_report";
    j["metric"] = metric_name(metric);
    j["n"] = rep.n;
    j["max_ratio"] = rep.max_ratio;
    j["argmax"] = Json::array({rep.argmax_a, rep.argmax_b});
    j["min_margin"] = rep.min_margin;
    j["argmin_margin"] = Json::array({rep.min_margin_a, rep.min_margin_b});
    if (per_pair) {
        Json pairs = Json::array();
        for (auto& pr : rep.pairs) {
            Json pj;
            pj["a"] = pr.a;
            pj["b"] = pr.b;
            pj["d_t"] = pr.d_t;
            pj["d_2"] = pr.d_2;
            pj["ratio"] = pr.ratio;
            pj["margin"] = pr.margin;
            pairs.push_back(std::move(pj));
        }
        j["pairs"] = std::move(pairs);
    }
    write_file(path, j);
}

StretchReport load_stretch_report(const std::string& path, Metric* metric) {
    Json j = read_file(path);
    if (j.at("kind").get<std::string>() != "stretch_report")
        throw std::invalid_argument("not a stretch report file");
    if (metric) *metric = metric_from_name(j.at("metric").get<std::string>());
    StretchReport rep;
    rep.n = j.at("n").get<std::size_t>();
    rep.max_ratio = j.at("max_ratio").get<double>();
    rep.argmax_a = j.at("argmax")[0].get<int>();
    rep.argmax_b = j.at("argmax")[1].get<int>();
    rep.min_margin = j.at("min_margin").get<double>();
    rep.min_margin_a = j.at("argmin_margin")[0].get<int>();
    rep.min_margin_b = j.at("argmin_margin")[1].get<int>();
    if (j.contains("pairs")) {
        for (auto& pj : j["pairs"]) {
            PairRecord pr;
            pr.a = pj.at("a").get<int>();
            pr.b = pj.at("b").get<int>();
            pr.d_t = pj.at("d_t").get<double>();
            pr.d_2 = pj.at("d_2").get<double>();
            pr.ratio = pj.at("ratio").get<double>();
            pr.margin = pj.at("margin").get<double>();
            rep.pairs.push_back(pr);
        }
    }
    return rep;
}

namespace {

Json step_json(const RouteStep& st) {
    Json j;
    j["kind"] = step_kind_name(st.kind);
    j["a"] = st.a;
    j["b"] = st.b;
    j["frame"] = frame_json(st.frame);
    if (st.via >= 0) j["via"] = st.via;
    if (st.inductive_index > 0) j["inductive_index"] = st.inductive_index;
    if (st.run_start >= 0) j["run"] = Json::array({st.run_start, st.run_end});
    if (st.ext_end >= 0) j["extension_end"] = st.ext_end;
    if (st.terminal_edge) j["terminal_edge"] = true;
    j["length"] = st.length;
    j["bound"] = st.bound;
    Json checks = Json::array();
    for (auto& ck : st.checks) {
        Json cj;
        cj["label"] = ck.label;
        cj["bound"] = ck.bound;
        cj["value"] = ck.value;
        cj["slack"] = ck.slack;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    Json kids = Json::array();
    for (auto& ch : st.children) kids.push_back(step_json(ch));
    if (!kids.empty()) j["children"] = std::move(kids);
    return j;
}

StepKind step_kind_from_name(const std::string& s) {
    for (auto k : {StepKind::DirectEdge, StepKind::Case1RegionA, StepKind::Case1RegionB,
                   StepKind::Case1RegionC, StepKind::Case2NoInductive,
                   StepKind::Case2InductiveHigh, StepKind::Case2InductiveLow})
        if (s == step_kind_name(k)) return k;
    throw std::invalid_argument("unknown step kind: " + s);
}

RouteStep step_from_json(const Json& j) {
    RouteStep st;
    st.kind = step_kind_from_name(j.at("kind").get<std::string>());
    st.a = j.at("a").get<int>();
    st.b = j.at("b").get<int>();
    st.frame = frame_from_json(j.at("frame"));
    if (j.contains("via")) st.via = j["via"].get<int>();
    if (j.contains("inductive_index")) st.inductive_index = j["inductive_index"].get<int>();
    if (j.contains("run")) {
        st.run_start = j["run"][0].get<int>();
        st.run_end = j["run"][1].get<int>();
    }
    if (j.contains("extension_end")) st.ext_end = j["extension_end"].get<int>();
    if (j.contains("terminal_edge")) st.terminal_edge = j["terminal_edge"].get<bool>();
    st.length = j.at("length").get<double>();
    st.bound = j.at("bound").get<double>();
    for (auto& cj : j.at("checks")) {
        IneqRecord ck;
        ck.label = cj.at("label").get<std::string>();
        ck.bound = cj.at("bound").get<double>();
        ck.value = cj.at("value").get<double>();
        ck.slack = cj.at("slack").get<double>();
        st.checks.push_back(std::move(ck));
    }
    if (j.contains("children"))
        for (auto& kj : j["children"]) st.children.push_back(step_from_json(kj));
    return st;
}

}  // namespace

void save_certificate(const RouteCertificate& cert, Metric metric, const std::string& path) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "route_certificate";
    j["metric"] = metric_name(metric);
    j["pair"] = Json::array({cert.a, cert.b});
    j["frame"] = frame_json(cert.frame);
    j["path"] = cert.path.vertices;
    j["length"] = cert.path.length;
    j["bound"] = cert.bound;
    j["slack"] = cert.slack;
    j["tolerance"] = cert.tolerance;
    j["trace"] = step_json(cert.trace);
    write_file(path, j);
}

RouteCertificate load_certificate(const std::string& path, Metric* metric) {
    Json j = read_file(path);
    if (j.at("kind").get<std::string>() != "route_certificate")
        throw std::invalid_argument("not a route certificate file");
    if (metric) *metric = metric_from_name(j.at("metric").get<std::string>());
    RouteCertificate cert;
    cert.a = j.at("pair")[0].get<int>();
    cert.b = j.at("pair")[1].get<int>();
    cert.frame = frame_from_json(j.at("frame"));
    cert.path.vertices = j.at("path").get<std::vector<int>>();
    cert.path.length = j.at("length").get<double>();
    cert.bound = j.at("bound").get<double>();
    cert.slack = j.at("slack").get<double>();
    cert.tolerance = j.at("tolerance").get<double>();
    cert.trace = step_from_json(j.at("trace"));
    return cert;
}

void write_svg(const PointSet& ps, const std::vector<std::pair<int, int>>& edges,
               const SvgOptions& opts, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);

    double xlo = to_double(ps.min_x()), xhi = to_double(ps.max_x());
    double ylo = to_double(ps.min_y()), yhi = to_double(ps.max_y());
    for (auto& sq : opts.squares) {
        xlo = std::min(xlo, to_double(sq.west));
        xhi = std::max(xhi, to_double(sq.east()));
        ylo = std::min(ylo, to_double(sq.south));
        yhi = std::max(yhi, to_double(sq.north()));
    }
    double span = std::max({xhi - xlo, yhi - ylo, 1e-9});
    double pad = 0.05 * span;
    xlo -= pad;
    ylo -= pad;
    span += 2 * pad;
    const int W = opts.width;
    const double scale = W / span;
    const int H = W;
    auto X = [&](double x) { return (x - xlo) * scale; };
    auto Y = [&](double y) { return H - (y - ylo) * scale; };

    os << std::setprecision(6) << std::fixed;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (auto& sq : opts.squares) {
        double w0 = X(to_double(sq.west)), s0 = Y(to_double(sq.south));
        double side = to_double(sq.side) * scale;
        os << "<rect x=\"" << w0 << "\" y=\"" << s0 - side << "\" width=\"" << side
           << "\" height=\"" << side
           << "\" fill=\"none\" stroke=\"#2e8b57\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
    }

    if (opts.draw_edges) {
        for (auto& e : edges) {
            const Point& p = ps[e.first];
            const Point& q = ps[e.second];
            os << "<line x1=\"" << X(p.xd) << "\" y1=\"" << Y(p.yd) << "\" x2=\"" << X(q.xd)
               << "\" y2=\"" << Y(q.yd) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
        }
    }

    if (opts.route) {
        const auto& vs = opts.route->path.vertices;
        os << "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"2.5\" points=\"";
        for (int v : vs) os << X(ps[v].xd) << "," << Y(ps[v].yd) << " ";
        os << "\"/>\n";
    }

    for (auto& p : ps.points()) {
        os << "<circle cx=\"" << X(p.xd) << "\" cy=\"" << Y(p.yd)
           << "\" r=\"2.5\" fill=\"#c62828\"/>\n";
        if (opts.label_points)
            os << "<text x=\"" << X(p.xd) + 4 << "\" y=\"" << Y(p.yd) - 4
               << "\" font-size=\"10\" fill=\"#333\">" << p.id << "</text>\n";
    }

    if (opts.route) {
        // per-edge lengths of the highlighted route; they sum to its length
        const auto& vs = opts.route->path.vertices;
        os << std::setprecision(12);
        double ty = 16.0;
        os << "<text x=\"8\" y=\"" << ty << "\" font-size=\"12\" fill=\"#1565c0\">route length "
           << opts.route->path.length << " (bound " << opts.route->bound << ")</text>\n";
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
            ty += 14.0;
            os << "<text x=\"8\" y=\"" << ty << "\" font-size=\"11\" fill=\"#555\">edge " << vs[i]
               << "-" << vs[i + 1] << " length " << dist_l2(ps[vs[i]], ps[vs[i + 1]])
               << "</text>\n";
        }
        os << std::setprecision(6);
    }

    os << "</svg>\n";
}

}  // namespace sqspan
