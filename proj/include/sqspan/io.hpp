#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqspan/router.hpp"

namespace sqspan {

/// Exact point-set file: {"points": [[x_num, x_den, y_num, y_den], ...]}.
/// Components are JSON integers when they fit in 64 bits, decimal strings
/// otherwise; labels are optional.
void save_pointset(const PointSet& ps, const std::string& path,
                   const std::vector<std::string>* labels = nullptr);
PointSet load_pointset(const std::string& path, std::vector<std::string>* labels = nullptr);

std::string pointset_to_json(const PointSet& ps, const std::vector<std::string>* labels = nullptr);
PointSet pointset_from_json(const std::string& text, std::vector<std::string>* labels = nullptr);

void save_triangulation(const Triangulation& t, const std::string& path);
Triangulation load_triangulation(const std::string& path);

void save_stretch_report(const StretchReport& rep, Metric metric, const std::string& path,
                         bool per_pair);
StretchReport load_stretch_report(const std::string& path, Metric* metric = nullptr);

void save_certificate(const RouteCertificate& cert, Metric metric, const std::string& path);
RouteCertificate load_certificate(const std::string& path, Metric* metric = nullptr);

struct SvgOptions {
    bool draw_edges = true;
    std::optional<RouteCertificate> route;           // highlighted path + length legend
    std::vector<AxisSquare> squares;                 // dashed overlay squares
    bool label_points = false;
    int width = 900;
};

void write_svg(const PointSet& ps, const std::vector<std::pair<int, int>>& edges,
               const SvgOptions& opts, const std::string& path);

}  // namespace sqspan
