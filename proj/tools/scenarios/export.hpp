#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "czest/constrained_zonotope.hpp"
#include "scenarios.hpp"

namespace czest::scenarios {

inline constexpr const char* kMetricsHeader = "k,method,radius,ng,nc,wall_micros";

/// One row per (method, step), methods in the order given. Radii use 17
/// significant digits; wall_micros is written as 0 unless `timing` is set.
void write_metrics_csv(std::ostream& os, const std::vector<MethodResult>& methods, bool timing = false);

/// {"G": rows, "c": [...], "A": rows, "b": [...]}; zonotopes have empty A and b.
nlohmann::json to_json(const ConstrainedZonotope& Z);
/// Throws Error on missing keys or inconsistent sizes.
ConstrainedZonotope cz_from_json(const nlohmann::json& j);

std::string dump_json(const ConstrainedZonotope& Z);
ConstrainedZonotope parse_json(const std::string& text);

/// Points and polygons in data coordinates, mapped into a fixed-size SVG 1.1 panel.
struct Plot2D
{
    struct Polygon
    {
        std::vector<Eigen::Vector2d> vertices;
        std::string stroke;
        std::string fill;
        std::string label;
    };
    struct Dots
    {
        std::vector<Eigen::Vector2d> points;
        std::string color;
        double size = 1.0;
        std::string label;
    };
    struct Line
    {
        std::vector<Eigen::Vector2d> points;
        std::string color;
        std::string label;
    };

    std::string title;
    std::string x_label = "x1";
    std::string y_label = "x2";
    std::vector<Polygon> polygons;
    std::vector<Dots> dots;
    std::vector<Line> lines;
};

/// Panels side by side in one document.
std::string render_svg(const std::vector<Plot2D>& panels, double panel_width = 480.0, double panel_height = 400.0);

/// Outline of a 2-D set. Throws DimensionError for other dimensions.
std::vector<Eigen::Vector2d> outline_2d(const ConstrainedZonotope& Z);

/// Radius against k for each method.
Plot2D radius_chart(const std::vector<MethodResult>& methods, const std::string& title);

/// Colors cycled per series.
const std::string& series_color(std::size_t i);

/// Writes `text` to `path`, creating parent directories. Throws Error when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace czest::scenarios
