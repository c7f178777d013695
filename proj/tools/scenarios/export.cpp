#include "export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "czest/error.hpp"
#include "czest/set_queries.hpp"

namespace czest::scenarios {

namespace {

std::string num(double v, int digits = 17)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// short form for SVG coordinates
std::string coord(double v)
{
    if (std::abs(v) < 5e-4)
        v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

nlohmann::json rows(const Eigen::MatrixXd& M)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
    {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            row.push_back(M(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

nlohmann::json vec(const Eigen::VectorXd& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

Eigen::MatrixXd matrix_from(const nlohmann::json& j, Eigen::Index cols_if_empty, const char* key)
{
    if (!j.is_array())
        throw Error(std::string("CG-rep JSON: '") + key + "' must be an array of rows");
    const auto r = static_cast<Eigen::Index>(j.size());
    const Eigen::Index c = r > 0 ? static_cast<Eigen::Index>(j[0].size()) : cols_if_empty;
    Eigen::MatrixXd M(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
    {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
            throw Error(std::string("CG-rep JSON: rows of '") + key + "' differ in length");
        for (Eigen::Index k = 0; k < c; ++k)
            M(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
    return M;
}

Eigen::VectorXd vector_from(const nlohmann::json& j, const char* key)
{
    if (!j.is_array())
        throw Error(std::string("CG-rep JSON: '") + key + "' must be an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s)
    {
        switch (ch)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

struct Bounds
{
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;

    void add(const Eigen::Vector2d& p)
    {
        if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
            return;
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
    }
    bool empty() const { return !(x0 <= x1); }
};

/// "Nice" tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi)
{
    const double span = hi - lo;
    if (!(span > 0.0))
        return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw)
        {
            step = m * mag;
            break;
        }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
}

void render_panel(std::ostringstream& os, const Plot2D& p, double ox, double w, double h)
{
    const double left = 56, right = 12, top = 28, bottom = 40;
    Bounds b;
    for (const auto& poly : p.polygons)
        for (const auto& v : poly.vertices)
            b.add(v);
    for (const auto& d : p.dots)
        for (const auto& v : d.points)
            b.add(v);
    for (const auto& l : p.lines)
        for (const auto& v : l.points)
            b.add(v);
    if (b.empty())
        b = {0.0, 1.0, 0.0, 1.0};
    // 4% margin, and a unit span for degenerate axes
    auto pad = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span <= 0.0)
            span = std::max(1.0, std::abs(lo));
        lo -= 0.04 * span;
        hi += 0.04 * span;
    };
    pad(b.x0, b.x1);
    pad(b.y0, b.y1);

    const double pw = w - left - right, ph = h - top - bottom;
    auto X = [&](double x) { return ox + left + (x - b.x0) / (b.x1 - b.x0) * pw; };
    auto Y = [&](double y) { return top + (b.y1 - y) / (b.y1 - b.y0) * ph; };

    os << "<g>\n";
    os << "<rect x=\"" << coord(ox + left) << "\" y=\"" << coord(top) << "\" width=\"" << coord(pw) << "\" height=\""
       << coord(ph) << "\" fill=\"white\" stroke=\"black\"/>\n";
    os << "<text x=\"" << coord(ox + left + pw / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">"
       << escape(p.title) << "</text>\n";
    for (double t : ticks(b.x0, b.x1))
        os << "<text x=\"" << coord(X(t)) << "\" y=\"" << coord(top + ph + 14)
           << "\" text-anchor=\"middle\" font-size=\"10\">" << num(t, 4) << "</text>\n";
    for (double t : ticks(b.y0, b.y1))
        os << "<text x=\"" << coord(ox + left - 4) << "\" y=\"" << coord(Y(t) + 3)
           << "\" text-anchor=\"end\" font-size=\"10\">" << num(t, 4) << "</text>\n";
    os << "<text x=\"" << coord(ox + left + pw / 2) << "\" y=\"" << coord(h - 8)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(p.x_label) << "</text>\n";
    os << "<text x=\"" << coord(ox + 14) << "\" y=\"" << coord(top + ph / 2) << "\" text-anchor=\"middle\" font-size=\"11\""
       << " transform=\"rotate(-90 " << coord(ox + 14) << ' ' << coord(top + ph / 2) << ")\">" << escape(p.y_label)
       << "</text>\n";

    for (const auto& d : p.dots)
    {
        os << "<g fill=\"" << d.color << "\">\n";
        for (const auto& v : d.points)
            os << "<circle cx=\"" << coord(X(v.x())) << "\" cy=\"" << coord(Y(v.y())) << "\" r=\"" << coord(d.size)
               << "\"/>\n";
        os << "</g>\n";
    }
    for (const auto& poly : p.polygons)
    {
        if (poly.vertices.empty())
            continue;
        os << "<polygon fill=\"" << (poly.fill.empty() ? "none" : poly.fill) << "\" stroke=\"" << poly.stroke
           << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < poly.vertices.size(); ++i)
            os << (i ? " " : "") << coord(X(poly.vertices[i].x())) << ',' << coord(Y(poly.vertices[i].y()));
        os << "\"/>\n";
    }
    for (const auto& l : p.lines)
    {
        os << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < l.points.size(); ++i)
            os << (i ? " " : "") << coord(X(l.points[i].x())) << ',' << coord(Y(l.points[i].y()));
        os << "\"/>\n";
    }

    // legend
    double ly = top + 12;
    auto legend = [&](const std::string& label, const std::string& color) {
        if (label.empty())
            return;
        os << "<rect x=\"" << coord(ox + left + pw - 120) << "\" y=\"" << coord(ly - 8) << "\" width=\"10\" height=\"10\""
           << " fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << coord(ox + left + pw - 106) << "\" y=\"" << coord(ly + 1) << "\" font-size=\"10\">"
           << escape(label) << "</text>\n";
        ly += 14;
    };
    for (const auto& poly : p.polygons)
        legend(poly.label, poly.stroke);
    for (const auto& l : p.lines)
        legend(l.label, l.color);
    for (const auto& d : p.dots)
        legend(d.label, d.color);
    os << "</g>\n";
}

} // namespace

void write_metrics_csv(std::ostream& os, const std::vector<MethodResult>& methods, bool timing)
{
    os << kMetricsHeader << '\n';
    for (const auto& m : methods)
        for (const auto& s : m.run.steps)
            os << s.k << ',' << to_string(m.setup.method) << ',' << num(s.radius) << ',' << s.ng << ',' << s.nc << ','
               << (timing ? num(s.wall_micros, 6) : std::string("0")) << '\n';
}

nlohmann::json to_json(const ConstrainedZonotope& Z)
{
    return {{"G", rows(Z.G())}, {"c", vec(Z.c())}, {"A", rows(Z.A())}, {"b", vec(Z.b())}};
}

ConstrainedZonotope cz_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw Error("CG-rep JSON: expected an object");
    for (const char* key : {"G", "c", "A", "b"})
        if (!j.contains(key))
            throw Error(std::string("CG-rep JSON: missing '") + key + "'");
    Eigen::VectorXd c = vector_from(j["c"], "c");
    Eigen::MatrixXd G = matrix_from(j["G"], 0, "G");
    if (G.rows() == 0 && c.size() > 0)
        G.resize(c.size(), 0);
    Eigen::MatrixXd A = matrix_from(j["A"], G.cols(), "A");
    Eigen::VectorXd b = vector_from(j["b"], "b");
    return {std::move(G), std::move(c), std::move(A), std::move(b)};
}

std::string dump_json(const ConstrainedZonotope& Z) { return to_json(Z).dump() + "\n"; }

ConstrainedZonotope parse_json(const std::string& text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error(std::string("CG-rep JSON: ") + e.what());
    }
    return cz_from_json(j);
}

std::string render_svg(const std::vector<Plot2D>& panels, double panel_width, double panel_height)
{
    std::ostringstream os;
    const double width = panel_width * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << coord(width) << "\" height=\""
       << coord(panel_height) << "\" viewBox=\"0 0 " << coord(width) << ' ' << coord(panel_height)
       << "\" font-family=\"sans-serif\">\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        render_panel(os, panels[i], panel_width * static_cast<double>(i), panel_width, panel_height);
    os << "</svg>\n";
    return os.str();
}

std::vector<Eigen::Vector2d> outline_2d(const ConstrainedZonotope& Z)
{
    if (Z.dim() != 2)
        throw DimensionError("outline_2d: only 2-D sets can be drawn");
    return polygon_2d(Z);
}

Plot2D radius_chart(const std::vector<MethodResult>& methods, const std::string& title)
{
    Plot2D p;
    p.title = title;
    p.x_label = "k";
    p.y_label = "radius";
    for (std::size_t i = 0; i < methods.size(); ++i)
    {
        Plot2D::Line line;
        line.color = series_color(i);
        line.label = to_string(methods[i].setup.method);
        for (const auto& s : methods[i].run.steps)
            line.points.emplace_back(static_cast<double>(s.k), s.radius);
        p.lines.push_back(std::move(line));
    }
    return p;
}

const std::string& series_color(std::size_t i)
{
    static const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % colors.size()];
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out.flush())
        throw Error("write failed for '" + path.string() + "'");
}

} // namespace czest::scenarios
