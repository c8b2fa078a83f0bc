#include "gcactus/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gcactus/error.hpp"

namespace gcactus {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Draws the subgraph induced by `vertices` scaled into a size x size box at (x0, y0).
void panel(std::ostringstream& out, const graph& g, const embedding& e, const std::vector<int>& vertices,
           double x0, double y0, double size, const std::string& caption, bool labels) {
    std::vector<bool> inside(g.vertex_count, false);
    for (int v : vertices) inside[v] = true;
    // Work relative to the first vertex so tiny zoomed copies keep their precision.
    point origin = e.points[vertices.front()];
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
    for (int v : vertices) {
        point p = e.points[v] - origin;
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    if (!(span > 0.0)) span = 1.0;
    double margin = 0.08 * size;
    double scale = (size - 2.0 * margin) / span;
    double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    auto map = [&](int v) {
        point p = e.points[v] - origin;
        // SVG y grows downwards.
        return point{x0 + 0.5 * size + (p.x - cx) * scale, y0 + 0.5 * size - (p.y - cy) * scale};
    };

    out << "<g class=\"panel\">\n";
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(size) << "\" height=\""
        << num(size) << "\" fill=\"white\" stroke=\"#999\"/>\n";
    out << "<text x=\"" << num(x0 + 4) << "\" y=\"" << num(y0 + 12) << "\" font-size=\"10\">" << escape(caption)
        << "</text>\n";
    for (auto [a, b] : g.edges) {
        if (!inside[a] || !inside[b]) continue;
        point p = map(a), q = map(b);
        out << "<line x1=\"" << num(p.x) << "\" y1=\"" << num(p.y) << "\" x2=\"" << num(q.x) << "\" y2=\""
            << num(q.y) << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
    }
    double radius = std::max(1.0, size / 150.0);
    for (int v : vertices) {
        point p = map(v);
        out << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(radius)
            << "\" fill=\"#c03\"/>\n";
        if (labels) {
            std::string text = g.labels.empty() ? std::to_string(v) : g.labels[v];
            out << "<text x=\"" << num(p.x + radius + 1) << "\" y=\"" << num(p.y - radius - 1)
                << "\" font-size=\"7\">" << escape(text) << "</text>\n";
        }
    }
    out << "</g>\n";
}

}  // namespace

std::string render_svg(const graph& g, const embedding& e, const svg_options& opt) {
    if (g.edges.empty()) throw graph_error("cannot render a graph without edges");
    if (static_cast<int>(e.points.size()) != g.vertex_count)
        throw geometry_error("embedding has " + std::to_string(e.points.size()) + " points for " +
                             std::to_string(g.vertex_count) + " vertices");
    for (std::size_t i = 0; i < e.points.size(); ++i)
        if (!std::isfinite(e.points[i].x) || !std::isfinite(e.points[i].y))
            throw geometry_error("vertex " + std::to_string(i) + " has a nonfinite coordinate");
    if (!(opt.panel_size > 0.0)) throw error("panel size must be positive");

    bool zoom = opt.zoom_panels && opt.family && opt.family->kind == family_kind::fk;
    if (opt.family && opt.family->g.vertex_count != g.vertex_count)
        throw graph_error("family metadata does not match the graph");

    const double s = opt.panel_size;
    const int per_row = 6;
    int zoom_count = zoom ? static_cast<int>(opt.family->copies.size()) : 0;
    int zoom_rows = (zoom_count + per_row - 1) / per_row;
    double main_size = zoom ? 2.0 * s : s;
    double width = zoom ? per_row * s : main_size;
    double height = main_size + zoom_rows * s;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" data-format-version=\"" << svg_format_version
        << "\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
        << ' ' << num(height) << "\">\n";
    if (!opt.title.empty()) out << "<title>" << escape(opt.title) << "</title>\n";

    std::vector<int> all(g.vertex_count);
    for (int v = 0; v < g.vertex_count; ++v) all[v] = v;
    panel(out, g, e, all, (width - main_size) / 2.0, 0.0, main_size, opt.title.empty() ? "embedding" : opt.title,
          opt.vertex_labels && g.vertex_count <= 200);

    for (int j = 0; j < zoom_count; ++j) {
        const auto& c = opt.family->copies[j];
        std::vector<int> vs = c.u;
        vs.insert(vs.end(), c.v.begin(), c.v.end());
        vs.insert(vs.end(), c.w.begin(), c.w.end());
        double x0 = (j % per_row) * s, y0 = main_size + (j / per_row) * s;
        panel(out, g, e, vs, x0, y0, s, "copy " + std::to_string(j), opt.vertex_labels);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gcactus
