#include "gcactus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcactus/error.hpp"

namespace gcactus {

void validate_embedding(const graph& g, const embedding& e) {
    if (static_cast<int>(e.points.size()) != g.vertex_count)
        throw geometry_error("embedding has " + std::to_string(e.points.size()) + " points for " +
                             std::to_string(g.vertex_count) + " vertices");
    for (std::size_t i = 0; i < e.points.size(); ++i)
        if (!std::isfinite(e.points[i].x) || !std::isfinite(e.points[i].y))
            throw geometry_error("vertex " + std::to_string(i) + " has a nonfinite coordinate");
    // Sorting finds coincident points without the quadratic scan.
    std::vector<int> order(e.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& p = e.points[a];
        const auto& q = e.points[b];
        return p.x != q.x ? p.x < q.x : p.y < q.y;
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (e.points[order[i]] == e.points[order[i - 1]])
            throw geometry_error("vertices " + std::to_string(std::min(order[i], order[i - 1])) + " and " +
                                 std::to_string(std::max(order[i], order[i - 1])) + " coincide");
}

point similarity::apply(point p) const {
    double c = std::cos(angle), s = std::sin(angle);
    return point{scale * (c * p.x - s * p.y), scale * (s * p.x + c * p.y)} + shift;
}

embedding transform(const embedding& e, const similarity& s) {
    embedding out;
    out.points.reserve(e.points.size());
    for (auto p : e.points) out.points.push_back(s.apply(p));
    return out;
}

embedding normalize_gauge(const embedding& e, int a, int b) {
    if (a < 0 || b < 0 || a >= static_cast<int>(e.points.size()) || b >= static_cast<int>(e.points.size()) || a == b)
        throw geometry_error("gauge vertices out of range");
    point d = e.points[b] - e.points[a];
    double len = norm(d);
    if (!(len > 0.0)) throw geometry_error("gauge vertices coincide");
    embedding out;
    out.points.reserve(e.points.size());
    for (auto p : e.points) {
        point q = p - e.points[a];
        out.points.push_back({dot(q, d) / (len * len), cross(d, q) / (len * len)});
    }
    out.points[a] = {0.0, 0.0};
    out.points[b] = {1.0, 0.0};
    return out;
}

}  // namespace gcactus
