#include "gcactus/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcactus/error.hpp"

namespace gcactus {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double rad_to_deg = 180.0 / pi;

double angle_between_deg(point a, point b) { return std::atan2(std::abs(cross(a, b)), dot(a, b)) * rad_to_deg; }

const copy_map& copy_at(const family_instance& f, int copy) {
    if (copy < 0 || copy >= static_cast<int>(f.copies.size()))
        throw graph_error("copy " + std::to_string(copy) + " out of range");
    return f.copies[copy];
}

void check_points(const family_instance& f, const embedding& e) {
    if (static_cast<int>(e.points.size()) != f.g.vertex_count)
        throw geometry_error("embedding has " + std::to_string(e.points.size()) + " points for " +
                             std::to_string(f.g.vertex_count) + " vertices");
}

point vec(const embedding& e, int from, int to) {
    point d = e.points[to] - e.points[from];
    if (!(norm(d) > 0.0))
        throw geometry_error("zero-length vector between vertices " + std::to_string(from) + " and " +
                             std::to_string(to));
    return d;
}

double ratio(const embedding& e, int a, int b, int c, int d) {
    return norm(vec(e, a, b)) / norm(vec(e, c, d));
}

}  // namespace

double copy_max_angle(const family_instance& f, int copy, const embedding& e) {
    check_points(f, e);
    const auto& m = copy_at(f, copy);
    std::vector<point> vs;
    for (int i = 0; i <= f.k; ++i) vs.push_back(vec(e, m.u_at(i), m.u_at(i + 1)));
    for (int i = 0; i < f.k; ++i) vs.push_back(vec(e, m.u_at(i), m.v_at(i + 1)));
    for (int i = 1; i <= f.k; ++i) vs.push_back(vec(e, m.v_at(i), m.w_at(i + 1)));
    double worst = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) worst = std::max(worst, angle_between_deg(vs[i], vs[j]));
    return worst;
}

std::vector<halving_row> halving_check(const family_instance& f, int copy, const embedding& e) {
    check_points(f, e);
    const auto& m = copy_at(f, copy);
    std::vector<halving_row> rows;
    for (int i = 0; i < f.k; ++i) {
        int a = m.u_at(i + 2), b = m.u_at(i + 1), c = m.v_at(i + 1), y = m.u_at(i);
        rows.push_back({i, ratio(e, b, a, y, b), ratio(e, b, c, b, y), ratio(e, a, b, b, c)});
    }
    return rows;
}

diagnostics_report narrow_copies(const family_instance& f, const embedding& e) {
    diagnostics_report rep;
    for (int c = 0; c < static_cast<int>(f.copies.size()); ++c) {
        copy_report r;
        r.copy = c;
        r.max_angle_deg = copy_max_angle(f, c, e);
        r.narrow = r.max_angle_deg < narrow_angle_deg;
        r.halving = halving_check(f, c, e);
        if (r.narrow) rep.narrow_copies.push_back(c);
        rep.copies.push_back(std::move(r));
    }
    return rep;
}

angle_report angle_diagnostics(point a, point b, point d) {
    if (a == b || a == d || b == d) throw geometry_error("angle diagnostics need distinct points");
    angle_report r;
    r.greedy_both_ways = dist(b, d) < dist(a, d) && dist(b, a) < dist(d, a);
    r.angle_at_b = angle_between_deg(a - b, d - b);
    return r;
}

std::vector<constant_row> lemma_constants_check() {
    const double eps = 12.0 * pi / 180.0;
    const double deg60 = pi / 3.0;
    std::vector<constant_row> rows{
        {"sin(12)/sin(36)", std::sin(eps) / std::sin(deg60 - 2.0 * eps), 0.35372, 0.36, false},
        {"sin(72)/sin(48)", std::sin(deg60 + eps) / std::sin(deg60 - eps), 1.27974, 1.28, false},
        {"0.36*1.28", 0.36 * 1.28, 0.4608, 0.461, false},
    };
    for (auto& r : rows) r.below_bound = r.value < r.bound;
    return rows;
}

}  // namespace gcactus
