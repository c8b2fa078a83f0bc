#pragma once

#include <cmath>
#include <vector>

#include "gcactus/graph.hpp"

namespace gcactus {

struct point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const point&) const = default;
};

inline point operator+(point a, point b) { return {a.x + b.x, a.y + b.y}; }
inline point operator-(point a, point b) { return {a.x - b.x, a.y - b.y}; }
inline point operator*(double s, point a) { return {s * a.x, s * a.y}; }
inline double dot(point a, point b) { return a.x * b.x + a.y * b.y; }
inline double cross(point a, point b) { return a.x * b.y - a.y * b.x; }
inline double norm(point a) { return std::hypot(a.x, a.y); }
inline double dist(point a, point b) { return norm(a - b); }
inline point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct embedding {
    std::vector<point> points;
    bool operator==(const embedding&) const = default;
};

// Throws geometry_error on size mismatch, nonfinite coordinates or
// coincident points.
void validate_embedding(const graph& g, const embedding& e);

// Rotation + uniform scale + translation: p -> scale * R(angle) p + shift.
struct similarity {
    double angle = 0.0;
    double scale = 1.0;
    point shift{};
    point apply(point p) const;
};

embedding transform(const embedding& e, const similarity& s);

// Similarity that moves point a to the origin and point b to (1, 0).
embedding normalize_gauge(const embedding& e, int a = 0, int b = 1);

}  // namespace gcactus
