#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gcactus/geometry.hpp"
#include "gcactus/graph.hpp"

namespace gcactus {

enum class verdict { greedy, violated };

const char* to_string(verdict v);

inline constexpr double default_tolerance = 1e-9;

struct greedy_certificate {
    verdict result = verdict::violated;
    int vertex_count = 0;
    // Row-major n x n; margins[s * n + t] = (|st| - min_v |vt|) / |st|,
    // v ranging over neighbours of s. Diagonal entries are +infinity.
    std::vector<double> margins;
    std::pair<int, int> worst_pair{-1, -1};
    double min_relative_margin = 0.0;
    double aspect_ratio = 1.0;
    double tolerance = default_tolerance;

    double margin(int s, int t) const { return margins[static_cast<std::size_t>(s) * vertex_count + t]; }
    bool greedy() const { return result == verdict::greedy; }
};

// All ordered pairs. threads > 1 partitions the work by target vertex;
// the result does not depend on the partition.
greedy_certificate verify_greedy(const graph& g, const embedding& e,
                                 double tolerance = default_tolerance,
                                 int threads = 1);

// Minimum relative margin and its pair without storing the full table.
// No validation: callers guarantee distinct finite points.
struct margin_summary {
    double min_relative_margin = 0.0;
    std::pair<int, int> worst_pair{-1, -1};
};
margin_summary min_relative_margin(const std::vector<std::vector<int>>& adj,
                                   const std::vector<point>& pts);

// Independent check: for every target t, every vertex must reach t in the
// digraph of strictly distance-decreasing edges.
verdict verify_greedy_oracle(const graph& g, const embedding& e);

struct greedy_route {
    bool delivered = false;
    std::vector<int> path;  // starts at s; ends at t when delivered
    int stuck = -1;         // vertex without a strictly closer neighbour
};

// Throws graph_error when s == t.
greedy_route greedy_path(const graph& g, const embedding& e, int s, int t);

// Longest over shortest edge. Throws graph_error on an edgeless graph.
double aspect_ratio(const graph& g, const embedding& e);

}  // namespace gcactus
