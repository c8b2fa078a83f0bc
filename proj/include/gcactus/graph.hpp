#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gcactus {

using edge = std::pair<int, int>;

// Undirected simple graph. Edges are stored once with first < second, sorted.
struct graph {
    int vertex_count = 0;
    std::vector<edge> edges;
    std::vector<std::string> labels;  // empty, or one tag per vertex

    bool has_edge(int a, int b) const;
    bool operator==(const graph&) const = default;
};

// Validates and normalizes. Throws graph_error on out-of-range endpoints,
// self-loops, duplicate edges or a label list of the wrong length.
graph build_graph(int vertex_count, const std::vector<edge>& edges,
                  std::vector<std::string> labels = {});

std::vector<std::vector<int>> adjacency(const graph& g);

bool is_connected(const graph& g);

}  // namespace gcactus
