#include "gcactus/graph.hpp"

#include <algorithm>
#include <string>

#include "gcactus/error.hpp"

namespace gcactus {

bool graph::has_edge(int a, int b) const {
    edge e{std::min(a, b), std::max(a, b)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

graph build_graph(int vertex_count, const std::vector<edge>& edges, std::vector<std::string> labels) {
    if (vertex_count < 0) throw graph_error("negative vertex count");
    if (!labels.empty() && static_cast<int>(labels.size()) != vertex_count)
        throw graph_error("expected " + std::to_string(vertex_count) + " labels, got " +
                          std::to_string(labels.size()));
    graph g;
    g.vertex_count = vertex_count;
    g.labels = std::move(labels);
    g.edges.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
            throw graph_error("edge " + std::to_string(a) + " " + std::to_string(b) + ": endpoint out of range");
        if (a == b) throw graph_error("edge " + std::to_string(a) + " " + std::to_string(b) + ": self-loop");
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(g.edges.begin(), g.edges.end());
    auto dup = std::adjacent_find(g.edges.begin(), g.edges.end());
    if (dup != g.edges.end())
        throw graph_error("edge " + std::to_string(dup->first) + " " + std::to_string(dup->second) + ": duplicate");
    return g;
}

std::vector<std::vector<int>> adjacency(const graph& g) {
    std::vector<std::vector<int>> adj(g.vertex_count);
    for (auto [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

bool is_connected(const graph& g) {
    if (g.vertex_count <= 1) return true;
    auto adj = adjacency(g);
    std::vector<char> seen(g.vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.vertex_count;
}

}  // namespace gcactus
