#include "gcactus/block_cut.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "gcactus/error.hpp"

namespace gcactus {

std::string to_string(block_kind k) {
    switch (k) {
        case block_kind::bridge: return "bridge";
        case block_kind::cycle: return "cycle";
        default: return "other";
    }
}

bool block_cut_tree::all_bridge_or_cycle() const {
    return std::none_of(blocks.begin(), blocks.end(), [](const block& b) { return b.kind == block_kind::other; });
}

namespace {

// Biconnected components as edge lists (Hopcroft-Tarjan with an explicit stack).
std::vector<std::vector<edge>> biconnected_edge_sets(const graph& g, const std::vector<std::vector<int>>& adj) {
    int n = g.vertex_count;
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<std::size_t> next(n, 0);
    std::vector<edge> estack;
    std::vector<std::vector<edge>> out;
    int timer = 0;
    for (int s = 0; s < n; ++s) {
        if (disc[s] != -1) continue;
        disc[s] = low[s] = timer++;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            if (next[v] < adj[v].size()) {
                int w = adj[v][next[v]++];
                if (disc[w] == -1) {
                    parent[w] = v;
                    disc[w] = low[w] = timer++;
                    estack.emplace_back(v, w);
                    stack.push_back(w);
                } else if (w != parent[v] && disc[w] < disc[v]) {
                    low[v] = std::min(low[v], disc[w]);
                    estack.emplace_back(v, w);
                }
                continue;
            }
            stack.pop_back();
            int p = parent[v];
            if (p < 0) continue;
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= disc[p]) {
                std::vector<edge> comp;
                while (true) {
                    edge e = estack.back();
                    estack.pop_back();
                    comp.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
                    if (e.first == p && e.second == v) break;
                }
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

block_kind classify(const std::vector<edge>& edges, std::size_t vertex_count, std::map<int, int>& deg) {
    if (edges.size() == 1) return block_kind::bridge;
    if (edges.size() != vertex_count) return block_kind::other;
    for (auto& [v, d] : deg)
        if (d != 2) return block_kind::other;
    return block_kind::cycle;
}

}  // namespace

block_cut_tree block_cut_decompose(const graph& g, int root) {
    if (root < 0 || root >= g.vertex_count) throw graph_error("root " + std::to_string(root) + " out of range");
    if (!is_connected(g)) throw graph_error("graph is disconnected");
    auto adj = adjacency(g);
    auto sets = biconnected_edge_sets(g, adj);

    int n = g.vertex_count;
    std::vector<std::vector<int>> raw_vertex_blocks(n);
    for (int b = 0; b < static_cast<int>(sets.size()); ++b) {
        std::set<int> vs;
        for (auto [a, c] : sets[b]) vs.insert(a), vs.insert(c);
        for (int v : vs) raw_vertex_blocks[v].push_back(b);
    }

    // Breadth-first over the block tree; block indices follow discovery order.
    block_cut_tree t;
    t.root = root;
    t.vertex_blocks.assign(n, {});
    t.child_blocks.assign(n, {});
    t.parent_vertex.assign(n, -1);
    t.parent_block.assign(n, -1);
    t.depth.assign(n, 0);
    std::vector<char> used(sets.size(), 0);
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int raw : raw_vertex_blocks[v]) {
            if (used[raw]) continue;
            used[raw] = 1;
            const auto& es = sets[raw];
            std::map<int, int> deg;
            std::map<int, std::vector<int>> local;
            for (auto [a, c] : es) {
                ++deg[a], ++deg[c];
                local[a].push_back(c);
                local[c].push_back(a);
            }
            block b;
            b.edges = es;
            b.entry = v;
            b.kind = classify(es, deg.size(), deg);
            if (b.kind == block_kind::cycle) {
                int prev = -1, cur = v;
                do {
                    b.vertices.push_back(cur);
                    auto nb = local[cur];
                    std::sort(nb.begin(), nb.end());
                    int nxt = (nb[0] == prev) ? nb[1] : nb[0];
                    if (prev == -1) nxt = nb[0];
                    prev = cur;
                    cur = nxt;
                } while (cur != v);
            } else if (b.kind == block_kind::bridge) {
                b.vertices = {v, es[0].first == v ? es[0].second : es[0].first};
            } else {
                for (auto& [x, d] : deg) b.vertices.push_back(x);
            }
            int id = static_cast<int>(t.blocks.size());
            t.child_blocks[v].push_back(id);
            for (auto& [x, d] : deg) {
                t.vertex_blocks[x].push_back(id);
                if (x == v) continue;
                t.parent_vertex[x] = v;
                t.parent_block[x] = id;
                t.depth[x] = t.depth[v] + 1;
                q.push(x);
            }
            t.blocks.push_back(std::move(b));
        }
    }
    for (int v = 0; v < n; ++v)
        if (t.vertex_blocks[v].size() >= 2) t.cutvertices.push_back(v);
    return t;
}

cactus_verdict is_christmas_cactus(const graph& g) {
    if (g.vertex_count == 0) return {false, "graph has no vertices"};
    if (!is_connected(g)) return {false, "graph is disconnected"};
    auto t = block_cut_decompose(g, 0);
    for (std::size_t i = 0; i < t.blocks.size(); ++i)
        if (t.blocks[i].kind == block_kind::other)
            return {false, "block " + std::to_string(i) + " is neither a bridge nor a simple cycle"};
    for (int v : t.cutvertices)
        if (t.vertex_blocks[v].size() > 2)
            return {false, "cutvertex " + std::to_string(v) + " lies in " +
                               std::to_string(t.vertex_blocks[v].size()) + " blocks"};
    return {true, ""};
}

}  // namespace gcactus
