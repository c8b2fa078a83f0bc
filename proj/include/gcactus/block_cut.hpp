#pragma once

#include <string>
#include <vector>

#include "gcactus/graph.hpp"

namespace gcactus {

enum class block_kind { bridge, cycle, other };

std::string to_string(block_kind k);

struct block {
    block_kind kind = block_kind::other;
    // For a cycle: cyclic order starting at the entry vertex, continuing
    // towards the smaller-indexed of its two block neighbours.
    // For a bridge: {entry, far end}. For other: sorted.
    std::vector<int> vertices;
    std::vector<edge> edges;  // normalized, sorted
    int entry = -1;           // vertex of the block closest to the root
};

// Blocks of a connected graph, rooted at a vertex.
struct block_cut_tree {
    int root = 0;
    std::vector<block> blocks;
    std::vector<int> cutvertices;                // sorted
    std::vector<std::vector<int>> vertex_blocks;  // blocks containing each vertex
    std::vector<std::vector<int>> child_blocks;   // blocks whose entry is the vertex
    std::vector<int> parent_vertex;               // entry of the vertex's parent block; -1 at root
    std::vector<int> parent_block;                // -1 at root
    std::vector<int> depth;                       // number of blocks between root and vertex

    bool all_bridge_or_cycle() const;
};

// Throws graph_error when g is disconnected or root is out of range.
block_cut_tree block_cut_decompose(const graph& g, int root = 0);

struct cactus_verdict {
    bool ok = false;
    std::string reason;  // first violated condition; empty when ok
};

cactus_verdict is_christmas_cactus(const graph& g);

}  // namespace gcactus
