#pragma once

#include <vector>

#include "gcactus/block_cut.hpp"
#include "gcactus/geometry.hpp"
#include "gcactus/graph.hpp"
#include "gcactus/verify.hpp"

namespace gcactus {

struct embedder_params {
    double wedge_shrink = 0.9;   // lambda: child wedge as a fraction of its free cone
    double radial_step = 0.9;    // rho: bridge length / leaf-cycle size as a fraction of the budget
    double arc_flatness = 0.8;   // alpha: angular spread of a cycle as a fraction of its wedge
    double cycle_scale = 0.5;    // diameter of a cycle with heavy vertices, fraction of the budget
    double leaf_weight = 0.3;    // arc share of a cycle vertex without children
    double sibling_room = 0.5;   // subtree budget as a fraction of the distance to heavy siblings
    double shrink = 0.7;         // per-iteration budget factor for vertices on violating pairs
    int shrink_iterations = 200;
    int tune_evaluations = 20000;
    int max_retries = 4;
    double decay = 0.8;          // applied to lambda and alpha per retry
    double tolerance = default_tolerance;

    void validate() const;
};

struct wedge {
    double direction = 0.0;   // radians
    double half_angle = 0.0;  // radians
    int depth = 0;
    double scale = 0.0;       // size budget for the vertex's descendants
};

struct wedge_plan {
    int root = 0;
    std::vector<wedge> wedges;  // per vertex; the cone its child blocks occupy
};

// Nominal plan (all budget multipliers 1). Throws embed_error on OTHER blocks.
wedge_plan assign_wedges(const graph& g, const block_cut_tree& t,
                         const embedder_params& p);

struct embed_result {
    embedding points;
    int retries = 0;            // parameter decays used
    int shrink_iterations = 0;  // total over all attempts
    int tune_evaluations = 0;
    double min_relative_margin = 0.0;
    double aspect_ratio = 1.0;
    bool certified = false;
    int root = 0;  // root actually used
};

// Same search, but returns the best layout found (largest minimum margin)
// whether or not it certifies. Throws embed_error for non-cactus input.
embed_result layout_christmas_cactus(const graph& g, const embedder_params& p = {}, int root = 0);

// Pass as the root to try roots in order of increasing block-tree height
// until one certifies.
inline constexpr int auto_root = -1;

// Returns only embeddings certified by verify_greedy at p.tolerance.
// Throws embed_error for non-Christmas-cactus input or when every retry fails.
embed_result embed_christmas_cactus(const graph& g, const embedder_params& p = {},
                                    int root = 0);

// Vertex minimising the block-tree height; ties go to the smaller index.
int central_root(const graph& g);

// All vertices ordered by block-tree height, then index.
std::vector<int> roots_by_height(const graph& g);

}  // namespace gcactus
