#pragma once

#include <string>

#include "gcactus/families.hpp"
#include "gcactus/geometry.hpp"
#include "gcactus/graph.hpp"

namespace gcactus {

inline constexpr int svg_format_version = 1;

struct svg_options {
    const family_instance* family = nullptr;  // enables per-copy zoom panels for fk
    bool zoom_panels = true;
    bool vertex_labels = true;
    double panel_size = 240.0;
    std::string title;
};

// Throws graph_error on an edgeless graph, geometry_error on nonfinite points.
std::string render_svg(const graph& g, const embedding& e, const svg_options& opt = {});

}  // namespace gcactus
