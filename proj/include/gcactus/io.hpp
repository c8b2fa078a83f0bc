#pragma once

#include <optional>
#include <string>

#include "gcactus/families.hpp"
#include "gcactus/geometry.hpp"
#include "gcactus/graph.hpp"

namespace gcactus {

inline constexpr int graph_format_version = 1;
inline constexpr int embedding_format_version = 1;

struct graph_document {
    graph g;
    std::optional<family_instance> family;
    bool operator==(const graph_document&) const = default;
};

std::string serialize_graph(const graph& g);
std::string serialize_graph(const family_instance& f);
// Throws parse_error with line and field context.
graph_document parse_graph(const std::string& text);

std::string serialize_embedding(const embedding& e);
embedding parse_embedding(const std::string& text);

std::string read_file(const std::string& path);
// Writes to a sibling temporary and renames over the target.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gcactus
