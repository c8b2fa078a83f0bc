#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcactus/graph.hpp"

namespace gcactus {

enum class family_kind { gk, fk };

std::string to_string(family_kind k);
family_kind family_kind_from_string(const std::string& s);

// Vertex indices of one G_k copy: u_0..u_{k+1}, v_1..v_k, w_2..w_{k+1}.
struct copy_map {
    std::vector<int> u;  // size k+2, u[i] = u_i
    std::vector<int> v;  // size k,   v[i-1] = v_i
    std::vector<int> w;  // size k,   w[i-2] = w_i

    int u_at(int i) const { return u.at(i); }
    int v_at(int i) const { return v.at(i - 1); }
    int w_at(int i) const { return w.at(i - 2); }
    bool operator==(const copy_map&) const = default;
};

struct family_instance {
    graph g;
    int k = 1;
    family_kind kind = family_kind::gk;
    std::vector<copy_map> copies;
    std::vector<int> cycle_vertices;  // fk only: c_0..c_30
    std::vector<int> roots;           // per copy, its u_0

    // u_0 for gk, c_30 for fk.
    int default_root() const;
    bool operator==(const family_instance&) const = default;
};

inline constexpr int fk_cycle_length = 31;
inline constexpr int fk_copy_count = 30;

int gk_vertex_count(int k);
int fk_vertex_count(int k);

family_instance gen_gk(int k);
family_instance gen_fk(int k);

// Random Christmas cactus on n vertices: grows by attaching bridges or
// cycles of 3..8 vertices at vertices that still lie in fewer than two blocks.
graph random_christmas_cactus(int n, std::uint64_t seed);

// Checks counts, index-map coverage and injectivity, and that the edge set
// matches the generator for (kind, k) under the given maps. Throws graph_error.
void validate_family(const family_instance& f);

}  // namespace gcactus
