#include "gcactus/families.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gcactus/error.hpp"

namespace gcactus {

std::string to_string(family_kind k) { return k == family_kind::gk ? "gk" : "fk"; }

family_kind family_kind_from_string(const std::string& s) {
    if (s == "gk") return family_kind::gk;
    if (s == "fk") return family_kind::fk;
    throw graph_error("unknown family kind '" + s + "' (expected gk or fk)");
}

int family_instance::default_root() const { return kind == family_kind::gk ? roots.at(0) : cycle_vertices.at(30); }

int gk_vertex_count(int k) { return 3 * k + 2; }
int fk_vertex_count(int k) { return 90 * k + 61; }

namespace {

void require_k(int k) {
    if (k < 1) throw graph_error("k must be at least 1, got " + std::to_string(k));
}

// Edges of one copy under its index map.
void copy_edges(const copy_map& m, int k, std::vector<edge>& out) {
    for (int i = 0; i <= k; ++i) out.emplace_back(m.u_at(i), m.u_at(i + 1));
    for (int i = 0; i < k; ++i) {
        out.emplace_back(m.u_at(i), m.v_at(i + 1));
        out.emplace_back(m.u_at(i + 1), m.v_at(i + 1));
    }
    for (int i = 1; i <= k; ++i) out.emplace_back(m.v_at(i), m.w_at(i + 1));
}

// Allocates u_1.., v.., w.. from `next`, with u_0 given.
copy_map allocate_copy(int k, int u0, int& next, std::vector<std::string>& labels, const std::string& suffix) {
    copy_map m;
    m.u.push_back(u0);
    for (int i = 1; i <= k + 1; ++i) {
        m.u.push_back(next++);
        labels.push_back("u" + std::to_string(i) + suffix);
    }
    for (int i = 1; i <= k; ++i) {
        m.v.push_back(next++);
        labels.push_back("v" + std::to_string(i) + suffix);
    }
    for (int i = 2; i <= k + 1; ++i) {
        m.w.push_back(next++);
        labels.push_back("w" + std::to_string(i) + suffix);
    }
    return m;
}

}  // namespace

family_instance gen_gk(int k) {
    require_k(k);
    family_instance f;
    f.k = k;
    f.kind = family_kind::gk;
    std::vector<std::string> labels{"u0"};
    int next = 1;
    f.copies.push_back(allocate_copy(k, 0, next, labels, ""));
    f.roots = {0};
    std::vector<edge> es;
    copy_edges(f.copies[0], k, es);
    f.g = build_graph(next, es, labels);
    return f;
}

family_instance gen_fk(int k) {
    require_k(k);
    family_instance f;
    f.k = k;
    f.kind = family_kind::fk;
    std::vector<std::string> labels;
    std::vector<edge> es;
    for (int j = 0; j < fk_cycle_length; ++j) {
        f.cycle_vertices.push_back(j);
        labels.push_back("c" + std::to_string(j));
        es.emplace_back(j, (j + 1) % fk_cycle_length);
    }
    int next = fk_cycle_length;
    for (int j = 0; j < fk_copy_count; ++j) {
        f.copies.push_back(allocate_copy(k, j, next, labels, "." + std::to_string(j)));
        f.roots.push_back(j);
        copy_edges(f.copies.back(), k, es);
    }
    f.g = build_graph(next, es, labels);
    return f;
}

graph random_christmas_cactus(int n, std::uint64_t seed) {
    if (n < 1) throw graph_error("random cactus needs at least one vertex");
    std::mt19937_64 rng(seed);
    auto pick = [&](int m) { return static_cast<int>(rng() % static_cast<std::uint64_t>(m)); };
    std::vector<int> blocks_at{0};
    std::vector<edge> es;
    int count = 1;
    while (count < n) {
        std::vector<int> open;
        for (int v = 0; v < count; ++v)
            if (blocks_at[v] < 2) open.push_back(v);
        int at = open[pick(static_cast<int>(open.size()))];
        int room = n - count;
        int size = 2;
        if (room >= 2 && pick(2) == 0) size = 3 + pick(std::min(6, room - 1));
        ++blocks_at[at];
        int prev = at;
        for (int i = 1; i < size; ++i) {
            es.emplace_back(prev, count);
            blocks_at.push_back(1);
            prev = count++;
        }
        if (size > 2) es.emplace_back(prev, at);
    }
    return build_graph(n, es);
}

void validate_family(const family_instance& f) {
    if (f.k < 1) throw graph_error("family k must be at least 1");
    bool fk = f.kind == family_kind::fk;
    int expect_n = fk ? fk_vertex_count(f.k) : gk_vertex_count(f.k);
    if (f.g.vertex_count != expect_n)
        throw graph_error("vertex count " + std::to_string(f.g.vertex_count) + " does not match " + to_string(f.kind) +
                          " k=" + std::to_string(f.k) + " (expects " + std::to_string(expect_n) + ")");
    std::size_t copies = fk ? fk_copy_count : 1;
    if (f.copies.size() != copies || f.roots.size() != copies)
        throw graph_error("expected " + std::to_string(copies) + " copies");
    if (fk != (f.cycle_vertices.size() == static_cast<std::size_t>(fk_cycle_length)) ||
        (!fk && !f.cycle_vertices.empty()))
        throw graph_error("cycle vertex list does not match the family kind");

    std::vector<int> hits(f.g.vertex_count, 0);
    auto hit = [&](int v) {
        if (v < 0 || v >= f.g.vertex_count) throw graph_error("index map entry " + std::to_string(v) + " out of range");
        ++hits[v];
    };
    std::vector<edge> es;
    for (int j = 0; j < fk_cycle_length && fk; ++j) {
        hit(f.cycle_vertices[j]);
        es.emplace_back(f.cycle_vertices[j], f.cycle_vertices[(j + 1) % fk_cycle_length]);
    }
    for (std::size_t c = 0; c < copies; ++c) {
        const auto& m = f.copies[c];
        if (m.u.size() != static_cast<std::size_t>(f.k + 2) || m.v.size() != static_cast<std::size_t>(f.k) ||
            m.w.size() != static_cast<std::size_t>(f.k))
            throw graph_error("copy " + std::to_string(c) + " index map has the wrong size");
        if (m.u[0] != f.roots[c]) throw graph_error("copy " + std::to_string(c) + " root is not its u0");
        if (fk && m.u[0] != f.cycle_vertices[c])
            throw graph_error("copy " + std::to_string(c) + " is not attached to cycle vertex " + std::to_string(c));
        if (!fk) hit(m.u[0]);
        for (std::size_t i = 1; i < m.u.size(); ++i) hit(m.u[i]);
        for (int v : m.v) hit(v);
        for (int w : m.w) hit(w);
        copy_edges(m, f.k, es);
    }
    for (int v = 0; v < f.g.vertex_count; ++v)
        if (hits[v] != 1) throw graph_error("index maps are not a bijection at vertex " + std::to_string(v));
    for (auto& e : es)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(es.begin(), es.end());
    if (es != f.g.edges) throw graph_error("edge set does not match the " + to_string(f.kind) + " construction");
}

}  // namespace gcactus
