#include "gcactus/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "gcactus/error.hpp"

namespace gcactus {

namespace {

const char* graph_magic = "greedy-cactus-graph";
const char* embedding_magic = "greedy-cactus-embedding";

struct line_t {
    int number = 0;
    std::vector<std::string> fields;
    std::string rest;  // text after the first two fields, for labels
};

// Non-blank, non-comment lines split on whitespace.
std::vector<line_t> tokenize(const std::string& text) {
    std::vector<line_t> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') continue;
        line_t l;
        l.number = number;
        std::istringstream ls(raw);
        std::string tok;
        while (ls >> tok) l.fields.push_back(tok);
        std::size_t pos = first;
        for (int skip = 0; skip < 2 && pos != std::string::npos; ++skip) {
            pos = raw.find_first_of(" \t", pos);
            if (pos != std::string::npos) pos = raw.find_first_not_of(" \t", pos);
        }
        if (pos != std::string::npos) l.rest = raw.substr(pos);
        out.push_back(std::move(l));
    }
    return out;
}

long long parse_int(const line_t& l, const std::string& field, const std::string& s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error(l.number, field, "expected an integer, got '" + s + "'");
    return v;
}

int parse_index(const line_t& l, const std::string& field, const std::string& s, int n) {
    long long v = parse_int(l, field, s);
    if (v < 0 || v >= n)
        throw parse_error(l.number, field,
                          "vertex " + s + " out of range [0, " + std::to_string(n) + ")");
    return static_cast<int>(v);
}

double parse_double(const line_t& l, const std::string& field, const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error(l.number, field, "expected a number, got '" + s + "'");
    if (!std::isfinite(v)) throw parse_error(l.number, field, "nonfinite coordinate '" + s + "'");
    return v;
}

void expect_fields(const line_t& l, std::size_t count) {
    if (l.fields.size() != count)
        throw parse_error(l.number, l.fields[0],
                          "expected " + std::to_string(count - 1) + " values, got " +
                              std::to_string(l.fields.size() - 1));
}

// Header line, then the vertex count line. Returns the vertex count.
int read_preamble(const std::vector<line_t>& lines, const char* magic, int version) {
    if (lines.empty()) throw parse_error(1, "header", "empty document");
    const auto& h = lines[0];
    if (h.fields.size() != 2 || h.fields[0] != magic)
        throw parse_error(h.number, "header", std::string("expected '") + magic + " <version>'");
    if (parse_int(h, "header", h.fields[1]) != version)
        throw parse_error(h.number, "header", "unsupported version " + h.fields[1]);
    if (lines.size() < 2 || lines[1].fields[0] != "vertices")
        throw parse_error(lines.size() < 2 ? h.number + 1 : lines[1].number, "vertices",
                          "expected 'vertices <count>'");
    const auto& v = lines[1];
    expect_fields(v, 2);
    long long n = parse_int(v, "vertices", v.fields[1]);
    if (n < 0 || n > 100000000) throw parse_error(v.number, "vertices", "invalid count " + v.fields[1]);
    return static_cast<int>(n);
}

std::string join(const std::vector<int>& xs) {
    std::string s;
    for (int x : xs) s += " " + std::to_string(x);
    return s;
}

std::string graph_body(const graph& g) {
    std::ostringstream out;
    out << graph_magic << ' ' << graph_format_version << '\n';
    out << "vertices " << g.vertex_count << '\n';
    for (auto [a, b] : g.edges) out << "edge " << a << ' ' << b << '\n';
    for (std::size_t i = 0; i < g.labels.size(); ++i) out << "label " << i << ' ' << g.labels[i] << '\n';
    return out.str();
}

}  // namespace

std::string serialize_graph(const graph& g) { return graph_body(g); }

std::string serialize_graph(const family_instance& f) {
    std::string s = graph_body(f.g);
    s += "family " + to_string(f.kind) + " " + std::to_string(f.k) + "\n";
    for (std::size_t j = 0; j < f.copies.size(); ++j) {
        const auto& c = f.copies[j];
        s += "copy " + std::to_string(j) + " u" + join(c.u) + "\n";
        s += "copy " + std::to_string(j) + " v" + join(c.v) + "\n";
        s += "copy " + std::to_string(j) + " w" + join(c.w) + "\n";
    }
    if (!f.cycle_vertices.empty()) s += "cycle" + join(f.cycle_vertices) + "\n";
    return s;
}

graph_document parse_graph(const std::string& text) {
    auto lines = tokenize(text);
    int n = read_preamble(lines, graph_magic, graph_format_version);

    std::vector<edge> edges;
    std::set<edge> seen;
    std::vector<std::string> labels;
    std::vector<bool> labelled(n, false);
    int label_count = 0;
    const line_t* family_line = nullptr;
    family_instance f;

    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto& kw = l.fields[0];
        if (kw == "edge") {
            expect_fields(l, 3);
            int a = parse_index(l, "edge", l.fields[1], n);
            int b = parse_index(l, "edge", l.fields[2], n);
            if (a == b) throw parse_error(l.number, "edge", "self-loop at " + l.fields[1]);
            edge e{std::min(a, b), std::max(a, b)};
            if (!seen.insert(e).second)
                throw parse_error(l.number, "edge", "duplicate edge " + std::to_string(e.first) + " " +
                                                        std::to_string(e.second));
            edges.push_back(e);
        } else if (kw == "label") {
            if (l.fields.size() < 3) throw parse_error(l.number, "label", "expected 'label <vertex> <text>'");
            int v = parse_index(l, "label", l.fields[1], n);
            if (labelled[v]) throw parse_error(l.number, "label", "vertex " + l.fields[1] + " labelled twice");
            if (labels.empty()) labels.resize(n);
            labels[v] = l.rest;
            labelled[v] = true;
            ++label_count;
        } else if (kw == "family") {
            expect_fields(l, 3);
            if (family_line) throw parse_error(l.number, "family", "repeated family line");
            try {
                f.kind = family_kind_from_string(l.fields[1]);
            } catch (const error& e) {
                throw parse_error(l.number, "family", e.what());
            }
            long long k = parse_int(l, "family", l.fields[2]);
            if (k < 1 || k > 1000) throw parse_error(l.number, "family", "invalid k " + l.fields[2]);
            f.k = static_cast<int>(k);
            int expect = f.kind == family_kind::fk ? fk_vertex_count(f.k) : gk_vertex_count(f.k);
            if (n != expect)
                throw parse_error(l.number, "family",
                                  "vertex count " + std::to_string(n) + " does not match " + l.fields[1] + " k=" +
                                      l.fields[2] + " (expects " + std::to_string(expect) + ")");
            family_line = &l;
        } else if (kw == "copy") {
            if (!family_line) throw parse_error(l.number, "copy", "copy map before the family line");
            if (l.fields.size() < 3) throw parse_error(l.number, "copy", "expected 'copy <j> <u|v|w> ...'");
            long long j = parse_int(l, "copy", l.fields[1]);
            if (j < 0 || j > n) throw parse_error(l.number, "copy", "invalid copy index " + l.fields[1]);
            if (static_cast<std::size_t>(j) >= f.copies.size()) {
                if (static_cast<std::size_t>(j) != f.copies.size())
                    throw parse_error(l.number, "copy", "copy " + l.fields[1] + " out of order");
                f.copies.emplace_back();
            }
            std::vector<int> ids;
            for (std::size_t t = 3; t < l.fields.size(); ++t) ids.push_back(parse_index(l, "copy", l.fields[t], n));
            auto& c = f.copies[j];
            const auto& which = l.fields[2];
            std::vector<int>* slot = which == "u" ? &c.u : which == "v" ? &c.v : which == "w" ? &c.w : nullptr;
            if (!slot) throw parse_error(l.number, "copy", "unknown vertex class '" + which + "'");
            if (!slot->empty()) throw parse_error(l.number, "copy", "repeated " + which + " map for copy " + l.fields[1]);
            *slot = std::move(ids);
        } else if (kw == "cycle") {
            if (!family_line) throw parse_error(l.number, "cycle", "cycle map before the family line");
            if (!f.cycle_vertices.empty()) throw parse_error(l.number, "cycle", "repeated cycle line");
            for (std::size_t t = 1; t < l.fields.size(); ++t)
                f.cycle_vertices.push_back(parse_index(l, "cycle", l.fields[t], n));
        } else {
            throw parse_error(l.number, kw, "unknown record '" + kw + "'");
        }
    }

    if (label_count != 0 && label_count != n) {
        int last = lines.back().number;
        throw parse_error(last, "label", "labels given for " + std::to_string(label_count) + " of " +
                                             std::to_string(n) + " vertices");
    }

    graph_document doc;
    try {
        doc.g = build_graph(n, edges, labels);
    } catch (const graph_error& e) {
        throw parse_error(lines.back().number, "edge", e.what());
    }
    if (family_line) {
        f.g = doc.g;
        for (const auto& c : f.copies) f.roots.push_back(c.u.empty() ? -1 : c.u[0]);
        try {
            validate_family(f);
        } catch (const graph_error& e) {
            throw parse_error(family_line->number, "family", e.what());
        }
        doc.family = std::move(f);
    }
    return doc;
}

std::string serialize_embedding(const embedding& e) {
    std::string s = std::string(embedding_magic) + " " + std::to_string(embedding_format_version) + "\n";
    s += "vertices " + std::to_string(e.points.size()) + "\n";
    char buf[96];
    for (const auto& p : e.points) {
        std::snprintf(buf, sizeof buf, "point %.17g %.17g\n", p.x, p.y);
        s += buf;
    }
    return s;
}

embedding parse_embedding(const std::string& text) {
    auto lines = tokenize(text);
    int n = read_preamble(lines, embedding_magic, embedding_format_version);
    embedding e;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.fields[0] != "point") throw parse_error(l.number, l.fields[0], "unknown record '" + l.fields[0] + "'");
        expect_fields(l, 3);
        if (static_cast<int>(e.points.size()) == n)
            throw parse_error(l.number, "point", "more points than the declared " + std::to_string(n));
        e.points.push_back({parse_double(l, "point", l.fields[1]), parse_double(l, "point", l.fields[2])});
    }
    if (static_cast<int>(e.points.size()) != n)
        throw parse_error(lines.back().number, "vertices",
                          "declared " + std::to_string(n) + " points, found " + std::to_string(e.points.size()));
    return e;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw error("read failed for '" + path + "'");
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    std::random_device rd;
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw error("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw error("cannot rename onto '" + path + "'");
    }
}

}  // namespace gcactus
