#include "gcactus/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "gcactus/diagnostics.hpp"
#include "gcactus/error.hpp"
#include "gcactus/families.hpp"
#include "gcactus/io.hpp"

namespace gcactus {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void fill_monitors(experiment_row& row, const family_instance& f, const embedding& e) {
    auto report = narrow_copies(f, e);
    row.narrow_copies = static_cast<int>(report.narrow_copies.size());
    row.max_halving_ratio = 0.0;
    for (int c : report.narrow_copies)
        for (const auto& h : report.copies[c].halving) row.max_halving_ratio = std::max(row.max_halving_ratio, h.r);
}

}  // namespace

experiment_row experiment_for_k(int k, const experiment_config& cfg, std::vector<embedding>* certified) {
    auto start = std::chrono::steady_clock::now();
    auto f = gen_fk(k);
    experiment_row row;
    row.k = k;
    row.n = f.g.vertex_count;
    row.bound = std::ldexp(1.0, k);

    auto layout = layout_christmas_cactus(f.g, cfg.embedder, f.default_root());
    if (layout.certified) {
        row.certified = true;
        row.embedder_ratio = layout.aspect_ratio;
        embedding best = layout.points;
        if (cfg.optimize) {
            auto trace = minimize_aspect_ratio(f.g, layout.points, cfg.optimizer);
            if (trace.best) {
                row.optimized = true;
                row.optimizer_ratio = trace.best_ratio;
                best = *trace.best;
            } else {
                row.note = "optimizer: no certified restart";
            }
        }
        try {
            fill_monitors(row, f, best);
        } catch (const geometry_error& e) {
            row.note += std::string(row.note.empty() ? "" : "; ") + "monitors: " + e.what();
        }
        if (certified) certified->push_back(std::move(best));
    } else {
        char buf[96];
        std::snprintf(buf, sizeof buf, "embedder: best minimum relative margin %.3g, tolerance %.3g",
                      layout.min_relative_margin, cfg.embedder.tolerance);
        row.note = buf;
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::string experiment_csv(const std::vector<experiment_row>& rows) {
    std::string s = "# greedy-cactus-experiment " + std::to_string(experiment_format_version) + "\n";
    s += "k,n,embedder_ratio,optimizer_best_ratio,bound_2k,narrow_copies,max_halving_ratio,wall_seconds,status,note\n";
    for (const auto& r : rows) {
        s += std::to_string(r.k) + "," + std::to_string(r.n) + ",";
        s += (r.certified ? fmt(r.embedder_ratio) : "") + ",";
        s += (r.optimized ? fmt(r.optimizer_ratio) : "") + ",";
        s += fmt(r.bound) + ",";
        s += (r.certified ? std::to_string(r.narrow_copies) : "") + ",";
        s += (r.certified ? fmt(r.max_halving_ratio) : "") + ",";
        s += fmt(r.wall_seconds) + ",";
        s += std::string(r.certified ? "OK" : "FAILED") + ",";
        s += csv_field(r.note) + "\n";
    }
    return s;
}

std::vector<experiment_row> run_experiment(const experiment_config& cfg, const std::string& out) {
    if (cfg.k_max < 1) throw error("k_max must be at least 1");
    cfg.embedder.validate();
    if (cfg.optimize) cfg.optimizer.validate();
    std::vector<experiment_row> rows;
    for (int k = 1; k <= cfg.k_max; ++k) {
        rows.push_back(experiment_for_k(k, cfg));
        if (!out.empty()) write_file_atomic(out, experiment_csv(rows));
    }
    return rows;
}

}  // namespace gcactus
