#pragma once

#include <string>
#include <vector>

#include "gcactus/geometry.hpp"

#include "gcactus/embedder.hpp"
#include "gcactus/optimizer.hpp"

namespace gcactus {

inline constexpr int experiment_format_version = 1;

struct experiment_row {
    int k = 0;
    int n = 0;
    bool certified = false;
    double embedder_ratio = 0.0;
    bool optimized = false;
    double optimizer_ratio = 0.0;  // best certified, 0 when none
    double bound = 0.0;            // 2^k
    int narrow_copies = 0;
    double max_halving_ratio = 0.0;  // over narrow copies
    double wall_seconds = 0.0;
    std::string note;
};

struct experiment_config {
    int k_max = 2;
    bool optimize = false;
    embedder_params embedder;
    optimizer_config optimizer;
};

// One row. When the embedder certifies and `certified` is non-null, the
// embedding is stored there (the optimizer's best replaces it when present).
experiment_row experiment_for_k(int k, const experiment_config& cfg, std::vector<embedding>* certified = nullptr);

std::string experiment_csv(const std::vector<experiment_row>& rows);

// Rows for k = 1..k_max. Embedder failures yield FAILED rows; the run continues.
// Writes the CSV atomically when out is non-empty.
std::vector<experiment_row> run_experiment(const experiment_config& cfg,
                                           const std::string& out = "");

}  // namespace gcactus
