#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcactus/geometry.hpp"
#include "gcactus/graph.hpp"
#include "gcactus/verify.hpp"

namespace gcactus {

struct objective_value {
    double value = 0.0;
    std::vector<double> gradient;  // same layout as coords
    double log_ratio_term = 0.0;
    double penalty_term = 0.0;
    int satisfied_pairs = 0;       // ordered pairs with relative margin >= tau
};

inline constexpr double default_tau = 1e-6;
inline constexpr double default_beta = 50.0;

// coords = (x_0, y_0, x_1, y_1, ...). Value:
//   log M_beta(l) - log M_-beta(l) + weight * sum_{s != t} max(tau - rel(s,t), 0)^2
// where M_beta is the power mean exp(LSE(beta * log l) / beta) of edge lengths.
// Throws geometry_error on coincident points or nonfinite input.
objective_value penalty_objective(const graph& g, const std::vector<double>& coords,
                                  double weight, double beta = default_beta,
                                  double tau = default_tau);

struct optimizer_config {
    int restarts = 8;
    int iterations = 600;                   // per restart, split over the stages
    std::vector<double> weights{1.0, 10.0, 100.0, 1e3, 1e4};
    double beta = default_beta;
    double tau = default_tau;
    double tolerance = default_tolerance;   // certification
    double init_noise = 0.05;               // Gaussian perturbation of log-lengths and angles
    std::uint64_t seed = 1;
    int threads = 1;

    void validate() const;
};

struct restart_record {
    int restart = 0;
    double best_objective = 0.0;
    int violations = 0;                     // pairs at or below tolerance at the end
    bool certified = false;
    double aspect_ratio = 0.0;              // of the final iterate
    std::vector<int> satisfied_per_stage;
};

struct optimization_trace {
    std::vector<restart_record> restarts;
    std::optional<embedding> best;          // certified; gauge-normalised
    double best_ratio = 0.0;
    int best_restart = -1;
};

optimization_trace minimize_aspect_ratio(const graph& g,
                                         const std::optional<embedding>& init,
                                         const optimizer_config& cfg = {});

struct brute_force_result {
    bool found = false;
    double estimate = 0.0;
    embedding best;
    int candidates = 0;
};

brute_force_result brute_force_min_ratio(const graph& g, int budget, std::uint64_t seed,
                                         double tolerance = default_tolerance);

}  // namespace gcactus
