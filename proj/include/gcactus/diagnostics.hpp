#pragma once

#include <string>
#include <vector>

#include "gcactus/families.hpp"
#include "gcactus/geometry.hpp"

namespace gcactus {

inline constexpr double narrow_angle_deg = 12.0;

// Row i of the halving table, with a = u_{i+2}, b = u_{i+1}, c = v_{i+1}, y = u_i.
struct halving_row {
    int i = 0;
    double r = 0.0;      // |u_{i+1} u_{i+2}| / |u_i u_{i+1}|
    double bc_by = 0.0;  // |bc| / |by|
    double ab_bc = 0.0;  // |ab| / |bc|
};

struct copy_report {
    int copy = 0;
    double max_angle_deg = 0.0;
    bool narrow = false;
    std::vector<halving_row> halving;
};

struct diagnostics_report {
    std::vector<int> narrow_copies;
    std::vector<copy_report> copies;
};

// Maximum pairwise angle between the directed vectors u_i->u_{i+1},
// u_i->v_{i+1}, v_i->w_{i+1} of one copy, in degrees.
double copy_max_angle(const family_instance& f, int copy, const embedding& e);

// Per-copy angles and narrowness, with the halving table filled in for
// every copy. Throws geometry_error on zero-length vectors.
diagnostics_report narrow_copies(const family_instance& f, const embedding& e);

std::vector<halving_row> halving_check(const family_instance& f, int copy,
                                       const embedding& e);

struct angle_report {
    bool greedy_both_ways = false;
    double angle_at_b = 0.0;  // degrees, between b->a and b->d
};

angle_report angle_diagnostics(point a, point b, point d);

struct constant_row {
    std::string expression;
    double value = 0.0;
    double stated = 0.0;  // the rounded value quoted for the expression
    double bound = 0.0;
    bool below_bound = false;
};

std::vector<constant_row> lemma_constants_check();

}  // namespace gcactus
