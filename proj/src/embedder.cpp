#include "gcactus/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "gcactus/error.hpp"

namespace gcactus {

namespace {

constexpr double pi = 3.14159265358979323846;

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

// Recursive cone layout of a rooted Christmas cactus. Each vertex with child
// blocks gets a cone and a size budget; the per-vertex multipliers sigma
// (budget) and cone (width) and the per-block spread are the knobs the
// repair loops turn.
class layout {
public:
    layout(const graph& g, const block_cut_tree& t)
        : g_(g), t_(t), adj_(adjacency(g)), n_(g.vertex_count) {
        height_.assign(n_, 0);
        std::vector<int> order(n_);
        for (int v = 0; v < n_; ++v) order[v] = v;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t_.depth[a] > t_.depth[b]; });
        for (int v : order)
            for (int b : t_.child_blocks[v])
                for (int x : t_.blocks[b].vertices)
                    if (x != v) height_[v] = std::max(height_[v], 1 + height_[x]);
        reset();
    }

    void reset() {
        sigma.assign(n_, 1.0);
        cone.assign(n_, 1.0);
        spread.assign(t_.blocks.size(), 1.0);
        extent.assign(t_.blocks.size(), 1.0);
    }

    bool heavy(int v) const { return !t_.child_blocks[v].empty(); }
    int vertex_count() const { return n_; }
    const std::vector<std::vector<int>>& adj() const { return adj_; }
    const block_cut_tree& tree() const { return t_; }

    struct work_item {
        int block;
        int entry;
        double theta, phi, budget;
    };

    // Positions, and the cone/budget handed to every vertex.
    std::vector<point> place(const embedder_params& p, double lambda, double alpha,
                             std::vector<wedge>* wedges = nullptr) const {
        std::vector<point> pts(n_, point{});
        if (wedges) {
            wedges->assign(n_, wedge{});
            (*wedges)[t_.root] = {0.0, pi, 0, 1.0};
        }
        std::vector<work_item> work;
        const auto& rb = t_.child_blocks[t_.root];
        if (rb.size() == 1) {
            work.push_back({rb[0], t_.root, 0.0, pi, 1.0});
        } else {
            for (std::size_t i = 0; i < rb.size(); ++i)
                work.push_back({rb[i], t_.root, pi * static_cast<double>(i), pi / 4.0, 1.0});
        }
        auto emit = [&](int x, double dir, double half, double budget) {
            if (wedges) (*wedges)[x] = {dir, half, t_.depth[x], budget};
            for (int b : t_.child_blocks[x]) work.push_back({b, x, dir, half, budget});
        };
        while (!work.empty()) {
            work_item w = work.back();
            work.pop_back();
            const block& blk = t_.blocks[w.block];
            point origin = pts[w.entry];
            if (blk.kind == block_kind::bridge) {
                int q = blk.vertices[1];
                double len = p.radial_step * w.budget / (1.0 + height_[q]);
                pts[q] = origin + len * unit(w.theta);
                double half = std::min(0.999, lambda * cone[q]) * std::min(w.phi, pi / 2.0);
                emit(q, w.theta, half, (w.budget - len) * sigma[q]);
                continue;
            }
            std::vector<int> order(blk.vertices.begin() + 1, blk.vertices.end());
            int m = static_cast<int>(order.size());
            bool full = w.phi >= pi - 1e-12;
            bool any_heavy = std::any_of(order.begin(), order.end(), [&](int x) { return height_[x] > 0; });
            double size = std::min(0.99, (any_heavy ? p.cycle_scale : p.radial_step) * extent[w.block]) * w.budget;
            double r = size / 2.0;
            point centre = origin + r * unit(w.theta);
            std::vector<double> psi(m), bounds(m + 1);
            if (full) {
                for (int j = 0; j < m; ++j) psi[j] = w.theta - pi + 2.0 * pi * (j + 1) / (m + 1);
                bounds[0] = psi[0] - pi / (m + 1);
                bounds[m] = psi[m - 1] + pi / (m + 1);
            } else {
                double al = std::min(0.99, alpha * spread[w.block]);
                double a = 2.0 * al * w.phi;
                std::vector<double> wt(m), pos(m);
                for (int j = 0; j < m; ++j) wt[j] = height_[order[j]] > 0 ? 1.0 + height_[order[j]] : p.leaf_weight;
                pos[0] = wt[0] / 2.0;
                for (int j = 0; j + 1 < m; ++j) pos[j + 1] = pos[j] + (wt[j] + wt[j + 1]) / 2.0;
                double total = pos[m - 1] + wt[m - 1] / 2.0;
                // Keep every cell boundary inside the share.
                double worst = 0.0;
                for (int j = 0; j + 1 < m; ++j) worst = std::max(worst, std::abs((pos[j] + pos[j + 1]) / total - 1.0));
                if (worst > 0.0) a = std::min(a, al * w.phi / worst);
                for (int j = 0; j < m; ++j) psi[j] = w.theta - a + 2.0 * a * pos[j] / total;
                bounds[0] = w.theta - w.phi;
                bounds[m] = w.theta + w.phi;
            }
            for (int j = 0; j + 1 < m; ++j) bounds[j + 1] = (psi[j] + psi[j + 1]) / 2.0;
            for (int j = 0; j < m; ++j) pts[order[j]] = centre + r * unit(psi[j]);
            for (int j = 0; j < m; ++j) {
                int x = order[j];
                if (!heavy(x) && !wedges) continue;
                double lo = bounds[j], hi = bounds[j + 1];
                if (!full) {
                    lo = std::max(lo, w.theta - w.phi);
                    hi = std::min(hi, w.theta + w.phi);
                }
                double half = std::min(0.999, lambda * cone[x]) * (hi - lo) / 2.0;
                double room = w.budget - dist(pts[x], origin);
                for (int y : order)
                    if (y != x && heavy(y)) room = std::min(room, p.sibling_room * dist(pts[y], pts[x]));
                emit(x, (lo + hi) / 2.0, half, p.radial_step * room * sigma[x]);
            }
        }
        return pts;
    }

    std::vector<int> chain(int v) const {
        std::vector<int> c{v};
        while (t_.parent_vertex[c.back()] >= 0) c.push_back(t_.parent_vertex[c.back()]);
        std::reverse(c.begin(), c.end());
        return c;
    }

    std::vector<double> sigma, cone, spread, extent;

private:
    const graph& g_;
    const block_cut_tree& t_;
    std::vector<std::vector<int>> adj_;
    int n_;
    std::vector<int> height_;
};

double margin_of(const layout& lay, const std::vector<point>& pts) {
    for (auto q : pts)
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) return -std::numeric_limits<double>::infinity();
    return min_relative_margin(lay.adj(), pts).min_relative_margin;
}

// Smooth stand-in for the minimum margin: minus the sum of inverse squared
// margins over the near-critical pairs. Lets the tuner trade between pairs
// that bind at the same time. -inf when any pair fails outright.
double score_of(const layout& lay, const std::vector<point>& pts) {
    const auto& adj = lay.adj();
    int n = lay.vertex_count();
    double sum = 0.0;
    for (auto q : pts)
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) return -std::numeric_limits<double>::infinity();
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            double st = dist(pts[s], pts[t]), best = std::numeric_limits<double>::infinity();
            for (int v : adj[s]) best = std::min(best, dist(pts[v], pts[t]));
            double rel = (st - best) / st;
            if (!(rel > 0.0)) return -std::numeric_limits<double>::infinity();
            if (rel < 1e-2) sum += 1.0 / (rel * rel);
        }
    return -sum;
}

// Vertices lying on the two branches where the root paths of s and t split.
std::set<int> split_points(const layout& lay, const std::vector<point>& pts) {
    std::set<int> out;
    const auto& adj = lay.adj();
    int n = lay.vertex_count();
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            double st = dist(pts[s], pts[t]), best = std::numeric_limits<double>::infinity();
            for (int v : adj[s]) best = std::min(best, dist(pts[v], pts[t]));
            if (!(st - best > 0.0)) {
                auto ca = lay.chain(s), ct = lay.chain(t);
                std::size_t i = 0;
                while (i < ca.size() && i < ct.size() && ca[i] == ct[i]) ++i;
                if (i < ca.size()) out.insert(ca[i]);
                if (i < ct.size()) out.insert(ct[i]);
            }
        }
    return out;
}

// Vertices with the same depth and the same rooted subtree shape move together
// in the grouped tuning moves.
std::vector<std::vector<int>> symmetric_groups(const layout& lay) {
    const auto& t = lay.tree();
    int n = lay.vertex_count();
    std::vector<int> order(n), shape(n, 0);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t.depth[a] > t.depth[b]; });
    std::map<std::vector<int>, int> ids;
    for (int v : order) {
        std::vector<int> key;
        for (int b : t.child_blocks[v]) {
            key.push_back(-1 - static_cast<int>(t.blocks[b].kind));
            for (std::size_t i = 1; i < t.blocks[b].vertices.size(); ++i) key.push_back(shape[t.blocks[b].vertices[i]]);
        }
        auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
        shape[v] = it->second;
    }
    std::map<std::pair<int, int>, std::vector<int>> by;
    for (int v = 0; v < n; ++v)
        if (lay.heavy(v) && v != t.root) by[{t.depth[v], shape[v]}].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [k, vs] : by)
        if (vs.size() > 1) out.push_back(vs);
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return t.depth[a[0]] < t.depth[b[0]]; });
    return out;
}

struct tuner {
    layout& lay;
    const embedder_params& p;
    double lambda, alpha;
    int evaluations = 0;
    double current;

    double evaluate() {
        ++evaluations;
        return score_of(lay, lay.place(p, lambda, alpha));
    }

    // Multiplies the knobs of `members` by each factor in turn; keeps the first improvement.
    bool try_factors(std::vector<double>& knob, const std::vector<int>& members, std::initializer_list<double> factors) {
        for (double f : factors) {
            if (evaluations >= p.tune_evaluations) return false;
            for (int v : members) knob[v] *= f;
            double m = evaluate();
            if (m > current) {
                current = m;
                return true;
            }
            for (int v : members) knob[v] /= f;
        }
        return false;
    }

    void run(double target) {
        const auto& t = lay.tree();
        auto groups = symmetric_groups(lay);
        std::vector<int> heavy;
        for (int v = 0; v < lay.vertex_count(); ++v)
            if (lay.heavy(v) && v != t.root) heavy.push_back(v);
        std::stable_sort(heavy.begin(), heavy.end(), [&](int a, int b) { return t.depth[a] < t.depth[b]; });
        std::vector<int> cycles;
        for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b)
            if (t.blocks[b].kind == block_kind::cycle) cycles.push_back(b);
        std::vector<std::vector<int>> cycle_groups;
        for (const auto& grp : groups) {
            std::vector<int> bs;
            for (int v : grp)
                for (int b : t.child_blocks[v])
                    if (t.blocks[b].kind == block_kind::cycle) bs.push_back(b);
            if (bs.size() > 1) cycle_groups.push_back(bs);
        }
        while (current <= target && evaluations < p.tune_evaluations) {
            bool improved = false;
            for (const auto& grp : groups) {
                improved |= try_factors(lay.sigma, grp, {2.0, 1.3, 0.77, 0.5});
                improved |= try_factors(lay.cone, grp, {1.1, 0.8, 0.6});
            }
            for (const auto& bs : cycle_groups) {
                improved |= try_factors(lay.spread, bs, {1.15, 0.85});
                improved |= try_factors(lay.extent, bs, {1.2, 0.8});
            }
            for (int v : heavy) {
                if (try_factors(lay.sigma, {v}, {2.0, 1.3, 0.77, 0.5})) {
                    improved = true;
                    continue;
                }
                improved |= try_factors(lay.cone, {v}, {1.1, 0.8, 0.6});
            }
            for (int b : cycles) {
                improved |= try_factors(lay.spread, {b}, {1.15, 0.85});
                improved |= try_factors(lay.extent, {b}, {1.2, 0.8});
            }
            if (!improved) break;
        }
    }
};

void check_cactus(const graph& g, int root) {
    auto v = is_christmas_cactus(g);
    if (!v.ok) throw embed_error("not a Christmas cactus: " + v.reason);
    if (root < 0 || root >= g.vertex_count) throw embed_error("root " + std::to_string(root) + " out of range");
}

}  // namespace

void embedder_params::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw embed_error(std::string("invalid embedder parameter: ") + what);
    };
    require(in_open_unit(wedge_shrink), "wedge_shrink must lie in (0,1)");
    require(in_open_unit(radial_step), "radial_step must lie in (0,1)");
    require(in_open_unit(arc_flatness), "arc_flatness must lie in (0,1)");
    require(in_open_unit(cycle_scale), "cycle_scale must lie in (0,1)");
    require(leaf_weight > 0.0 && std::isfinite(leaf_weight), "leaf_weight must be positive");
    require(in_open_unit(sibling_room), "sibling_room must lie in (0,1)");
    require(in_open_unit(shrink), "shrink must lie in (0,1)");
    require(in_open_unit(decay), "decay must lie in (0,1)");
    require(shrink_iterations >= 0, "shrink_iterations must be nonnegative");
    require(tune_evaluations >= 0, "tune_evaluations must be nonnegative");
    require(max_retries >= 0, "max_retries must be nonnegative");
    require(tolerance >= 0.0 && std::isfinite(tolerance), "tolerance must be finite and nonnegative");
}

wedge_plan assign_wedges(const graph& g, const block_cut_tree& t, const embedder_params& p) {
    p.validate();
    if (!t.all_bridge_or_cycle()) throw embed_error("block tree contains a block that is neither bridge nor cycle");
    layout lay(g, t);
    wedge_plan plan;
    plan.root = t.root;
    lay.place(p, p.wedge_shrink, p.arc_flatness, &plan.wedges);
    return plan;
}

static embed_result layout_rooted(const graph& g, const embedder_params& p, int root) {
    embed_result best;
    best.root = root;
    best.min_relative_margin = -std::numeric_limits<double>::infinity();
    if (g.vertex_count == 1) {
        best.points.points = {point{}};
        best.min_relative_margin = std::numeric_limits<double>::infinity();
        best.certified = true;
        return best;
    }
    auto tree = block_cut_decompose(g, root);
    layout lay(g, tree);
    int shrinks = 0, evals = 0;
    // Stop tuning once the margin is comfortably above the tolerance.
    double target = std::max(10.0 * p.tolerance, 1e-12);
    for (int attempt = 0; attempt <= p.max_retries; ++attempt) {
        double lambda = p.wedge_shrink * std::pow(p.decay, attempt);
        double alpha = p.arc_flatness * std::pow(p.decay, attempt);
        lay.reset();
        std::vector<point> pts;
        double m = 0.0;
        for (int it = 0;; ++it) {
            pts = lay.place(p, lambda, alpha);
            m = margin_of(lay, pts);
            if (m > p.tolerance || it >= p.shrink_iterations) break;
            auto split = split_points(lay, pts);
            if (split.empty()) break;  // only tolerance-level pairs left
            for (int v : split) lay.sigma[v] *= p.shrink;
            ++shrinks;
        }
        if (m <= target) {
            tuner tn{lay, p, lambda, alpha, 0, score_of(lay, pts)};
            tn.run(-1.0 / (target * target));
            evals += tn.evaluations;
            pts = lay.place(p, lambda, alpha);
            m = margin_of(lay, pts);
        }
        if (m > best.min_relative_margin) {
            best.points.points = pts;
            best.min_relative_margin = m;
            best.retries = attempt;
        }
        if (m > p.tolerance) {
            auto cert = verify_greedy(g, best.points, p.tolerance);
            if (cert.greedy()) break;
        }
    }
    best.shrink_iterations = shrinks;
    best.tune_evaluations = evals;
    for (auto q : best.points.points)
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) return best;
    try {
        auto cert = verify_greedy(g, best.points, p.tolerance);
        best.certified = cert.greedy();
        best.min_relative_margin = cert.min_relative_margin;
        best.aspect_ratio = g.edges.empty() ? 1.0 : cert.aspect_ratio;
    } catch (const geometry_error&) {
        best.certified = false;
    }
    return best;
}

embed_result layout_christmas_cactus(const graph& g, const embedder_params& p, int root) {
    p.validate();
    if (root != auto_root) {
        check_cactus(g, root);
        return layout_rooted(g, p, root);
    }
    check_cactus(g, 0);
    embed_result best;
    best.min_relative_margin = -std::numeric_limits<double>::infinity();
    for (int r : roots_by_height(g)) {
        auto e = layout_rooted(g, p, r);
        e.shrink_iterations += best.shrink_iterations;
        e.tune_evaluations += best.tune_evaluations;
        if (e.certified || e.min_relative_margin > best.min_relative_margin) {
            best = std::move(e);
        } else {
            best.shrink_iterations = e.shrink_iterations;
            best.tune_evaluations = e.tune_evaluations;
        }
        if (best.certified) break;
    }
    return best;
}

embed_result embed_christmas_cactus(const graph& g, const embedder_params& p, int root) {
    auto r = layout_christmas_cactus(g, p, root);
    if (!r.certified) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", r.min_relative_margin);
        throw embed_error("certification failed after " + std::to_string(p.max_retries + 1) +
                          " attempts (best minimum relative margin " + buf + ")");
    }
    return r;
}

std::vector<int> roots_by_height(const graph& g) {
    if (g.vertex_count == 0) throw graph_error("graph has no vertices");
    std::vector<std::pair<int, int>> keyed;
    for (int v = 0; v < g.vertex_count; ++v) {
        auto t = block_cut_decompose(g, v);
        keyed.emplace_back(*std::max_element(t.depth.begin(), t.depth.end()), v);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (auto [h, v] : keyed) out.push_back(v);
    return out;
}

int central_root(const graph& g) { return roots_by_height(g).front(); }

}  // namespace gcactus
