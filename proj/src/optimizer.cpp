#include "gcactus/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "gcactus/embedder.hpp"
#include "gcactus/error.hpp"

namespace gcactus {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double two_pi = 6.28318530717958647692;

// log of the power mean exp(LSE(b * x) / b) of the entries, with d/dx_i in w.
double log_power_mean(const std::vector<double>& x, double b, std::vector<double>& w) {
    double ref = b > 0 ? *std::max_element(x.begin(), x.end()) : *std::min_element(x.begin(), x.end());
    double sum = 0.0;
    w.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] = std::exp(b * (x[i] - ref));
    for (double& wi : w) wi /= sum;
    return ref + std::log(sum / static_cast<double>(x.size())) / b;
}

// ratio_weight * smoothed log-ratio + penalty_weight * hinge^2 sum.
objective_value evaluate(const graph& g, const std::vector<std::vector<int>>& adj, const std::vector<double>& c,
                         double ratio_weight, double penalty_weight, double beta, double tau) {
    int n = g.vertex_count;
    if (static_cast<int>(c.size()) != 2 * n)
        throw geometry_error("expected " + std::to_string(2 * n) + " coordinates, got " + std::to_string(c.size()));
    for (double x : c)
        if (!std::isfinite(x)) throw geometry_error("nonfinite coordinate");
    std::vector<point> pts(n);
    for (int v = 0; v < n; ++v) pts[v] = {c[2 * v], c[2 * v + 1]};
    objective_value out;
    out.gradient.assign(c.size(), 0.0);
    auto add = [&](int v, point d, double s) {
        out.gradient[2 * v] += s * d.x;
        out.gradient[2 * v + 1] += s * d.y;
    };

    if (!g.edges.empty()) {
        std::vector<double> ll;
        ll.reserve(g.edges.size());
        for (auto [a, b] : g.edges) {
            double l = dist(pts[a], pts[b]);
            if (!(l > 0.0)) throw geometry_error("zero-length edge " + std::to_string(a) + " " + std::to_string(b));
            ll.push_back(std::log(l));
        }
        std::vector<double> wp, wn;
        out.log_ratio_term = log_power_mean(ll, beta, wp) - log_power_mean(ll, -beta, wn);
        if (ratio_weight != 0.0)
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                auto [a, b] = g.edges[i];
                point d = pts[a] - pts[b];
                double s = ratio_weight * (wp[i] - wn[i]) / dot(d, d);
                add(a, d, s);
                add(b, d, -s);
            }
    }

    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            double st = dist(pts[s], pts[t]);
            if (!(st > 0.0)) throw geometry_error("vertices " + std::to_string(s) + " and " + std::to_string(t) + " coincide");
            int arg = -1;
            double best = inf;
            for (int v : adj[s]) {
                double d = dist(pts[v], pts[t]);
                if (d < best) best = d, arg = v;
            }
            double rel = (st - best) / st;
            if (rel >= tau) {
                ++out.satisfied_pairs;
                continue;
            }
            if (arg < 0) {
                out.penalty_term = inf;
                continue;
            }
            double h = tau - rel;
            out.penalty_term += h * h;
            if (penalty_weight == 0.0 || arg == t) continue;
            // rel = 1 - best / st
            double k = penalty_weight * 2.0 * h;
            point dv = pts[arg] - pts[t], ds = pts[s] - pts[t];
            add(arg, dv, k / (best * st));
            add(t, dv, -k / (best * st));
            add(s, ds, -k * best / (st * st * st));
            add(t, ds, k * best / (st * st * st));
        }
    out.value = ratio_weight * out.log_ratio_term + penalty_weight * out.penalty_term;
    return out;
}

// Spanning-tree log-polar coordinates: each non-root vertex sits at its
// parent plus exp(r) * (cos a, sin a).
class tree_params {
public:
    explicit tree_params(const graph& g) : n_(g.vertex_count), parent_(n_, -1) {
        auto adj = adjacency(g);
        std::vector<char> seen(n_, 0);
        order_.push_back(0);
        seen[0] = 1;
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (int w : adj[order_[i]])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent_[w] = order_[i];
                    order_.push_back(w);
                }
        if (static_cast<int>(order_.size()) != n_) throw graph_error("optimizer needs a connected graph");
    }

    std::size_t size() const { return 2 * static_cast<std::size_t>(n_ > 0 ? n_ - 1 : 0); }

    std::vector<double> from_points(const std::vector<point>& pts) const {
        std::vector<double> x(size());
        for (std::size_t i = 1; i < order_.size(); ++i) {
            int v = order_[i];
            point d = pts[v] - pts[parent_[v]];
            x[2 * (i - 1)] = std::log(norm(d));
            x[2 * (i - 1) + 1] = std::atan2(d.y, d.x);
        }
        return x;
    }

    std::vector<double> to_coords(const std::vector<double>& x) const {
        std::vector<double> c(2 * static_cast<std::size_t>(n_), 0.0);
        for (std::size_t i = 1; i < order_.size(); ++i) {
            int v = order_[i], p = parent_[v];
            double len = std::exp(x[2 * (i - 1)]), ang = x[2 * (i - 1) + 1];
            c[2 * v] = c[2 * p] + len * std::cos(ang);
            c[2 * v + 1] = c[2 * p + 1] + len * std::sin(ang);
        }
        return c;
    }

    std::vector<double> pull_back(const std::vector<double>& x, std::vector<double> gc) const {
        // Subtree sums of the coordinate gradient, leaves first.
        for (std::size_t i = order_.size(); i-- > 1;) {
            int v = order_[i], p = parent_[v];
            gc[2 * p] += gc[2 * v];
            gc[2 * p + 1] += gc[2 * v + 1];
        }
        std::vector<double> gx(size());
        for (std::size_t i = 1; i < order_.size(); ++i) {
            int v = order_[i];
            double len = std::exp(x[2 * (i - 1)]), ang = x[2 * (i - 1) + 1];
            double dx = len * std::cos(ang), dy = len * std::sin(ang);
            gx[2 * (i - 1)] = gc[2 * v] * dx + gc[2 * v + 1] * dy;
            gx[2 * (i - 1) + 1] = -gc[2 * v] * dy + gc[2 * v + 1] * dx;
        }
        return gx;
    }

private:
    int n_;
    std::vector<int> parent_;
    std::vector<int> order_;
};

struct fg_value {
    double f = inf;
    std::vector<double> g;
    int satisfied = 0;
};

// Limited-memory BFGS with a backtracking Armijo search. Invalid points
// (coincident vertices, overflow) count as +inf and shrink the step.
template <class Fn, class Accept>
fg_value lbfgs(Fn&& fg, std::vector<double>& x, int max_iter, Accept&& accept) {
    const int memory = 8;
    fg_value cur = fg(x);
    if (!std::isfinite(cur.f)) return cur;
    std::deque<std::vector<double>> ss, ys;
    std::deque<double> rhos;
    std::size_t dim = x.size();
    for (int it = 0; it < max_iter; ++it) {
        double gnorm = 0.0;
        for (double v : cur.g) gnorm = std::max(gnorm, std::abs(v));
        if (gnorm < 1e-14) break;
        std::vector<double> q = cur.g, alpha(ss.size());
        for (std::size_t i = ss.size(); i-- > 0;) {
            alpha[i] = rhos[i] * std::inner_product(ss[i].begin(), ss[i].end(), q.begin(), 0.0);
            for (std::size_t j = 0; j < dim; ++j) q[j] -= alpha[i] * ys[i][j];
        }
        double gamma = 1.0 / std::max(gnorm, 1.0);
        if (!ss.empty())
            gamma = std::inner_product(ss.back().begin(), ss.back().end(), ys.back().begin(), 0.0) /
                    std::inner_product(ys.back().begin(), ys.back().end(), ys.back().begin(), 0.0);
        for (double& v : q) v *= gamma;
        for (std::size_t i = 0; i < ss.size(); ++i) {
            double b = rhos[i] * std::inner_product(ys[i].begin(), ys[i].end(), q.begin(), 0.0);
            for (std::size_t j = 0; j < dim; ++j) q[j] += ss[i][j] * (alpha[i] - b);
        }
        double slope = -std::inner_product(q.begin(), q.end(), cur.g.begin(), 0.0);
        if (!(slope < 0.0)) {
            // Not a descent direction; fall back to steepest descent.
            ss.clear(), ys.clear(), rhos.clear();
            q = cur.g;
            for (double& v : q) v /= std::max(gnorm, 1.0);
            slope = -std::inner_product(q.begin(), q.end(), cur.g.begin(), 0.0);
        }
        double step = 1.0;
        fg_value next;
        std::vector<double> xn(dim);
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t j = 0; j < dim; ++j) xn[j] = x[j] - step * q[j];
            next = fg(xn);
            if (std::isfinite(next.f) && next.f <= cur.f + 1e-4 * step * slope && accept(xn)) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        std::vector<double> s(dim), y(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            s[j] = xn[j] - x[j];
            y[j] = next.g[j] - cur.g[j];
        }
        double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
        if (sy > 1e-300) {
            ss.push_back(std::move(s));
            ys.push_back(std::move(y));
            rhos.push_back(1.0 / sy);
            if (static_cast<int>(ss.size()) > memory) ss.pop_front(), ys.pop_front(), rhos.pop_front();
        }
        double df = cur.f - next.f;
        x = xn;
        cur = std::move(next);
        if (df <= 1e-16 * std::max(1.0, std::abs(cur.f)) && it > 10) break;
    }
    return cur;
}

template <class Fn>
fg_value lbfgs(Fn&& fg, std::vector<double>& x, int max_iter) {
    return lbfgs(fg, x, max_iter, [](const std::vector<double>&) { return true; });
}

embedding points_of(const std::vector<double>& c) {
    embedding e;
    for (std::size_t i = 0; i + 1 < c.size(); i += 2) e.points.push_back({c[i], c[i + 1]});
    return e;
}

struct restart_outcome {
    restart_record record;
    std::optional<embedding> best;
    double best_ratio = inf;
};

restart_outcome run_restart(const graph& g, const std::vector<std::vector<int>>& adj, const tree_params& tp,
                            std::vector<double> x, const optimizer_config& cfg, int index) {
    restart_outcome out;
    out.record.restart = index;
    auto make_fg = [&](double ratio_w, double pen_w) {
        return [&, ratio_w, pen_w](const std::vector<double>& params) {
            fg_value r;
            auto c = tp.to_coords(params);
            try {
                auto v = evaluate(g, adj, c, ratio_w, pen_w, cfg.beta, cfg.tau);
                if (!std::isfinite(v.value)) return r;
                r.f = v.value;
                r.satisfied = v.satisfied_pairs;
                r.g = tp.pull_back(params, std::move(v.gradient));
            } catch (const geometry_error&) {
                r.f = inf;
            }
            return r;
        };
    };
    auto consider = [&](const std::vector<double>& params) {
        auto e = points_of(tp.to_coords(params));
        try {
            auto cert = verify_greedy(g, e, cfg.tolerance);
            if (cert.greedy() && cert.aspect_ratio < out.best_ratio) {
                out.best_ratio = cert.aspect_ratio;
                out.best = std::move(e);
            }
            return cert.greedy();
        } catch (const geometry_error&) {
            return false;
        }
    };
    consider(x);
    int per_stage = std::max(1, cfg.iterations / static_cast<int>(cfg.weights.size()));
    double last_f = inf;
    for (double w : cfg.weights) {
        auto fg = make_fg(1.0, w);
        auto r = lbfgs(fg, x, per_stage);
        last_f = r.f;
        out.record.satisfied_per_stage.push_back(r.satisfied);
        if (!consider(x)) {
            // Push the stage's end point into the feasible region without the ratio term.
            auto xr = x;
            auto repair = make_fg(0.0, 1.0);
            lbfgs(repair, xr, per_stage);
            consider(xr);
        }
    }
    if (out.best) {
        // Descend from the best certified point without ever leaving the certified region.
        auto xp = tp.from_points(out.best->points);
        auto fg = make_fg(1.0, cfg.weights.back());
        auto feasible = [&](const std::vector<double>& params) {
            auto c = tp.to_coords(params);
            std::vector<point> pts(g.vertex_count);
            for (int v = 0; v < g.vertex_count; ++v) pts[v] = {c[2 * v], c[2 * v + 1]};
            return min_relative_margin(adj, pts).min_relative_margin > cfg.tolerance;
        };
        lbfgs(fg, xp, per_stage * static_cast<int>(cfg.weights.size()), feasible);
        consider(xp);
    }
    out.record.best_objective = last_f;
    auto final_pts = points_of(tp.to_coords(x));
    try {
        auto cert = verify_greedy(g, final_pts, cfg.tolerance);
        int bad = 0;
        for (int s = 0; s < g.vertex_count; ++s)
            for (int t = 0; t < g.vertex_count; ++t)
                if (s != t && !(cert.margin(s, t) > cfg.tolerance)) ++bad;
        out.record.violations = bad;
        out.record.aspect_ratio = cert.aspect_ratio;
    } catch (const geometry_error&) {
        out.record.violations = g.vertex_count * (g.vertex_count - 1);
    }
    out.record.certified = out.best.has_value();
    if (out.best) out.record.aspect_ratio = out.best_ratio;
    return out;
}

}  // namespace

objective_value penalty_objective(const graph& g, const std::vector<double>& coords, double weight, double beta,
                                  double tau) {
    return evaluate(g, adjacency(g), coords, 1.0, weight, beta, tau);
}

void optimizer_config::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw error(std::string("invalid optimizer configuration: ") + what);
    };
    require(restarts >= 1, "restarts must be at least 1");
    require(iterations >= 1, "iterations must be at least 1");
    require(!weights.empty(), "weight schedule is empty");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        require(weights[i] > 0.0 && std::isfinite(weights[i]), "weights must be positive");
        require(i == 0 || weights[i] > weights[i - 1], "weights must increase");
    }
    require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
    require(tau >= 0.0 && tau < 1.0, "tau must lie in [0,1)");
    require(tolerance >= 0.0 && std::isfinite(tolerance), "tolerance must be finite and nonnegative");
    require(init_noise >= 0.0 && std::isfinite(init_noise), "init_noise must be nonnegative");
    require(threads >= 1, "threads must be at least 1");
}

optimization_trace minimize_aspect_ratio(const graph& g, const std::optional<embedding>& init,
                                         const optimizer_config& cfg) {
    cfg.validate();
    if (g.vertex_count < 2 || g.edges.empty()) throw graph_error("optimizer needs at least one edge");
    tree_params tp(g);
    auto adj = adjacency(g);

    std::optional<std::vector<double>> base;
    if (init) {
        validate_embedding(g, *init);
        base = tp.from_points(init->points);
    } else if (is_christmas_cactus(g).ok) {
        embedder_params quick;
        quick.max_retries = 0;
        quick.tune_evaluations = 2000;
        auto lay = layout_christmas_cactus(g, quick, central_root(g));
        bool usable = true;
        for (auto q : lay.points.points) usable = usable && std::isfinite(q.x) && std::isfinite(q.y);
        try {
            validate_embedding(g, lay.points);
        } catch (const geometry_error&) {
            usable = false;
        }
        if (usable) base = tp.from_points(lay.points.points);
    }

    std::vector<std::vector<double>> starts(cfg.restarts);
    for (int r = 0; r < cfg.restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(r)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, two_pi);
        auto& x = starts[r];
        if (base && r % 3 != 2) {
            x = *base;
            if (r > 0)
                for (double& v : x) v += cfg.init_noise * gauss(rng);
        } else {
            x.resize(tp.size());
            for (std::size_t i = 0; i < x.size(); i += 2) {
                x[i] = 0.3 * gauss(rng);
                x[i + 1] = angle(rng);
            }
        }
    }

    std::vector<restart_outcome> outcomes(cfg.restarts);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r; (r = next++) < cfg.restarts;) outcomes[r] = run_restart(g, adj, tp, starts[r], cfg, r);
    };
    int workers = std::min(cfg.threads, cfg.restarts);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    optimization_trace trace;
    for (auto& o : outcomes) {
        trace.restarts.push_back(o.record);
        if (o.best && (trace.best_restart < 0 || o.best_ratio < trace.best_ratio)) {
            trace.best_ratio = o.best_ratio;
            trace.best = o.best;
            trace.best_restart = o.record.restart;
        }
    }
    if (trace.best) {
        auto normed = normalize_gauge(*trace.best, 0, 1);
        try {
            auto cert = verify_greedy(g, normed, cfg.tolerance);
            if (cert.greedy()) {
                trace.best = normed;
                trace.best_ratio = cert.aspect_ratio;
            }
        } catch (const geometry_error&) {
        }
    }
    return trace;
}

brute_force_result brute_force_min_ratio(const graph& g, int budget, std::uint64_t seed, double tolerance) {
    if (budget < 1) throw error("brute force budget must be positive");
    if (g.edges.empty()) throw graph_error("brute force needs at least one edge");
    int n = g.vertex_count;
    auto adj = adjacency(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    // Feasible: log ratio plus a small spread term that breaks ties between
    // equal ratios. Infeasible: above every feasible value, falling with the violation.
    auto score = [&](const std::vector<point>& pts) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (pts[a] == pts[b]) return inf;
        double m = min_relative_margin(adj, pts).min_relative_margin;
        if (!(m > tolerance)) return 100.0 + (tolerance - m);
        double mean = 0.0, sq = 0.0, lo = inf, hi = 0.0;
        for (auto [a, b] : g.edges) {
            double l = dist(pts[a], pts[b]);
            lo = std::min(lo, l), hi = std::max(hi, l);
            mean += std::log(l);
            sq += std::log(l) * std::log(l);
        }
        double k = static_cast<double>(g.edges.size());
        double var = std::max(0.0, sq / k - (mean / k) * (mean / k));
        return std::log(hi / lo) + 1e-3 * var;
    };

    std::vector<std::pair<double, std::vector<point>>> samples;
    for (int i = 0; i < budget; ++i) {
        std::vector<point> pts(n);
        for (auto& q : pts) q = {u(rng), u(rng)};
        samples.emplace_back(score(pts), std::move(pts));
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    samples.resize(std::min<std::size_t>(samples.size(), 32));

    brute_force_result out;
    out.candidates = budget;
    out.estimate = inf;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& [f, pts] : samples) {
        double step = 0.25;
        for (int sweep = 0; sweep < 600 && step > 1e-11; ++sweep) {
            bool improved = false;
            for (int i = 0; i < 2 * n; ++i)
                for (double sgn : {1.0, -1.0}) {
                    auto trial = pts;
                    (i % 2 ? trial[i / 2].y : trial[i / 2].x) += sgn * step;
                    double ft = score(trial);
                    if (ft < f) f = ft, pts = std::move(trial), improved = true;
                }
            for (int d = 0; d < 2 * n; ++d) {
                auto trial = pts;
                for (auto& q : trial) q = q + step * point{gauss(rng), gauss(rng)};
                double ft = score(trial);
                if (ft < f) f = ft, pts = std::move(trial), improved = true;
            }
            if (!improved) step *= 0.5;
        }
        embedding e{pts};
        try {
            auto cert = verify_greedy(g, e, tolerance);
            if (cert.greedy() && cert.aspect_ratio < out.estimate) {
                out.found = true;
                out.estimate = cert.aspect_ratio;
                out.best = e;
            }
        } catch (const geometry_error&) {
        }
    }
    if (!out.found) out.estimate = 0.0;
    return out;
}

}  // namespace gcactus
