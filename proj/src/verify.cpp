#include "gcactus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "gcactus/error.hpp"

namespace gcactus {

const char* to_string(verdict v) { return v == verdict::greedy ? "GREEDY" : "VIOLATED"; }

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Fills the columns t in [t0, t1) of the margin table.
void fill_columns(const std::vector<std::vector<int>>& adj, const std::vector<point>& pts, int t0, int t1,
                  std::vector<double>& margins) {
    int n = static_cast<int>(pts.size());
    std::vector<double> dt(n);
    for (int t = t0; t < t1; ++t) {
        for (int v = 0; v < n; ++v) dt[v] = dist(pts[v], pts[t]);
        for (int s = 0; s < n; ++s) {
            if (s == t) {
                margins[static_cast<std::size_t>(s) * n + t] = inf;
                continue;
            }
            double best = inf;
            for (int v : adj[s]) best = std::min(best, dt[v]);
            margins[static_cast<std::size_t>(s) * n + t] = (dt[s] - best) / dt[s];
        }
    }
}

}  // namespace

greedy_certificate verify_greedy(const graph& g, const embedding& e, double tolerance, int threads) {
    validate_embedding(g, e);
    if (!std::isfinite(tolerance)) throw geometry_error("tolerance must be finite");
    int n = g.vertex_count;
    auto adj = adjacency(g);
    greedy_certificate c;
    c.vertex_count = n;
    c.tolerance = tolerance;
    c.margins.assign(static_cast<std::size_t>(n) * n, inf);
    int workers = std::clamp(threads, 1, std::max(1, n));
    if (workers == 1) {
        fill_columns(adj, e.points, 0, n, c.margins);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            int t0 = n * w / workers, t1 = n * (w + 1) / workers;
            pool.emplace_back(fill_columns, std::cref(adj), std::cref(e.points), t0, t1, std::ref(c.margins));
        }
        for (auto& th : pool) th.join();
    }
    c.min_relative_margin = inf;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (s != t && c.margin(s, t) < c.min_relative_margin) {
                c.min_relative_margin = c.margin(s, t);
                c.worst_pair = {s, t};
            }
    c.result = c.min_relative_margin > tolerance ? verdict::greedy : verdict::violated;
    c.aspect_ratio = g.edges.empty() ? 1.0 : aspect_ratio(g, e);
    return c;
}

margin_summary min_relative_margin(const std::vector<std::vector<int>>& adj, const std::vector<point>& pts) {
    int n = static_cast<int>(pts.size());
    margin_summary out;
    out.min_relative_margin = inf;
    for (int s = 0; s < n; ++s) {
        point ps = pts[s];
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            double best = inf;
            for (int v : adj[s]) best = std::min(best, dist(pts[v], pts[t]));
            double st = dist(ps, pts[t]);
            double m = (st - best) / st;
            if (std::isnan(m)) m = -inf;
            if (m < out.min_relative_margin) {
                out.min_relative_margin = m;
                out.worst_pair = {s, t};
            }
        }
    }
    return out;
}

verdict verify_greedy_oracle(const graph& g, const embedding& e) {
    validate_embedding(g, e);
    int n = g.vertex_count;
    auto adj = adjacency(g);
    std::vector<double> dt(n);
    std::vector<char> reach(n);
    std::vector<int> stack;
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < n; ++v) dt[v] = dist(e.points[v], e.points[t]);
        // Walk the descending arcs u -> v backwards from t.
        std::fill(reach.begin(), reach.end(), 0);
        reach[t] = 1;
        stack.assign(1, t);
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (!reach[u] && dt[v] < dt[u]) {
                    reach[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
        }
        if (count != n) return verdict::violated;
    }
    return verdict::greedy;
}

greedy_route greedy_path(const graph& g, const embedding& e, int s, int t) {
    validate_embedding(g, e);
    if (s < 0 || t < 0 || s >= g.vertex_count || t >= g.vertex_count) throw graph_error("route endpoint out of range");
    if (s == t) throw graph_error("route source equals target");
    auto adj = adjacency(g);
    greedy_route r;
    r.path.push_back(s);
    int cur = s;
    while (cur != t) {
        double here = dist(e.points[cur], e.points[t]);
        int best = -1;
        double best_d = inf;
        for (int v : adj[cur]) {
            double d = dist(e.points[v], e.points[t]);
            if (d < best_d) best_d = d, best = v;
        }
        if (best < 0 || !(best_d < here)) {
            r.stuck = cur;
            return r;
        }
        cur = best;
        r.path.push_back(cur);
    }
    r.delivered = true;
    return r;
}

double aspect_ratio(const graph& g, const embedding& e) {
    if (g.edges.empty()) throw graph_error("aspect ratio of an edgeless graph");
    if (static_cast<int>(e.points.size()) != g.vertex_count) throw geometry_error("embedding size mismatch");
    double lo = inf, hi = 0.0;
    for (auto [a, b] : g.edges) {
        double l = dist(e.points[a], e.points[b]);
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    if (!(lo > 0.0)) throw geometry_error("zero-length edge");
    return hi / lo;
}

}  // namespace gcactus
