// Command-line front end. Results go to stdout as JSON (or to --out); errors go
// to stderr as a JSON object. Exit status: 0 success, 1 embedding not greedy
// (verify), 2 error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcactus/diagnostics.hpp"
#include "gcactus/embedder.hpp"
#include "gcactus/error.hpp"
#include "gcactus/experiment.hpp"
#include "gcactus/families.hpp"
#include "gcactus/io.hpp"
#include "gcactus/optimizer.hpp"
#include "gcactus/svg.hpp"
#include "gcactus/verify.hpp"

using namespace gcactus;
using json = nlohmann::json;

namespace {

constexpr int exit_not_greedy = 1;
constexpr int exit_error = 2;

void emit(const std::string& out, const std::string& content) {
    if (out.empty())
        std::cout << content;
    else
        write_file_atomic(out, content);
}

void report(const json& j) { std::cout << j.dump(2) << '\n'; }

int resolve_root(const std::string& root, const graph_document& doc) {
    if (root == "auto") return auto_root;
    if (root.empty()) return doc.family ? doc.family->default_root() : auto_root;
    try {
        std::size_t used = 0;
        int r = std::stoi(root, &used);
        if (used == root.size()) return r;
    } catch (const std::exception&) {
    }
    throw error("--root expects a vertex index or 'auto', got '" + root + "'");
}

json halving_json(const std::vector<halving_row>& rows) {
    json a = json::array();
    for (const auto& h : rows) a.push_back({{"i", h.i}, {"r", h.r}, {"bc_by", h.bc_by}, {"ab_bc", h.ab_bc}});
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Greedy embeddings of Christmas cactus graphs"};
    app.require_subcommand(1);

    int k = 1;
    std::string kind = "gk";
    double tolerance = default_tolerance;
    std::uint64_t seed = 1;
    int restarts = 0;
    std::string out;
    std::string svg_panels = "on";
    std::string root;
    std::string graph_path, embedding_path, init_path;
    bool constants = false;
    int threads = 1;

    auto add_out = [&](CLI::App* c) { c->add_option("--out", out, "Output file (default stdout)"); };

    auto* gen = app.add_subcommand("gen", "Write a G_k or F_k graph file");
    gen->add_option("--k", k, "Family parameter")->check(CLI::Range(1, 1000));
    gen->add_option("--kind", kind, "Family")->check(CLI::IsMember({"gk", "fk"}));
    add_out(gen);

    auto* embed = app.add_subcommand("embed", "Constructive greedy embedding of a Christmas cactus");
    embed->add_option("graph", graph_path, "Graph file")->required();
    embed->add_option("--root", root, "Root vertex index or 'auto' (default: family root, else auto)");
    embed->add_option("--tolerance", tolerance, "Certification tolerance")->check(CLI::PositiveNumber);
    add_out(embed);

    auto* verify = app.add_subcommand("verify", "Certify an embedding as greedy");
    verify->add_option("graph", graph_path, "Graph file")->required();
    verify->add_option("embedding", embedding_path, "Embedding file")->required();
    verify->add_option("--tolerance", tolerance, "Certification tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));

    auto* optimize = app.add_subcommand("optimize", "Search for a low aspect-ratio greedy embedding");
    optimize->add_option("graph", graph_path, "Graph file")->required();
    optimize->add_option("--init", init_path, "Starting embedding file (default: constructive layout)");
    optimize->add_option("--restarts", restarts, "Restarts")->check(CLI::Range(1, 100000));
    optimize->add_option("--seed", seed, "Random seed");
    optimize->add_option("--tolerance", tolerance, "Certification tolerance")->check(CLI::PositiveNumber);
    optimize->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
    add_out(optimize);

    auto* diagnose = app.add_subcommand("diagnose", "Angle and halving monitors for a family embedding");
    diagnose->add_option("graph", graph_path, "Graph file with family metadata");
    diagnose->add_option("embedding", embedding_path, "Embedding file");
    diagnose->add_flag("--constants", constants, "Print the trigonometric constants instead");

    auto* svg = app.add_subcommand("svg", "Render an embedding");
    svg->add_option("graph", graph_path, "Graph file")->required();
    svg->add_option("embedding", embedding_path, "Embedding file")->required();
    svg->add_option("--svg-panels", svg_panels, "Per-copy zoom panels for F_k")->check(CLI::IsMember({"on", "off"}));
    add_out(svg);

    auto* experiment = app.add_subcommand("experiment", "Aspect-ratio table for F_1..F_k");
    experiment->add_option("--k", k, "Largest k")->check(CLI::Range(1, 1000));
    experiment->add_option("--restarts", restarts, "Optimizer restarts per row (0 skips the optimizer)")
        ->check(CLI::Range(0, 100000));
    experiment->add_option("--seed", seed, "Optimizer seed");
    experiment->add_option("--tolerance", tolerance, "Certification tolerance")->check(CLI::PositiveNumber);
    add_out(experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << '\n';
        return exit_error;
    }

    try {
        if (*gen) {
            auto f = kind == "gk" ? gen_gk(k) : gen_fk(k);
            emit(out, serialize_graph(f));
        } else if (*embed) {
            auto doc = parse_graph(read_file(graph_path));
            embedder_params p;
            p.tolerance = tolerance;
            auto r = embed_christmas_cactus(doc.g, p, resolve_root(root, doc));
            emit(out, serialize_embedding(r.points));
            if (!out.empty())
                report({{"certified", true},
                        {"root", r.root},
                        {"aspect_ratio", r.aspect_ratio},
                        {"min_relative_margin", r.min_relative_margin},
                        {"retries", r.retries}});
        } else if (*verify) {
            auto doc = parse_graph(read_file(graph_path));
            auto e = parse_embedding(read_file(embedding_path));
            auto c = verify_greedy(doc.g, e, tolerance, threads);
            report({{"verdict", to_string(c.result)},
                    {"min_relative_margin", c.min_relative_margin},
                    {"worst_pair", {c.worst_pair.first, c.worst_pair.second}},
                    {"aspect_ratio", c.aspect_ratio},
                    {"tolerance", c.tolerance}});
            return c.greedy() ? 0 : exit_not_greedy;
        } else if (*optimize) {
            auto doc = parse_graph(read_file(graph_path));
            optimizer_config cfg;
            if (restarts > 0) cfg.restarts = restarts;
            cfg.seed = seed;
            cfg.tolerance = tolerance;
            cfg.threads = threads;
            std::optional<embedding> init;
            if (!init_path.empty()) {
                init = parse_embedding(read_file(init_path));
            } else {
                embedder_params p;
                p.tolerance = tolerance;
                auto lay = layout_christmas_cactus(doc.g, p, doc.family ? doc.family->default_root() : auto_root);
                if (lay.certified) init = lay.points;
            }
            auto t = minimize_aspect_ratio(doc.g, init, cfg);
            if (!t.best) throw embed_error("no restart produced a certified embedding");
            emit(out, serialize_embedding(*t.best));
            if (!out.empty())
                report({{"certified", true}, {"aspect_ratio", t.best_ratio}, {"best_restart", t.best_restart}});
        } else if (*diagnose) {
            if (constants) {
                json rows = json::array();
                for (const auto& r : lemma_constants_check())
                    rows.push_back({{"expression", r.expression},
                                    {"value", r.value},
                                    {"stated", r.stated},
                                    {"bound", r.bound},
                                    {"below_bound", r.below_bound}});
                report({{"constants", rows}});
                return 0;
            }
            if (graph_path.empty() || embedding_path.empty())
                throw error("diagnose needs a graph file and an embedding file, or --constants");
            auto doc = parse_graph(read_file(graph_path));
            if (!doc.family) throw graph_error("graph file carries no family metadata");
            auto e = parse_embedding(read_file(embedding_path));
            validate_embedding(doc.g, e);
            auto rep = narrow_copies(*doc.family, e);
            json copies = json::array();
            for (const auto& c : rep.copies)
                copies.push_back({{"copy", c.copy},
                                  {"max_angle_deg", c.max_angle_deg},
                                  {"narrow", c.narrow},
                                  {"halving", halving_json(c.halving)}});
            report({{"narrow_copies", rep.narrow_copies}, {"copies", copies}});
        } else if (*svg) {
            auto doc = parse_graph(read_file(graph_path));
            auto e = parse_embedding(read_file(embedding_path));
            svg_options opt;
            opt.family = doc.family ? &*doc.family : nullptr;
            opt.zoom_panels = svg_panels == "on";
            emit(out, render_svg(doc.g, e, opt));
        } else if (*experiment) {
            experiment_config cfg;
            cfg.k_max = k;
            cfg.embedder.tolerance = tolerance;
            cfg.optimize = restarts > 0;
            if (cfg.optimize) cfg.optimizer.restarts = restarts;
            cfg.optimizer.seed = seed;
            cfg.optimizer.tolerance = tolerance;
            auto rows = run_experiment(cfg, out);
            if (out.empty()) std::cout << experiment_csv(rows);
        }
    } catch (const parse_error& e) {
        std::cerr << json{{"error",
                           {{"type", "parse_error"}, {"message", e.what()}, {"line", e.line()}, {"field", e.field()}}}}
                         .dump()
                  << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::string type = dynamic_cast<const graph_error*>(&e)      ? "graph_error"
                           : dynamic_cast<const geometry_error*>(&e) ? "geometry_error"
                           : dynamic_cast<const embed_error*>(&e)    ? "embed_error"
                                                                     : "error";
        std::cerr << json{{"error", {{"type", type}, {"message", e.what()}}}}.dump() << '\n';
        return exit_error;
    }
    return 0;
}
