// contree: cut-point, JSJ and combined trees of finite graphs.
//
//   contree cutpoint-tree <graph> [--metric canonical|geometric] [--seed <key>]
//   contree jsj-tree <graph>
//   contree combined <graph>
//   contree action <graph> <automorphism>
//   contree verify [<graph>]
//
// Exit codes: 0 ok, 2 bad input, 3 invariant violation, 4 cut points given
// to jsj-tree.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "contree/actions.hpp"
#include "contree/combined.hpp"
#include "contree/continuum.hpp"
#include "contree/cutpair.hpp"
#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"
#include "contree/tree_io.hpp"
#include "contree/tree_map.hpp"
#include "contree/verify.hpp"

namespace {

using namespace contree;

struct RunConfig {
    std::string command;
    std::string input;
    std::string automorphism;
    std::size_t grid = 3;
    MetricMode metric = MetricMode::Canonical;
    std::optional<std::string> seed;
    bool dot = false;
    VerifyLevel verify = VerifyLevel::Off;
    std::string out;
};

struct ExitCode {
    int code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + cfg.out);
    f << text;
}

std::string render(const RunConfig& cfg, const StructuralTree& t, const std::string& extra = {}) {
    return cfg.dot ? write_tree_dot(t) : write_tree_text(t) + extra;
}

void run_checks(const RunConfig& cfg, const GraphContinuum& X) {
    if (cfg.verify == VerifyLevel::Off) return;
    auto report = verify_graph(cfg.input, X, cfg.grid, cfg.verify);
    for (const auto& c : report.checks)
        if (!c.pass) std::cerr << "FAIL " << c.group << "/" << c.name << ": " << c.detail << "\n";
    if (!report.passed()) throw ExitCode{3};
}

std::string describe_actions(const GraphContinuum& X, const GraphAutomorphism& g, std::size_t grid) {
    std::vector<std::pair<std::string, StructuralTree>> trees;
    trees.emplace_back("cutpoint", build_cutpoint_tree(X, grid));
    if (cut_points(X).empty()) trees.emplace_back("jsj", build_jsj_tree(X, grid));
    trees.emplace_back("combined", build_combined_tree(X, grid).tree);

    std::ostringstream out;
    out << "# automorphism " << format_automorphism(X, g) << "\n";
    for (const auto& [name, T] : trees) {
        auto m = induce_tree_map(T, X, g);
        auto nest = is_non_nesting(T, m);
        out << "action tree=" << quote(name);
        if (!nest.non_nesting) {
            out << " nesting=" << quote(nest.witness) << "\n";
            continue;
        }
        auto c = classify(T, m);
        out << " type=" << to_string(c.type) << " fixed=" << quote(c.fixed.describe(T))
            << " connected=" << (c.fixed_connected ? "true" : "false") << "\n";
    }
    return out.str();
}

int run(const RunConfig& cfg) {
    if (cfg.command == "verify" && cfg.input.empty()) {
        std::vector<std::size_t> grids{cfg.grid};
        if (cfg.grid != 5) grids.push_back(5);
        auto level = cfg.verify == VerifyLevel::Off ? VerifyLevel::Full : cfg.verify;
        auto report = verify_corpus(grids, level);
        emit(cfg, report.matrix());
        return report.passed() ? 0 : 3;
    }

    auto X = parse_graph(read_file(cfg.input));
    if (cfg.command == "cutpoint-tree") {
        auto T = metrize(build_cutpoint_tree(X, cfg.grid), cfg.metric, cfg.seed, &X);
        run_checks(cfg, X);
        emit(cfg, render(cfg, T));
    } else if (cfg.command == "jsj-tree") {
        auto cuts = cut_points(X);
        if (!cuts.vertices.empty() || !cuts.bridges.empty() || X.edge_count() == 0) {
            std::cerr << "error: " << cfg.input << " has cut points; use `contree combined` for per-block trees\n";
            return 4;
        }
        auto A = build_R(X, cfg.grid);
        auto T = build_jsj_tree(A);
        run_checks(cfg, X);
        emit(cfg, render(cfg, T, write_cutpair_records(A)));
    } else if (cfg.command == "combined") {
        auto C = build_combined_tree(X, cfg.grid);
        run_checks(cfg, X);
        std::string extra;
        for (const auto& a : C.attachments)
            extra += "# attach " + a.cut_point + " -> " + a.node + "\n";
        emit(cfg, render(cfg, C.tree, extra));
    } else if (cfg.command == "action") {
        auto g = parse_automorphism(read_file(cfg.automorphism), X);
        run_checks(cfg, X);
        emit(cfg, describe_actions(X, g, cfg.grid));
    } else if (cfg.command == "verify") {
        std::vector<std::size_t> grids{cfg.grid};
        if (cfg.grid != 5) grids.push_back(5);
        auto level = cfg.verify == VerifyLevel::Off ? VerifyLevel::Full : cfg.verify;
        CorpusReport report;
        for (auto g : grids) report.runs.push_back(verify_graph(cfg.input, X, g, level));
        if (grids.size() > 1) {
            bool same = fingerprint(X, grids[0]) == fingerprint(X, grids[1]);
            report.stability.push_back(Check{"stability", cfg.input, same, same ? "" : "grids disagree"});
        }
        emit(cfg, report.matrix());
        return report.passed() ? 0 : 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cut-point, JSJ and combined trees of finite graphs"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string metric = "canonical", format = "text", verify = "off";
    std::string seed;

    auto common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("graph", cfg.input, "graph file (v/e records)");
        if (needs_input) in->required();
        sub->add_option("--grid", cfg.grid, "grid granularity")->check(CLI::PositiveNumber);
        sub->add_option("--metric", metric, "arc lengths")->check(CLI::IsMember({"canonical", "geometric"}));
        sub->add_option("--seed", seed, "root of the canonical metrization (node key or label)");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"dot", "text"}));
        sub->add_option("--verify", verify, "property suite")->check(CLI::IsMember({"off", "lemmas", "full"}));
        sub->add_option("--out", cfg.out, "output file (default stdout)");
    };
    common(app.add_subcommand("cutpoint-tree", "metrized cut-point tree"), true);
    common(app.add_subcommand("jsj-tree", "cut-pair tree of a graph without cut points"), true);
    common(app.add_subcommand("combined", "cut-point tree refined by block trees"), true);
    auto* action = app.add_subcommand("action", "classify the maps an automorphism induces");
    common(action, true);
    action->add_option("automorphism", cfg.automorphism, "pv/pe records")->required();
    common(app.add_subcommand("verify", "property suites; the bundled corpus when no graph is given"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.metric = metric == "geometric" ? MetricMode::Geometric : MetricMode::Canonical;
    if (!seed.empty()) cfg.seed = seed;
    cfg.dot = format == "dot";
    cfg.verify = verify == "full" ? VerifyLevel::Full : verify == "lemmas" ? VerifyLevel::Lemmas : VerifyLevel::Off;

    try {
        return run(cfg);
    } catch (const ExitCode& e) {
        return e.code;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
}
