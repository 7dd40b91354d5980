// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "contree/actions.hpp"
#include "contree/corpus.hpp"
#include "contree/cutpair.hpp"
#include "contree/cutpoint.hpp"
#include "contree/verify.hpp"

using namespace contree;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::vector<std::pair<std::string, GraphContinuum>> corpus() {
    std::vector<std::pair<std::string, GraphContinuum>> out;
    for (const auto& e : bundled_corpus()) out.emplace_back(std::string(e.name), parse_graph(e.text));
    return out;
}

void absorb(Outcome& o, const std::string& where, const std::vector<Check>& checks, const std::set<std::string>& names = {}) {
    for (const auto& c : checks)
        if ((names.empty() || names.count(c.name)) && !c.pass) o.fail(where + " " + c.group + "/" + c.name + ": " + c.detail);
}

Outcome pretree_axioms() {
    Outcome o;
    const std::set<std::string> axioms{"axioms"};
    for (const auto& [name, X] : corpus()) {
        auto start = std::chrono::steady_clock::now();
        absorb(o, name, check_pretree_table(build_P(X, 3).table(), "P"), axioms);
        for (const auto& [bname, B] : blocks_of(name, X, 3))
            absorb(o, bname, check_pretree_table(build_R(B, 3).table(), "R"), axioms);
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= 10) o.fail(name + " took " + std::to_string(secs) + " s");
    }
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    for (const auto& [name, X] : corpus()) {
        auto P = build_P(X, 3);
        auto c = check_tree_matches_table(build_cutpoint_tree(P), P.table().restrict_to(P.tree_elements()), "P");
        if (!c.pass) o.fail(name + " P: " + c.detail);
        for (const auto& [bname, B] : blocks_of(name, X, 3)) {
            auto A = build_R(B, 3);
            auto r = check_tree_matches_table(build_jsj_tree(A), A.table(), "R");
            if (!r.pass) o.fail(bname + " R: " + r.detail);
        }
    }
    return o;
}

Outcome k4_counts() {
    Outcome o;
    auto A = build_R(parse_graph(find_corpus("k4")->text), 3);
    std::size_t pairs = A.inseparable().pairs.size(), sets4 = 0, sets = 0;
    for (const auto& s : A.inseparable().maximal_sets) sets4 += s.size() == 4, sets += s.size() > 2;
    if (A.necklaces().size() != 6) o.fail(std::to_string(A.necklaces().size()) + " necklaces");
    if (pairs != 6) o.fail(std::to_string(pairs) + " inseparable pairs");
    if (sets != 1 || sets4 != 1) o.fail("maximal inseparable sets are not one set of size 4");
    auto T = build_jsj_tree(A);
    if (T.node_count() != 13) o.fail(std::to_string(T.node_count()) + " JSJ nodes");
    std::size_t legs = 0;
    for (std::size_t i = 0; i < T.node_count(); ++i) {
        if (T.node(i).kind != NodeKind::Necklace) continue;
        if (T.incident(i).size() != 1) continue;
        auto p = T.incident(i)[0].first;
        if (T.node(p).kind != NodeKind::InseparablePair || T.incident(p).size() != 2) continue;
        for (const auto& [c, a] : T.incident(p))
            if (c != i && T.node(c).kind == NodeKind::InseparableSet && T.incident(c).size() == 6) ++legs;
    }
    if (legs != 6) o.fail(std::to_string(legs) + " necklace-pair-center branches");
    return o;
}

Outcome theta_star() {
    Outcome o;
    auto X = parse_graph(find_corpus("theta")->text);
    auto A = build_R(X, 3);
    if (A.R().size() != 4) o.fail("R has " + std::to_string(A.R().size()) + " elements");
    auto T = build_jsj_tree(A);
    auto c = T.find("pair:a,b");
    if (!c || T.incident(*c).size() != 3) {
        o.fail("not a 3-leaf star at pair:a,b");
    } else {
        for (const auto& [l, arc] : T.incident(*c))
            if (T.incident(l).size() != 1) o.fail("neighbour of the center is not a leaf");
    }
    Point ab[] = {Point::vertex(*X.find_vertex("a")), Point::vertex(*X.find_vertex("b"))};
    auto k = components_after_removal(X, ab).size();
    if (k != 3) o.fail("{a,b} leaves " + std::to_string(k) + " components");
    return o;
}

Outcome circle_characterization() {
    Outcome o;
    for (const auto& [name, X] : corpus())
        if (is_circle(X) != X.is_cycle_graph()) o.fail(name);
    return o;
}

Outcome lemma_suite() {
    Outcome o;
    const std::set<std::string> lemmas{"crossing-pairs",         "cyclic-extension",      "necklace-split-by-inner-pair",
                                       "elements-unseparated",   "element-intersections", "segments-meet-elements",
                                       "adjacent-elements",      "singleton-classes-terminal"};
    std::set<std::string> ran;
    for (const auto& [name, X] : corpus()) {
        std::map<std::string, bool> seen[2];
        std::size_t gi = 0;
        for (std::size_t grid : {3, 5}) {
            std::vector<Check> checks = check_cutpoint(X, grid);
            for (const auto& [bname, B] : blocks_of(name, X, grid))
                for (auto& c : check_cutpair(build_R(B, grid))) {
                    c.group += "@" + bname;
                    checks.push_back(std::move(c));
                }
            for (const auto& c : checks)
                if (lemmas.count(c.name)) {
                    ran.insert(c.name);
                    seen[gi][c.group + "/" + c.name] = c.pass;
                    if (!c.pass) o.fail(name + " grid " + std::to_string(grid) + " " + c.name + ": " + c.detail);
                }
            ++gi;
        }
        if (seen[0] != seen[1]) o.fail(name + ": outcomes differ between grids");
    }
    if (ran != lemmas) o.fail("some lemma checks never ran");
    return o;
}

Outcome metrization() {
    Outcome o;
    for (const auto& [name, X] : corpus()) {
        auto T = build_cutpoint_tree(X, 3);
        std::vector<std::optional<std::string>> seeds{std::nullopt};
        for (auto i : metric_span_nodes(T)) seeds.push_back(T.node(i).key);
        for (const auto& seed : seeds) {
            auto M = metrize(T, MetricMode::Canonical, seed);
            if (!(M == metrize(T, MetricMode::Canonical, seed))) o.fail(name + ": not deterministic");
            auto replay = replay_canonical_lengths(T, seed);
            for (std::size_t a = 0; a < T.arc_count(); ++a)
                if (replay[a] != M.arc(a).length) o.fail(name + ": replay differs on arc " + std::to_string(a));
        }
    }
    auto X = parse_graph(find_corpus("barbell")->text);
    auto G = metrize(build_cutpoint_tree(X, 3), MetricMode::Geometric, {}, &X);
    auto bridge = X.edge(*X.find_edge("bridge")).length;
    if (G.total_length() != Rational(1) + bridge + Rational(1))
        o.fail("geometric barbell length " + to_string(G.total_length()));
    return o;
}

Outcome actions() {
    Outcome o;
    for (const auto& [name, X] : corpus()) absorb(o, name, check_actions(X, 3));
    auto res = global_fixed_point({LineMap::reflection(Rational(0)), LineMap::reflection(Rational(1))});
    if (res.point || !res.commutator_class || res.commutator_class->type != ActionType::Hyperbolic)
        o.fail("disjoint reflections: no hyperbolic commutator certificate");
    SyntheticLine line{{Rational(1), Rational(1, 2)}};
    auto c = classify(line.shift());
    if (c.type != ActionType::Hyperbolic || !c.translation || *c.translation != line.period())
        o.fail("periodic shift is not hyperbolic with a period-length segment");
    return o;
}

Outcome grid_stability() {
    Outcome o;
    for (const auto& [name, X] : corpus())
        if (fingerprint(X, 3) != fingerprint(X, 5)) o.fail(name);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"pretree axioms for P and R", pretree_axioms},
        {"tree betweenness equals table betweenness", oracle_equivalence},
        {"K4 structural counts", k4_counts},
        {"theta star", theta_star},
        {"circle characterization", circle_characterization},
        {"lemma suite at grids 3 and 5", lemma_suite},
        {"metrization", metrization},
        {"actions", actions},
        {"grid stability", grid_stability},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
        if (!o.pass) std::cout << ": " << o.detail;
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
