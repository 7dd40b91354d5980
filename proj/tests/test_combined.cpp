#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "contree/combined.hpp"
#include "contree/cutpair.hpp"
#include "contree/verify.hpp"
#include "testing.hpp"

using namespace contree;

namespace {

bool attached(const CombinedTree& C, const std::string& cut, const std::string& node) {
    return std::any_of(C.attachments.begin(), C.attachments.end(),
                       [&](const Attachment& a) { return a.cut_point == cut && a.node == node; });
}

}  // namespace

TEST_CASE("block closures keep names and lengths") {
    auto X = testing::corpus("barbell");
    auto P = build_P(X);
    for (const auto& cls : P.classes()) {
        auto B = block_closure(X, cls);
        CHECK(B.is_cycle_graph());
        CHECK(B.vertex_count() == 3);
        CHECK(cut_points(B).empty());
        for (const auto& e : B.edges()) CHECK(X.find_edge(e.name));
    }
}

TEST_CASE("combined trees of the corpus") {
    SUBCASE("barbell: triangles collapse, bridge stays") {
        auto C = build_combined_tree(testing::corpus("barbell"));
        CHECK(C.tree.name == "combined");
        CHECK(C.tree.node_count() == 4);
        CHECK(testing::count_kind(C.tree, NodeKind::Necklace) == 2);
        auto u = C.tree.require("cut:u1"), v = C.tree.require("cut:v1");
        auto bridge = C.tree.arc_between(u, v);
        REQUIRE(bridge);
        CHECK(C.tree.arc(*bridge).kind == ArcKind::Bridge);
        CHECK(C.attachments.size() == 2);
    }
    SUBCASE("two K4 meet at the shared vertex's sets") {
        auto C = build_combined_tree(testing::corpus("two_k4"));
        CHECK(C.tree.is_tree());
        CHECK(C.tree.node_count() == 27);
        auto w = C.tree.require("cut:w");
        CHECK(C.tree.incident(w).size() == 2);
        for (const auto& [n, a] : C.tree.incident(w)) CHECK(C.tree.node(n).kind == NodeKind::InseparableSet);
        CHECK(attached(C, "cut:w", "class:v:p1/set:p1,p2,p3,w"));
        CHECK(attached(C, "cut:w", "class:v:q1/set:q1,q2,q3,w"));
    }
    SUBCASE("theta with a pendant triangle") {
        auto C = build_combined_tree(testing::corpus("theta_pendant"));
        CHECK(attached(C, "cut:a", "class:v:b/pair:a,b"));
        CHECK(attached(C, "cut:a", "class:v:t1/necklace:v:a,v:t1,v:t2,e:f1,e:f2,e:f3"));
        auto pair = C.tree.require("class:v:b/pair:a,b");
        CHECK(C.tree.node(pair).block == "v:b,e:e1,e:e2,e:e3");
        CHECK(C.tree.incident(pair).size() == 4);
    }
    SUBCASE("no cut points: the JSJ tree itself") {
        for (auto name : {"c5", "theta", "k4"}) {
            auto X = testing::corpus(name);
            auto C = build_combined_tree(X);
            auto J = build_jsj_tree(X);
            CHECK(C.tree.node_count() == J.node_count());
            CHECK(C.attachments.empty());
        }
        auto C = build_combined_tree(testing::data_graph("k4_cycle.graph"));
        CHECK(C.tree.node_count() == 40);
    }
    SUBCASE("trees without blocks are unchanged") {
        for (auto name : {"arc", "path3", "star"}) {
            auto X = testing::corpus(name);
            CHECK(build_combined_tree(X).tree.same_topology(build_cutpoint_tree(X)));
        }
    }
}

TEST_CASE("a pendant edge on K4 attaches at the center of its elements") {
    // u lies in three necklaces, three pairs and the set; the set is central
    auto X = parse_graph("v u\nv v\nv w\nv x\nv p\ne uv u v\ne uw u w\ne ux u x\ne vw v w\ne vx v x\ne wx w x\ne up u p\n");
    auto C = build_combined_tree(X);
    CHECK(C.tree.is_tree());
    auto u = C.tree.require("cut:u");
    bool to_set = false;
    for (const auto& [n, a] : C.tree.incident(u)) to_set = to_set || C.tree.node(n).kind == NodeKind::InseparableSet;
    CHECK(to_set);
}

TEST_CASE("combined suite on the corpus") {
    for (const auto& e : bundled_corpus()) {
        CAPTURE(e.name);
        for (const auto& c : check_combined(parse_graph(e.text), 3)) {
            CAPTURE(c.detail);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("random cycles with chords and a hanging piece pass the full suite") {
    std::mt19937 rng(41);
    for (int round = 0; round < 16; ++round) {
        auto n = 2 + rng() % 4, chords = rng() % 4;
        std::ostringstream g;
        for (std::size_t i = 0; i < n + 2; ++i) g << "v x" << i << "\n";
        for (std::size_t i = 0; i < n; ++i) g << "e c" << i << " x" << i << " x" << (i + 1) % n << "\n";
        for (std::size_t j = 0; j < chords; ++j) {
            auto a = rng() % n, b = rng() % n;
            if (a == b) b = (a + 1) % n;
            g << "e d" << j << " x" << a << " x" << b << "\n";
        }
        g << "e t1 x0 x" << n << "\ne t2 x" << n << " x" << n + 1 << "\n";
        if (rng() % 2) g << "e t3 x" << n + 1 << " x0\n";
        CAPTURE(g.str());
        auto report = verify_graph("random", parse_graph(g.str()), 3, VerifyLevel::Full);
        for (const auto& c : report.checks) {
            CAPTURE(c.group + "/" + c.name + ": " + c.detail);
            CHECK(c.pass);
        }
    }
}
