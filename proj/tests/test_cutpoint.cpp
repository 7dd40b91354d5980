#include <doctest.h>

#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"
#include "contree/verify.hpp"
#include "testing.hpp"

using namespace contree;

TEST_CASE("cut point inventory") {
    auto barbell = testing::corpus("barbell");
    auto cuts = cut_points(barbell);
    CHECK(cuts.vertices.size() == 2);
    CHECK(cuts.bridges.size() == 1);
    CHECK(barbell.edge(*cuts.bridges.begin()).name == "bridge");

    CHECK(cut_points(testing::corpus("c5")).empty());
    CHECK(cut_points(testing::corpus("k4")).empty());
    CHECK(cut_points(testing::corpus("star")).vertices.size() == 1);
    CHECK(cut_points(testing::corpus("star")).bridges.size() == 3);
    CHECK(cut_points(testing::corpus("two_k4")).vertices.size() == 1);
    CHECK(cut_points(testing::corpus("two_k4")).bridges.empty());
}

TEST_CASE("cut-point trees of the corpus") {
    SUBCASE("C5 is one class") {
        auto T = build_cutpoint_tree(testing::corpus("c5"));
        CHECK(T.node_count() == 1);
        CHECK(T.node(0).kind == NodeKind::Class);
    }
    SUBCASE("barbell is a path of two classes and two cut points") {
        auto T = build_cutpoint_tree(testing::corpus("barbell"));
        REQUIRE(T.is_tree());
        CHECK(T.node_count() == 4);
        CHECK(testing::count_kind(T, NodeKind::CutPoint) == 2);
        auto a = T.require("class:v:a1"), b = T.require("class:v:a2");
        auto path = T.path(a, b);
        REQUIRE(path.size() == 4);
        CHECK(T.node(path[1]).key == "cut:u1");
        CHECK(T.node(path[2]).key == "cut:v1");
        auto bridge = T.arc_between(path[1], path[2]);
        REQUIRE(bridge);
        CHECK(T.arc(*bridge).kind == ArcKind::Bridge);
        CHECK(T.arc(*bridge).provenance == "e:bridge");
    }
    SUBCASE("star: leaves are singleton classes around the center") {
        auto T = build_cutpoint_tree(testing::corpus("star"));
        auto c = T.require("cut:c");
        CHECK(T.incident(c).size() == 3);
        for (const auto& [w, arc] : T.incident(c)) {
            CHECK(T.node(w).kind == NodeKind::Class);
            CHECK(T.arc(arc).kind == ArcKind::Bridge);
        }
    }
    SUBCASE("two K4 sharing a vertex") {
        auto T = build_cutpoint_tree(testing::corpus("two_k4"));
        CHECK(T.node_count() == 3);
        auto w = T.require("cut:w");
        CHECK(T.incident(w).size() == 2);
    }
}

TEST_CASE("pretree P passes its suites on every corpus graph") {
    for (std::size_t grid : {1, 3, 5})
        for (const auto& e : bundled_corpus()) {
            auto X = parse_graph(e.text);
            CAPTURE(e.name);
            CAPTURE(grid);
            for (const auto& c : check_cutpoint(X, grid)) {
                CAPTURE(c.group + "/" + c.name + ": " + c.detail);
                CHECK(c.pass);
            }
        }
}

TEST_CASE("canonical metrization") {
    auto star = build_cutpoint_tree(testing::corpus("star"));
    auto M = metrize(star, MetricMode::Canonical);
    // one new segment per leaf: 1, 1/2, 1/4
    CHECK(M.total_length() == Rational(7, 4));
    CHECK(replay_canonical_lengths(star) == [&] {
        std::vector<Rational> v;
        for (const auto& a : M.arcs()) v.push_back(a.length);
        return v;
    }());

    SUBCASE("the seed moves the root but keeps the schedule") {
        auto S = metrize(star, MetricMode::Canonical, std::string("class:v:l3"));
        CHECK(S == metrize(star, MetricMode::Canonical, std::string("class:v:l3")));
        CHECK(S.total_length() == Rational(7, 4));
        auto l3 = S.require("class:v:l3");
        CHECK(S.arc(S.incident(l3)[0].second).length == Rational(1));
        std::vector<Rational> replay = replay_canonical_lengths(star, std::string("class:v:l3"));
        for (std::size_t a = 0; a < S.arc_count(); ++a) CHECK(replay[a] == S.arc(a).length);
        CHECK_THROWS_AS(metrize(star, MetricMode::Canonical, std::string("nope")), InputError);
    }
    SUBCASE("geometric barbell is 1 + bridge + 1") {
        auto X = testing::corpus("barbell");
        auto G = metrize(build_cutpoint_tree(X), MetricMode::Geometric, {}, &X);
        CHECK(G.total_length() == Rational(4));
    }
}

TEST_CASE("induced maps on the cut-point tree") {
    auto X = testing::corpus("barbell");
    auto T = build_cutpoint_tree(X);
    auto autos = enumerate_automorphisms(X);
    CHECK(autos.size() == 8);
    std::size_t swaps = 0;
    for (const auto& g : autos) {
        auto m = induced_map(T, X, g);
        CHECK_NOTHROW(validate_tree_map(T, m));
        swaps += m.node_image[T.require("cut:u1")] == T.require("cut:v1");
    }
    CHECK(swaps == 4);
}
