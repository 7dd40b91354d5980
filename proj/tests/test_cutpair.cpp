#include <doctest.h>

#include <algorithm>

#include "contree/cutpair.hpp"
#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"
#include "contree/verify.hpp"
#include "testing.hpp"

using namespace contree;

namespace {

std::size_t count_r(const CutPairAnalysis& A, RKind k) {
    return std::count_if(A.R().begin(), A.R().end(), [&](const RElement& r) { return r.kind == k; });
}

void expect_suite(const CutPairAnalysis& A) {
    for (const auto& c : check_cutpair(A)) {
        CAPTURE(c.group + "/" + c.name + ": " + c.detail);
        CHECK(c.pass);
    }
}

}  // namespace

TEST_CASE("theta: three necklaces around one inseparable pair") {
    auto X = testing::corpus("theta");
    auto A = build_R(X);
    CHECK(A.necklaces().size() == 3);
    CHECK(A.inseparable().pairs.size() == 1);
    CHECK(A.R().size() == 4);
    for (std::size_t i = 0; i < A.necklaces().size(); ++i) {
        auto gaps = A.gaps(i);
        REQUIRE(gaps.size() == 1);
        CHECK(gaps[0].fat);
    }
    auto T = build_jsj_tree(A);
    auto center = T.require("pair:a,b");
    CHECK(T.node(center).kind == NodeKind::InseparablePair);
    CHECK(T.incident(center).size() == 3);
    for (const auto& [w, arc] : T.incident(center)) CHECK(T.node(w).kind == NodeKind::Necklace);
    expect_suite(A);
}

TEST_CASE("K4: six legs necklace, pair, set") {
    for (std::size_t grid : {3, 5}) {
        CAPTURE(grid);
        auto A = build_R(testing::corpus("k4"), grid);
        CHECK(A.necklaces().size() == 6);
        CHECK(A.inseparable().pairs.size() == 6);
        std::size_t big = 0;
        for (const auto& s : A.inseparable().maximal_sets) big += s.size() == 4;
        CHECK(big == 1);
        CHECK(count_r(A, RKind::Necklace) == 6);
        CHECK(count_r(A, RKind::InseparablePair) == 6);
        CHECK(count_r(A, RKind::InseparableSet) == 1);

        auto T = build_jsj_tree(A);
        CHECK(T.node_count() == 13);
        auto center = T.require("set:u,v,w,x");
        CHECK(T.incident(center).size() == 6);
        for (const auto& [p, a1] : T.incident(center)) {
            CHECK(T.node(p).kind == NodeKind::InseparablePair);
            REQUIRE(T.incident(p).size() == 2);
            for (const auto& [n, a2] : T.incident(p))
                if (n != center) {
                    CHECK(T.node(n).kind == NodeKind::Necklace);
                    CHECK(T.incident(n).size() == 1);
                }
        }
        // K4's vertex set is inseparable but not cyclic
        std::vector<std::size_t> V;
        for (VertexId v = 0; v < 4; ++v) V.push_back(*A.oracle().subdivision().node_of(Point::vertex(v)));
        CHECK_FALSE(A.is_cyclic(V));
        if (grid == 3) expect_suite(A);
    }
}

TEST_CASE("C5 is its own necklace") {
    auto X = testing::corpus("c5");
    auto A = build_R(X);
    REQUIRE(A.necklaces().size() == 1);
    CHECK(A.R().size() == 1);
    CHECK(A.necklaces()[0].cycle.size() == 10);
    auto F = A.circle_map(0);
    REQUIRE(F.stations.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        auto node = *A.oracle().subdivision().node_of(Point::vertex(F.stations[i]));
        CHECK(F.angles[A.oracle().atom_index(node)] == Rational(static_cast<long>(i), 5));
    }
    CHECK(build_jsj_tree(A).node_count() == 1);
    expect_suite(A);
}

TEST_CASE("three K4 blocks glued in a cycle") {
    auto X = testing::data_graph("k4_cycle.graph");
    auto A = build_R(X);
    CHECK(A.R().size() == 40);
    CHECK(A.necklaces().size() == 19);
    auto T = build_jsj_tree(A);
    CHECK(T.is_tree());
    CHECK(T.node_count() == 40);
    CHECK(tree_betweenness(T) == A.table().restrict_to([&] {
        std::vector<std::size_t> idx;
        for (const auto& n : T.nodes()) idx.push_back(A.table().index_of(n.key));
        return idx;
    }()));
}

TEST_CASE("cyclic decompositions") {
    auto c5 = testing::corpus("c5");
    std::vector<Point> S{Point::vertex(0), Point::vertex(3), Point::on_edge(1, Rational(1, 2)), Point::vertex(4)};
    auto d = cyclic_decomposition(c5, S);
    REQUIRE(d);
    CHECK(d->stations.size() == 4);
    CHECK_FALSE(d->by_fiat);
    CHECK(d->stations[0] == Point::vertex(0));

    auto theta = testing::corpus("theta");
    Point ab[] = {Point::vertex(0), Point::vertex(1)};
    auto p = cyclic_decomposition(theta, ab);
    REQUIRE(p);
    CHECK(p->by_fiat);

    auto k4 = testing::corpus("k4");
    std::vector<Point> V{Point::vertex(0), Point::vertex(1), Point::vertex(2)};
    CHECK_FALSE(cyclic_decomposition(k4, V));
}

TEST_CASE("circle recognition matches cycle graphs") {
    for (const auto& e : bundled_corpus()) {
        auto X = parse_graph(e.text);
        if (X.edge_count() == 0 || !cut_points(X).empty()) continue;
        CAPTURE(e.name);
        CHECK(is_circle(X) == X.is_cycle_graph());
    }
    auto two = parse_graph("v a\nv b\ne e1 a b\ne e2 a b\n");
    CHECK(is_circle(two));
    auto loop = parse_graph("v a\ne e1 a a\n");
    CHECK(is_circle(loop));
}

TEST_CASE("circle_separates") {
    auto q = [](long n) { return Rational(n, 8); };
    CHECK(circle_separates(q(0), q(4), q(2), q(6)));
    CHECK_FALSE(circle_separates(q(0), q(4), q(1), q(3)));
    CHECK(circle_separates(q(7), q(1), q(0), q(4)));
    CHECK_FALSE(circle_separates(q(7), q(1), q(2), q(4)));
}

TEST_CASE("graphs with cut points are rejected") {
    CHECK_THROWS_AS(build_R(testing::corpus("barbell")), PreconditionError);
    CHECK_THROWS_AS(build_jsj_tree(testing::corpus("star")), PreconditionError);
}
