#include <doctest.h>

#include <random>

#include "contree/errors.hpp"
#include "contree/pretree.hpp"

using namespace contree;

namespace {

StructuralTree random_tree(std::mt19937& rng, std::size_t n) {
    StructuralTree t;
    for (std::size_t i = 0; i < n; ++i) t.add_node(TreeNode{"n" + std::to_string(i), NodeKind::Point, "n" + std::to_string(i)});
    for (std::size_t i = 1; i < n; ++i) t.add_arc(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
    return t;
}

std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

}  // namespace

TEST_CASE("betweenness of a path") {
    auto t = BetweennessTable::from(names(4), [](auto x, auto z, auto y) {
        return std::min(x, y) < z && z < std::max(x, y);
    });
    CHECK(verify_pretree_axioms(t).passed());
    auto I = interval(t, "x0", "x3", IntervalKind::Closed);
    CHECK(I.members.size() == 4);
    CHECK(interval(t, 0, 3, IntervalKind::Open).members.size() == 2);
    CHECK(interval(t, 0, 3, IntervalKind::HalfOpen).members.size() == 3);

    auto cls = classify_nodes(t);
    CHECK(cls.adjacent.size() == 3);
    CHECK(cls.terminal == std::vector<std::size_t>{0, 3});

    auto tree = assemble_tree(t);
    CHECK(tree.is_tree());
    CHECK(tree.arc_count() == 3);
    CHECK(tree_betweenness(tree) == t);
}

TEST_CASE("broken tables violate the axioms") {
    // four points on a circle; opposite points have both others between them
    BetweennessTable circle(names(4));
    for (std::size_t x = 0; x < 4; ++x) {
        auto y = (x + 2) % 4;
        circle.set(x, (x + 1) % 4, y);
        circle.set(x, (x + 3) % 4, y);
    }
    CHECK_FALSE(verify_pretree_axioms(circle).passed());
    CHECK_THROWS_AS(assemble_tree(circle), PreconditionError);

    BetweennessTable bad(names(3));
    bad.set(0, 1, 2);
    CHECK_FALSE(verify_pretree_axioms(bad).passed());  // not symmetric
    bad.set(2, 1, 0);
    bad.set(1, 0, 2);
    bad.set(2, 0, 1);
    CHECK_FALSE(verify_pretree_axioms(bad).passed());  // 1 in (0,2) and 0 in (1,2)

    // three points with nothing between: no tree realizes it
    CHECK_THROWS_AS(assemble_tree(BetweennessTable(names(3))), PreconditionError);
}

TEST_CASE("random trees: table, axioms, reassembly") {
    std::mt19937 rng(20261015);
    for (int round = 0; round < 60; ++round) {
        auto n = std::uniform_int_distribution<std::size_t>(1, 14)(rng);
        auto T = random_tree(rng, n);
        CAPTURE(n);
        auto t = tree_betweenness(T);
        CHECK(verify_pretree_axioms(t).passed());
        CHECK_FALSE(check_interval_subset(t));
        CHECK_FALSE(check_nested_unions(t));
        CHECK_FALSE(check_supremum(t));
        auto cls = classify_nodes(t);
        CHECK(cls.adjacent.size() == n - 1);
        auto back = assemble_tree(t);
        CHECK(back.is_tree());
        CHECK(tree_betweenness(back) == t);

        // restriction to a subset of leaves and branch points stays a pretree
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (rng() % 2) subset.push_back(i);
        if (!subset.empty()) CHECK(verify_pretree_axioms(t.restrict_to(subset)).passed());
    }
}

TEST_CASE("neighborhood of a node away from a set") {
    // star with center 0 and leaves 1..3
    StructuralTree t;
    for (int i = 0; i < 4; ++i) t.add_node(TreeNode{"s" + std::to_string(i), NodeKind::Point, ""});
    for (std::size_t i = 1; i < 4; ++i) t.add_arc(0, i);
    auto U = neighborhood(t, 0, {1});
    CHECK(U.nodes.count(0));
    CHECK_FALSE(U.nodes.count(1));
    CHECK(U.nodes.count(2));
    CHECK(U.nodes.count(3));
}
