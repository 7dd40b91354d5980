#include <doctest.h>

#include "contree/actions.hpp"
#include "contree/cutpair.hpp"
#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"
#include "contree/verify.hpp"
#include "testing.hpp"

using namespace contree;

TEST_CASE("line maps: algebra") {
    auto t = LineMap::translation(Rational(3));
    CHECK(t.apply(Rational(1)) == Rational(4));
    CHECK(t.inverse().apply(Rational(4)) == Rational(1));
    auto r = LineMap::reflection(Rational(1));
    CHECK(r.apply(Rational(0)) == Rational(2));
    CHECK_FALSE(r.increasing());
    CHECK(r.compose(r) == LineMap::translation(Rational(0)));

    LineMap bent({{Rational(-1), Rational(-2)}, {Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
    CHECK(bent.apply(Rational(-3)) == Rational(-6));
    CHECK(bent.apply(Rational(5)) == Rational(5));
    CHECK(bent.compose(bent.inverse()) == LineMap::translation(Rational(0)));
    auto F = bent.fixed_set();
    REQUIRE(F.size() == 1);
    CHECK(F[0] == LineInterval{Rational(0), std::nullopt});

    CHECK_THROWS_AS(LineMap({{Rational(0), Rational(0)}}), InputError);
    CHECK_THROWS_AS(LineMap({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}), InputError);
}

TEST_CASE("line maps: classification") {
    auto t = classify(LineMap::translation(Rational(1)));
    CHECK(t.type == ActionType::Hyperbolic);
    REQUIRE(t.translation);
    CHECK(*t.translation == Rational(1));
    CHECK(t.fixed.empty());

    auto r = classify(LineMap::reflection(Rational(1, 2)));
    CHECK(r.type == ActionType::Elliptic);
    CHECK(r.fixed_connected);
    CHECK(r.fixed[0] == LineInterval{Rational(1, 2), Rational(1, 2)});

    LineMap half({{Rational(0), Rational(0)}, {Rational(1), Rational(1, 2)}});
    CHECK_FALSE(is_non_nesting(half).non_nesting);
    CHECK_THROWS_AS(classify(half), PreconditionError);
}

TEST_CASE("disjoint fixed points give a hyperbolic commutator") {
    std::vector<LineMap> gens{LineMap::reflection(Rational(0)), LineMap::reflection(Rational(1))};
    auto res = global_fixed_point(gens);
    CHECK_FALSE(res.point);
    REQUIRE(res.disjoint_pair);
    CHECK(*res.disjoint_pair == std::pair<std::size_t, std::size_t>{0, 1});
    REQUIRE(res.commutator);
    CHECK(*res.commutator == LineMap::translation(Rational(-4)));
    REQUIRE(res.commutator_class);
    CHECK(res.commutator_class->type == ActionType::Hyperbolic);

    std::vector<LineMap> same{LineMap::reflection(Rational(2)), LineMap::reflection(Rational(2))};
    auto both = global_fixed_point(same);
    REQUIRE(both.point);
    CHECK(*both.point == Rational(2));

    CHECK_THROWS_AS(global_fixed_point({LineMap::translation(Rational(1))}), PreconditionError);
}

TEST_CASE("periodic line") {
    SyntheticLine line{{Rational(1), Rational(2)}};
    CHECK(line.period() == Rational(3));
    CHECK(line.nodes(Rational(3)) == std::vector<Rational>{Rational(-3), Rational(-2), Rational(0), Rational(1), Rational(3)});
    auto c = classify(line.shift());
    CHECK(c.type == ActionType::Hyperbolic);
    REQUIRE(c.c);
    CHECK(*c.translation == line.period());
    auto s = line.shift();
    CHECK(s.apply(*c.c) - *c.c == line.period());

    SUBCASE("fixed ends of conjugate families") {
        LineMap ray({{Rational(-1), Rational(-2)}, {Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
        CHECK(fixed_end(line, ray).kind == EndKind::PlusInfinity);
        LineMap left({{Rational(-1), Rational(-1)}, {Rational(0), Rational(0)}, {Rational(1), Rational(2)}});
        CHECK(fixed_end(line, left).kind == EndKind::None);
        CHECK(fixed_end(line, LineMap::translation(Rational(0))).kind == EndKind::None);
        CHECK(fixed_end(line, LineMap::reflection(Rational(0))).kind == EndKind::Inconclusive);
        CHECK_THROWS_AS(fixed_end(line, LineMap::translation(Rational(1))), PreconditionError);
    }
}

TEST_CASE("finite trees: automorphisms act elliptically") {
    SUBCASE("C5 rotation fixes the single JSJ node") {
        auto X = testing::corpus("c5");
        auto T = build_jsj_tree(X);
        auto g = parse_automorphism("pv v0 v1\npv v1 v2\npv v2 v3\npv v3 v4\npv v4 v0\n", X);
        auto m = induce_tree_map(T, X, g);
        auto c = classify(T, m);
        CHECK(c.type == ActionType::Elliptic);
        CHECK(c.fixed.nodes == std::set<std::size_t>{0});
    }
    SUBCASE("star rotations share the center") {
        auto X = testing::corpus("star");
        auto T = build_cutpoint_tree(X);
        std::vector<TreeMap> gens{
            induce_tree_map(T, X, parse_automorphism("pv l1 l2\npv l2 l3\npv l3 l1\n", X)),
            induce_tree_map(T, X, parse_automorphism("pv l1 l2\npv l2 l1\n", X)),
        };
        auto r = global_fixed_point(T, gens);
        REQUIRE(r.point);
        REQUIRE(r.point->node);
        CHECK(T.node(*r.point->node).key == "cut:c");
        CHECK(fixed_end(T, gens).kind == EndKind::None);
    }
    SUBCASE("barbell swap fixes the bridge midpoint") {
        auto X = testing::corpus("barbell");
        auto T = build_cutpoint_tree(X);
        auto g = parse_automorphism("pv u1 v1\npv v1 u1\npv a1 a2\npv a2 a1\npv b1 b2\npv b2 b1\n", X);
        auto c = classify(T, induce_tree_map(T, X, g));
        CHECK(c.type == ActionType::Elliptic);
        CHECK(c.fixed.nodes.empty());
        CHECK(c.fixed.midpoints.size() == 1);
    }
    for (const auto& e : bundled_corpus()) {
        CAPTURE(e.name);
        for (const auto& c : check_actions(parse_graph(e.text), 3)) {
            CAPTURE(c.name + ": " + c.detail);
            CHECK(c.pass);
        }
    }
}
