#include <doctest.h>

#include "contree/continuum.hpp"
#include "contree/errors.hpp"
#include "contree/verify.hpp"
#include "testing.hpp"

using namespace contree;

TEST_CASE("rationals parse and print") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(2, 4)) == "1/2");
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("graph parsing") {
    auto X = parse_graph("# two parallel edges\nv a\nv b\ne e1 a b 3/2\ne e2 a b\n");
    CHECK(X.vertex_count() == 2);
    CHECK(X.edge_count() == 2);
    CHECK(X.edge(0).length == Rational(3, 2));
    CHECK(X.edge(1).length == Rational(1));
    CHECK(X.is_cycle_graph());

    SUBCASE("round trip through the edge-list format") {
        auto Y = parse_graph(format_graph(X));
        CHECK(format_graph(Y) == format_graph(X));
    }
    SUBCASE("errors carry line numbers") {
        try {
            parse_graph("v a\nv b\ne e1 a c\n");
            FAIL("accepted an unknown vertex");
        } catch (const InputError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_graph("v a\nv b\ne e1 a b -1\n"), InputError);
        CHECK_THROWS_AS(parse_graph("v a\nv a\n"), InputError);
        CHECK_THROWS_AS(parse_graph("x y\n"), InputError);
    }
    SUBCASE("disconnected input names its components") {
        try {
            parse_graph("v a\nv b\nv c\nv d\ne e1 a b\ne e2 c d\n");
            FAIL("accepted a disconnected graph");
        } catch (const InputError& e) {
            std::string msg = e.what();
            CHECK(msg.find("2 components") != std::string::npos);
            CHECK(msg.find("a") != std::string::npos);
            CHECK(msg.find("c") != std::string::npos);
        }
    }
}

TEST_CASE("cut points and cut pairs from the exact oracle") {
    auto theta = testing::corpus("theta");
    auto a = Point::vertex(*theta.find_vertex("a"));
    auto b = Point::vertex(*theta.find_vertex("b"));
    Point ab[] = {a, b};
    CHECK(components_after_removal(theta, ab).size() == 3);
    CHECK(is_cut_pair(theta, a, b));
    CHECK_FALSE(is_cut_point(theta, a));
    CHECK(is_cut_pair(theta, Point::on_edge(0, Rational(1, 3)), Point::on_edge(0, Rational(2, 3))));

    auto path = testing::corpus("path3");
    CHECK(is_cut_point(path, Point::vertex(*path.find_vertex("b"))));
    CHECK(is_cut_point(path, Point::on_edge(0, Rational(1, 2))));
    CHECK_FALSE(is_cut_point(path, Point::vertex(*path.find_vertex("a"))));
}

TEST_CASE("witnesses only for minimal separating sets") {
    auto X = testing::corpus("path3");
    auto b = Point::vertex(*X.find_vertex("b"));
    auto left = Point::on_edge(0, Rational(1, 2));
    auto c = Point::vertex(*X.find_vertex("c"));
    Point one[] = {b};
    auto r = separates(X, one, left, c);
    CHECK(r.separated);
    CHECK(r.witness);
    Point two[] = {b, Point::on_edge(1, Rational(1, 2))};
    auto s = separates(X, two, left, c);
    CHECK(s.separated);
    CHECK_FALSE(s.witness);
    CHECK_THROWS_AS(separates(X, one, b, c), InputError);
}

TEST_CASE("separation witnesses are closed connected pieces meeting in C") {
    for (const auto& e : bundled_corpus()) {
        CAPTURE(e.name);
        auto X = parse_graph(e.text);
        for (const auto& c : check_continuum(X)) {
            CAPTURE(c.detail);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("grid oracle sizes") {
    auto X = testing::corpus("k4");
    for (std::size_t k : {1, 3, 5}) {
        GridOracle O(X, k);
        CAPTURE(k);
        CHECK(O.node_count() == X.vertex_count() + X.edge_count() * (3 * k + 2));
        CHECK(O.atoms().size() == X.vertex_count() + X.edge_count() * k);
        for (auto n : O.atoms()) CHECK(O.is_atom(n));
    }
}

TEST_CASE("automorphism enumeration") {
    CHECK(enumerate_automorphisms(testing::corpus("k4")).size() == 24);
    CHECK(enumerate_automorphisms(testing::corpus("c5")).size() == 10);
    CHECK(enumerate_automorphisms(testing::corpus("theta")).size() == 12);
    CHECK(enumerate_automorphisms(testing::corpus("star")).size() == 6);
    CHECK(enumerate_automorphisms(testing::corpus("arc")).size() == 2);

    auto X = testing::corpus("c5");
    for (const auto& g : enumerate_automorphisms(X)) {
        CHECK_NOTHROW(validate_automorphism(X, g));
        auto h = parse_automorphism(format_automorphism(X, g), X);
        CHECK(h.vertex_image == g.vertex_image);
        CHECK(h.edge_image == g.edge_image);
        CHECK(g.inverse().inverse().vertex_image == g.vertex_image);
    }
    CHECK_THROWS_AS(parse_automorphism("pv v0 v2\npv v2 v0\n", X), InputError);
}
