#include <doctest.h>

#include "contree/combined.hpp"
#include "contree/cutpair.hpp"
#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"
#include "contree/tree_io.hpp"
#include "testing.hpp"

using namespace contree;

TEST_CASE("text round trip on every corpus tree") {
    for (const auto& e : bundled_corpus()) {
        CAPTURE(e.name);
        auto X = parse_graph(e.text);
        std::vector<StructuralTree> trees{
            metrize(build_cutpoint_tree(X), MetricMode::Canonical),
            metrize(build_cutpoint_tree(X), MetricMode::Geometric, {}, &X),
            build_combined_tree(X).tree,
        };
        if (X.edge_count() > 0 && cut_points(X).empty()) trees.push_back(build_jsj_tree(X));
        for (const auto& T : trees) {
            auto text = write_tree_text(T);
            auto back = parse_tree_text(text);
            CHECK(back == T);
            CHECK(write_tree_text(back) == text);
        }
    }
}

TEST_CASE("cut-pair records are skipped by the tree parser") {
    auto A = build_R(testing::corpus("theta"));
    auto T = build_jsj_tree(A);
    auto text = write_tree_text(T) + write_cutpair_records(A);
    CHECK(text.find("necklace ") != std::string::npos);
    CHECK(text.find("gap ") != std::string::npos);
    CHECK(parse_tree_text(text) == T);
}

TEST_CASE("quoting") {
    CHECK(quote("plain") == "\"plain\"");
    CHECK(quote("a\"b\\c") == "\"a\\\"b\\\\c\"");

    StructuralTree T;
    T.name = "odd \"name\"";
    T.add_node(TreeNode{"k\\1", NodeKind::Point, "label with \"quotes\"", {"v:a"}, ""});
    T.add_node(TreeNode{"k2", NodeKind::End, "", {}, "v:a,e:b"});
    T.add_arc(0, 1, Rational(2, 3), ArcKind::Bridge, "e:b");
    T.root = 1;
    CHECK(parse_tree_text(write_tree_text(T)) == T);
}

TEST_CASE("parse errors name the line") {
    auto expect_line = [](std::string_view text, int line) {
        try {
            parse_tree_text(text);
            FAIL("accepted malformed input");
        } catch (const InputError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_line("tree name=\"t\"\nnode key=\"a\" kind=bogus label=\"\" cells=\"\"\n", 2);
    expect_line("tree name=\"t\"\n# comment\n\nwidget x=1\n", 4);
    expect_line("tree name=\"t\"\nnode key=\"a\" kind=point label=\"\" cells=\"\" colour=red\n", 2);
    expect_line("tree name=\"t\"\nnode key=\"a\" kind=point label=\"\" cells=\"\"\narc from=\"a\" to=\"b\" kind=glue length=1\n", 3);
    expect_line("tree name=\"t\nnode key=\"a\"\n", 1);
}

TEST_CASE("DOT output") {
    auto X = testing::corpus("barbell");
    auto dot = write_tree_dot(metrize(build_cutpoint_tree(X), MetricMode::Geometric, {}, &X));
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(dot.find("shape=diamond") != std::string::npos);
    CHECK(dot.find("shape=ellipse") != std::string::npos);
    CHECK(dot.find("style=bold") != std::string::npos);
    CHECK(dot.find("label=\"2\"") != std::string::npos);

    auto jsj = write_tree_dot(build_jsj_tree(testing::corpus("k4")));
    CHECK(jsj.find("shape=doublecircle") != std::string::npos);
    CHECK(jsj.find("shape=hexagon") != std::string::npos);
    CHECK(jsj.find("shape=box") != std::string::npos);
}
