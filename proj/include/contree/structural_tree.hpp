#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contree/rational.hpp"

namespace contree {

enum class NodeKind {
    Point,            // bare pretree element (no continuum meaning)
    Class,            // equivalence class of non-cut points
    CutPoint,         // vertex cut point
    BridgeSample,     // grid sample on a bridge interior (only in full P trees)
    Necklace,
    InseparableSet,   // maximal inseparable set with more than two points
    InseparablePair,  // inseparable cut pair
    End,              // explicit end node created for an attachment
    Midpoint,         // subdivision point inserted in the middle of an arc
};

enum class ArcKind {
    Glue,    // glued interval between adjacent pretree elements
    Bridge,  // copy of a bridge-edge interior
};

std::string_view to_string(NodeKind k);
std::string_view to_string(ArcKind k);
std::optional<NodeKind> parse_node_kind(std::string_view s);
std::optional<ArcKind> parse_arc_kind(std::string_view s);

struct TreeNode {
    std::string key;    // unique, stable across runs
    NodeKind kind = NodeKind::Point;
    std::string label;  // human readable
    std::vector<std::string> cells;  // provenance: "v:<name>" / "e:<name>"
    std::string block;  // provenance: block the node came from (combined trees)

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeArc {
    std::size_t from = 0;
    std::size_t to = 0;
    Rational length{1};
    ArcKind kind = ArcKind::Glue;
    std::string provenance;  // e.g. "e:bridge" for a bridge copy

    friend bool operator==(const TreeArc&, const TreeArc&) = default;
};

/// A finite tree with typed nodes and arcs of positive rational length.
/// The tree property is not enforced on mutation; call is_tree().
class StructuralTree {
public:
    std::string name;
    std::optional<std::size_t> root;

    std::size_t add_node(TreeNode node);
    std::size_t add_arc(std::size_t from, std::size_t to, Rational length = Rational(1),
                        ArcKind kind = ArcKind::Glue, std::string provenance = {});

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    const TreeNode& node(std::size_t i) const { return nodes_.at(i); }
    TreeNode& node(std::size_t i) { return nodes_.at(i); }
    const TreeArc& arc(std::size_t i) const { return arcs_.at(i); }
    TreeArc& arc(std::size_t i) { return arcs_.at(i); }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const std::vector<TreeArc>& arcs() const { return arcs_; }

    std::optional<std::size_t> find(std::string_view key) const;
    std::size_t require(std::string_view key) const;

    /// (neighbor, arc index) pairs.
    const std::vector<std::pair<std::size_t, std::size_t>>& incident(std::size_t n) const { return adjacency_.at(n); }
    std::optional<std::size_t> arc_between(std::size_t a, std::size_t b) const;

    /// Connected, acyclic, and all lengths positive.
    bool is_tree() const;

    /// Node path from a to b inclusive. Requires is_tree().
    std::vector<std::size_t> path(std::size_t a, std::size_t b) const;
    /// Arcs along the path from a to b.
    std::vector<std::size_t> path_arcs(std::size_t a, std::size_t b) const;
    /// z lies strictly inside the path from x to y.
    bool between(std::size_t x, std::size_t z, std::size_t y) const;
    Rational distance(std::size_t a, std::size_t b) const;
    Rational total_length() const;

    /// Removes an arc and re-indexes the rest.
    void remove_arc(std::size_t arc);

    /// Same shape and node keys/kinds; lengths ignored.
    bool same_topology(const StructuralTree& other) const;

    friend bool operator==(const StructuralTree& a, const StructuralTree& b) {
        return a.name == b.name && a.root == b.root && a.nodes_ == b.nodes_ && a.arcs_ == b.arcs_;
    }

private:
    std::vector<TreeNode> nodes_;
    std::vector<TreeArc> arcs_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

}  // namespace contree
