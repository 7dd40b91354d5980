#pragma once

// Bijections of finite structural trees, and the maps induced on them by
// graph automorphisms.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "contree/continuum.hpp"
#include "contree/structural_tree.hpp"

namespace contree {

/// A point of a finite tree: a node, or an arc point at parameter 0 < u < 1
/// measured from arc.from.
struct TreePoint {
    std::optional<std::size_t> node;
    std::size_t arc = 0;
    Rational u{0};

    static TreePoint at_node(std::size_t n) { return TreePoint{n, 0, Rational(0)}; }
    static TreePoint on_arc(std::size_t arc, const Rational& u) { return TreePoint{std::nullopt, arc, u}; }

    friend bool operator==(const TreePoint& a, const TreePoint& b) {
        if (a.node || b.node) return a.node == b.node;
        return a.arc == b.arc && a.u == b.u;
    }
};

std::string describe(const StructuralTree& tree, const TreePoint& p);

/// Node bijection plus arc bijection; an arc point at u maps to u on the
/// image arc, or 1 - u when the arc is reversed.
struct TreeMap {
    std::vector<std::size_t> node_image;
    std::vector<std::size_t> arc_image;
    std::vector<bool> arc_reversed;

    static TreeMap identity(const StructuralTree& tree);

    TreePoint apply(const TreePoint& p) const;
    TreeMap compose(const TreeMap& inner) const;  // this after inner
    TreeMap inverse() const;
    bool is_identity() const;
};

/// Throws InternalError unless the map is a bijection preserving incidence.
void validate_tree_map(const StructuralTree& tree, const TreeMap& g);

/// Maps each node to the node with the same kind and the image provenance
/// (cells pushed through g, block pushed through g). Throws InputError when
/// g is not an automorphism of X and InternalError when the tree is not
/// invariant under g.
TreeMap induce_tree_map(const StructuralTree& tree, const GraphContinuum& X, const GraphAutomorphism& g);

/// Pushes "v:<name>"/"e:<name>" cell names (or a comma list of them) through g.
std::vector<std::string> map_cell_names(const GraphContinuum& X, const GraphAutomorphism& g,
                                        const std::vector<std::string>& names);

/// Fixed points: whole fixed nodes, arcs fixed pointwise, and midpoints of
/// arcs mapped to themselves with reversal.
struct TreeFixedSet {
    std::set<std::size_t> nodes;
    std::set<std::size_t> arcs;
    std::set<std::size_t> midpoints;

    bool empty() const { return nodes.empty() && arcs.empty() && midpoints.empty(); }
    bool contains(const StructuralTree& tree, const TreePoint& p) const;
    TreeFixedSet intersect(const TreeFixedSet& other) const;
    std::optional<TreePoint> any_point() const;
    std::string describe(const StructuralTree& tree) const;
};

TreeFixedSet fixed_set(const StructuralTree& tree, const TreeMap& g);
bool is_connected(const StructuralTree& tree, const TreeFixedSet& f);

}  // namespace contree
