#pragma once

// Cut points of a graph continuum, their equivalence classes, the pretree P
// and the cut-point tree with its metrizations.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "contree/continuum.hpp"
#include "contree/pretree.hpp"
#include "contree/structural_tree.hpp"
#include "contree/tree_map.hpp"

namespace contree {

struct CutPointSet {
    std::set<VertexId> vertices;
    std::set<EdgeId> bridges;  // every interior point is a cut point

    bool empty() const { return vertices.empty() && bridges.empty(); }
    friend bool operator==(const CutPointSet&, const CutPointSet&) = default;
};

CutPointSet cut_points(const GraphContinuum& X);

/// A class of non-cut points under "no cut point separates them".
struct EquivClass {
    std::string key;                  // "class:<first cell>"
    std::vector<std::size_t> atoms;   // grid nodes, ascending
    CellSet cells;                    // vertices and open edges making up the class
    bool singleton = false;           // a single vertex and nothing else
};

enum class PKind { Class, CutPoint, BridgeSample };

struct PElement {
    PKind kind = PKind::Class;
    std::size_t index = 0;  // class index, or grid node for the point kinds
    std::string key;
};

/// P over a grid: vertex cut points, the bridge atoms standing in for the
/// bridge interiors, and all classes.
class CutPointPretree {
public:
    CutPointPretree(const GraphContinuum& X, std::size_t grid = 3);

    const GraphContinuum& continuum() const { return oracle_.continuum(); }
    const GridOracle& oracle() const { return oracle_; }
    const CutPointSet& cut_points() const { return cuts_; }
    const std::vector<EquivClass>& classes() const { return classes_; }
    const std::vector<PElement>& elements() const { return elements_; }
    const BetweennessTable& table() const { return table_; }

    /// Betweenness evaluated from chosen representatives (grid nodes) of
    /// x, z, y; used to check independence of the choice.
    bool between_reps(std::size_t a, const PElement& z, std::size_t c, std::size_t b) const;
    /// Grid nodes that may represent an element.
    std::vector<std::size_t> representatives(const PElement& e) const;

    /// Whether the cut-point grid node s separates nodes p and q.
    bool cut_separates(std::size_t s, std::size_t p, std::size_t q) const;
    bool is_cut_node(std::size_t node) const { return cut_index_[node] >= 0; }

    /// Indices of elements that become tree nodes (classes and vertex cut points).
    std::vector<std::size_t> tree_elements() const;
    TreeNode node_record(std::size_t element) const;

private:
    bool evaluate(std::size_t x, std::size_t z, std::size_t y) const;

    GridOracle oracle_;
    CutPointSet cuts_;
    std::vector<std::size_t> cut_nodes_;  // grid nodes that are cut points
    std::vector<int> cut_index_;
    std::vector<Labels> removal_;         // per cut node
    std::vector<EquivClass> classes_;
    std::vector<PElement> elements_;
    BetweennessTable table_;
};

/// P as a table plus its class inventory.
CutPointPretree build_P(const GraphContinuum& X, std::size_t grid = 3);

/// Nodes: classes and vertex cut points. Arcs: bridge copies between the
/// ends of each bridge and glued arcs between adjacent class/cut point
/// pairs. All lengths 1 until metrized.
StructuralTree build_cutpoint_tree(const CutPointPretree& P);
StructuralTree build_cutpoint_tree(const GraphContinuum& X, std::size_t grid = 3);

enum class MetricMode { Canonical, Geometric };

/// Nodes that span the subtree metrized by the halving schedule.
std::vector<std::size_t> metric_span_nodes(const StructuralTree& tree);
/// The default enumeration seed, or the node whose key or label is `seed`.
std::size_t metric_seed(const StructuralTree& tree, const std::optional<std::string>& seed);

/// Canonical: the span nodes in breadth-first order from the seed; the n-th
/// newly attached segment (n = 0, 1, ...) gets total length 1/2^n shared
/// equally by its arcs; every other arc gets 1. Geometric: bridge copies get
/// their edge length (X required), every other arc 1.
StructuralTree metrize(const StructuralTree& tree, MetricMode mode, const std::optional<std::string>& seed = {},
                       const GraphContinuum* X = nullptr);

/// The map induced on the cut-point tree by a graph automorphism.
TreeMap induced_map(const StructuralTree& cutpoint_tree, const GraphContinuum& X, const GraphAutomorphism& g);

}  // namespace contree
