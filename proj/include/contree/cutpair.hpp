#pragma once

// Cut pairs of a continuum without cut points: cyclic sets, necklaces,
// inseparable sets, gaps, the circle layout, the pretree R and the JSJ tree.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contree/continuum.hpp"
#include "contree/pretree.hpp"
#include "contree/structural_tree.hpp"

namespace contree {

struct CyclicDecomposition {
    std::vector<Point> stations;  // cyclic order, starting at the least point
    std::vector<Region> pieces;   // pieces[i] runs from stations[i] to stations[i+1]
    /// Set for two-point sets: a cut pair is cyclic by definition. The
    /// pieces are then the closures of the complementary components.
    bool by_fiat = false;
};

/// Throws PreconditionError when X has a cut point or |S| < 2.
std::optional<CyclicDecomposition> cyclic_decomposition(const GraphContinuum& X, std::span<const Point> S);

struct Necklace {
    std::string key;
    std::vector<Cell> cycle;            // vertices and whole edges in cyclic order
    CellSet cells;
    std::vector<std::size_t> atoms;     // grid atoms in cyclic order
};

struct Gap {
    std::vector<std::size_t> atoms;
    CellSet cells;       // open cells of the equivalence class
    CellSet closure;
    Region region;       // closure as a region
    VertexId side_b = 0; // sides, in the necklace's cyclic order
    VertexId side_c = 0;
    bool fat = false;
};

struct InseparableStructure {
    std::vector<std::vector<std::size_t>> maximal_sets;        // atom nodes, size >= 2
    std::vector<std::pair<std::size_t, std::size_t>> pairs;   // inseparable cut pairs
};

enum class RKind { Necklace, InseparableSet, InseparablePair };

struct RElement {
    RKind kind = RKind::Necklace;
    bool is_necklace = false;
    bool is_maximal_set = false;
    bool is_pair = false;
    std::string key;
    std::string label;
    CellSet cells;                 // necklaces: whole cells; sets: vertex cells
    std::vector<std::size_t> atoms;
    std::optional<std::size_t> necklace;  // index into necklaces()
};

struct CircleLayout {
    std::vector<VertexId> stations;       // vertex stations in cyclic order
    std::vector<Rational> angles;         // angle of each grid atom, in [0,1)
};

/// All cut-pair structure of X at one grid granularity.
class CutPairAnalysis {
public:
    CutPairAnalysis(const GraphContinuum& X, std::size_t grid = 3);

    const GraphContinuum& continuum() const { return oracle_.continuum(); }
    const GridOracle& oracle() const { return oracle_; }

    /// Components of X minus the grid nodes, when they form a cut pair.
    const Labels* cut_pair(std::size_t p, std::size_t q) const;
    bool separable(std::size_t a, std::size_t b) const;  // atom nodes
    /// Cyclic test for grid nodes; fills `order` with a cyclic order.
    bool is_cyclic(std::vector<std::size_t> nodes, std::vector<std::size_t>* order = nullptr) const;
    /// Components of X minus the nodes and, per component, its boundary nodes.
    std::pair<Labels, std::vector<std::set<std::size_t>>> stations(std::span<const std::size_t> nodes) const;

    const std::vector<Necklace>& necklaces() const { return necklaces_; }
    const InseparableStructure& inseparable() const { return inseparable_; }
    std::vector<Gap> gaps(std::size_t necklace) const;
    CircleLayout circle_map(std::size_t necklace) const;
    /// Every pair of atoms separated by some cut pair.
    bool grid_says_circle() const;

    const std::vector<RElement>& R() const { return R_; }
    const BetweennessTable& table() const { return table_; }
    /// Grid nodes of an element; removal() removes exactly these points.
    const std::vector<std::size_t>& element_nodes(std::size_t r) const { return element_nodes_[r]; }
    const Labels& removal(std::size_t r) const { return removal_[r]; }
    /// S separates a point of R - S from a point of T - S.
    bool separates_elements(std::size_t s, std::size_t r, std::size_t t) const;
    /// Point-set intersection size of two elements; nullopt when infinite.
    std::optional<std::size_t> intersection_size(std::size_t r, std::size_t s) const;
    bool contained_in(std::size_t r, std::size_t s) const;

    TreeNode node_record(std::size_t r) const;

    /// Atom cut pairs (atom nodes, p < q).
    std::vector<std::pair<std::size_t, std::size_t>> atom_cut_pairs() const;

private:
    void compute_cut_pairs();
    void compute_necklaces();
    void compute_inseparable();
    void compute_R();
    bool case1(std::size_t r, std::size_t s, std::size_t t) const;
    bool defined_between(std::size_t r, std::size_t s, std::size_t t) const;

    GridOracle oracle_;
    std::map<std::pair<std::size_t, std::size_t>, Labels> cut_pairs_;
    std::vector<std::vector<char>> separable_;  // by atom index
    std::vector<Necklace> necklaces_;
    InseparableStructure inseparable_;
    std::vector<RElement> R_;
    std::vector<std::vector<std::size_t>> element_nodes_;
    std::vector<Labels> removal_;
    std::vector<char> case1_;  // cube over R
    BetweennessTable table_;
};

std::vector<Necklace> necklaces(const GraphContinuum& X, std::size_t grid = 3);
InseparableStructure inseparable_structure(const GraphContinuum& X, std::size_t grid = 3);
/// Circle test; false whenever X has cut points.
bool is_circle(const GraphContinuum& X, std::size_t grid = 3);
/// R with its table; the table is checked against the pretree axioms.
CutPairAnalysis build_R(const GraphContinuum& X, std::size_t grid = 3);
StructuralTree build_jsj_tree(const CutPairAnalysis& A);
StructuralTree build_jsj_tree(const GraphContinuum& X, std::size_t grid = 3);

/// Whether two circle angles separate two others on [0,1).
bool circle_separates(const Rational& a, const Rational& b, const Rational& x, const Rational& y);

}  // namespace contree
