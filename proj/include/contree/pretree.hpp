#pragma once

// Finite pretrees: a materialized betweenness table, the four axioms,
// intervals with their linear order, adjacency, and assembly into a tree.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contree/structural_tree.hpp"

namespace contree {

/// between(x, z, y) reads "z lies in (x,y)". Stored as a dense cube, so
/// symmetry is a property to verify, not an assumption.
class BetweennessTable {
public:
    explicit BetweennessTable(std::vector<std::string> ground);

    /// Fills the table from a predicate evaluated on every ordered triple.
    static BetweennessTable from(std::vector<std::string> ground,
                                 const std::function<bool(std::size_t, std::size_t, std::size_t)>& between);

    std::size_t size() const { return ground_.size(); }
    const std::vector<std::string>& ground() const { return ground_; }
    const std::string& name(std::size_t i) const { return ground_.at(i); }
    /// Throws InputError for an unknown identifier.
    std::size_t index_of(std::string_view name) const;

    bool between(std::size_t x, std::size_t z, std::size_t y) const { return bits_[(x * n_ + z) * n_ + y] != 0; }
    void set(std::size_t x, std::size_t z, std::size_t y, bool value = true) {
        bits_[(x * n_ + z) * n_ + y] = value ? 1 : 0;
    }

    /// The table restricted to a subset of the ground set (in the given order).
    BetweennessTable restrict_to(const std::vector<std::size_t>& subset) const;

    friend bool operator==(const BetweennessTable&, const BetweennessTable&) = default;

private:
    std::vector<std::string> ground_;
    std::size_t n_;
    std::vector<unsigned char> bits_;
};

struct AxiomReport {
    /// First violating tuple per axiom (indices into the ground set):
    /// 1: (x,y) with xyx; 2: (x,z,y) with xzy but not yzx;
    /// 3: (x,y,z) with xyz and xzy; 4: (x,z,y,w) with xzy, z != w, neither xzw nor yzw.
    std::array<std::optional<std::vector<std::size_t>>, 4> violation;
    /// A triple (x,z,y) with xzy although z is x or y.
    std::optional<std::vector<std::size_t>> degenerate;

    bool passed() const;
    std::string describe(const BetweennessTable& t) const;
};

AxiomReport verify_pretree_axioms(const BetweennessTable& t);

enum class IntervalKind { Open, HalfOpen, Closed };

/// Members ordered from the first endpoint. HalfOpen is [x,y).
struct Interval {
    std::size_t x = 0;
    std::size_t y = 0;
    IntervalKind kind = IntervalKind::Closed;
    std::vector<std::size_t> members;
};

Interval interval(const BetweennessTable& t, std::size_t x, std::size_t y, IntervalKind kind);
Interval interval(const BetweennessTable& t, std::string_view x, std::string_view y, IntervalKind kind);

struct NodeClassification {
    std::vector<std::pair<std::size_t, std::size_t>> adjacent;  // x < y
    std::vector<std::size_t> terminal;
    bool discrete = true;
};

NodeClassification classify_nodes(const BetweennessTable& t);

/// Arc lengths and kinds for assembled trees, chosen per adjacent pair.
using ArcPolicy = std::function<void(std::size_t x, std::size_t y, TreeArc& arc)>;

/// Glues one arc per adjacent pair. `nodes` gives the typed records for the
/// ground set (defaults to bare points keyed by name). Throws
/// PreconditionError when the table is not a pretree, or when the adjacency
/// graph is not a tree whose betweenness reproduces the table.
StructuralTree assemble_tree(const BetweennessTable& t, std::vector<TreeNode> nodes = {},
                             const ArcPolicy& policy = {});

/// Tree betweenness on node indices as a table (ground = node keys).
BetweennessTable tree_betweenness(const StructuralTree& tree);

struct Neighborhood {
    std::set<std::size_t> nodes;
    std::set<std::size_t> arcs;  // arcs whose whole interior lies in U
};

/// U(s,A): points t whose closed path [s,t] avoids A.
Neighborhood neighborhood(const StructuralTree& tree, std::size_t s, const std::set<std::size_t>& A);

/// First triple (x,y,z) with y in [x,z] but [x,y] not inside [x,z].
std::optional<std::vector<std::size_t>> check_interval_subset(const BetweennessTable& t);
/// First pair of nested closed intervals from a common endpoint whose union
/// is not itself a closed interval.
std::optional<std::vector<std::size_t>> check_nested_unions(const BetweennessTable& t);
/// First closed interval on which the endpoint order is not a linear order
/// (which is exactly what every nonempty subset having a maximum needs).
std::optional<std::vector<std::size_t>> check_supremum(const BetweennessTable& t);

}  // namespace contree
