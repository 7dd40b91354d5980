#pragma once

// Finite graphs as models of Peano continua: exact points on the geometric
// realization, regions, removal/connectivity, and the separation oracle used
// by every betweenness relation in the library.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contree/rational.hpp"

namespace contree {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
    std::string name;
    VertexId u = 0;
    VertexId v = 0;
    Rational length{1};

    bool is_loop() const { return u == v; }
};

/// A finite connected multigraph (loops and parallel edges allowed) with
/// positive rational edge lengths. Construction validates every invariant.
class GraphContinuum {
public:
    GraphContinuum(std::vector<std::string> vertex_names, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }

    /// Incident edges of v; a loop is listed once.
    const std::vector<EdgeId>& incident_edges(VertexId v) const { return incidence_.at(v); }
    /// Degree with loops counted twice.
    std::size_t degree(VertexId v) const;

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;

    /// True iff the graph is a single cycle (every vertex of degree 2).
    bool is_cycle_graph() const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
};

/// Parses the edge-list format: `v <id>`, `e <id> <u> <v> [length]`,
/// `#` comments. Lengths are integers or `p/q`; default 1.
GraphContinuum parse_graph(std::string_view text);

/// Renders a graph back into the edge-list format.
std::string format_graph(const GraphContinuum& X);

/// A location on the realization: a vertex, or an interior point of an edge
/// at parameter 0 < t < 1 measured from edge.u.
struct Point {
    enum class Kind { Vertex, EdgeInterior };

    Kind kind = Kind::Vertex;
    std::size_t id = 0;
    Rational t{0};

    static Point vertex(VertexId v);
    static Point on_edge(EdgeId e, const Rational& t);

    bool is_vertex() const { return kind == Kind::Vertex; }

    friend bool operator==(const Point& a, const Point& b);
    friend bool operator<(const Point& a, const Point& b);
};

std::string describe(const GraphContinuum& X, const Point& p);

/// Symbolic unit of the realization: a vertex or the whole open interior of
/// an edge. Vertices order before edges.
struct Cell {
    enum class Kind { Vertex, Edge };

    Kind kind = Kind::Vertex;
    std::size_t id = 0;

    static Cell vertex(VertexId v) { return {Kind::Vertex, v}; }
    static Cell edge(EdgeId e) { return {Kind::Edge, e}; }

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

using CellSet = std::set<Cell>;

/// "v:<name>" or "e:<name>".
std::string cell_name(const GraphContinuum& X, const Cell& c);
/// "{v:a,e:e1,...}" in cell order.
std::string describe_cells(const GraphContinuum& X, const CellSet& cells);
/// The closure of a union of cells (adds edge endpoints).
CellSet closure_of(const GraphContinuum& X, const CellSet& cells);

/// Sub-interval of an edge's open parameter range (0,1). Degenerate
/// [p,p] segments represent single interior points.
struct Segment {
    Rational lo;
    Rational hi;
    bool lo_closed = false;
    bool hi_closed = false;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// A subset of the realization: whole vertices plus normalized (sorted,
/// disjoint, non-touching) segments of edge interiors.
class Region {
public:
    static Region whole(const GraphContinuum& X);
    static Region of_points(std::span<const Point> points);
    static Region of_cells(const GraphContinuum& X, const CellSet& cells);

    void add_vertex(VertexId v) { vertices_.insert(v); }
    void add_segment(EdgeId e, Segment s);
    void add_point(const Point& p);

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::map<EdgeId, std::vector<Segment>>& segments() const { return segments_; }

    bool empty() const { return vertices_.empty() && segments_.empty(); }
    bool contains(const Point& p) const;

    Region unite(const Region& other) const;
    Region intersect(const Region& other) const;

    std::string describe(const GraphContinuum& X) const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    std::set<VertexId> vertices_;
    std::map<EdgeId, std::vector<Segment>> segments_;
};

/// Connectivity of a region as a subspace of the realization. The empty
/// region is reported as not connected.
bool is_connected(const GraphContinuum& X, const Region& r);

/// Component labels of a subdivision after a removal. Removed nodes carry
/// label -1; so do segments of removed edges.
struct Labels {
    std::vector<int> node;
    std::vector<int> segment;
    int count = 0;
};

/// The realization cut at finitely many interior points per edge. Nodes are
/// the graph vertices (indices 0..V-1) followed by interior points edge by
/// edge; segments are the open pieces between consecutive nodes.
class Subdivision {
public:
    Subdivision(const GraphContinuum& X, std::vector<std::vector<Rational>> interior_positions);

    /// Interior points i/(per_edge+1), i = 1..per_edge, on every edge.
    static Subdivision uniform(const GraphContinuum& X, std::size_t per_edge);

    const GraphContinuum& continuum() const { return *X_; }
    std::size_t node_count() const { return node_point_.size(); }
    std::size_t segment_count() const { return segment_edge_.size(); }

    std::size_t edge_node(EdgeId e, std::size_t j) const { return edge_first_node_[e] + j; }
    std::size_t edge_segment(EdgeId e, std::size_t j) const { return edge_first_segment_[e] + j; }
    const std::vector<Rational>& positions(EdgeId e) const { return positions_[e]; }

    const Point& point_of(std::size_t node) const { return node_point_[node]; }
    std::optional<std::size_t> node_of(const Point& p) const;
    /// Segment containing a non-node edge point.
    std::optional<std::size_t> segment_of(const Point& p) const;

    /// Endpoint nodes of a segment.
    std::pair<std::size_t, std::size_t> segment_ends(std::size_t s) const { return segment_ends_[s]; }
    EdgeId segment_edge(std::size_t s) const { return segment_edge_[s]; }

    /// Components of the realization minus the removed nodes and the removed
    /// edge interiors. Labels are assigned in first-occurrence order over
    /// vertices, then edges by id and position.
    Labels components(const std::vector<char>& removed_nodes,
                      const std::vector<char>& removed_edges = {}) const;

    /// Label of an arbitrary point under a labelling produced above.
    int label_of(const Labels& labels, const Point& p) const;

    /// Region of one labelled component; with `closed` the boundary nodes are added.
    Region component_region(const Labels& labels, int label, bool closed,
                            const std::vector<char>& removed_nodes) const;

private:
    std::shared_ptr<const GraphContinuum> X_;  // owned copy; oracles outlive their inputs
    std::vector<std::vector<Rational>> positions_;
    std::vector<std::size_t> edge_first_node_;
    std::vector<std::size_t> edge_first_segment_;
    std::vector<Point> node_point_;
    std::vector<EdgeId> segment_edge_;
    std::vector<std::pair<std::size_t, std::size_t>> segment_ends_;
};

/// Connected components of X minus C, in deterministic order.
std::vector<Region> components_after_removal(const GraphContinuum& X, std::span<const Point> C);

struct SeparationWitness {
    Region y;  // closed, contains a
    Region z;  // closed, contains b
};

struct SeparationResult {
    bool separated = false;
    /// Present when separated and Y ∩ Z = C (C minimal separating).
    std::optional<SeparationWitness> witness;
};

/// Whether C separates a from b. The witness is present only when C is a
/// minimal separating set. Throws InputError if a or b lies in C.
SeparationResult separates(const GraphContinuum& X, std::span<const Point> C, const Point& a, const Point& b);

bool is_cut_point(const GraphContinuum& X, const Point& c);
/// Throws PreconditionError when c == d.
bool is_cut_pair(const GraphContinuum& X, const Point& c, const Point& d);

/// All vertices plus edge points i/(k+1), i = 1..k, on every edge.
class SampleGrid {
public:
    SampleGrid(const GraphContinuum& X, std::size_t granularity);

    std::size_t granularity() const { return k_; }
    const std::vector<Point>& points() const { return points_; }
    std::optional<std::size_t> index_of(const Point& p) const;

private:
    std::size_t k_;
    std::vector<Point> points_;
};

/// Grid-based separation oracle. Atoms are the SampleGrid points at
/// granularity k. Separator candidates are drawn from the finer grid at
/// granularity 3k+2, which places two candidates strictly between any two
/// consecutive atoms of an edge; by edge-interior uniformity this covers
/// every way a finite set of points can separate atoms.
class GridOracle {
public:
    GridOracle(const GraphContinuum& X, std::size_t granularity);

    const GraphContinuum& continuum() const { return sub_.continuum(); }
    std::size_t granularity() const { return k_; }
    const Subdivision& subdivision() const { return sub_; }

    std::size_t node_count() const { return sub_.node_count(); }
    const std::vector<std::size_t>& atoms() const { return atoms_; }
    bool is_atom(std::size_t node) const { return atom_index_[node] >= 0; }
    /// Position of an atom node in atoms(); -1 for non-atoms.
    int atom_index(std::size_t node) const { return atom_index_[node]; }
    Cell cell_of(std::size_t node) const;
    const Point& point_of(std::size_t node) const { return sub_.point_of(node); }

    /// Nodes whose points lie in the union of the cells.
    std::vector<std::size_t> nodes_in(const CellSet& cells) const;
    /// Atoms (as node indices) inside the cells.
    std::vector<std::size_t> atoms_in(const CellSet& cells) const;

    Labels remove(std::span<const std::size_t> nodes) const;
    Labels remove_cells(const CellSet& cells) const;

private:
    std::size_t k_;
    Subdivision sub_;
    std::vector<std::size_t> atoms_;
    std::vector<int> atom_index_;
};

/// An incidence-preserving, length-preserving permutation of vertices and
/// edges. Edge parameters map by t -> t, or t -> 1 - t when reversed.
struct GraphAutomorphism {
    std::vector<VertexId> vertex_image;
    std::vector<EdgeId> edge_image;
    std::vector<bool> edge_reversed;

    static GraphAutomorphism identity(const GraphContinuum& X);

    Point apply(const Point& p) const;
    Cell apply(const Cell& c) const;
    CellSet apply(const CellSet& cells) const;
    GraphAutomorphism inverse() const;
    bool is_identity() const;
};

/// Throws InputError when the maps are not a valid automorphism of X.
void validate_automorphism(const GraphContinuum& X, const GraphAutomorphism& g);

/// Parses `pv <from> <to>` and `pe <from> <to> [rev]` lines. Unlisted edges
/// are inferred when their image is unique; unlisted vertices are fixed.
GraphAutomorphism parse_automorphism(std::string_view text, const GraphContinuum& X);

std::string format_automorphism(const GraphContinuum& X, const GraphAutomorphism& g);

/// Every automorphism of X (brute force; intended for small graphs).
std::vector<GraphAutomorphism> enumerate_automorphisms(const GraphContinuum& X, std::size_t limit = 200000);

}  // namespace contree
