#pragma once

// Homeomorphism-induced actions: non-nesting checks, elliptic/hyperbolic
// classification, global fixed points and fixed ends. Finite trees only
// carry elliptic maps; hyperbolic behaviour needs a SyntheticLine.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contree/rational.hpp"
#include "contree/structural_tree.hpp"
#include "contree/tree_map.hpp"

namespace contree {

enum class ActionType { Elliptic, Hyperbolic };
std::string_view to_string(ActionType t);

struct NestingVerdict {
    bool non_nesting = true;
    std::string witness;  // "[p,q] -> [g(p),g(q)]" when nesting
};

// ---------------------------------------------------------------- finite trees

/// Exhaustive over nodes and arc points at 1/4, 1/2, 3/4 (unit arcs).
NestingVerdict is_non_nesting(const StructuralTree& tree, const TreeMap& g);

struct TreeClassification {
    ActionType type = ActionType::Elliptic;
    TreeFixedSet fixed;
    bool fixed_connected = false;
};

/// Throws PreconditionError for a nesting map.
TreeClassification classify(const StructuralTree& tree, const TreeMap& g);

struct TreeCommonFixed {
    std::optional<TreePoint> point;
    TreeFixedSet common;
    /// Set when there is no common point: two generators with disjoint fixed
    /// sets and the type of a^-1 b^-1 a b.
    std::optional<std::pair<std::size_t, std::size_t>> disjoint_pair;
    std::optional<ActionType> commutator_type;
};

TreeCommonFixed global_fixed_point(const StructuralTree& tree, const std::vector<TreeMap>& generators);

// ---------------------------------------------------------------- the line

/// A closed interval of the line; a missing end is infinite.
struct LineInterval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    bool contains(const Rational& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }
    friend bool operator==(const LineInterval&, const LineInterval&) = default;
};

std::string describe(const LineInterval& I);
std::optional<LineInterval> intersect(const LineInterval& a, const LineInterval& b);

/// Piecewise-affine homeomorphism of the line through sorted breakpoints,
/// extended affinely beyond the first and last ones.
class LineMap {
public:
    /// Throws InputError unless there are at least two breakpoints with
    /// strictly increasing x and strictly monotone values.
    explicit LineMap(std::vector<std::pair<Rational, Rational>> breakpoints);

    static LineMap translation(const Rational& by);
    /// x -> 2c - x.
    static LineMap reflection(const Rational& c);

    Rational apply(const Rational& x) const;
    LineMap compose(const LineMap& inner) const;  // this after inner
    LineMap inverse() const;
    bool increasing() const;
    const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return bp_; }

    /// Exact fixed set, as disjoint sorted intervals.
    std::vector<LineInterval> fixed_set() const;

    friend bool operator==(const LineMap& a, const LineMap& b);

private:
    std::vector<std::pair<Rational, Rational>> bp_;
};

/// Searches g and g^-1 over breakpoints, fixed-set ends and the grid
/// j/4 for |j/4| <= bound.
NestingVerdict is_non_nesting(const LineMap& g, const Rational& bound = Rational(8));

struct LineClassification {
    ActionType type = ActionType::Elliptic;
    std::vector<LineInterval> fixed;
    bool fixed_connected = false;
    /// Hyperbolic only: the fundamental segment [c, g(c)] of the axis (the
    /// whole line) and the signed translation length g(c) - c.
    std::optional<Rational> c;
    std::optional<Rational> translation;
};

/// Throws PreconditionError for a nesting map.
LineClassification classify(const LineMap& g, const Rational& bound = Rational(8));

struct LineCommonFixed {
    std::optional<Rational> point;
    std::optional<LineInterval> common;
    std::optional<std::pair<std::size_t, std::size_t>> disjoint_pair;
    std::optional<LineMap> commutator;
    std::optional<LineClassification> commutator_class;
};

/// Throws PreconditionError naming the first hyperbolic generator.
LineCommonFixed global_fixed_point(const std::vector<LineMap>& generators);

/// The real line subdivided by a repeating block of arc lengths.
struct SyntheticLine {
    std::vector<Rational> block;

    Rational period() const;
    /// Shift by k periods.
    LineMap shift(long k = 1) const;
    /// Node positions in [-bound, bound].
    std::vector<Rational> nodes(const Rational& bound) const;
};

enum class EndKind { None, PlusInfinity, Inconclusive };
std::string_view to_string(EndKind k);

struct EndReport {
    EndKind kind = EndKind::None;
    std::string detail;
};

/// For the family s^n g s^-n (n >= 0, s the period shift): the end fixed by
/// the whole family when no point is. Families are checked up to `bound`.
/// Throws PreconditionError when g has no fixed point.
EndReport fixed_end(const SyntheticLine& line, const LineMap& g, std::size_t bound = 16);
/// Finite trees: always None; a common fixed point exists.
EndReport fixed_end(const StructuralTree& tree, const std::vector<TreeMap>& generators);

}  // namespace contree
