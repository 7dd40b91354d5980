#include "contree/pretree.hpp"

#include <algorithm>
#include <sstream>

#include "contree/errors.hpp"

namespace contree {

BetweennessTable::BetweennessTable(std::vector<std::string> ground)
    : ground_(std::move(ground)), n_(ground_.size()), bits_(n_ * n_ * n_, 0) {
    std::set<std::string> seen;
    for (const auto& g : ground_)
        if (!seen.insert(g).second) throw InputError("duplicate pretree element '" + g + "'");
}

BetweennessTable BetweennessTable::from(std::vector<std::string> ground,
                                        const std::function<bool(std::size_t, std::size_t, std::size_t)>& between) {
    BetweennessTable t(std::move(ground));
    for (std::size_t x = 0; x < t.n_; ++x)
        for (std::size_t z = 0; z < t.n_; ++z)
            for (std::size_t y = 0; y < t.n_; ++y)
                if (between(x, z, y)) t.set(x, z, y);
    return t;
}

std::size_t BetweennessTable::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (ground_[i] == name) return i;
    throw InputError("unknown pretree element '" + std::string(name) + "'");
}

BetweennessTable BetweennessTable::restrict_to(const std::vector<std::size_t>& subset) const {
    std::vector<std::string> names;
    for (auto i : subset) names.push_back(ground_.at(i));
    return from(std::move(names), [&](std::size_t x, std::size_t z, std::size_t y) {
        return between(subset[x], subset[z], subset[y]);
    });
}

bool AxiomReport::passed() const {
    return !degenerate && std::none_of(violation.begin(), violation.end(), [](const auto& v) { return v.has_value(); });
}

std::string AxiomReport::describe(const BetweennessTable& t) const {
    std::ostringstream out;
    auto tuple = [&](const std::vector<std::size_t>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + t.name(v[i]);
        return s + ")";
    };
    for (std::size_t a = 0; a < 4; ++a) {
        out << "axiom " << a + 1 << ": ";
        if (violation[a])
            out << "FAIL " << tuple(*violation[a]);
        else
            out << "PASS";
        out << "\n";
    }
    if (degenerate) out << "endpoint betweenness: FAIL " << tuple(*degenerate) << "\n";
    return out.str();
}

AxiomReport verify_pretree_axioms(const BetweennessTable& t) {
    AxiomReport r;
    const std::size_t n = t.size();
    if (n == 0) throw InputError("pretree ground set is empty");
    for (std::size_t x = 0; x < n && !r.violation[0]; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (t.between(x, y, x)) {
                r.violation[0] = std::vector<std::size_t>{x, y};
                break;
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t y = 0; y < n; ++y) {
                if (!t.between(x, z, y)) continue;
                if (!r.degenerate && (z == x || z == y)) r.degenerate = std::vector<std::size_t>{x, z, y};
                if (!r.violation[1] && !t.between(y, z, x)) r.violation[1] = std::vector<std::size_t>{x, z, y};
                // axiom 3 with the roles (x, y=z, z=y): xzy forbids xyz
                if (!r.violation[2] && t.between(x, y, z)) r.violation[2] = std::vector<std::size_t>{x, z, y};
                if (!r.violation[3]) {
                    for (std::size_t w = 0; w < n; ++w) {
                        if (w == z) continue;
                        if (!t.between(x, z, w) && !t.between(y, z, w)) {
                            r.violation[3] = std::vector<std::size_t>{x, z, y, w};
                            break;
                        }
                    }
                }
            }
    return r;
}

namespace {

std::vector<std::size_t> open_members(const BetweennessTable& t, std::size_t x, std::size_t y) {
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < t.size(); ++z)
        if (t.between(x, z, y)) out.push_back(z);
    return out;
}

}  // namespace

Interval interval(const BetweennessTable& t, std::size_t x, std::size_t y, IntervalKind kind) {
    if (x >= t.size() || y >= t.size()) throw InputError("interval endpoint outside the ground set");
    Interval out{x, y, kind, {}};
    if (x == y) {
        if (kind == IntervalKind::Closed) out.members.push_back(x);
        return out;
    }
    auto inner = open_members(t, x, y);
    // order by distance from x: |(x,z)| is strictly increasing along [x,y]
    std::vector<std::pair<std::size_t, std::size_t>> keyed;
    for (auto z : inner) keyed.emplace_back(open_members(t, x, z).size(), z);
    std::sort(keyed.begin(), keyed.end());
    if (kind != IntervalKind::Open) out.members.push_back(x);
    for (const auto& kz : keyed) out.members.push_back(kz.second);
    if (kind == IntervalKind::Closed) out.members.push_back(y);
    return out;
}

Interval interval(const BetweennessTable& t, std::string_view x, std::string_view y, IntervalKind kind) {
    return interval(t, t.index_of(x), t.index_of(y), kind);
}

NodeClassification classify_nodes(const BetweennessTable& t) {
    NodeClassification c;
    const std::size_t n = t.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (open_members(t, x, y).empty()) c.adjacent.emplace_back(x, y);
    for (std::size_t z = 0; z < n; ++z) {
        bool inner = false;
        for (std::size_t x = 0; x < n && !inner; ++x)
            for (std::size_t y = 0; y < n && !inner; ++y) inner = t.between(x, z, y);
        if (!inner) c.terminal.push_back(z);
    }
    return c;
}

BetweennessTable tree_betweenness(const StructuralTree& tree) {
    std::vector<std::string> keys;
    for (const auto& n : tree.nodes()) keys.push_back(n.key);
    BetweennessTable t(keys);
    for (std::size_t x = 0; x < tree.node_count(); ++x)
        for (std::size_t y = 0; y < tree.node_count(); ++y) {
            if (x == y) continue;
            auto p = tree.path(x, y);
            for (std::size_t i = 1; i + 1 < p.size(); ++i) t.set(x, p[i], y);
        }
    return t;
}

StructuralTree assemble_tree(const BetweennessTable& t, std::vector<TreeNode> nodes, const ArcPolicy& policy) {
    auto report = verify_pretree_axioms(t);
    if (!report.passed()) throw PreconditionError("table is not a pretree:\n" + report.describe(t));
    if (nodes.empty()) {
        for (const auto& g : t.ground()) nodes.push_back(TreeNode{g, NodeKind::Point, g, {}, {}});
    }
    if (nodes.size() != t.size()) throw InternalError("node records do not match the ground set");

    StructuralTree tree;
    for (auto& n : nodes) tree.add_node(std::move(n));
    for (const auto& [x, y] : classify_nodes(t).adjacent) {
        TreeArc arc{x, y, Rational(1), ArcKind::Glue, {}};
        if (policy) policy(x, y, arc);
        tree.add_arc(x, y, arc.length, arc.kind, arc.provenance);
    }
    if (!tree.is_tree())
        throw PreconditionError("adjacent pairs of the pretree do not form a tree (" + std::to_string(tree.arc_count()) +
                                " arcs on " + std::to_string(tree.node_count()) + " nodes)");
    auto realized = tree_betweenness(tree);
    for (std::size_t x = 0; x < t.size(); ++x)
        for (std::size_t z = 0; z < t.size(); ++z)
            for (std::size_t y = 0; y < t.size(); ++y)
                if (realized.between(x, z, y) != t.between(x, z, y))
                    throw PreconditionError("tree betweenness differs from the pretree at (" + t.name(x) + "," +
                                            t.name(z) + "," + t.name(y) + ")");
    return tree;
}

Neighborhood neighborhood(const StructuralTree& tree, std::size_t s, const std::set<std::size_t>& A) {
    Neighborhood u;
    if (A.count(s)) return u;
    std::vector<std::size_t> queue{s};
    u.nodes.insert(s);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& [v, arc] : tree.incident(queue[i])) {
            if (u.arcs.count(arc)) continue;
            u.arcs.insert(arc);  // path to an interior point passes only through queue[i]
            if (A.count(v) || u.nodes.count(v)) continue;
            u.nodes.insert(v);
            queue.push_back(v);
        }
    }
    return u;
}

namespace {

// closed[x*n+y][z] == 1 iff z in [x,y]
std::vector<std::vector<char>> all_closed(const BetweennessTable& t) {
    const std::size_t n = t.size();
    std::vector<std::vector<char>> out(n * n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto& row = out[x * n + y];
            row[x] = row[y] = 1;
            for (std::size_t z = 0; z < n; ++z)
                if (t.between(x, z, y)) row[z] = 1;
        }
    return out;
}

bool contained(const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

}  // namespace

std::optional<std::vector<std::size_t>> check_interval_subset(const BetweennessTable& t) {
    const std::size_t n = t.size();
    auto closed = all_closed(t);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            const auto& outer = closed[x * n + z];
            for (std::size_t y = 0; y < n; ++y)
                if (outer[y] && !contained(closed[x * n + y], outer)) return std::vector<std::size_t>{x, y, z};
        }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> check_nested_unions(const BetweennessTable& t) {
    const std::size_t n = t.size();
    auto closed = all_closed(t);
    std::set<std::vector<char>> intervals(closed.begin(), closed.end());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto& small = closed[x * n + y];
            for (std::size_t w = 0; w < n; ++w) {
                const auto& big = closed[x * n + w];
                if (!contained(small, big)) continue;
                auto uni = big;
                for (std::size_t i = 0; i < n; ++i) uni[i] = uni[i] || small[i];
                if (!intervals.count(uni)) return std::vector<std::size_t>{x, y, w};
            }
        }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> check_supremum(const BetweennessTable& t) {
    const std::size_t n = t.size();
    auto closed = all_closed(t);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto& members = closed[x * n + y];
            // z <= w iff z in [x,w]; must be total and antisymmetric on [x,y]
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t w = 0; w < n; ++w) {
                    if (z == w || !members[z] || !members[w]) continue;
                    bool zw = closed[x * n + w][z] != 0;
                    bool wz = closed[x * n + z][w] != 0;
                    if (zw == wz) return std::vector<std::size_t>{x, y, z, w};
                }
        }
    return std::nullopt;
}

}  // namespace contree
