#include "contree/tree_map.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "contree/errors.hpp"
#include "union_find.hpp"

namespace contree {

std::string describe(const StructuralTree& tree, const TreePoint& p) {
    if (p.node) return tree.node(*p.node).key;
    const auto& a = tree.arc(p.arc);
    return "[" + tree.node(a.from).key + " -- " + tree.node(a.to).key + "]@" + to_string(p.u);
}

TreeMap TreeMap::identity(const StructuralTree& tree) {
    TreeMap g;
    for (std::size_t i = 0; i < tree.node_count(); ++i) g.node_image.push_back(i);
    for (std::size_t i = 0; i < tree.arc_count(); ++i) g.arc_image.push_back(i);
    g.arc_reversed.assign(tree.arc_count(), false);
    return g;
}

TreePoint TreeMap::apply(const TreePoint& p) const {
    if (p.node) return TreePoint::at_node(node_image.at(*p.node));
    return TreePoint::on_arc(arc_image.at(p.arc), arc_reversed.at(p.arc) ? Rational(1) - p.u : p.u);
}

TreeMap TreeMap::compose(const TreeMap& inner) const {
    TreeMap out;
    for (auto n : inner.node_image) out.node_image.push_back(node_image.at(n));
    for (std::size_t a = 0; a < inner.arc_image.size(); ++a) {
        auto mid = inner.arc_image[a];
        out.arc_image.push_back(arc_image.at(mid));
        out.arc_reversed.push_back(inner.arc_reversed[a] != arc_reversed.at(mid));
    }
    return out;
}

TreeMap TreeMap::inverse() const {
    TreeMap out;
    out.node_image.resize(node_image.size());
    out.arc_image.resize(arc_image.size());
    out.arc_reversed.resize(arc_image.size());
    for (std::size_t n = 0; n < node_image.size(); ++n) out.node_image[node_image[n]] = n;
    for (std::size_t a = 0; a < arc_image.size(); ++a) {
        out.arc_image[arc_image[a]] = a;
        out.arc_reversed[arc_image[a]] = arc_reversed[a];
    }
    return out;
}

bool TreeMap::is_identity() const {
    for (std::size_t n = 0; n < node_image.size(); ++n)
        if (node_image[n] != n) return false;
    for (std::size_t a = 0; a < arc_image.size(); ++a)
        if (arc_image[a] != a || arc_reversed[a]) return false;
    return true;
}

void validate_tree_map(const StructuralTree& tree, const TreeMap& g) {
    if (g.node_image.size() != tree.node_count() || g.arc_image.size() != tree.arc_count() ||
        g.arc_reversed.size() != tree.arc_count())
        throw InternalError("tree map has the wrong size");
    std::vector<char> hit(tree.node_count(), 0);
    for (auto n : g.node_image) {
        if (n >= tree.node_count() || hit[n]) throw InternalError("tree map is not a node bijection");
        hit[n] = 1;
    }
    hit.assign(tree.arc_count(), 0);
    for (std::size_t a = 0; a < tree.arc_count(); ++a) {
        auto b = g.arc_image[a];
        if (b >= tree.arc_count() || hit[b]) throw InternalError("tree map is not an arc bijection");
        hit[b] = 1;
        const auto& src = tree.arc(a);
        const auto& dst = tree.arc(b);
        auto f = g.node_image[src.from], t = g.node_image[src.to];
        bool ok = g.arc_reversed[a] ? (dst.from == t && dst.to == f) : (dst.from == f && dst.to == t);
        if (!ok) throw InternalError("tree map does not preserve incidence");
    }
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string join_list(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

Cell parse_cell(const GraphContinuum& X, const std::string& name) {
    if (name.size() > 2 && name[1] == ':') {
        auto rest = std::string_view(name).substr(2);
        if (name[0] == 'v')
            if (auto v = X.find_vertex(rest)) return Cell::vertex(*v);
        if (name[0] == 'e')
            if (auto e = X.find_edge(rest)) return Cell::edge(*e);
    }
    throw InputError("tree provenance refers to unknown cell '" + name + "'");
}

}  // namespace

std::vector<std::string> map_cell_names(const GraphContinuum& X, const GraphAutomorphism& g,
                                        const std::vector<std::string>& names) {
    CellSet image;
    for (const auto& n : names) image.insert(g.apply(parse_cell(X, n)));
    std::vector<std::string> out;
    for (const auto& c : image) out.push_back(cell_name(X, c));
    return out;
}

TreeMap induce_tree_map(const StructuralTree& tree, const GraphContinuum& X, const GraphAutomorphism& g) {
    validate_automorphism(X, g);
    auto canonical = [&](const std::vector<std::string>& names) {
        return map_cell_names(X, GraphAutomorphism::identity(X), names);
    };
    std::vector<std::vector<std::string>> cells, blocks;
    for (const auto& n : tree.nodes()) {
        cells.push_back(canonical(n.cells));
        blocks.push_back(canonical(split_list(n.block)));
    }

    const std::size_t none = tree.node_count();
    TreeMap m;
    m.node_image.assign(tree.node_count(), none);
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
        auto want_cells = map_cell_names(X, g, cells[i]);
        auto want_block = map_cell_names(X, g, blocks[i]);
        std::vector<std::size_t> candidates;
        for (std::size_t j = 0; j < tree.node_count(); ++j)
            if (tree.node(j).kind == tree.node(i).kind && cells[j] == want_cells && blocks[j] == want_block)
                candidates.push_back(j);
        if (candidates.empty())
            throw InternalError("tree is not invariant: no image for node '" + tree.node(i).key + "'");
        if (candidates.size() == 1)
            m.node_image[i] = candidates[0];
        else
            pending.push_back(i);
    }
    // Ambiguous provenance (e.g. inserted midpoints): resolve by neighbours.
    for (std::size_t round = 0; !pending.empty() && round <= tree.node_count(); ++round) {
        std::vector<std::size_t> still;
        for (auto i : pending) {
            std::set<std::size_t> want;
            bool known = true;
            for (const auto& [v, arc] : tree.incident(i)) {
                if (m.node_image[v] == none) known = false;
                want.insert(m.node_image[v]);
            }
            if (!known) {
                still.push_back(i);
                continue;
            }
            std::vector<std::size_t> candidates;
            for (std::size_t j = 0; j < tree.node_count(); ++j) {
                if (tree.node(j).kind != tree.node(i).kind) continue;
                std::set<std::size_t> have;
                for (const auto& [v, arc] : tree.incident(j)) have.insert(v);
                if (have == want) candidates.push_back(j);
            }
            if (candidates.size() != 1)
                throw InternalError("cannot resolve image of node '" + tree.node(i).key + "'");
            m.node_image[i] = candidates[0];
        }
        pending = std::move(still);
    }
    if (!pending.empty()) throw InternalError("cannot resolve the induced tree map");

    for (std::size_t a = 0; a < tree.arc_count(); ++a) {
        const auto& arc = tree.arc(a);
        auto f = m.node_image[arc.from], t = m.node_image[arc.to];
        auto b = tree.arc_between(f, t);
        if (!b) throw InternalError("induced map does not preserve arcs");
        m.arc_image.push_back(*b);
        m.arc_reversed.push_back(tree.arc(*b).from != f);
    }
    validate_tree_map(tree, m);
    return m;
}

bool TreeFixedSet::contains(const StructuralTree& tree, const TreePoint& p) const {
    if (p.node) return nodes.count(*p.node) > 0;
    if (arcs.count(p.arc)) return true;
    (void)tree;
    return midpoints.count(p.arc) && p.u == Rational(1, 2);
}

TreeFixedSet TreeFixedSet::intersect(const TreeFixedSet& other) const {
    TreeFixedSet out;
    for (auto n : nodes)
        if (other.nodes.count(n)) out.nodes.insert(n);
    for (auto a : arcs)
        if (other.arcs.count(a)) out.arcs.insert(a);
    for (auto a : midpoints)
        if (other.midpoints.count(a) || other.arcs.count(a)) out.midpoints.insert(a);
    for (auto a : other.midpoints)
        if (arcs.count(a)) out.midpoints.insert(a);
    return out;
}

std::optional<TreePoint> TreeFixedSet::any_point() const {
    if (!nodes.empty()) return TreePoint::at_node(*nodes.begin());
    if (!arcs.empty()) return TreePoint::on_arc(*arcs.begin(), Rational(1, 2));
    if (!midpoints.empty()) return TreePoint::on_arc(*midpoints.begin(), Rational(1, 2));
    return std::nullopt;
}

std::string TreeFixedSet::describe(const StructuralTree& tree) const {
    std::vector<std::string> parts;
    for (auto n : nodes) parts.push_back(tree.node(n).key);
    for (auto a : arcs) parts.push_back("arc(" + tree.node(tree.arc(a).from).key + "," + tree.node(tree.arc(a).to).key + ")");
    for (auto a : midpoints)
        parts.push_back("mid(" + tree.node(tree.arc(a).from).key + "," + tree.node(tree.arc(a).to).key + ")");
    return "{" + join_list(parts) + "}";
}

TreeFixedSet fixed_set(const StructuralTree& tree, const TreeMap& g) {
    TreeFixedSet f;
    for (std::size_t n = 0; n < tree.node_count(); ++n)
        if (g.node_image[n] == n) f.nodes.insert(n);
    for (std::size_t a = 0; a < tree.arc_count(); ++a) {
        if (g.arc_image[a] != a) continue;
        if (g.arc_reversed[a])
            f.midpoints.insert(a);
        else
            f.arcs.insert(a);
    }
    return f;
}

bool is_connected(const StructuralTree& tree, const TreeFixedSet& f) {
    if (f.empty()) return false;
    // pieces: fixed nodes, then each midpoint on its own
    std::map<std::size_t, std::size_t> index;
    for (auto n : f.nodes) index.emplace(n, index.size());
    std::size_t pieces = index.size() + f.midpoints.size();
    detail::UnionFind uf(pieces);
    for (auto a : f.arcs) {
        auto i = index.find(tree.arc(a).from), j = index.find(tree.arc(a).to);
        if (i == index.end() || j == index.end()) return false;  // an arc is fixed only with its ends
        uf.unite(i->second, j->second);
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < pieces; ++i) roots.insert(uf.find(i));
    return roots.size() == 1;
}

}  // namespace contree
