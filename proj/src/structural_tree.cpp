#include "contree/structural_tree.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "contree/errors.hpp"
#include "union_find.hpp"

namespace contree {

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 9> kNodeKinds{{
    {NodeKind::Point, "point"},
    {NodeKind::Class, "class"},
    {NodeKind::CutPoint, "cutpoint"},
    {NodeKind::BridgeSample, "bridge-sample"},
    {NodeKind::Necklace, "necklace"},
    {NodeKind::InseparableSet, "inseparable-set"},
    {NodeKind::InseparablePair, "inseparable-pair"},
    {NodeKind::End, "end"},
    {NodeKind::Midpoint, "midpoint"},
}};

}  // namespace

std::string_view to_string(NodeKind k) {
    for (const auto& [kind, name] : kNodeKinds)
        if (kind == k) return name;
    return "point";
}

std::string_view to_string(ArcKind k) { return k == ArcKind::Glue ? "glue" : "arc"; }

std::optional<NodeKind> parse_node_kind(std::string_view s) {
    for (const auto& [kind, name] : kNodeKinds)
        if (name == s) return kind;
    return std::nullopt;
}

std::optional<ArcKind> parse_arc_kind(std::string_view s) {
    if (s == "glue") return ArcKind::Glue;
    if (s == "arc") return ArcKind::Bridge;
    return std::nullopt;
}

std::size_t StructuralTree::add_node(TreeNode node) {
    if (find(node.key)) throw InternalError("duplicate tree node key '" + node.key + "'");
    nodes_.push_back(std::move(node));
    adjacency_.emplace_back();
    return nodes_.size() - 1;
}

std::size_t StructuralTree::add_arc(std::size_t from, std::size_t to, Rational length, ArcKind kind,
                                    std::string provenance) {
    if (from >= nodes_.size() || to >= nodes_.size()) throw InternalError("arc endpoint out of range");
    arcs_.push_back(TreeArc{from, to, std::move(length), kind, std::move(provenance)});
    auto id = arcs_.size() - 1;
    adjacency_[from].emplace_back(to, id);
    adjacency_[to].emplace_back(from, id);
    return id;
}

std::optional<std::size_t> StructuralTree::find(std::string_view key) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].key == key) return i;
    return std::nullopt;
}

std::size_t StructuralTree::require(std::string_view key) const {
    if (auto i = find(key)) return *i;
    throw InputError("unknown tree node '" + std::string(key) + "'");
}

std::optional<std::size_t> StructuralTree::arc_between(std::size_t a, std::size_t b) const {
    for (const auto& [n, arc] : adjacency_.at(a))
        if (n == b) return arc;
    return std::nullopt;
}

bool StructuralTree::is_tree() const {
    if (nodes_.empty()) return false;
    if (arcs_.size() + 1 != nodes_.size()) return false;
    detail::UnionFind uf(nodes_.size());
    for (const auto& a : arcs_) {
        if (a.length <= 0) return false;
        if (!uf.unite(a.from, a.to)) return false;
    }
    return true;
}

std::vector<std::size_t> StructuralTree::path(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> parent(nodes_.size(), nodes_.size());
    std::vector<std::size_t> queue{a};
    parent.at(a) = a;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto u = queue[i];
        if (u == b) break;
        for (const auto& [v, arc] : adjacency_[u]) {
            if (parent[v] != nodes_.size()) continue;
            parent[v] = u;
            queue.push_back(v);
        }
    }
    if (parent.at(b) == nodes_.size()) throw InternalError("tree path requested between disconnected nodes");
    std::vector<std::size_t> out{b};
    while (out.back() != a) out.push_back(parent[out.back()]);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> StructuralTree::path_arcs(std::size_t a, std::size_t b) const {
    auto p = path(a, b);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out.push_back(*arc_between(p[i], p[i + 1]));
    return out;
}

bool StructuralTree::between(std::size_t x, std::size_t z, std::size_t y) const {
    if (z == x || z == y) return false;
    auto p = path(x, y);
    return std::find(p.begin(), p.end(), z) != p.end();
}

Rational StructuralTree::distance(std::size_t a, std::size_t b) const {
    Rational d = 0;
    for (auto arc : path_arcs(a, b)) d += arcs_[arc].length;
    return d;
}

Rational StructuralTree::total_length() const {
    Rational d = 0;
    for (const auto& a : arcs_) d += a.length;
    return d;
}

void StructuralTree::remove_arc(std::size_t arc) {
    arcs_.erase(arcs_.begin() + static_cast<std::ptrdiff_t>(arc));
    for (auto& adj : adjacency_) adj.clear();
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        adjacency_[arcs_[i].from].emplace_back(arcs_[i].to, i);
        adjacency_[arcs_[i].to].emplace_back(arcs_[i].from, i);
    }
}

bool StructuralTree::same_topology(const StructuralTree& other) const {
    if (nodes_.size() != other.nodes_.size() || arcs_.size() != other.arcs_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].key != other.nodes_[i].key || nodes_[i].kind != other.nodes_[i].kind) return false;
    std::set<std::pair<std::string, std::string>> mine, theirs;
    for (const auto& a : arcs_) mine.insert(std::minmax(nodes_[a.from].key, nodes_[a.to].key));
    for (const auto& a : other.arcs_) theirs.insert(std::minmax(other.nodes_[a.from].key, other.nodes_[a.to].key));
    return mine == theirs;
}

}  // namespace contree
