#include "contree/cutpoint.hpp"

#include <algorithm>
#include <map>

#include "contree/errors.hpp"

namespace contree {

CutPointSet cut_points(const GraphContinuum& X) {
    CutPointSet out;
    auto sub = Subdivision::uniform(X, 1);
    std::vector<char> removed(sub.node_count(), 0);
    auto splits = [&](std::size_t node) {
        removed[node] = 1;
        bool result = sub.components(removed).count > 1;
        removed[node] = 0;
        return result;
    };
    for (VertexId v = 0; v < X.vertex_count(); ++v)
        if (splits(v)) out.vertices.insert(v);
    for (EdgeId e = 0; e < X.edge_count(); ++e)
        if (splits(sub.edge_node(e, 0))) out.bridges.insert(e);
    return out;
}

CutPointPretree::CutPointPretree(const GraphContinuum& X, std::size_t grid)
    : oracle_(X, grid), cuts_(contree::cut_points(X)), table_(std::vector<std::string>{}) {
    const auto& sub = oracle_.subdivision();
    cut_index_.assign(sub.node_count(), -1);
    auto add_cut = [&](std::size_t node) {
        cut_index_[node] = static_cast<int>(cut_nodes_.size());
        cut_nodes_.push_back(node);
    };
    for (auto v : cuts_.vertices) add_cut(v);
    for (auto e : cuts_.bridges)
        for (std::size_t j = 0; j < sub.positions(e).size(); ++j) add_cut(sub.edge_node(e, j));
    for (auto s : cut_nodes_) {
        std::size_t one[] = {s};
        removal_.push_back(oracle_.remove(one));
    }

    // classes: non-cut atoms with identical separation signatures
    std::map<std::vector<int>, std::size_t> by_signature;
    for (auto a : oracle_.atoms()) {
        if (is_cut_node(a)) continue;
        std::vector<int> sig;
        for (const auto& l : removal_) sig.push_back(l.node[a]);
        auto [it, inserted] = by_signature.emplace(sig, classes_.size());
        if (inserted) classes_.emplace_back();
        auto& cls = classes_[it->second];
        cls.atoms.push_back(a);
        cls.cells.insert(oracle_.cell_of(a));
    }
    for (auto& cls : classes_) {
        cls.key = "class:" + cell_name(X, *cls.cells.begin());
        cls.singleton = cls.cells.size() == 1 && cls.cells.begin()->kind == Cell::Kind::Vertex;
    }

    for (auto v : cuts_.vertices) elements_.push_back(PElement{PKind::CutPoint, v, "cut:" + X.vertex_name(v)});
    for (auto e : cuts_.bridges)
        for (auto a : oracle_.atoms_in(CellSet{Cell::edge(e)}))
            elements_.push_back(PElement{PKind::BridgeSample, a, "sample:" + describe(X, oracle_.point_of(a))});
    for (std::size_t c = 0; c < classes_.size(); ++c) elements_.push_back(PElement{PKind::Class, c, classes_[c].key});

    std::vector<std::string> names;
    for (const auto& e : elements_) names.push_back(e.key);
    table_ = BetweennessTable::from(std::move(names),
                                    [&](std::size_t x, std::size_t z, std::size_t y) { return evaluate(x, z, y); });
}

bool CutPointPretree::cut_separates(std::size_t s, std::size_t p, std::size_t q) const {
    int i = cut_index_[s];
    if (i < 0) throw InternalError("separation queried for a non-cut node");
    if (s == p || s == q) return false;
    const auto& l = removal_[static_cast<std::size_t>(i)];
    return l.node[p] != l.node[q];
}

std::vector<std::size_t> CutPointPretree::representatives(const PElement& e) const {
    if (e.kind == PKind::Class) return classes_[e.index].atoms;
    return {e.index};
}

bool CutPointPretree::between_reps(std::size_t a, const PElement& z, std::size_t c, std::size_t b) const {
    if (z.kind != PKind::Class) return cut_separates(c, a, b);
    // [a,c) and (c,b] meet?
    if (is_cut_node(a) && (a == b || cut_separates(a, c, b))) return false;
    if (is_cut_node(b) && (b == a || cut_separates(b, a, c))) return false;
    for (auto s : cut_nodes_)
        if (cut_separates(s, a, c) && cut_separates(s, c, b)) return false;
    return true;
}

bool CutPointPretree::evaluate(std::size_t x, std::size_t z, std::size_t y) const {
    if (z == x || z == y || x == y) return false;
    const auto& ez = elements_[z];
    auto a = representatives(elements_[x]).front();
    auto b = representatives(elements_[y]).front();
    auto c = representatives(ez).front();
    return between_reps(a, ez, c, b);
}

std::vector<std::size_t> CutPointPretree::tree_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].kind != PKind::BridgeSample) out.push_back(i);
    return out;
}

TreeNode CutPointPretree::node_record(std::size_t element) const {
    const auto& X = continuum();
    const auto& e = elements_.at(element);
    TreeNode n;
    n.key = e.key;
    switch (e.kind) {
    case PKind::Class: {
        const auto& cls = classes_[e.index];
        n.kind = NodeKind::Class;
        n.label = describe_cells(X, cls.cells);
        for (const auto& c : cls.cells) n.cells.push_back(cell_name(X, c));
        break;
    }
    case PKind::CutPoint:
        n.kind = NodeKind::CutPoint;
        n.label = X.vertex_name(e.index);
        n.cells.push_back(cell_name(X, Cell::vertex(e.index)));
        break;
    case PKind::BridgeSample:
        n.kind = NodeKind::BridgeSample;
        n.label = describe(X, oracle_.point_of(e.index));
        n.cells.push_back(cell_name(X, oracle_.cell_of(e.index)));
        break;
    }
    return n;
}

CutPointPretree build_P(const GraphContinuum& X, std::size_t grid) {
    CutPointPretree P(X, grid);
    auto report = verify_pretree_axioms(P.table());
    if (!report.passed()) throw InternalError("cut-point betweenness is not a pretree:\n" + report.describe(P.table()));
    return P;
}

StructuralTree build_cutpoint_tree(const CutPointPretree& P) {
    const auto& X = P.continuum();
    auto subset = P.tree_elements();
    auto table = P.table().restrict_to(subset);
    std::vector<TreeNode> records;
    for (auto i : subset) records.push_back(P.node_record(i));

    auto policy = [&](std::size_t x, std::size_t y, TreeArc& arc) {
        for (std::size_t s = 0; s < P.elements().size(); ++s) {
            const auto& e = P.elements()[s];
            if (e.kind != PKind::BridgeSample || !P.table().between(subset[x], s, subset[y])) continue;
            arc.kind = ArcKind::Bridge;
            arc.provenance = cell_name(X, P.oracle().cell_of(e.index));
            return;
        }
    };
    auto tree = assemble_tree(table, std::move(records), policy);
    tree.name = "cutpoint";
    return tree;
}

StructuralTree build_cutpoint_tree(const GraphContinuum& X, std::size_t grid) {
    return build_cutpoint_tree(build_P(X, grid));
}

std::vector<std::size_t> metric_span_nodes(const StructuralTree& tree) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
        auto k = tree.node(i).kind;
        bool span = k == NodeKind::CutPoint || k == NodeKind::InseparablePair || k == NodeKind::Necklace;
        if (!span && (k == NodeKind::Class || k == NodeKind::End) && tree.incident(i).size() == 1)
            span = tree.arc(tree.incident(i)[0].second).kind == ArcKind::Bridge;  // far end of a pendant bridge
        if (span) out.push_back(i);
    }
    return out;
}

std::size_t metric_seed(const StructuralTree& tree, const std::optional<std::string>& seed) {
    auto span = metric_span_nodes(tree);
    if (seed) {
        for (auto i : span)
            if (tree.node(i).key == *seed || tree.node(i).label == *seed) return i;
        throw InputError("seed '" + *seed + "' is not a node of the metrized span");
    }
    if (span.empty()) return 0;
    auto rank = [&](std::size_t i) {
        auto k = tree.node(i).kind;
        return k == NodeKind::CutPoint ? 0 : (k == NodeKind::Class || k == NodeKind::End) ? 2 : 1;
    };
    return *std::min_element(span.begin(), span.end(), [&](std::size_t a, std::size_t b) {
        if (rank(a) != rank(b)) return rank(a) < rank(b);
        return tree.node(a).label < tree.node(b).label;
    });
}

StructuralTree metrize(const StructuralTree& tree, MetricMode mode, const std::optional<std::string>& seed,
                       const GraphContinuum* X) {
    StructuralTree out = tree;
    for (std::size_t a = 0; a < out.arc_count(); ++a) out.arc(a).length = 1;

    if (mode == MetricMode::Geometric) {
        for (std::size_t a = 0; a < out.arc_count(); ++a) {
            auto& arc = out.arc(a);
            if (arc.kind != ArcKind::Bridge) continue;
            if (!X) throw PreconditionError("geometric metrization needs the continuum");
            auto e = arc.provenance.size() > 2 ? X->find_edge(arc.provenance.substr(2)) : std::nullopt;
            if (!e) throw InternalError("bridge arc without edge provenance");
            arc.length = X->edge(*e).length;
        }
        return out;
    }

    auto span = metric_span_nodes(tree);
    if (span.empty()) return out;
    std::set<std::size_t> in_span(span.begin(), span.end());
    auto root = metric_seed(tree, seed);

    // breadth-first order, neighbours by label
    std::vector<std::size_t> order{root};
    std::vector<char> seen(tree.node_count(), 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto nbrs = tree.incident(order[i]);
        std::sort(nbrs.begin(), nbrs.end(),
                  [&](const auto& p, const auto& q) { return tree.node(p.first).label < tree.node(q.first).label; });
        for (const auto& [v, arc] : nbrs)
            if (!seen[v]) {
                seen[v] = 1;
                order.push_back(v);
            }
    }

    std::vector<char> attached(tree.node_count(), 0);
    attached[root] = 1;
    unsigned n = 0;
    for (auto s : order) {
        if (!in_span.count(s) || attached[s]) continue;
        auto p = tree.path(root, s);
        std::size_t start = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (attached[p[i]]) start = i;
        std::vector<std::size_t> arcs;
        for (std::size_t i = start; i + 1 < p.size(); ++i) {
            arcs.push_back(*tree.arc_between(p[i], p[i + 1]));
            attached[p[i + 1]] = 1;
        }
        Rational share = Rational(1, 1) / (Rational(boost::multiprecision::cpp_int(1) << n) * arcs.size());
        for (auto a : arcs) out.arc(a).length = share;
        ++n;
    }
    return out;
}

TreeMap induced_map(const StructuralTree& cutpoint_tree, const GraphContinuum& X, const GraphAutomorphism& g) {
    return induce_tree_map(cutpoint_tree, X, g);
}

}  // namespace contree
