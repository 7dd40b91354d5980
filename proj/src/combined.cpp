#include "contree/combined.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "contree/cutpair.hpp"
#include "contree/errors.hpp"

namespace contree {

GraphContinuum block_closure(const GraphContinuum& X, const EquivClass& cls) {
    auto closure = closure_of(X, cls.cells);
    std::vector<std::string> names;
    std::map<VertexId, VertexId> renumber;
    for (const auto& c : closure)
        if (c.kind == Cell::Kind::Vertex) {
            renumber[c.id] = names.size();
            names.push_back(X.vertex_name(c.id));
        }
    std::vector<Edge> edges;
    for (const auto& c : closure)
        if (c.kind == Cell::Kind::Edge) {
            Edge e = X.edge(c.id);
            e.u = renumber.at(e.u);
            e.v = renumber.at(e.v);
            edges.push_back(std::move(e));
        }
    try {
        GraphContinuum block(std::move(names), std::move(edges));
        if (!cut_points(block).empty()) throw InternalError("closure of " + cls.key + " has a cut point");
        return block;
    } catch (const InputError& e) {
        throw InternalError("closure of " + cls.key + " is not a connected graph: " + e.what());
    }
}

namespace {

// Node (or arc, by its ends) at the middle of the subtree spanned by H.
std::pair<std::size_t, std::size_t> center_of(const StructuralTree& T, const std::vector<std::size_t>& H) {
    std::size_t a = H[0], b = H[0], best = 0;
    for (auto x : H)
        for (auto y : H) {
            auto d = T.path(x, y).size();
            if (d > best) best = d, a = x, b = y;
        }
    auto p = T.path(a, b);
    if (p.size() % 2 == 1) return {p[p.size() / 2], p[p.size() / 2]};
    return {p[p.size() / 2 - 1], p[p.size() / 2]};
}

}  // namespace

CombinedTree build_combined_tree(const GraphContinuum& X, std::size_t grid) {
    auto P = build_P(X, grid);
    auto T = build_cutpoint_tree(P);
    std::map<std::string, const EquivClass*> class_by_key;
    for (const auto& c : P.classes()) class_by_key[c.key] = &c;

    CombinedTree out;
    auto& C = out.tree;
    C.name = "combined";

    struct Embedded {
        StructuralTree jsj;
        std::size_t offset = 0;
        std::string block;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoints;  // keyed on combined ids
    };
    std::map<std::size_t, Embedded> embedded;  // by node of T
    std::vector<std::size_t> image(T.node_count(), 0);

    for (std::size_t i = 0; i < T.node_count(); ++i) {
        const auto& n = T.node(i);
        const EquivClass* cls = n.kind == NodeKind::Class ? class_by_key.at(n.key) : nullptr;
        if (!cls || cls->singleton) {
            image[i] = C.add_node(n);
            continue;
        }
        auto block = block_closure(X, *cls);
        Embedded e;
        e.jsj = build_jsj_tree(block, grid);
        std::vector<std::string> cells;
        for (const auto& c : cls->cells) cells.push_back(cell_name(X, c));
        for (std::size_t k = 0; k < cells.size(); ++k) e.block += (k ? "," : "") + cells[k];
        e.offset = C.node_count();
        for (auto node : e.jsj.nodes()) {
            node.key = n.key + "/" + node.key;
            node.block = e.block;
            C.add_node(std::move(node));
        }
        for (const auto& arc : e.jsj.arcs())
            C.add_arc(arc.from + e.offset, arc.to + e.offset, arc.length, arc.kind, arc.provenance);
        image[i] = e.offset;
        embedded.emplace(i, std::move(e));
    }

    auto attach = [&](std::size_t class_node, std::size_t other) -> std::size_t {
        auto& e = embedded.at(class_node);
        const auto& cut = T.node(other);
        if (cut.cells.size() != 1) throw InternalError("class attached to a non-point node " + cut.key);
        std::vector<std::size_t> H;
        for (std::size_t k = 0; k < e.jsj.node_count(); ++k) {
            const auto& cells = e.jsj.node(k).cells;
            if (std::find(cells.begin(), cells.end(), cut.cells[0]) != cells.end()) H.push_back(k);
        }
        if (H.empty())
            throw InternalError("cut point " + cut.key + " lies in no element of the block's R");
        auto [p, q] = center_of(e.jsj, H);
        std::size_t at;
        if (p == q) {
            at = p + e.offset;
        } else {
            auto cp = p + e.offset, cq = q + e.offset;
            auto key = std::minmax(cp, cq);
            auto it = e.midpoints.find(key);
            if (it == e.midpoints.end()) {
                TreeNode mid;
                mid.kind = NodeKind::Midpoint;
                mid.key = "mid:" + C.node(key.first).key + "|" + C.node(key.second).key;
                std::set<std::string> cells(C.node(cp).cells.begin(), C.node(cp).cells.end());
                cells.insert(C.node(cq).cells.begin(), C.node(cq).cells.end());
                mid.cells.assign(cells.begin(), cells.end());
                mid.label = "mid(" + C.node(key.first).label + "," + C.node(key.second).label + ")";
                mid.block = e.block;
                it = e.midpoints.emplace(key, C.add_node(std::move(mid))).first;
            }
            at = it->second;
        }
        out.attachments.push_back(Attachment{cut.key, C.node(at).key});
        return at;
    };

    for (const auto& arc : T.arcs()) {
        auto from = embedded.count(arc.from) ? attach(arc.from, arc.to) : image[arc.from];
        auto to = embedded.count(arc.to) ? attach(arc.to, arc.from) : image[arc.to];
        C.add_arc(from, to, arc.length, arc.kind, arc.provenance);
    }

    for (auto& [i, e] : embedded)
        for (const auto& [ends, mid] : e.midpoints) {
            auto a = C.arc_between(ends.first, ends.second);
            if (!a) throw InternalError("midpoint on a missing arc");
            auto kind = C.arc(*a).kind;
            C.remove_arc(*a);
            C.add_arc(ends.first, mid, Rational(1), kind);
            C.add_arc(mid, ends.second, Rational(1), kind);
        }

    if (!C.is_tree()) throw InternalError("combined structure is not a tree");
    return out;
}

}  // namespace contree
