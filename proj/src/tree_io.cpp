#include "contree/tree_io.hpp"

#include <map>
#include <sstream>

#include "contree/cutpair.hpp"
#include "contree/errors.hpp"

namespace contree {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

namespace {

std::string join_cells(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    return out;
}

std::vector<std::string> split_cells(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

// `word key=value key="quoted value" ...`
struct Record {
    std::string type;
    std::map<std::string, std::string> fields;
};

Record parse_record(std::string_view line, int lineno) {
    Record r;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip_ws();
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') r.type += line[i++];
    for (skip_ws(); i < line.size(); skip_ws()) {
        if (line[i] == '#') break;
        std::string key;
        while (i < line.size() && line[i] != '=' && line[i] != ' ' && line[i] != '\t') key += line[i++];
        if (i >= line.size() || line[i] != '=') throw InputError("expected key=value after '" + key + "'", lineno);
        ++i;
        std::string value;
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char c = line[i++];
                if (c == '\\' && i < line.size()) {
                    value += line[i++];
                } else if (c == '"') {
                    closed = true;
                    break;
                } else {
                    value += c;
                }
            }
            if (!closed) throw InputError("unterminated quoted value for '" + key + "'", lineno);
        } else {
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') value += line[i++];
        }
        if (!r.fields.emplace(key, value).second) throw InputError("duplicate field '" + key + "'", lineno);
    }
    return r;
}

std::string_view dot_shape(NodeKind k) {
    switch (k) {
    case NodeKind::Point: return "circle";
    case NodeKind::Class: return "ellipse";
    case NodeKind::CutPoint: return "diamond";
    case NodeKind::BridgeSample: return "point";
    case NodeKind::Necklace: return "doublecircle";
    case NodeKind::InseparableSet: return "box";
    case NodeKind::InseparablePair: return "hexagon";
    case NodeKind::End: return "triangle";
    case NodeKind::Midpoint: return "point";
    }
    return "circle";
}

}  // namespace

std::string write_tree_text(const StructuralTree& tree) {
    std::ostringstream out;
    out << "tree name=" << quote(tree.name);
    if (tree.root) out << " root=" << quote(tree.node(*tree.root).key);
    out << "\n";
    for (const auto& n : tree.nodes()) {
        out << "node key=" << quote(n.key) << " kind=" << to_string(n.kind) << " label=" << quote(n.label)
            << " cells=" << quote(join_cells(n.cells));
        if (!n.block.empty()) out << " block=" << quote(n.block);
        out << "\n";
    }
    for (const auto& a : tree.arcs()) {
        out << "arc from=" << quote(tree.node(a.from).key) << " to=" << quote(tree.node(a.to).key)
            << " kind=" << to_string(a.kind) << " length=" << to_string(a.length);
        if (!a.provenance.empty()) out << " provenance=" << quote(a.provenance);
        out << "\n";
    }
    return out.str();
}

StructuralTree parse_tree_text(std::string_view text) {
    StructuralTree tree;
    bool header = false;
    std::optional<std::string> root;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;
        auto r = parse_record(line, lineno);
        auto take = [&](const char* key, bool required) -> std::optional<std::string> {
            auto it = r.fields.find(key);
            if (it == r.fields.end()) {
                if (required) throw InputError(r.type + " record lacks '" + key + "'", lineno);
                return std::nullopt;
            }
            auto v = it->second;
            r.fields.erase(it);
            return v;
        };
        auto finish = [&] {
            if (!r.fields.empty()) throw InputError("unknown field '" + r.fields.begin()->first + "'", lineno);
        };
        if (r.type == "tree") {
            if (header) throw InputError("second tree record", lineno);
            header = true;
            tree.name = *take("name", true);
            root = take("root", false);
            finish();
        } else if (r.type == "node") {
            if (!header) throw InputError("node before tree record", lineno);
            TreeNode n;
            n.key = *take("key", true);
            auto kind = take("kind", true);
            auto k = parse_node_kind(*kind);
            if (!k) throw InputError("unknown node kind '" + *kind + "'", lineno);
            n.kind = *k;
            n.label = take("label", false).value_or("");
            n.cells = split_cells(take("cells", false).value_or(""));
            n.block = take("block", false).value_or("");
            finish();
            if (tree.find(n.key)) throw InputError("duplicate node key '" + n.key + "'", lineno);
            tree.add_node(std::move(n));
        } else if (r.type == "arc") {
            if (!header) throw InputError("arc before tree record", lineno);
            auto from = tree.find(*take("from", true));
            auto to = tree.find(*take("to", true));
            if (!from || !to) throw InputError("arc refers to an unknown node", lineno);
            auto kind_name = take("kind", false).value_or("glue");
            auto kind = parse_arc_kind(kind_name);
            if (!kind) throw InputError("unknown arc kind '" + kind_name + "'", lineno);
            Rational length(1);
            if (auto l = take("length", false)) {
                try {
                    length = parse_rational(*l);
                } catch (const std::exception&) {
                    throw InputError("bad length '" + *l + "'", lineno);
                }
                if (length <= 0) throw InputError("arc length must be positive", lineno);
            }
            auto provenance = take("provenance", false).value_or("");
            finish();
            tree.add_arc(*from, *to, length, *kind, provenance);
        } else if (r.type == "necklace" || r.type == "gap" || r.type == "element" || r.type == "action") {
            continue;
        } else {
            throw InputError("unknown record '" + r.type + "'", lineno);
        }
    }
    if (!header) throw InputError("missing tree record");
    if (root) {
        auto r = tree.find(*root);
        if (!r) throw InputError("root '" + *root + "' is not a node");
        tree.root = *r;
    }
    return tree;
}

std::string write_tree_dot(const StructuralTree& tree) {
    std::ostringstream out;
    out << "graph " << quote(tree.name) << " {\n";
    for (const auto& n : tree.nodes()) {
        out << "  " << quote(n.key) << " [label=" << quote(n.label.empty() ? n.key : n.label)
            << " shape=" << dot_shape(n.kind) << " kind=" << quote(to_string(n.kind)) << "];\n";
    }
    for (const auto& a : tree.arcs()) {
        out << "  " << quote(tree.node(a.from).key) << " -- " << quote(tree.node(a.to).key)
            << " [label=" << quote(to_string(a.length));
        if (a.kind == ArcKind::Bridge) out << " style=bold";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string write_cutpair_records(const CutPairAnalysis& A) {
    const auto& X = A.continuum();
    std::ostringstream out;
    for (std::size_t i = 0; i < A.necklaces().size(); ++i) {
        const auto& N = A.necklaces()[i];
        std::vector<std::string> cyc;
        for (const auto& c : N.cycle) cyc.push_back(cell_name(X, c));
        out << "necklace key=" << quote(N.key) << " cycle=" << quote(join_cells(cyc)) << "\n";
        for (const auto& g : A.gaps(i)) {
            std::vector<std::string> cells;
            for (const auto& c : g.closure) cells.push_back(cell_name(X, c));
            out << "gap necklace=" << quote(N.key) << " closure=" << quote(join_cells(cells))
                << " sides=" << quote(X.vertex_name(g.side_b) + "," + X.vertex_name(g.side_c))
                << " fat=" << (g.fat ? "yes" : "no") << "\n";
        }
    }
    for (const auto& e : A.R()) {
        std::vector<std::string> roles;
        if (e.is_necklace) roles.push_back("necklace");
        if (e.is_maximal_set) roles.push_back("maximal-set");
        if (e.is_pair) roles.push_back("pair");
        out << "element key=" << quote(e.key) << " label=" << quote(e.label) << " roles=" << quote(join_cells(roles))
            << "\n";
    }
    return out.str();
}

}  // namespace contree
