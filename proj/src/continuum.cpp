#include "contree/continuum.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "contree/errors.hpp"
#include "union_find.hpp"

namespace contree {

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string strip_comment(std::string_view line) {
    auto hash = line.find('#');
    return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

// Splits text into (line number, tokens) for non-empty lines.
std::vector<std::pair<int, std::vector<std::string>>> tokenize_lines(std::string_view text) {
    std::vector<std::pair<int, std::vector<std::string>>> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        auto tokens = split_tokens(strip_comment(line));
        if (!tokens.empty()) out.emplace_back(line_no, std::move(tokens));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

bool segment_nonempty(const Segment& s) {
    if (s.lo < s.hi) return true;
    return s.lo == s.hi && s.lo_closed && s.hi_closed;
}

bool segment_contains(const Segment& s, const Rational& t) {
    if (t < s.lo || t > s.hi) return false;
    if (t == s.lo && !s.lo_closed) return false;
    if (t == s.hi && !s.hi_closed) return false;
    return true;
}

std::optional<Segment> segment_intersection(const Segment& a, const Segment& b) {
    Segment r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (!segment_nonempty(r)) return std::nullopt;
    return r;
}

void normalize_segments(std::vector<Segment>& segs) {
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Segment> out;
    for (const auto& s : segs) {
        if (!out.empty()) {
            auto& last = out.back();
            bool joins = s.lo < last.hi || (s.lo == last.hi && (last.hi_closed || s.lo_closed));
            if (joins) {
                if (s.lo == last.lo) last.lo_closed = last.lo_closed || s.lo_closed;
                if (s.hi > last.hi) {
                    last.hi = s.hi;
                    last.hi_closed = s.hi_closed;
                } else if (s.hi == last.hi) {
                    last.hi_closed = last.hi_closed || s.hi_closed;
                }
                continue;
            }
        }
        out.push_back(s);
    }
    segs = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------- graph

GraphContinuum::GraphContinuum(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)), incidence_(vertex_names_.size()) {
    if (vertex_names_.empty()) throw InputError("graph has no vertices");
    std::set<std::string> seen;
    for (const auto& n : vertex_names_) {
        if (!seen.insert(n).second) throw InputError("duplicate vertex '" + n + "'");
    }
    seen.clear();
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (!seen.insert(ed.name).second) throw InputError("duplicate edge '" + ed.name + "'");
        if (ed.u >= vertex_names_.size() || ed.v >= vertex_names_.size())
            throw InputError("edge '" + ed.name + "' has a dangling endpoint");
        if (ed.length <= 0) throw InputError("edge '" + ed.name + "' has nonpositive length");
        incidence_[ed.u].push_back(e);
        if (ed.v != ed.u) incidence_[ed.v].push_back(e);
    }

    detail::UnionFind uf(vertex_names_.size());
    for (const auto& ed : edges_) uf.unite(ed.u, ed.v);
    std::map<std::size_t, std::vector<std::string>> comps;
    for (VertexId v = 0; v < vertex_names_.size(); ++v) comps[uf.find(v)].push_back(vertex_names_[v]);
    if (comps.size() > 1) {
        std::ostringstream msg;
        msg << "graph is disconnected (" << comps.size() << " components):";
        int shown = 0;
        for (const auto& [root, names] : comps) {
            if (shown++ == 2) break;
            msg << " {";
            for (std::size_t i = 0; i < names.size(); ++i) msg << (i ? "," : "") << names[i];
            msg << "}";
        }
        throw InputError(msg.str());
    }
}

std::size_t GraphContinuum::degree(VertexId v) const {
    std::size_t d = 0;
    for (auto e : incidence_.at(v)) d += edges_[e].is_loop() ? 2 : 1;
    return d;
}

std::optional<VertexId> GraphContinuum::find_vertex(std::string_view name) const {
    for (VertexId v = 0; v < vertex_names_.size(); ++v)
        if (vertex_names_[v] == name) return v;
    return std::nullopt;
}

std::optional<EdgeId> GraphContinuum::find_edge(std::string_view name) const {
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].name == name) return e;
    return std::nullopt;
}

bool GraphContinuum::is_cycle_graph() const {
    if (edges_.empty()) return false;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (degree(v) != 2) return false;
    return true;  // connected with all degrees 2
}

GraphContinuum parse_graph(std::string_view text) {
    std::vector<std::string> vertices;
    std::unordered_map<std::string, VertexId> vertex_index;
    std::vector<Edge> edges;
    std::set<std::string> edge_names;

    for (const auto& [line, tok] : tokenize_lines(text)) {
        if (tok[0] == "v") {
            if (tok.size() != 2) throw InputError("expected 'v <id>'", line);
            if (vertex_index.count(tok[1])) throw InputError("duplicate vertex '" + tok[1] + "'", line);
            vertex_index[tok[1]] = vertices.size();
            vertices.push_back(tok[1]);
        } else if (tok[0] == "e") {
            if (tok.size() != 4 && tok.size() != 5) throw InputError("expected 'e <id> <u> <v> [length]'", line);
            if (!edge_names.insert(tok[1]).second) throw InputError("duplicate edge '" + tok[1] + "'", line);
            Edge ed;
            ed.name = tok[1];
            for (int k = 0; k < 2; ++k) {
                auto it = vertex_index.find(tok[2 + k]);
                if (it == vertex_index.end())
                    throw InputError("edge '" + tok[1] + "' references undeclared vertex '" + tok[2 + k] + "'", line);
                (k == 0 ? ed.u : ed.v) = it->second;
            }
            if (tok.size() == 5) {
                try {
                    ed.length = parse_rational(tok[4]);
                } catch (const std::invalid_argument& ex) {
                    throw InputError(std::string("bad length: ") + ex.what(), line);
                }
                if (ed.length <= 0) throw InputError("edge '" + tok[1] + "' has nonpositive length", line);
            }
            edges.push_back(std::move(ed));
        } else {
            throw InputError("unknown directive '" + tok[0] + "'", line);
        }
    }
    return GraphContinuum(std::move(vertices), std::move(edges));
}

std::string format_graph(const GraphContinuum& X) {
    std::ostringstream out;
    for (const auto& n : X.vertex_names()) out << "v " << n << "\n";
    for (const auto& e : X.edges()) {
        out << "e " << e.name << " " << X.vertex_name(e.u) << " " << X.vertex_name(e.v);
        if (e.length != 1) out << " " << to_string(e.length);
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------- points, cells

Point Point::vertex(VertexId v) {
    Point p;
    p.kind = Kind::Vertex;
    p.id = v;
    return p;
}

Point Point::on_edge(EdgeId e, const Rational& t) {
    if (t <= 0 || t >= 1) throw InputError("edge parameter must lie strictly between 0 and 1");
    Point p;
    p.kind = Kind::EdgeInterior;
    p.id = e;
    p.t = t;
    return p;
}

bool operator==(const Point& a, const Point& b) {
    if (a.kind != b.kind || a.id != b.id) return false;
    return a.kind == Point::Kind::Vertex || a.t == b.t;
}

bool operator<(const Point& a, const Point& b) {
    if (a.kind != b.kind) return a.kind == Point::Kind::Vertex;
    if (a.id != b.id) return a.id < b.id;
    if (a.kind == Point::Kind::Vertex) return false;
    return a.t < b.t;
}

std::string describe(const GraphContinuum& X, const Point& p) {
    if (p.is_vertex()) return X.vertex_name(p.id);
    return X.edge(p.id).name + "@" + to_string(p.t);
}

std::string cell_name(const GraphContinuum& X, const Cell& c) {
    return c.kind == Cell::Kind::Vertex ? "v:" + X.vertex_name(c.id) : "e:" + X.edge(c.id).name;
}

std::string describe_cells(const GraphContinuum& X, const CellSet& cells) {
    std::string out = "{";
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out += ",";
        first = false;
        out += cell_name(X, c);
    }
    return out + "}";
}

CellSet closure_of(const GraphContinuum& X, const CellSet& cells) {
    CellSet out = cells;
    for (const auto& c : cells) {
        if (c.kind == Cell::Kind::Edge) {
            out.insert(Cell::vertex(X.edge(c.id).u));
            out.insert(Cell::vertex(X.edge(c.id).v));
        }
    }
    return out;
}

// ---------------------------------------------------------------- regions

Region Region::whole(const GraphContinuum& X) {
    Region r;
    for (VertexId v = 0; v < X.vertex_count(); ++v) r.add_vertex(v);
    for (EdgeId e = 0; e < X.edge_count(); ++e) r.add_segment(e, Segment{Rational(0), Rational(1), false, false});
    return r;
}

Region Region::of_points(std::span<const Point> points) {
    Region r;
    for (const auto& p : points) r.add_point(p);
    return r;
}

Region Region::of_cells(const GraphContinuum& X, const CellSet& cells) {
    Region r;
    for (const auto& c : cells) {
        if (c.kind == Cell::Kind::Vertex)
            r.add_vertex(c.id);
        else
            r.add_segment(c.id, Segment{Rational(0), Rational(1), false, false});
    }
    (void)X;
    return r;
}

void Region::add_segment(EdgeId e, Segment s) {
    if (s.lo < 0 || s.hi > 1 || s.lo > s.hi) throw InputError("segment outside the edge parameter range");
    if (s.lo == 0) s.lo_closed = false;
    if (s.hi == 1) s.hi_closed = false;
    if (!segment_nonempty(s)) return;
    auto& segs = segments_[e];
    segs.push_back(s);
    normalize_segments(segs);
}

void Region::add_point(const Point& p) {
    if (p.is_vertex())
        add_vertex(p.id);
    else
        add_segment(p.id, Segment{p.t, p.t, true, true});
}

bool Region::contains(const Point& p) const {
    if (p.is_vertex()) return vertices_.count(p.id) > 0;
    auto it = segments_.find(p.id);
    if (it == segments_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const Segment& s) { return segment_contains(s, p.t); });
}

Region Region::unite(const Region& other) const {
    Region r = *this;
    for (auto v : other.vertices_) r.add_vertex(v);
    for (const auto& [e, segs] : other.segments_)
        for (const auto& s : segs) r.add_segment(e, s);
    return r;
}

Region Region::intersect(const Region& other) const {
    Region r;
    for (auto v : vertices_)
        if (other.vertices_.count(v)) r.add_vertex(v);
    for (const auto& [e, segs] : segments_) {
        auto it = other.segments_.find(e);
        if (it == other.segments_.end()) continue;
        for (const auto& a : segs)
            for (const auto& b : it->second)
                if (auto s = segment_intersection(a, b)) r.add_segment(e, *s);
    }
    return r;
}

std::string Region::describe(const GraphContinuum& X) const {
    std::string out = "{";
    bool first = true;
    for (auto v : vertices_) {
        if (!first) out += ", ";
        first = false;
        out += X.vertex_name(v);
    }
    for (const auto& [e, segs] : segments_) {
        for (const auto& s : segs) {
            if (!first) out += ", ";
            first = false;
            out += X.edge(e).name;
            if (s.lo == s.hi) {
                out += "@" + to_string(s.lo);
            } else {
                out += s.lo_closed ? "[" : "(";
                out += to_string(s.lo) + "," + to_string(s.hi);
                out += s.hi_closed ? "]" : ")";
            }
        }
    }
    return out + "}";
}

bool is_connected(const GraphContinuum& X, const Region& r) {
    if (r.empty()) return false;
    std::vector<std::pair<EdgeId, const Segment*>> segs;
    for (const auto& [e, list] : r.segments())
        for (const auto& s : list) segs.emplace_back(e, &s);
    const std::size_t nv = X.vertex_count();
    detail::UnionFind uf(nv + segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& ed = X.edge(segs[i].first);
        const auto& s = *segs[i].second;
        if (s.lo == 0 && r.vertices().count(ed.u)) uf.unite(nv + i, ed.u);
        if (s.hi == 1 && r.vertices().count(ed.v)) uf.unite(nv + i, ed.v);
    }
    std::set<std::size_t> roots;
    for (auto v : r.vertices()) roots.insert(uf.find(v));
    for (std::size_t i = 0; i < segs.size(); ++i) roots.insert(uf.find(nv + i));
    return roots.size() == 1;
}

// ---------------------------------------------------------------- subdivision

Subdivision::Subdivision(const GraphContinuum& X, std::vector<std::vector<Rational>> interior_positions)
    : X_(std::make_shared<const GraphContinuum>(X)), positions_(std::move(interior_positions)) {
    positions_.resize(X.edge_count());
    for (VertexId v = 0; v < X.vertex_count(); ++v) node_point_.push_back(Point::vertex(v));
    for (EdgeId e = 0; e < X.edge_count(); ++e) {
        auto& pos = positions_[e];
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        edge_first_node_.push_back(node_point_.size());
        for (const auto& t : pos) node_point_.push_back(Point::on_edge(e, t));
        edge_first_segment_.push_back(segment_edge_.size());
        const auto& ed = X.edge(e);
        for (std::size_t j = 0; j <= pos.size(); ++j) {
            std::size_t left = j == 0 ? ed.u : edge_first_node_[e] + j - 1;
            std::size_t right = j == pos.size() ? ed.v : edge_first_node_[e] + j;
            segment_edge_.push_back(e);
            segment_ends_.emplace_back(left, right);
        }
    }
}

Subdivision Subdivision::uniform(const GraphContinuum& X, std::size_t per_edge) {
    std::vector<std::vector<Rational>> pos(X.edge_count());
    for (auto& p : pos)
        for (std::size_t i = 1; i <= per_edge; ++i) p.emplace_back(Rational(i, per_edge + 1));
    return Subdivision(X, std::move(pos));
}

std::optional<std::size_t> Subdivision::node_of(const Point& p) const {
    if (p.is_vertex()) {
        if (p.id >= X_->vertex_count()) return std::nullopt;
        return p.id;
    }
    const auto& pos = positions_.at(p.id);
    auto it = std::lower_bound(pos.begin(), pos.end(), p.t);
    if (it == pos.end() || *it != p.t) return std::nullopt;
    return edge_first_node_[p.id] + static_cast<std::size_t>(it - pos.begin());
}

std::optional<std::size_t> Subdivision::segment_of(const Point& p) const {
    if (p.is_vertex()) return std::nullopt;
    const auto& pos = positions_.at(p.id);
    auto it = std::lower_bound(pos.begin(), pos.end(), p.t);
    if (it != pos.end() && *it == p.t) return std::nullopt;
    return edge_first_segment_[p.id] + static_cast<std::size_t>(it - pos.begin());
}

Labels Subdivision::components(const std::vector<char>& removed_nodes, const std::vector<char>& removed_edges) const {
    const std::size_t n = node_count();
    const std::size_t m = segment_count();
    auto edge_removed = [&](EdgeId e) { return !removed_edges.empty() && removed_edges[e]; };
    auto node_removed = [&](std::size_t v) {
        if (!removed_nodes.empty() && removed_nodes[v]) return true;
        if (v >= X_->vertex_count()) return edge_removed(node_point_[v].id);
        return false;
    };

    detail::UnionFind uf(n + m);
    for (std::size_t s = 0; s < m; ++s) {
        if (edge_removed(segment_edge_[s])) continue;
        auto [a, b] = segment_ends_[s];
        if (!node_removed(a)) uf.unite(n + s, a);
        if (!node_removed(b)) uf.unite(n + s, b);
    }

    Labels out;
    out.node.assign(n, -1);
    out.segment.assign(m, -1);
    std::unordered_map<std::size_t, int> label_of_root;
    auto label = [&](std::size_t element) {
        auto root = uf.find(element);
        auto [it, inserted] = label_of_root.emplace(root, out.count);
        if (inserted) ++out.count;
        return it->second;
    };
    for (VertexId v = 0; v < X_->vertex_count(); ++v)
        if (!node_removed(v)) out.node[v] = label(v);
    for (EdgeId e = 0; e < X_->edge_count(); ++e) {
        if (edge_removed(e)) continue;
        const std::size_t k = positions_[e].size();
        for (std::size_t j = 0; j <= k; ++j) {
            out.segment[edge_first_segment_[e] + j] = label(n + edge_first_segment_[e] + j);
            if (j < k) {
                auto node = edge_first_node_[e] + j;
                if (!node_removed(node)) out.node[node] = label(node);
            }
        }
    }
    return out;
}

int Subdivision::label_of(const Labels& labels, const Point& p) const {
    if (auto node = node_of(p)) return labels.node[*node];
    if (auto seg = segment_of(p)) return labels.segment[*seg];
    return -1;
}

Region Subdivision::component_region(const Labels& labels, int label, bool closed,
                                     const std::vector<char>& removed_nodes) const {
    Region r;
    auto position = [&](std::size_t node, EdgeId e, bool left_end) -> Rational {
        if (node < X_->vertex_count()) return left_end ? Rational(0) : Rational(1);
        (void)e;
        return node_point_[node].t;
    };
    for (VertexId v = 0; v < X_->vertex_count(); ++v)
        if (labels.node[v] == label) r.add_vertex(v);
    for (std::size_t s = 0; s < segment_count(); ++s) {
        if (labels.segment[s] != label) continue;
        EdgeId e = segment_edge_[s];
        auto [a, b] = segment_ends_[s];
        std::size_t j = s - edge_first_segment_[e];
        bool a_is_vertex_end = j == 0;
        bool b_is_vertex_end = j == positions_[e].size();
        Rational lo = a_is_vertex_end ? Rational(0) : position(a, e, true);
        Rational hi = b_is_vertex_end ? Rational(1) : position(b, e, false);
        r.add_segment(e, Segment{lo, hi, false, false});
        if (!closed) continue;
        for (auto node : {a, b}) {
            bool removed = labels.node[node] < 0;
            if (!removed) continue;
            if (!removed_nodes.empty() && node < removed_nodes.size() && !removed_nodes[node]) continue;
            r.add_point(node_point_[node]);
        }
    }
    for (std::size_t node = X_->vertex_count(); node < node_count(); ++node)
        if (labels.node[node] == label) r.add_point(node_point_[node]);
    return r;
}

namespace {

std::vector<std::vector<Rational>> positions_for(const GraphContinuum& X, std::span<const Point> pts) {
    std::vector<std::vector<Rational>> pos(X.edge_count());
    for (const auto& p : pts)
        if (!p.is_vertex()) pos.at(p.id).push_back(p.t);
    return pos;
}

void check_points(const GraphContinuum& X, std::span<const Point> pts) {
    for (const auto& p : pts) {
        if (p.is_vertex() ? p.id >= X.vertex_count() : p.id >= X.edge_count())
            throw InputError("point references an unknown vertex or edge");
    }
}

}  // namespace

std::vector<Region> components_after_removal(const GraphContinuum& X, std::span<const Point> C) {
    check_points(X, C);
    Subdivision sub(X, positions_for(X, C));
    std::vector<char> removed(sub.node_count(), 0);
    for (const auto& p : C) removed[*sub.node_of(p)] = 1;
    auto labels = sub.components(removed);
    std::vector<Region> out;
    for (int l = 0; l < labels.count; ++l) out.push_back(sub.component_region(labels, l, false, removed));
    return out;
}

SeparationResult separates(const GraphContinuum& X, std::span<const Point> C, const Point& a, const Point& b) {
    check_points(X, C);
    std::vector<Point> all(C.begin(), C.end());
    for (const auto& p : all) {
        if (p == a || p == b) throw InputError("separated points must not lie in the separating set");
    }
    all.push_back(a);
    all.push_back(b);
    check_points(X, all);
    Subdivision sub(X, positions_for(X, all));
    std::vector<char> removed(sub.node_count(), 0);
    for (const auto& p : C) removed[*sub.node_of(p)] = 1;
    auto labels = sub.components(removed);
    int la = labels.node[*sub.node_of(a)];
    int lb = labels.node[*sub.node_of(b)];
    SeparationResult result;
    result.separated = la != lb;
    if (!result.separated) return result;

    // C is minimal iff each of its points touches both a's and b's component
    Region y = sub.component_region(labels, la, true, removed);
    Region yb = sub.component_region(labels, lb, true, removed);
    for (const auto& c : C)
        if (!y.contains(c) || !yb.contains(c)) return result;
    Region z;
    for (int l = 0; l < labels.count; ++l)
        if (l != la) z = z.unite(sub.component_region(labels, l, true, removed));
    if (y.intersect(z) == Region::of_points(C) && y.unite(z) == Region::whole(X))
        result.witness = SeparationWitness{std::move(y), std::move(z)};
    return result;
}

bool is_cut_point(const GraphContinuum& X, const Point& c) {
    Point pts[] = {c};
    return components_after_removal(X, pts).size() > 1;
}

bool is_cut_pair(const GraphContinuum& X, const Point& c, const Point& d) {
    if (c == d) throw PreconditionError("a cut pair needs two distinct points");
    Point pts[] = {c, d};
    if (components_after_removal(X, pts).size() < 2) return false;
    return !is_cut_point(X, c) && !is_cut_point(X, d);
}

// ---------------------------------------------------------------- grids

SampleGrid::SampleGrid(const GraphContinuum& X, std::size_t granularity) : k_(granularity) {
    if (k_ < 1) throw InputError("grid granularity must be at least 1");
    for (VertexId v = 0; v < X.vertex_count(); ++v) points_.push_back(Point::vertex(v));
    for (EdgeId e = 0; e < X.edge_count(); ++e)
        for (std::size_t i = 1; i <= k_; ++i) points_.push_back(Point::on_edge(e, Rational(i, k_ + 1)));
}

std::optional<std::size_t> SampleGrid::index_of(const Point& p) const {
    auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

GridOracle::GridOracle(const GraphContinuum& X, std::size_t granularity)
    : k_(granularity), sub_(Subdivision::uniform(X, 3 * granularity + 2)) {
    if (k_ < 1) throw InputError("grid granularity must be at least 1");
    atom_index_.assign(sub_.node_count(), -1);
    for (VertexId v = 0; v < X.vertex_count(); ++v) {
        atom_index_[v] = static_cast<int>(atoms_.size());
        atoms_.push_back(v);
    }
    for (EdgeId e = 0; e < X.edge_count(); ++e) {
        for (std::size_t j = 0; j < 3 * k_ + 2; ++j) {
            if ((j + 1) % 3 != 0) continue;
            auto node = sub_.edge_node(e, j);
            atom_index_[node] = static_cast<int>(atoms_.size());
            atoms_.push_back(node);
        }
    }
}

Cell GridOracle::cell_of(std::size_t node) const {
    const auto& p = sub_.point_of(node);
    return p.is_vertex() ? Cell::vertex(p.id) : Cell::edge(p.id);
}

std::vector<std::size_t> GridOracle::nodes_in(const CellSet& cells) const {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < sub_.node_count(); ++n)
        if (cells.count(cell_of(n))) out.push_back(n);
    return out;
}

std::vector<std::size_t> GridOracle::atoms_in(const CellSet& cells) const {
    std::vector<std::size_t> out;
    for (auto n : atoms_)
        if (cells.count(cell_of(n))) out.push_back(n);
    return out;
}

Labels GridOracle::remove(std::span<const std::size_t> nodes) const {
    std::vector<char> removed(sub_.node_count(), 0);
    for (auto n : nodes) removed[n] = 1;
    return sub_.components(removed);
}

Labels GridOracle::remove_cells(const CellSet& cells) const {
    std::vector<char> removed(sub_.node_count(), 0);
    std::vector<char> removed_edges(continuum().edge_count(), 0);
    for (const auto& c : cells) {
        if (c.kind == Cell::Kind::Vertex)
            removed[c.id] = 1;
        else
            removed_edges[c.id] = 1;
    }
    return sub_.components(removed, removed_edges);
}

// ---------------------------------------------------------------- automorphisms

GraphAutomorphism GraphAutomorphism::identity(const GraphContinuum& X) {
    GraphAutomorphism g;
    for (VertexId v = 0; v < X.vertex_count(); ++v) g.vertex_image.push_back(v);
    for (EdgeId e = 0; e < X.edge_count(); ++e) g.edge_image.push_back(e);
    g.edge_reversed.assign(X.edge_count(), false);
    return g;
}

Point GraphAutomorphism::apply(const Point& p) const {
    if (p.is_vertex()) return Point::vertex(vertex_image.at(p.id));
    return Point::on_edge(edge_image.at(p.id), edge_reversed.at(p.id) ? Rational(1) - p.t : p.t);
}

Cell GraphAutomorphism::apply(const Cell& c) const {
    return c.kind == Cell::Kind::Vertex ? Cell::vertex(vertex_image.at(c.id)) : Cell::edge(edge_image.at(c.id));
}

CellSet GraphAutomorphism::apply(const CellSet& cells) const {
    CellSet out;
    for (const auto& c : cells) out.insert(apply(c));
    return out;
}

GraphAutomorphism GraphAutomorphism::inverse() const {
    GraphAutomorphism g;
    g.vertex_image.resize(vertex_image.size());
    g.edge_image.resize(edge_image.size());
    g.edge_reversed.resize(edge_image.size());
    for (std::size_t v = 0; v < vertex_image.size(); ++v) g.vertex_image[vertex_image[v]] = v;
    for (std::size_t e = 0; e < edge_image.size(); ++e) {
        g.edge_image[edge_image[e]] = e;
        g.edge_reversed[edge_image[e]] = edge_reversed[e];
    }
    return g;
}

bool GraphAutomorphism::is_identity() const {
    for (std::size_t v = 0; v < vertex_image.size(); ++v)
        if (vertex_image[v] != v) return false;
    for (std::size_t e = 0; e < edge_image.size(); ++e)
        if (edge_image[e] != e || edge_reversed[e]) return false;
    return true;
}

void validate_automorphism(const GraphContinuum& X, const GraphAutomorphism& g) {
    if (g.vertex_image.size() != X.vertex_count() || g.edge_image.size() != X.edge_count() ||
        g.edge_reversed.size() != X.edge_count())
        throw InputError("automorphism has the wrong number of images");
    std::vector<char> hit(X.vertex_count(), 0);
    for (auto v : g.vertex_image) {
        if (v >= X.vertex_count() || hit[v]) throw InputError("vertex map is not a bijection");
        hit[v] = 1;
    }
    hit.assign(X.edge_count(), 0);
    for (EdgeId e = 0; e < X.edge_count(); ++e) {
        auto f = g.edge_image[e];
        if (f >= X.edge_count() || hit[f]) throw InputError("edge map is not a bijection");
        hit[f] = 1;
        const auto& a = X.edge(e);
        const auto& b = X.edge(f);
        if (a.length != b.length)
            throw InputError("edge '" + a.name + "' and its image '" + b.name + "' have different lengths");
        VertexId gu = g.vertex_image[a.u], gv = g.vertex_image[a.v];
        bool ok = g.edge_reversed[e] ? (b.u == gv && b.v == gu) : (b.u == gu && b.v == gv);
        if (!ok) throw InputError("edge '" + a.name + "' is not mapped compatibly with its endpoints");
    }
}

GraphAutomorphism parse_automorphism(std::string_view text, const GraphContinuum& X) {
    GraphAutomorphism g;
    std::vector<std::optional<VertexId>> vmap(X.vertex_count());
    std::vector<std::optional<EdgeId>> emap(X.edge_count());
    std::vector<std::optional<bool>> erev(X.edge_count());
    for (const auto& [line, tok] : tokenize_lines(text)) {
        if (tok[0] == "pv") {
            if (tok.size() != 3) throw InputError("expected 'pv <from> <to>'", line);
            auto a = X.find_vertex(tok[1]);
            auto b = X.find_vertex(tok[2]);
            if (!a) throw InputError("unknown vertex '" + tok[1] + "'", line);
            if (!b) throw InputError("unknown vertex '" + tok[2] + "'", line);
            if (vmap[*a]) throw InputError("vertex '" + tok[1] + "' mapped twice", line);
            vmap[*a] = *b;
        } else if (tok[0] == "pe") {
            if (tok.size() != 3 && !(tok.size() == 4 && tok[3] == "rev"))
                throw InputError("expected 'pe <from> <to> [rev]'", line);
            auto a = X.find_edge(tok[1]);
            auto b = X.find_edge(tok[2]);
            if (!a) throw InputError("unknown edge '" + tok[1] + "'", line);
            if (!b) throw InputError("unknown edge '" + tok[2] + "'", line);
            if (emap[*a]) throw InputError("edge '" + tok[1] + "' mapped twice", line);
            emap[*a] = *b;
            if (tok.size() == 4) erev[*a] = true;
        } else {
            throw InputError("unknown directive '" + tok[0] + "'", line);
        }
    }
    for (VertexId v = 0; v < X.vertex_count(); ++v) g.vertex_image.push_back(vmap[v].value_or(v));

    std::vector<char> used(X.edge_count(), 0);
    for (auto f : emap)
        if (f) used[*f] = 1;
    g.edge_image.resize(X.edge_count());
    g.edge_reversed.resize(X.edge_count());
    for (EdgeId e = 0; e < X.edge_count(); ++e) {
        const auto& a = X.edge(e);
        VertexId gu = g.vertex_image[a.u], gv = g.vertex_image[a.v];
        if (!emap[e]) {
            std::vector<EdgeId> candidates;
            for (EdgeId f = 0; f < X.edge_count(); ++f) {
                const auto& b = X.edge(f);
                bool ends = (b.u == gu && b.v == gv) || (b.u == gv && b.v == gu);
                if (ends && !used[f] && b.length == a.length) candidates.push_back(f);
            }
            if (candidates.size() != 1)
                throw InputError("image of edge '" + a.name + "' is " + (candidates.empty() ? "undefined" : "ambiguous") +
                                 "; give it with 'pe'");
            emap[e] = candidates[0];
            used[candidates[0]] = 1;
        }
        g.edge_image[e] = *emap[e];
        const auto& b = X.edge(*emap[e]);
        if (erev[e]) {
            g.edge_reversed[e] = true;
        } else if (b.u == gu && b.v == gv) {
            g.edge_reversed[e] = false;
        } else {
            g.edge_reversed[e] = true;
        }
    }
    validate_automorphism(X, g);
    return g;
}

std::string format_automorphism(const GraphContinuum& X, const GraphAutomorphism& g) {
    std::ostringstream out;
    for (VertexId v = 0; v < X.vertex_count(); ++v)
        out << "pv " << X.vertex_name(v) << " " << X.vertex_name(g.vertex_image[v]) << "\n";
    for (EdgeId e = 0; e < X.edge_count(); ++e) {
        out << "pe " << X.edge(e).name << " " << X.edge(g.edge_image[e]).name;
        if (g.edge_reversed[e]) out << " rev";
        out << "\n";
    }
    return out.str();
}

std::vector<GraphAutomorphism> enumerate_automorphisms(const GraphContinuum& X, std::size_t limit) {
    const std::size_t n = X.vertex_count();
    // multiset of edge lengths between each unordered vertex pair
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> bundle;
    for (EdgeId e = 0; e < X.edge_count(); ++e) {
        auto [u, v] = std::minmax(X.edge(e).u, X.edge(e).v);
        bundle[{u, v}].push_back(e);
    }
    auto lengths = [&](VertexId a, VertexId b) {
        auto [u, v] = std::minmax(a, b);
        std::vector<Rational> out;
        auto it = bundle.find({u, v});
        if (it != bundle.end())
            for (auto e : it->second) out.push_back(X.edge(e).length);
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<GraphAutomorphism> result;
    std::vector<VertexId> image(n);
    std::vector<char> taken(n, 0);

    // Extends a fixed vertex map to all edge maps (parallel edges and loop
    // orientations permute freely within equal-length bundles).
    auto emit_edges = [&]() {
        std::vector<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> groups;
        for (const auto& [ends, edges] : bundle) {
            auto [u, v] = std::minmax(image[ends.first], image[ends.second]);
            groups.emplace_back(edges, bundle.at({u, v}));
        }
        GraphAutomorphism g;
        g.vertex_image = image;
        g.edge_image.assign(X.edge_count(), 0);
        g.edge_reversed.assign(X.edge_count(), false);
        std::function<void(std::size_t)> rec_group;
        std::function<void(std::size_t, std::size_t, std::vector<char>&)> rec_edge;
        rec_edge = [&](std::size_t gi, std::size_t ei, std::vector<char>& used) {
            if (result.size() >= limit) return;
            const auto& [src, dst] = groups[gi];
            if (ei == src.size()) {
                rec_group(gi + 1);
                return;
            }
            EdgeId e = src[ei];
            for (std::size_t k = 0; k < dst.size(); ++k) {
                if (used[k] || X.edge(dst[k]).length != X.edge(e).length) continue;
                used[k] = 1;
                g.edge_image[e] = dst[k];
                const auto& a = X.edge(e);
                const auto& b = X.edge(dst[k]);
                if (a.is_loop()) {
                    for (bool rev : {false, true}) {
                        g.edge_reversed[e] = rev;
                        rec_edge(gi, ei + 1, used);
                    }
                } else {
                    g.edge_reversed[e] = !(b.u == image[a.u] && b.v == image[a.v]);
                    rec_edge(gi, ei + 1, used);
                }
                used[k] = 0;
            }
        };
        rec_group = [&](std::size_t gi) {
            if (result.size() >= limit) return;
            if (gi == groups.size()) {
                result.push_back(g);
                return;
            }
            std::vector<char> used(groups[gi].second.size(), 0);
            rec_edge(gi, 0, used);
        };
        rec_group(0);
    };

    std::function<void(VertexId)> rec = [&](VertexId v) {
        if (result.size() >= limit) return;
        if (v == n) {
            emit_edges();
            return;
        }
        for (VertexId w = 0; w < n; ++w) {
            if (taken[w]) continue;
            if (X.degree(v) != X.degree(w)) continue;
            image[v] = w;
            bool ok = true;
            for (VertexId u = 0; u <= v && ok; ++u)
                ok = lengths(u, v) == lengths(image[u], w);
            if (!ok) continue;
            taken[w] = 1;
            rec(v + 1);
            taken[w] = 0;
        }
    };
    rec(0);
    return result;
}

}  // namespace contree
