#include "contree/cutpair.hpp"

#include <algorithm>
#include <functional>

#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"

namespace contree {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string plain_name(const GraphContinuum& X, const Cell& c) {
    return c.kind == Cell::Kind::Vertex ? X.vertex_name(c.id) : X.edge(c.id).name;
}

void require_no_cut_points(const GraphContinuum& X) {
    if (X.edge_count() == 0) throw PreconditionError("continuum is a single point");
    if (!cut_points(X).empty()) throw PreconditionError("continuum has cut points");
}

// Walks a 2-regular station graph; empty when it is not a single cycle
// through all n stations. Starts at station 0 towards the smaller neighbour.
std::vector<std::size_t> hamiltonian_order(const std::vector<std::set<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    for (const auto& a : adj)
        if (a.size() != 2) return {};
    std::vector<std::size_t> order{0};
    std::size_t prev = 0, cur = *adj[0].begin();
    while (cur != 0) {
        if (order.size() == n) return {};
        order.push_back(cur);
        auto it = adj[cur].begin();
        std::size_t next = *it == prev ? *std::next(it) : *it;
        prev = cur;
        cur = next;
    }
    if (order.size() != n) return {};
    return order;
}

}  // namespace

// ---------------------------------------------------------------- cyclic decompositions

std::optional<CyclicDecomposition> cyclic_decomposition(const GraphContinuum& X, std::span<const Point> S) {
    require_no_cut_points(X);
    std::vector<Point> pts(S.begin(), S.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) throw PreconditionError("cyclic decomposition needs at least two points");

    std::vector<std::vector<Rational>> positions(X.edge_count());
    for (const auto& p : pts)
        if (!p.is_vertex()) positions[p.id].push_back(p.t);
    for (auto& v : positions) std::sort(v.begin(), v.end());
    Subdivision sub(X, positions);

    const std::size_t n = pts.size();
    std::vector<std::size_t> node(n);
    std::vector<char> removed(sub.node_count(), 0);
    std::map<std::size_t, std::size_t> station_of;
    for (std::size_t i = 0; i < n; ++i) {
        node[i] = *sub.node_of(pts[i]);
        removed[node[i]] = 1;
        station_of[node[i]] = i;
    }
    auto labels = sub.components(removed);

    std::vector<std::set<std::size_t>> touches(labels.count);
    for (std::size_t s = 0; s < sub.segment_count(); ++s) {
        auto [a, b] = sub.segment_ends(s);
        int l = labels.segment[s];
        if (removed[a]) touches[l].insert(station_of[a]);
        if (removed[b]) touches[l].insert(station_of[b]);
    }

    CyclicDecomposition out;
    if (n == 2) {
        if (labels.count < 2) return std::nullopt;
        out.by_fiat = true;
        out.stations = pts;
        for (int l = 0; l < labels.count; ++l) out.pieces.push_back(sub.component_region(labels, l, true, removed));
        return out;
    }

    std::vector<std::set<std::size_t>> adj(n);
    for (const auto& t : touches) {
        if (t.size() != 2) return std::nullopt;
        adj[*t.begin()].insert(*t.rbegin());
        adj[*t.rbegin()].insert(*t.begin());
    }
    auto order = hamiltonian_order(adj);
    if (order.empty()) return std::nullopt;

    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::size_t> pair{order[i], order[(i + 1) % n]};
        Region piece;
        for (int l = 0; l < labels.count; ++l)
            if (touches[l] == pair) piece = piece.unite(sub.component_region(labels, l, true, removed));
        out.stations.push_back(pts[order[i]]);
        out.pieces.push_back(piece);
    }
    return out;
}

// ---------------------------------------------------------------- analysis

CutPairAnalysis::CutPairAnalysis(const GraphContinuum& X, std::size_t grid)
    : oracle_((require_no_cut_points(X), X), grid), table_(std::vector<std::string>{}) {
    compute_cut_pairs();
    compute_necklaces();
    compute_inseparable();
    compute_R();
}

const Labels* CutPairAnalysis::cut_pair(std::size_t p, std::size_t q) const {
    if (p > q) std::swap(p, q);
    auto it = cut_pairs_.find({p, q});
    return it == cut_pairs_.end() ? nullptr : &it->second;
}

bool CutPairAnalysis::separable(std::size_t a, std::size_t b) const {
    int i = oracle_.atom_index(a), j = oracle_.atom_index(b);
    if (i < 0 || j < 0) throw InternalError("separability queried for a non-atom");
    return separable_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
}

void CutPairAnalysis::compute_cut_pairs() {
    const std::size_t n = oracle_.node_count();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            std::size_t two[] = {p, q};
            auto labels = oracle_.remove(two);
            if (labels.count > 1) cut_pairs_.emplace(std::make_pair(p, q), std::move(labels));
        }

    const auto& atoms = oracle_.atoms();
    const std::size_t m = atoms.size();
    separable_.assign(m, std::vector<char>(m, 0));
    for (const auto& [pq, labels] : cut_pairs_) {
        for (std::size_t i = 0; i < m; ++i) {
            int li = labels.node[atoms[i]];
            if (li < 0) continue;
            for (std::size_t j = i + 1; j < m; ++j) {
                int lj = labels.node[atoms[j]];
                if (lj >= 0 && lj != li) separable_[i][j] = separable_[j][i] = 1;
            }
        }
    }
}

std::pair<Labels, std::vector<std::set<std::size_t>>> CutPairAnalysis::stations(
    std::span<const std::size_t> nodes) const {
    auto labels = oracle_.remove(nodes);
    const auto& sub = oracle_.subdivision();
    std::vector<std::set<std::size_t>> touches(labels.count);
    for (std::size_t s = 0; s < sub.segment_count(); ++s) {
        int l = labels.segment[s];
        if (l < 0) continue;
        auto [a, b] = sub.segment_ends(s);
        if (labels.node[a] < 0) touches[l].insert(a);
        if (labels.node[b] < 0) touches[l].insert(b);
    }
    return {std::move(labels), std::move(touches)};
}

bool CutPairAnalysis::is_cyclic(std::vector<std::size_t> nodes, std::vector<std::size_t>* order) const {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.size() < 2) return false;
    if (nodes.size() == 2) {
        if (order) *order = nodes;
        return cut_pair(nodes[0], nodes[1]) != nullptr;
    }
    auto [labels, touches] = stations(nodes);
    std::map<std::size_t, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    std::vector<std::set<std::size_t>> adj(nodes.size());
    for (const auto& t : touches) {
        if (t.size() != 2) return false;
        auto a = index[*t.begin()], b = index[*t.rbegin()];
        adj[a].insert(b);
        adj[b].insert(a);
    }
    auto walk = hamiltonian_order(adj);
    if (walk.empty()) return false;
    if (order) {
        order->clear();
        for (auto i : walk) order->push_back(nodes[i]);
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> CutPairAnalysis::atom_cut_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [pq, labels] : cut_pairs_)
        if (oracle_.is_atom(pq.first) && oracle_.is_atom(pq.second)) out.push_back(pq);
    return out;
}

void CutPairAnalysis::compute_necklaces() {
    const auto& X = continuum();
    const auto& atoms = oracle_.atoms();
    const std::size_t m = atoms.size();
    std::vector<std::vector<char>> member;  // per necklace, by atom index

    auto inside_one = [&](std::initializer_list<std::size_t> idx) {
        for (const auto& mem : member) {
            bool all = true;
            for (auto i : idx) all = all && mem[i];
            if (all) return true;
        }
        return false;
    };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!cut_pair(atoms[i], atoms[j])) continue;  // subsets of cyclic sets are cyclic
            for (std::size_t k = j + 1; k < m; ++k) {
                if (inside_one({i, j, k})) continue;
                if (!is_cyclic({atoms[i], atoms[j], atoms[k]})) continue;
                std::vector<std::size_t> set{atoms[i], atoms[j], atoms[k]};
                std::vector<char> mem(m, 0);
                mem[i] = mem[j] = mem[k] = 1;
                for (std::size_t d = 0; d < m; ++d) {
                    if (mem[d]) continue;
                    set.push_back(atoms[d]);
                    if (is_cyclic(set))
                        mem[d] = 1;
                    else
                        set.pop_back();
                }
                member.push_back(mem);

                Necklace N;
                is_cyclic(set, &N.atoms);
                for (auto a : N.atoms) N.cells.insert(oracle_.cell_of(a));
                for (const auto& c : N.cells) {
                    if (c.kind != Cell::Kind::Edge) continue;
                    for (auto a : oracle_.atoms_in(CellSet{c}))
                        if (!mem[static_cast<std::size_t>(oracle_.atom_index(a))])
                            throw InternalError("necklace contains part of edge " + X.edge(c.id).name);
                }
                // compress the atom cycle into a cell cycle
                std::vector<Cell> cyc;
                for (auto a : N.atoms) {
                    auto c = oracle_.cell_of(a);
                    if (cyc.empty() || cyc.back() != c) cyc.push_back(c);
                }
                if (cyc.size() > 1 && cyc.front() == cyc.back()) cyc.pop_back();
                auto start = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
                std::rotate(cyc.begin(), cyc.begin() + start, cyc.end());
                if (cyc.size() > 2) {
                    auto fwd = cyc[1], back = cyc.back();
                    bool fwd_edge = fwd.kind == Cell::Kind::Edge, back_edge = back.kind == Cell::Kind::Edge;
                    if (back_edge != fwd_edge ? back_edge : back < fwd) std::reverse(cyc.begin() + 1, cyc.end());
                }
                N.cycle = cyc;
                std::vector<std::string> names;
                for (const auto& c : N.cells) names.push_back(cell_name(X, c));
                N.key = "necklace:" + join(names, ",");
                // atoms follow the cell cycle's orientation
                auto first = std::find_if(N.atoms.begin(), N.atoms.end(),
                                          [&](std::size_t a) { return oracle_.cell_of(a) == cyc[0]; });
                std::rotate(N.atoms.begin(), first, N.atoms.end());
                if (cyc.size() > 1 && N.atoms.size() > 1 && oracle_.cell_of(N.atoms[1]) != cyc[1] &&
                    oracle_.cell_of(N.atoms.back()) == cyc[1])
                    std::reverse(N.atoms.begin() + 1, N.atoms.end());
                necklaces_.push_back(std::move(N));
            }
        }
    std::sort(necklaces_.begin(), necklaces_.end(), [](const Necklace& a, const Necklace& b) { return a.key < b.key; });
}

void CutPairAnalysis::compute_inseparable() {
    const auto& atoms = oracle_.atoms();
    const std::size_t m = atoms.size();

    // Bron-Kerbosch with pivoting on the inseparability graph
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) adj[i][j] = i != j && !separable_[i][j];
    std::vector<std::vector<std::size_t>> cliques;
    std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>, std::vector<std::size_t>)> bk =
        [&](std::vector<std::size_t>& R, std::vector<std::size_t> P, std::vector<std::size_t> Xs) {
            if (P.empty() && Xs.empty()) {
                if (R.size() >= 2) cliques.push_back(R);
                return;
            }
            std::size_t pivot = P.empty() ? Xs[0] : P[0];
            std::size_t best = 0;
            for (auto u : P) {
                std::size_t c = 0;
                for (auto v : P) c += adj[u][v];
                if (c >= best) best = c, pivot = u;
            }
            std::vector<std::size_t> candidates;
            for (auto v : P)
                if (!adj[pivot][v]) candidates.push_back(v);
            for (auto v : candidates) {
                std::vector<std::size_t> P2, X2;
                for (auto w : P)
                    if (adj[v][w]) P2.push_back(w);
                for (auto w : Xs)
                    if (adj[v][w]) X2.push_back(w);
                R.push_back(v);
                bk(R, P2, X2);
                R.pop_back();
                P.erase(std::find(P.begin(), P.end(), v));
                Xs.push_back(v);
            }
        };
    std::vector<std::size_t> R, P(m);
    for (std::size_t i = 0; i < m; ++i) P[i] = i;
    bk(R, P, {});

    for (auto& c : cliques) {
        std::vector<std::size_t> nodes;
        for (auto i : c) nodes.push_back(atoms[i]);
        std::sort(nodes.begin(), nodes.end());
        inseparable_.maximal_sets.push_back(nodes);
    }
    std::sort(inseparable_.maximal_sets.begin(), inseparable_.maximal_sets.end());

    for (const auto& [p, q] : atom_cut_pairs())
        if (!separable(p, q)) inseparable_.pairs.emplace_back(p, q);
}

bool CutPairAnalysis::grid_says_circle() const {
    for (std::size_t i = 0; i < separable_.size(); ++i)
        for (std::size_t j = i + 1; j < separable_.size(); ++j)
            if (!separable_[i][j]) return false;
    return true;
}

// ---------------------------------------------------------------- gaps and the circle

std::vector<Gap> CutPairAnalysis::gaps(std::size_t necklace) const {
    const auto& X = continuum();
    const auto& N = necklaces_.at(necklace);
    std::vector<char> in_N(oracle_.node_count(), 0);
    for (auto a : N.atoms) in_N[a] = 1;
    std::vector<std::size_t> outside;
    for (auto a : oracle_.atoms())
        if (!in_N[a]) outside.push_back(a);
    if (outside.empty()) return {};

    // y ~ z iff they share a piece in every three-station decomposition
    std::vector<std::vector<std::size_t>> signature(outside.size());
    const auto& st = N.atoms;
    for (std::size_t i = 0; i < st.size(); ++i)
        for (std::size_t j = i + 1; j < st.size(); ++j)
            for (std::size_t k = j + 1; k < st.size(); ++k) {
                std::size_t three[] = {st[i], st[j], st[k]};
                auto [labels, touches] = stations(three);
                for (std::size_t y = 0; y < outside.size(); ++y) {
                    const auto& t = touches[static_cast<std::size_t>(labels.node[outside[y]])];
                    if (t.size() != 2) throw InternalError("necklace triple is not cyclic");
                    signature[y].push_back(*t.begin() * oracle_.node_count() + *t.rbegin());
                }
            }

    std::map<std::vector<std::size_t>, std::size_t> by_signature;
    std::vector<Gap> out;
    for (std::size_t y = 0; y < outside.size(); ++y) {
        auto [it, inserted] = by_signature.emplace(signature[y], out.size());
        if (inserted) out.emplace_back();
        auto& g = out[it->second];
        g.atoms.push_back(outside[y]);
        g.cells.insert(oracle_.cell_of(outside[y]));
    }

    std::vector<VertexId> order;  // vertex stations in cyclic order
    for (const auto& c : N.cycle)
        if (c.kind == Cell::Kind::Vertex) order.push_back(c.id);
    for (auto& g : out) {
        g.closure = closure_of(X, g.cells);
        g.region = Region::of_cells(X, g.closure);
        std::vector<VertexId> sides;
        for (auto v : order)
            if (g.closure.count(Cell::vertex(v))) sides.push_back(v);
        if (sides.size() != 2)
            throw InternalError("gap " + describe_cells(X, g.cells) + " does not have two sides in the necklace");
        g.side_b = sides[0];
        g.side_c = sides[1];
        g.fat = g.side_b != g.side_c;
    }
    return out;
}

CircleLayout CutPairAnalysis::circle_map(std::size_t necklace) const {
    const auto& X = continuum();
    const auto& N = necklaces_.at(necklace);
    CircleLayout out;
    std::vector<std::size_t> at;  // position in cycle of each vertex station
    for (std::size_t i = 0; i < N.cycle.size(); ++i)
        if (N.cycle[i].kind == Cell::Kind::Vertex) {
            out.stations.push_back(N.cycle[i].id);
            at.push_back(i);
        }
    const std::size_t m = out.stations.size();
    if (m == 0) throw InternalError("necklace without vertex stations");
    const Rational step(1, static_cast<long>(m));

    std::map<EdgeId, std::size_t> edge_arc;
    std::vector<char> gap_arc(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t end = i + 1 < m ? at[i + 1] : at[0] + N.cycle.size();
        if (end == at[i] + 1) gap_arc[i] = 1;
        for (std::size_t p = at[i] + 1; p < end; ++p) edge_arc[N.cycle[p % N.cycle.size()].id] = i;
    }

    auto gaps_ = gaps(necklace);
    std::map<std::size_t, std::size_t> gap_of;  // atom -> arc index
    for (const auto& g : gaps_) {
        std::optional<std::size_t> arc;
        for (std::size_t i = 0; i < m && !arc; ++i) {
            std::set<VertexId> ends{out.stations[i], out.stations[(i + 1) % m]};
            if (gap_arc[i] && ends == std::set<VertexId>{g.side_b, g.side_c}) arc = i;
        }
        if (!arc) throw InternalError("gap has no arc between its sides");
        for (auto a : g.atoms) gap_of[a] = *arc;
    }

    for (auto a : oracle_.atoms()) {
        auto c = oracle_.cell_of(a);
        Rational angle;
        if (auto it = gap_of.find(a); it != gap_of.end()) {
            angle = step * (Rational(it->second) + Rational(1, 2));
        } else if (c.kind == Cell::Kind::Vertex) {
            auto i = std::find(out.stations.begin(), out.stations.end(), c.id) - out.stations.begin();
            angle = step * i;
        } else {
            auto i = edge_arc.at(c.id);
            const auto& t = oracle_.point_of(a).t;
            Rational s = X.edge(c.id).u == out.stations[i] ? t : Rational(1) - t;
            angle = step * (Rational(i) + s);
        }
        out.angles.push_back(angle);
    }
    return out;
}

bool circle_separates(const Rational& a, const Rational& b, const Rational& x, const Rational& y) {
    auto wrap = [](Rational r) {
        while (r < 0) r += 1;
        while (r >= 1) r -= 1;
        return r;
    };
    if (a == b || x == a || x == b || y == a || y == b) return false;
    auto span = wrap(b - a);
    auto inside = [&](const Rational& t) { return wrap(t - a) < span; };
    return inside(x) != inside(y);
}

// ---------------------------------------------------------------- R

void CutPairAnalysis::compute_R() {
    const auto& X = continuum();
    std::map<std::vector<std::size_t>, std::size_t> by_atoms;
    auto entry = [&](std::vector<std::size_t> atoms) -> RElement& {
        std::sort(atoms.begin(), atoms.end());
        auto [it, inserted] = by_atoms.emplace(atoms, R_.size());
        if (inserted) {
            R_.emplace_back();
            R_.back().atoms = atoms;
        }
        return R_[it->second];
    };
    auto names_of_atoms = [&](const std::vector<std::size_t>& atoms) {
        std::vector<std::string> names;
        for (auto a : atoms) names.push_back(describe(X, oracle_.point_of(a)));
        std::sort(names.begin(), names.end());
        return names;
    };

    for (std::size_t i = 0; i < necklaces_.size(); ++i) {
        auto& e = entry(necklaces_[i].atoms);
        e.is_necklace = true;
        e.necklace = i;
        e.cells = necklaces_[i].cells;
    }
    for (const auto& s : inseparable_.maximal_sets) entry(s).is_maximal_set = true;
    for (const auto& [p, q] : inseparable_.pairs) entry({p, q}).is_pair = true;

    for (auto& e : R_) {
        if (!e.is_necklace)
            for (auto a : e.atoms) e.cells.insert(oracle_.cell_of(a));
        auto names = names_of_atoms(e.atoms);
        if (e.is_pair) {
            e.kind = RKind::InseparablePair;
            e.key = "pair:" + join(names, ",");
        } else if (e.is_necklace) {
            e.kind = RKind::Necklace;
        } else {
            e.kind = RKind::InseparableSet;
            e.key = "set:" + join(names, ",");
        }
        if (e.is_necklace) {
            const auto& N = necklaces_[*e.necklace];
            if (!e.is_pair) e.key = N.key;
            std::vector<std::string> cyc;
            for (const auto& c : N.cycle) cyc.push_back(plain_name(X, c));
            e.label = "(" + join(cyc, " ") + ")";
        } else {
            e.label = "{" + join(names, ",") + "}";
        }
    }
    auto rank = [](RKind k) { return k == RKind::Necklace ? 0 : k == RKind::InseparablePair ? 1 : 2; };
    std::sort(R_.begin(), R_.end(), [&](const RElement& a, const RElement& b) {
        if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
        return a.key < b.key;
    });

    for (const auto& e : R_) {
        if (e.is_necklace) {
            element_nodes_.push_back(oracle_.nodes_in(e.cells));
            removal_.push_back(oracle_.remove_cells(e.cells));
        } else {
            element_nodes_.push_back(e.atoms);
            removal_.push_back(oracle_.remove(e.atoms));
        }
    }

    const std::size_t n = R_.size();
    case1_.assign(n * n * n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (!R_[s].is_pair) continue;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t t = 0; t < n; ++t)
                if (r != s && s != t && r != t && separates_elements(s, r, t)) case1_[(r * n + s) * n + t] = 1;
    }

    std::vector<std::string> keys;
    for (const auto& e : R_) keys.push_back(e.key);
    table_ = BetweennessTable::from(std::move(keys), [&](std::size_t r, std::size_t s, std::size_t t) {
        return defined_between(r, s, t) || defined_between(t, s, r);
    });
}

bool CutPairAnalysis::separates_elements(std::size_t s, std::size_t r, std::size_t t) const {
    const auto& L = removal_[s];
    std::set<int> a, b;
    for (auto x : element_nodes_[r])
        if (L.node[x] >= 0) a.insert(L.node[x]);
    for (auto x : element_nodes_[t])
        if (L.node[x] >= 0) b.insert(L.node[x]);
    if (a.empty() || b.empty()) return false;
    return a.size() > 1 || b.size() > 1 || *a.begin() != *b.begin();
}

bool CutPairAnalysis::contained_in(std::size_t r, std::size_t s) const {
    const auto& big = element_nodes_[s];
    for (auto x : element_nodes_[r])
        if (!std::binary_search(big.begin(), big.end(), x)) return false;
    return true;
}

std::optional<std::size_t> CutPairAnalysis::intersection_size(std::size_t r, std::size_t s) const {
    for (const auto& c : R_[r].cells)
        if (c.kind == Cell::Kind::Edge && R_[s].cells.count(c)) return std::nullopt;
    std::size_t count = 0;
    const auto& b = element_nodes_[s];
    for (auto x : element_nodes_[r]) count += std::binary_search(b.begin(), b.end(), x);
    return count;
}

bool CutPairAnalysis::case1(std::size_t r, std::size_t s, std::size_t t) const {
    const std::size_t n = R_.size();
    return case1_[(r * n + s) * n + t] != 0;
}

bool CutPairAnalysis::defined_between(std::size_t r, std::size_t s, std::size_t t) const {
    if (r == s || s == t || r == t) return false;
    if (R_[s].is_pair) return case1(r, s, t);
    if (contained_in(r, s) && !case1(s, r, t)) return true;
    if (!separates_elements(s, r, t)) return false;
    for (std::size_t q = 0; q < R_.size(); ++q)
        if (R_[q].is_pair && case1(r, q, s) && case1(t, q, s)) return false;
    return true;
}

TreeNode CutPairAnalysis::node_record(std::size_t r) const {
    const auto& X = continuum();
    const auto& e = R_.at(r);
    TreeNode n;
    n.key = e.key;
    n.kind = e.kind == RKind::Necklace         ? NodeKind::Necklace
             : e.kind == RKind::InseparablePair ? NodeKind::InseparablePair
                                                : NodeKind::InseparableSet;
    n.label = e.label;
    for (const auto& c : e.cells) n.cells.push_back(cell_name(X, c));
    return n;
}

// ---------------------------------------------------------------- entry points

std::vector<Necklace> necklaces(const GraphContinuum& X, std::size_t grid) {
    return CutPairAnalysis(X, grid).necklaces();
}

InseparableStructure inseparable_structure(const GraphContinuum& X, std::size_t grid) {
    return CutPairAnalysis(X, grid).inseparable();
}

bool is_circle(const GraphContinuum& X, std::size_t grid) {
    if (X.edge_count() == 0 || !cut_points(X).empty()) return false;
    return CutPairAnalysis(X, grid).grid_says_circle();
}

CutPairAnalysis build_R(const GraphContinuum& X, std::size_t grid) {
    CutPairAnalysis A(X, grid);
    auto report = verify_pretree_axioms(A.table());
    if (!report.passed()) throw InternalError("betweenness on R is not a pretree:\n" + report.describe(A.table()));
    const auto& R = A.R();
    for (std::size_t i = 0; i < R.size(); ++i)
        for (std::size_t j = 0; j < R.size(); ++j) {
            if (i == j) continue;
            auto k = A.intersection_size(i, j);
            if (!k || *k >= 3) throw InternalError(R[i].key + " and " + R[j].key + " meet in too many points");
            if (*k == 2) {
                std::vector<std::size_t> common;
                std::set_intersection(A.element_nodes(i).begin(), A.element_nodes(i).end(),
                                      A.element_nodes(j).begin(), A.element_nodes(j).end(),
                                      std::back_inserter(common));
                bool found = false;
                for (const auto& e : R) found = found || (e.is_pair && e.atoms == common);
                if (!found) throw InternalError(R[i].key + " and " + R[j].key + " meet in a non-element pair");
            }
            // no element separates points of another
            const auto& L = A.removal(i);
            int label = -1;
            for (auto x : A.element_nodes(j)) {
                if (L.node[x] < 0) continue;
                if (label >= 0 && L.node[x] != label)
                    throw InternalError(R[i].key + " separates points of " + R[j].key);
                label = L.node[x];
            }
        }
    return A;
}

StructuralTree build_jsj_tree(const CutPairAnalysis& A) {
    std::vector<TreeNode> records;
    for (std::size_t r = 0; r < A.R().size(); ++r) records.push_back(A.node_record(r));
    auto tree = assemble_tree(A.table(), std::move(records));
    tree.name = "jsj";
    return tree;
}

StructuralTree build_jsj_tree(const GraphContinuum& X, std::size_t grid) { return build_jsj_tree(build_R(X, grid)); }

}  // namespace contree
