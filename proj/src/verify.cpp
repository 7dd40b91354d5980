#include "contree/verify.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "contree/actions.hpp"
#include "contree/combined.hpp"
#include "contree/corpus.hpp"
#include "contree/cutpoint.hpp"
#include "contree/errors.hpp"
#include "contree/tree_io.hpp"
#include "contree/tree_map.hpp"

namespace contree {

namespace {

constexpr std::size_t kAutomorphismLimit = 5000;

std::string names_of(const BetweennessTable& t, const std::vector<std::size_t>& idx) {
    std::string out = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? ", " : "") + t.name(idx[i]);
    return out + ")";
}

Check pass_if(std::string group, std::string name, std::optional<std::string> failure, std::string summary = {}) {
    Check c{std::move(group), std::move(name), !failure, failure ? *failure : std::move(summary)};
    return c;
}

// Runs a check body, turning library exceptions into a failed check.
template <class F>
Check guarded(const std::string& group, const std::string& name, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return Check{group, name, false, std::string("exception: ") + e.what()};
    }
}

std::string point_name(const GridOracle& O, std::size_t node) {
    return describe(O.continuum(), O.point_of(node));
}

}  // namespace

// ---------------------------------------------------------------- pretree

std::vector<Check> check_pretree_table(const BetweennessTable& t, const std::string& group) {
    std::vector<Check> out;
    auto report = verify_pretree_axioms(t);
    out.push_back(pass_if(group, "axioms", report.passed() ? std::nullopt : std::optional(report.describe(t)),
                          std::to_string(t.size()) + " elements"));
    auto sub = check_interval_subset(t);
    out.push_back(pass_if(group, "interval-subset", sub ? std::optional(names_of(t, *sub)) : std::nullopt));
    auto nested = check_nested_unions(t);
    out.push_back(pass_if(group, "nested-unions", nested ? std::optional(names_of(t, *nested)) : std::nullopt));
    auto sup = check_supremum(t);
    out.push_back(pass_if(group, "supremum", sup ? std::optional(names_of(t, *sup)) : std::nullopt));

    // a closed interval with k members holds exactly k-1 adjacent pairs
    auto cls = classify_nodes(t);
    std::optional<std::string> bad;
    for (std::size_t x = 0; x < t.size() && !bad; ++x)
        for (std::size_t y = x + 1; y < t.size() && !bad; ++y) {
            auto I = interval(t, x, y, IntervalKind::Closed);
            std::set<std::size_t> in(I.members.begin(), I.members.end());
            std::size_t count = 0;
            for (const auto& [a, b] : cls.adjacent) count += in.count(a) && in.count(b);
            if (count + 1 != I.members.size())
                bad = "[" + t.name(x) + ", " + t.name(y) + "] has " + std::to_string(I.members.size()) + " members and " +
                      std::to_string(count) + " adjacent pairs";
        }
    out.push_back(pass_if(group, "interval-adjacency", bad,
                          std::to_string(cls.adjacent.size()) + " adjacent pairs, " +
                              std::to_string(cls.terminal.size()) + " terminal"));
    return out;
}

Check check_tree_matches_table(const StructuralTree& tree, const BetweennessTable& t, const std::string& group) {
    return guarded(group, "tree-betweenness", [&] {
        if (!tree.is_tree()) return Check{group, "tree-betweenness", false, "assembled structure is not a tree"};
        if (tree.node_count() != t.size())
            return Check{group, "tree-betweenness", false, "node count differs from the table"};
        std::vector<std::size_t> idx;
        for (const auto& n : tree.nodes()) idx.push_back(t.index_of(n.key));
        const std::size_t n = tree.node_count();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t y = 0; y < n; ++y)
                    if (tree.between(x, z, y) != t.between(idx[x], idx[z], idx[y]))
                        return Check{group, "tree-betweenness", false,
                                     "(" + tree.node(x).key + ", " + tree.node(z).key + ", " + tree.node(y).key + ")"};
        return Check{group, "tree-betweenness", true, std::to_string(n * n * n) + " triples"};
    });
}

// ---------------------------------------------------------------- continuum

std::vector<Check> check_continuum(const GraphContinuum& X) {
    std::vector<Check> out;
    out.push_back(guarded("continuum", "witness-soundness", [&] {
        std::vector<Point> samples;
        for (VertexId v = 0; v < X.vertex_count(); ++v) samples.push_back(Point::vertex(v));
        for (EdgeId e = 0; e < X.edge_count(); ++e) samples.push_back(Point::on_edge(e, Rational(1, 2)));
        std::vector<std::vector<Point>> separators;
        for (VertexId u = 0; u < X.vertex_count(); ++u) {
            separators.push_back({Point::vertex(u)});
            for (VertexId v = u + 1; v < X.vertex_count(); ++v) separators.push_back({Point::vertex(u), Point::vertex(v)});
        }
        const auto whole = Region::whole(X);
        std::size_t witnesses = 0;
        for (const auto& C : separators) {
            auto Cr = Region::of_points(C);
            for (std::size_t i = 0; i < samples.size(); ++i)
                for (std::size_t j = i + 1; j < samples.size(); ++j) {
                    const auto &a = samples[i], &b = samples[j];
                    if (std::find(C.begin(), C.end(), a) != C.end() || std::find(C.begin(), C.end(), b) != C.end())
                        continue;
                    auto r = separates(X, C, a, b);
                    if (!r.witness) continue;
                    ++witnesses;
                    const auto& [Y, Z] = *r.witness;
                    bool ok = is_connected(X, Y) && is_connected(X, Z) && Y.unite(Z) == whole && Y.intersect(Z) == Cr &&
                              Y.contains(a) && Z.contains(b);
                    if (!ok)
                        return Check{"continuum", "witness-soundness", false,
                                     Cr.describe(X) + " separating " + describe(X, a) + " from " + describe(X, b)};
                }
        }
        return Check{"continuum", "witness-soundness", true, std::to_string(witnesses) + " witnesses"};
    }));
    return out;
}

// ---------------------------------------------------------------- cut points

std::vector<Rational> replay_canonical_lengths(const StructuralTree& tree, const std::optional<std::string>& seed) {
    const std::size_t n = tree.node_count();
    std::vector<Rational> lengths(tree.arc_count(), Rational(1));
    auto in_span = [&](std::size_t i) {
        auto k = tree.node(i).kind;
        if (k == NodeKind::CutPoint || k == NodeKind::InseparablePair || k == NodeKind::Necklace) return true;
        const auto& inc = tree.incident(i);
        return (k == NodeKind::Class || k == NodeKind::End) && inc.size() == 1 &&
               tree.arc(inc[0].second).kind == ArcKind::Bridge;
    };
    std::vector<std::size_t> span;
    for (std::size_t i = 0; i < n; ++i)
        if (in_span(i)) span.push_back(i);
    if (span.empty()) return lengths;

    std::size_t root = span[0];
    if (seed) {
        bool found = false;
        for (auto i : span)
            if (!found && (tree.node(i).key == *seed || tree.node(i).label == *seed)) root = i, found = true;
        if (!found) throw InputError("seed '" + *seed + "' is not a span node");
    } else {
        auto rank = [&](std::size_t i) {
            auto k = tree.node(i).kind;
            return std::make_pair(k == NodeKind::CutPoint ? 0 : (k == NodeKind::Class || k == NodeKind::End) ? 2 : 1,
                                  tree.node(i).label);
        };
        for (auto i : span)
            if (rank(i) < rank(root)) root = i;
    }

    std::vector<std::size_t> order;
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        order.push_back(v);
        std::vector<std::size_t> next;
        for (const auto& [w, arc] : tree.incident(v))
            if (!seen[w]) next.push_back(w);
        std::stable_sort(next.begin(), next.end(),
                         [&](std::size_t a, std::size_t b) { return tree.node(a).label < tree.node(b).label; });
        for (auto w : next) seen[w] = 1, queue.push_back(w);
    }

    std::set<std::size_t> covered;
    Rational budget(1);
    for (auto s : order) {
        if (!in_span(s)) continue;
        std::vector<std::size_t> fresh;
        for (auto a : tree.path_arcs(root, s))
            if (!covered.count(a)) fresh.push_back(a);
        if (fresh.empty()) continue;
        for (auto a : fresh) {
            lengths[a] = budget / static_cast<long>(fresh.size());
            covered.insert(a);
        }
        budget /= 2;
    }
    return lengths;
}

std::vector<Check> check_cutpoint(const GraphContinuum& X, std::size_t grid) {
    std::vector<Check> out;
    std::optional<CutPointPretree> P;
    try {
        P.emplace(build_P(X, grid));
    } catch (const std::exception& e) {
        out.push_back(Check{"P", "axioms", false, e.what()});
        return out;
    }
    for (auto& c : check_pretree_table(P->table(), "P")) out.push_back(std::move(c));

    StructuralTree T;
    try {
        T = build_cutpoint_tree(*P);
    } catch (const std::exception& e) {
        out.push_back(Check{"P", "tree-betweenness", false, e.what()});
        return out;
    }
    out.push_back(check_tree_matches_table(T, P->table().restrict_to(P->tree_elements()), "P"));

    const auto& table = P->table();
    const auto& els = P->elements();
    out.push_back(guarded("cutpoint", "adjacent-elements", [&] {
        auto cls = classify_nodes(table);
        std::size_t checked = 0;
        for (auto [x, y] : cls.adjacent) {
            if (els[x].kind == PKind::BridgeSample || els[y].kind == PKind::BridgeSample) continue;
            ++checked;
            const PElement* cut = els[x].kind == PKind::CutPoint ? &els[x] : els[y].kind == PKind::CutPoint ? &els[y] : nullptr;
            const PElement* cls_el = els[x].kind == PKind::Class ? &els[x] : els[y].kind == PKind::Class ? &els[y] : nullptr;
            bool ok = cut && cls_el && !P->classes()[cls_el->index].singleton &&
                      closure_of(X, P->classes()[cls_el->index].cells).count(Cell::vertex(cut->index));
            if (!ok) return Check{"cutpoint", "adjacent-elements", false, els[x].key + " ~ " + els[y].key};
        }
        return Check{"cutpoint", "adjacent-elements", true, std::to_string(checked) + " adjacent pairs"};
    }));

    out.push_back(guarded("cutpoint", "singleton-classes-terminal", [&] {
        auto cls = classify_nodes(table);
        std::set<std::size_t> terminal(cls.terminal.begin(), cls.terminal.end());
        std::size_t checked = 0;
        for (std::size_t i = 0; i < els.size(); ++i) {
            if (els[i].kind != PKind::Class || !P->classes()[els[i].index].singleton) continue;
            ++checked;
            if (!terminal.count(i)) return Check{"cutpoint", "singleton-classes-terminal", false, els[i].key + " is not terminal"};
        }
        return Check{"cutpoint", "singleton-classes-terminal", true, std::to_string(checked) + " singleton classes"};
    }));

    out.push_back(guarded("cutpoint", "representatives", [&] {
        // betweenness does not depend on the grid nodes standing for a class
        auto reps = [&](const PElement& e) {
            auto r = P->representatives(e);
            return std::vector<std::size_t>{r.front(), r.back()};
        };
        for (std::size_t x = 0; x < els.size(); ++x)
            for (std::size_t z = 0; z < els.size(); ++z)
                for (std::size_t y = 0; y < els.size(); ++y) {
                    if (x == y || x == z || z == y) continue;
                    for (auto a : reps(els[x]))
                        for (auto c : reps(els[z]))
                            for (auto b : reps(els[y]))
                                if (P->between_reps(a, els[z], c, b) != table.between(x, z, y))
                                    return Check{"cutpoint", "representatives", false,
                                                 "(" + els[x].key + ", " + els[z].key + ", " + els[y].key + ")"};
                }
        return Check{"cutpoint", "representatives", true, {}};
    }));

    out.push_back(guarded("cutpoint", "metrization", [&] {
        auto M1 = metrize(T, MetricMode::Canonical);
        auto M2 = metrize(T, MetricMode::Canonical);
        if (!(M1 == M2)) return Check{"cutpoint", "metrization", false, "two runs differ"};
        auto replay = replay_canonical_lengths(T);
        for (std::size_t a = 0; a < T.arc_count(); ++a)
            if (replay[a] != M1.arc(a).length)
                return Check{"cutpoint", "metrization", false,
                             "arc " + T.node(T.arc(a).from).key + " -- " + T.node(T.arc(a).to).key + ": " +
                                 to_string(M1.arc(a).length) + " vs replay " + to_string(replay[a])};
        return Check{"cutpoint", "metrization", true, "total " + to_string(M1.total_length())};
    }));

    out.push_back(guarded("cutpoint", "geometric-isometry", [&] {
        auto G = metrize(T, MetricMode::Geometric, {}, &X);
        auto autos = enumerate_automorphisms(X, kAutomorphismLimit);
        for (const auto& g : autos) {
            auto m = induced_map(T, X, g);
            for (std::size_t a = 0; a < T.arc_count(); ++a)
                if (G.arc(a).length != G.arc(m.arc_image[a]).length)
                    return Check{"cutpoint", "geometric-isometry", false, format_automorphism(X, g)};
        }
        return Check{"cutpoint", "geometric-isometry", true, std::to_string(autos.size()) + " automorphisms"};
    }));
    return out;
}

// ---------------------------------------------------------------- cut pairs

std::vector<Check> check_cutpair(const CutPairAnalysis& A) {
    const auto& X = A.continuum();
    const auto& O = A.oracle();
    const auto& R = A.R();
    const auto& atoms = O.atoms();
    std::vector<Check> out;

    for (auto& c : check_pretree_table(A.table(), "R")) out.push_back(std::move(c));
    out.push_back(guarded("R", "tree-betweenness", [&] {
        return check_tree_matches_table(build_jsj_tree(A), A.table(), "R");
    }));

    auto separates_pair = [&](std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
        if (a == x || a == y || b == x || b == y) return false;
        const Labels* L = A.cut_pair(a, b);
        return L && L->node[x] >= 0 && L->node[y] >= 0 && L->node[x] != L->node[y];
    };
    auto components_without = [&](std::size_t a, std::size_t b) {
        std::size_t two[] = {a, b};
        return O.remove(two).count;
    };
    const auto acp = A.atom_cut_pairs();

    out.push_back(guarded("cutpair", "crossing-pairs", [&] {
        std::size_t cases = 0;
        for (const auto& [a, b] : acp)
            for (const auto& [c, d] : acp) {
                if (!separates_pair(a, b, c, d)) continue;
                ++cases;
                bool ok = A.is_cyclic({a, b, c, d}) && separates_pair(c, d, a, b) && components_without(a, b) == 2 &&
                          components_without(c, d) == 2;
                if (!ok)
                    return Check{"cutpair", "crossing-pairs", false,
                                 "{" + point_name(O, a) + "," + point_name(O, b) + "} vs {" + point_name(O, c) + "," +
                                     point_name(O, d) + "}"};
            }
        return Check{"cutpair", "crossing-pairs", true, std::to_string(cases) + " crossing pairs"};
    }));

    // atom sets of size 2..4 all of whose pairs are cut pairs
    std::vector<std::vector<std::size_t>> cut_cliques;
    {
        const std::size_t m = atoms.size();
        auto cp = [&](std::size_t i, std::size_t j) { return A.cut_pair(atoms[i], atoms[j]) != nullptr; };
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (!cp(i, j)) continue;
                cut_cliques.push_back({atoms[i], atoms[j]});
                for (std::size_t k = j + 1; k < m; ++k) {
                    if (!cp(i, k) || !cp(j, k)) continue;
                    cut_cliques.push_back({atoms[i], atoms[j], atoms[k]});
                    for (std::size_t l = k + 1; l < m; ++l)
                        if (cp(i, l) && cp(j, l) && cp(k, l)) cut_cliques.push_back({atoms[i], atoms[j], atoms[k], atoms[l]});
                }
            }
    }
    auto set_name = [&](const std::vector<std::size_t>& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + point_name(O, s[i]);
        return out + "}";
    };

    out.push_back(guarded("cutpair", "cyclic-extension", [&] {
        std::size_t cases = 0;
        for (const auto& S : cut_cliques) {
            if (S.size() > 3) continue;
            for (const auto& [a, b] : acp) {
                bool splits = false;
                for (std::size_t i = 0; i < S.size() && !splits; ++i)
                    for (std::size_t j = i + 1; j < S.size() && !splits; ++j) splits = separates_pair(a, b, S[i], S[j]);
                if (!splits) continue;
                ++cases;
                auto T = S;
                T.push_back(a);
                T.push_back(b);
                if (!A.is_cyclic(T))
                    return Check{"cutpair", "cyclic-extension", false,
                                 set_name(S) + " with {" + point_name(O, a) + "," + point_name(O, b) + "}"};
            }
        }
        return Check{"cutpair", "cyclic-extension", true, std::to_string(cases) + " extensions"};
    }));

    out.push_back(guarded("cutpair", "cut-sets-cyclic-or-inseparable", [&] {
        for (const auto& S : cut_cliques) {
            bool inseparable = true;
            for (std::size_t i = 0; i < S.size(); ++i)
                for (std::size_t j = i + 1; j < S.size(); ++j) inseparable = inseparable && !A.separable(S[i], S[j]);
            if (!inseparable && !A.is_cyclic(S))
                return Check{"cutpair", "cut-sets-cyclic-or-inseparable", false, set_name(S) + " is neither inseparable nor cyclic"};
        }
        return Check{"cutpair", "cut-sets-cyclic-or-inseparable", true, std::to_string(cut_cliques.size()) + " sets"};
    }));

    out.push_back(guarded("cutpair", "necklace-split-by-inner-pair", [&] {
        std::size_t cases = 0;
        for (const auto& N : A.necklaces()) {
            auto L = O.remove_cells(N.cells);
            auto inside = O.nodes_in(N.cells);
            for (std::size_t i = 0; i < atoms.size(); ++i)
                for (std::size_t j = i + 1; j < atoms.size(); ++j) {
                    auto x = atoms[i], y = atoms[j];
                    if (L.node[x] < 0 || L.node[y] < 0 || L.node[x] == L.node[y]) continue;
                    ++cases;
                    bool found = false;
                    for (std::size_t p = 0; p < inside.size() && !found; ++p)
                        for (std::size_t q = p + 1; q < inside.size() && !found; ++q)
                            found = separates_pair(inside[p], inside[q], x, y);
                    if (!found)
                        return Check{"cutpair", "necklace-split-by-inner-pair", false,
                                     N.key + " separates " + point_name(O, x) + " from " + point_name(O, y)};
                }
        }
        return Check{"cutpair", "necklace-split-by-inner-pair", true, std::to_string(cases) + " separated pairs"};
    }));

    out.push_back(guarded("cutpair", "element-intersections", [&] {
        for (std::size_t i = 0; i < R.size(); ++i)
            for (std::size_t j = i + 1; j < R.size(); ++j) {
                auto k = A.intersection_size(i, j);
                if (!k || *k >= 3) return Check{"cutpair", "element-intersections", false, R[i].key + " & " + R[j].key};
                if (*k == 2) {
                    std::vector<std::size_t> common;
                    std::set_intersection(A.element_nodes(i).begin(), A.element_nodes(i).end(),
                                          A.element_nodes(j).begin(), A.element_nodes(j).end(),
                                          std::back_inserter(common));
                    bool ok = common.size() == 2 && O.is_atom(common[0]) && O.is_atom(common[1]) &&
                              A.cut_pair(common[0], common[1]) && !A.separable(common[0], common[1]);
                    if (!ok) return Check{"cutpair", "element-intersections", false, R[i].key + " & " + R[j].key + " meet in a separable pair"};
                }
            }
        return Check{"cutpair", "element-intersections", true, std::to_string(R.size()) + " elements"};
    }));

    out.push_back(guarded("cutpair", "elements-unseparated", [&] {
        for (std::size_t s = 0; s < R.size(); ++s)
            for (std::size_t t = 0; t < R.size(); ++t) {
                if (s == t) continue;
                const auto& L = A.removal(s);
                std::set<int> labels;
                for (auto x : A.element_nodes(t))
                    if (L.node[x] >= 0) labels.insert(L.node[x]);
                if (labels.size() > 1) return Check{"cutpair", "elements-unseparated", false, R[s].key + " separates " + R[t].key};
            }
        return Check{"cutpair", "elements-unseparated", true, {}};
    }));

    out.push_back(guarded("cutpair", "segments-meet-elements", [&] {
        // every closed grid segment meets an element
        const auto& sub = O.subdivision();
        std::vector<char> node_in(O.node_count(), 0);
        std::set<EdgeId> edge_in;
        for (std::size_t r = 0; r < R.size(); ++r) {
            for (auto x : A.element_nodes(r)) node_in[x] = 1;
            for (const auto& c : R[r].cells)
                if (c.kind == Cell::Kind::Edge) edge_in.insert(c.id);
        }
        for (std::size_t s = 0; s < sub.segment_count(); ++s) {
            auto [a, b] = sub.segment_ends(s);
            if (!node_in[a] && !node_in[b] && !edge_in.count(sub.segment_edge(s)))
                return Check{"cutpair", "segments-meet-elements", false,
                             "segment " + point_name(O, a) + " .. " + point_name(O, b) + " meets no element"};
        }
        return Check{"cutpair", "segments-meet-elements", true, std::to_string(sub.segment_count()) + " segments"};
    }));

    out.push_back(guarded("cutpair", "R-lemmas", [&] {
        const auto& t = A.table();
        const std::size_t n = t.size();
        auto closed = [&](std::size_t x, std::size_t z, std::size_t y) { return z == x || z == y || t.between(x, z, y); };
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t u = 0; u < n; ++u) {
                    if (t.between(r, s, u) && t.between(s, r, u))
                        return Check{"cutpair", "R-lemmas", false, "antisymmetry " + names_of(t, {r, s, u})};
                    for (std::size_t z = 0; z < n; ++z)
                        if (closed(r, z, u) && !closed(r, z, s) && !closed(s, z, u))
                            return Check{"cutpair", "R-lemmas", false, "triangle " + names_of(t, {r, s, u, z})};
                }
        return Check{"cutpair", "R-lemmas", true, {}};
    }));

    out.push_back(guarded("cutpair", "necklaces", [&] {
        for (const auto& N : A.necklaces()) {
            const auto& a = N.atoms;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = i + 1; j < a.size(); ++j) {
                    if (!A.cut_pair(a[i], a[j]))
                        return Check{"cutpair", "necklaces", false, N.key + ": pair is not a cut pair"};
                    // triples through the first atom, and all triples of small necklaces
                    for (std::size_t k = j + 1; k < a.size(); ++k)
                        if ((i == 0 || a.size() <= 12) && !A.is_cyclic({a[i], a[j], a[k]}))
                            return Check{"cutpair", "necklaces", false, N.key + ": triple is not cyclic"};
                }
            for (std::size_t i = 0; i + 3 < a.size(); ++i)
                if (!A.is_cyclic({a[i], a[i + 1], a[i + 2], a[i + 3]}))
                    return Check{"cutpair", "necklaces", false, N.key + ": four consecutive atoms are not cyclic"};
            std::set<std::size_t> in(a.begin(), a.end());
            for (auto d : atoms) {
                if (in.count(d)) continue;
                auto ext = a;
                ext.push_back(d);
                if (A.is_cyclic(ext))
                    return Check{"cutpair", "necklaces", false, N.key + " extends by " + point_name(O, d)};
            }
        }
        for (const auto& [p, q] : acp) {
            if (!A.separable(p, q)) continue;
            std::size_t count = 0;
            for (const auto& N : A.necklaces())
                count += std::count(N.atoms.begin(), N.atoms.end(), p) && std::count(N.atoms.begin(), N.atoms.end(), q);
            if (count != 1)
                return Check{"cutpair", "necklaces", false,
                             "separable cut pair {" + point_name(O, p) + "," + point_name(O, q) + "} lies in " +
                                 std::to_string(count) + " necklaces"};
        }
        return Check{"cutpair", "necklaces", true, std::to_string(A.necklaces().size()) + " necklaces"};
    }));

    out.push_back(guarded("cutpair", "gaps", [&] {
        std::size_t count = 0;
        for (std::size_t i = 0; i < A.necklaces().size(); ++i)
            for (const auto& g : A.gaps(i)) {
                ++count;
                auto where = A.necklaces()[i].key + " gap " + describe_cells(X, g.cells);
                if (!g.fat) return Check{"cutpair", "gaps", false, where + " is not fat"};
                if (!A.cut_pair(g.side_b, g.side_c) || A.separable(g.side_b, g.side_c))
                    return Check{"cutpair", "gaps", false, where + ": sides are not an inseparable pair"};
                if (!is_connected(X, g.region)) return Check{"cutpair", "gaps", false, where + " is not connected"};
                for (auto v : {g.side_b, g.side_c})
                    if (g.cells.count(Cell::vertex(v)) || !g.closure.count(Cell::vertex(v)))
                        return Check{"cutpair", "gaps", false, where + ": side is not on the boundary"};
            }
        return Check{"cutpair", "gaps", true, std::to_string(count) + " gaps"};
    }));

    out.push_back(guarded("cutpair", "circle-map", [&] {
        auto autos = enumerate_automorphisms(X, kAutomorphismLimit);
        for (std::size_t i = 0; i < A.necklaces().size(); ++i) {
            const auto& N = A.necklaces()[i];
            auto F = A.circle_map(i);
            auto angle = [&](std::size_t node) { return F.angles[static_cast<std::size_t>(O.atom_index(node))]; };
            auto fail = [&](const std::string& what) { return Check{"cutpair", "circle-map", false, N.key + ": " + what}; };
            std::set<Rational> seen;
            for (auto a : N.atoms)
                if (!seen.insert(angle(a)).second) return fail("not one to one on the necklace");
            for (std::size_t k = 0; k + 1 < F.stations.size(); ++k)
                if (angle(F.stations[k]) >= angle(F.stations[k + 1])) return fail("stations out of cyclic order");
            for (const auto& g : A.gaps(i)) {
                auto b = angle(g.side_b), c = angle(g.side_c);
                if (b == c) return fail("degenerate gap arc");
                for (auto x : g.atoms)
                    if (angle(x) == b || angle(x) == c) return fail("gap atom on a side");
            }
            std::set<std::size_t> inN(N.atoms.begin(), N.atoms.end());
            for (std::size_t p = 0; p < N.atoms.size(); ++p)
                for (std::size_t q = p + 1; q < N.atoms.size(); ++q) {
                    auto a = N.atoms[p], b = N.atoms[q];
                    for (std::size_t s = 0; s < atoms.size(); ++s)
                        for (std::size_t t = s + 1; t < atoms.size(); ++t) {
                            auto x = atoms[s], y = atoms[t];
                            if (x == a || x == b || y == a || y == b) continue;
                            bool on_circle = circle_separates(angle(a), angle(b), angle(x), angle(y));
                            bool in_X = separates_pair(a, b, x, y);
                            if (on_circle && !in_X) return fail("property 3(a) at " + point_name(O, x) + "," + point_name(O, y));
                            if (in_X && (inN.count(x) || inN.count(y)) && !on_circle)
                                return fail("property 3(b) at " + point_name(O, x) + "," + point_name(O, y));
                        }
                }
            // automorphisms stabilizing N act dihedrally on the stations
            const long m = static_cast<long>(F.stations.size());
            for (const auto& g : autos) {
                if (g.apply(N.cells) != N.cells) continue;
                std::vector<long> pi;
                for (auto v : F.stations)
                    pi.push_back(std::find(F.stations.begin(), F.stations.end(), g.vertex_image[v]) - F.stations.begin());
                bool dihedral = false;
                for (long sign : {1L, -1L}) {
                    bool ok = true;
                    for (long k = 0; k < m && ok; ++k) ok = ((pi[k] - sign * k - pi[0]) % m + 2 * m) % m == 0;
                    dihedral = dihedral || ok;
                }
                if (!dihedral) return fail("automorphism is not dihedral on the stations");
            }
        }
        return Check{"cutpair", "circle-map", true, std::to_string(A.necklaces().size()) + " layouts"};
    }));

    out.push_back(guarded("cutpair", "cyclic-decomposition", [&] {
        std::size_t count = 0;
        const auto whole = Region::whole(X);
        for (const auto& N : A.necklaces()) {
            std::vector<Point> S;
            for (const auto& c : N.cycle)
                S.push_back(c.kind == Cell::Kind::Vertex ? Point::vertex(c.id) : Point::on_edge(c.id, Rational(1, 2)));
            if (S.size() < 3) continue;
            auto d = cyclic_decomposition(X, S);
            if (!d) return Check{"cutpair", "cyclic-decomposition", false, N.key + ": stations are not cyclic"};
            ++count;
            const std::size_t n = d->stations.size();
            Region all;
            for (std::size_t i = 0; i < n; ++i) {
                all = all.unite(d->pieces[i]);
                for (std::size_t j = i + 1; j < n; ++j) {
                    auto meet = d->pieces[i].intersect(d->pieces[j]);
                    Region want;
                    if (j == i + 1) want.add_point(d->stations[j]);
                    if (i == 0 && j == n - 1) want.add_point(d->stations[0]);
                    if (!(meet == want))
                        return Check{"cutpair", "cyclic-decomposition", false, N.key + ": pieces meet wrongly"};
                }
            }
            if (!(all == whole)) return Check{"cutpair", "cyclic-decomposition", false, N.key + ": pieces miss points"};
        }
        for (const auto& [p, q] : A.inseparable().pairs) {
            Point two[] = {O.point_of(p), O.point_of(q)};
            auto d = cyclic_decomposition(X, two);
            if (!d || !d->by_fiat) return Check{"cutpair", "cyclic-decomposition", false, "inseparable pair not cyclic"};
            ++count;
        }
        return Check{"cutpair", "cyclic-decomposition", true, std::to_string(count) + " decompositions"};
    }));

    out.push_back(guarded("cutpair", "is-circle", [&] {
        bool grid = A.grid_says_circle();
        bool cycle = X.is_cycle_graph();
        return Check{"cutpair", "is-circle", grid == cycle, grid ? "circle" : "not a circle"};
    }));
    return out;
}

// ---------------------------------------------------------------- combined

std::vector<std::pair<std::string, GraphContinuum>> blocks_of(const std::string& name, const GraphContinuum& X,
                                                              std::size_t grid) {
    std::vector<std::pair<std::string, GraphContinuum>> out;
    if (X.edge_count() == 0) return out;
    if (cut_points(X).empty()) {
        out.emplace_back(name, X);
        return out;
    }
    CutPointPretree P(X, grid);
    for (const auto& c : P.classes())
        if (!c.singleton) out.emplace_back(name + "[" + c.key + "]", block_closure(X, c));
    return out;
}

std::vector<Check> check_combined(const GraphContinuum& X, std::size_t grid) {
    std::vector<Check> out;
    out.push_back(guarded("combined", "tree", [&] {
        auto C = build_combined_tree(X, grid);
        auto T = build_cutpoint_tree(X, grid);
        if (!C.tree.is_tree()) return Check{"combined", "tree", false, "not a tree"};
        // circle blocks collapse to one node: same neighbours as the class node
        auto P = build_P(X, grid);
        for (const auto& cls : P.classes()) {
            if (cls.singleton || !block_closure(X, cls).is_cycle_graph()) continue;
            auto t = T.require(cls.key);
            std::optional<std::size_t> c;
            for (std::size_t i = 0; i < C.tree.node_count(); ++i)
                if (C.tree.node(i).key.rfind(cls.key + "/", 0) == 0) {
                    if (c) return Check{"combined", "tree", false, cls.key + " has a circle block but several nodes"};
                    c = i;
                }
            if (!c) return Check{"combined", "tree", false, cls.key + " vanished"};
            std::set<std::string> want, have;
            for (const auto& [w, a] : T.incident(t)) want.insert(T.node(w).key);
            for (const auto& [w, a] : C.tree.incident(*c)) have.insert(C.tree.node(w).key);
            if (want != have) return Check{"combined", "tree", false, cls.key + " changed its neighbours"};
        }
        // nontrivial blocks sit next to a cut point when there are any
        if (!P.cut_points().empty())
            for (const auto& cls : P.classes()) {
                if (cls.singleton) continue;
                bool next_to_cut = false;
                for (const auto& [w, a] : T.incident(T.require(cls.key)))
                    next_to_cut = next_to_cut || T.node(w).kind == NodeKind::CutPoint;
                if (!next_to_cut) return Check{"combined", "tree", false, cls.key + " is not adjacent to a cut point"};
            }
        return Check{"combined", "tree", true,
                     std::to_string(C.tree.node_count()) + " nodes, " + std::to_string(C.attachments.size()) +
                         " attachments"};
    }));
    return out;
}

// ---------------------------------------------------------------- actions and io

namespace {

std::vector<std::pair<std::string, StructuralTree>> produced_trees(const GraphContinuum& X, std::size_t grid) {
    std::vector<std::pair<std::string, StructuralTree>> out;
    out.emplace_back("cutpoint", metrize(build_cutpoint_tree(X, grid), MetricMode::Canonical));
    if (X.edge_count() > 0 && cut_points(X).empty()) out.emplace_back("jsj", build_jsj_tree(X, grid));
    out.emplace_back("combined", build_combined_tree(X, grid).tree);
    return out;
}

}  // namespace

std::vector<Check> check_actions(const GraphContinuum& X, std::size_t grid) {
    std::vector<Check> out;
    std::vector<std::pair<std::string, StructuralTree>> trees;
    try {
        trees = produced_trees(X, grid);
    } catch (const std::exception& e) {
        out.push_back(Check{"actions", "trees", false, e.what()});
        return out;
    }
    auto autos = enumerate_automorphisms(X, kAutomorphismLimit);
    for (const auto& [kind, T] : trees) {
        out.push_back(guarded("actions", kind, [&, &kind = kind, &T = T] {
            for (const auto& g : autos) {
                auto m = induce_tree_map(T, X, g);
                auto v = is_non_nesting(T, m);
                if (!v.non_nesting) return Check{"actions", kind, false, "nesting: " + v.witness};
                auto c = classify(T, m);
                if (c.type != ActionType::Elliptic || !c.fixed_connected)
                    return Check{"actions", kind, false, "fixed set " + c.fixed.describe(T) + " is not connected"};
                if (classify(T, m.compose(m)).type != ActionType::Elliptic)
                    return Check{"actions", kind, false, "square is not elliptic"};
            }
            return Check{"actions", kind, true, std::to_string(autos.size()) + " automorphisms"};
        }));
    }
    return out;
}

std::vector<Check> check_io(const GraphContinuum& X, std::size_t grid) {
    std::vector<Check> out;
    out.push_back(guarded("io", "round-trip", [&] {
        auto first = produced_trees(X, grid);
        auto second = produced_trees(X, grid);
        for (std::size_t i = 0; i < first.size(); ++i) {
            auto text = write_tree_text(first[i].second);
            if (text != write_tree_text(second[i].second))
                return Check{"io", "round-trip", false, first[i].first + " output is not deterministic"};
            if (!(parse_tree_text(text) == first[i].second))
                return Check{"io", "round-trip", false, first[i].first + " does not re-parse to itself"};
        }
        return Check{"io", "round-trip", true, std::to_string(first.size()) + " trees"};
    }));
    return out;
}

// ---------------------------------------------------------------- fingerprints and reports

std::string fingerprint(const GraphContinuum& X, std::size_t grid) {
    std::ostringstream out;
    auto P = build_P(X, grid);
    out << "cut vertices:";
    for (auto v : P.cut_points().vertices) out << " " << X.vertex_name(v);
    out << "\nbridges:";
    for (auto e : P.cut_points().bridges) out << " " << X.edge(e).name;
    out << "\n";
    for (const auto& c : P.classes()) out << "class " << c.key << " " << describe_cells(X, c.cells) << "\n";
    out << write_tree_text(metrize(build_cutpoint_tree(P), MetricMode::Canonical));
    for (const auto& [name, B] : blocks_of("block", X, grid)) {
        auto A = build_R(B, grid);
        out << "== " << name << "\n" << write_cutpair_records(A);
        for (const auto& s : A.inseparable().maximal_sets) {
            out << "maximal-set";
            for (auto a : s) out << " " << point_name(A.oracle(), a);
            out << "\n";
        }
        for (const auto& [p, q] : A.inseparable().pairs)
            out << "pair " << point_name(A.oracle(), p) << " " << point_name(A.oracle(), q) << "\n";
        out << write_tree_text(build_jsj_tree(A));
    }
    out << write_tree_text(build_combined_tree(X, grid).tree);
    return out.str();
}

bool GraphReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

GraphReport verify_graph(const std::string& name, const GraphContinuum& X, std::size_t grid, VerifyLevel level) {
    GraphReport r{name, grid, {}};
    if (level == VerifyLevel::Off) return r;
    auto add = [&](std::vector<Check> cs) {
        for (auto& c : cs) r.checks.push_back(std::move(c));
    };
    add(check_continuum(X));
    add(check_cutpoint(X, grid));
    try {
        for (const auto& [bname, B] : blocks_of(name, X, grid)) {
            try {
                auto A = build_R(B, grid);
                auto checks = check_cutpair(A);
                for (auto& c : checks) c.group += "@" + bname;
                add(std::move(checks));
            } catch (const std::exception& e) {
                r.checks.push_back(Check{"R@" + bname, "build", false, e.what()});
            }
        }
    } catch (const std::exception& e) {
        r.checks.push_back(Check{"R", "blocks", false, e.what()});
    }
    add(check_combined(X, grid));
    if (level == VerifyLevel::Full) {
        add(check_actions(X, grid));
        add(check_io(X, grid));
    }
    return r;
}

bool CorpusReport::passed() const {
    return std::all_of(runs.begin(), runs.end(), [](const GraphReport& r) { return r.passed(); }) &&
           std::all_of(stability.begin(), stability.end(), [](const Check& c) { return c.pass; });
}

std::string CorpusReport::matrix() const {
    std::vector<std::size_t> grids;
    std::vector<std::string> graphs;
    for (const auto& r : runs) {
        if (std::find(grids.begin(), grids.end(), r.grid) == grids.end()) grids.push_back(r.grid);
        if (std::find(graphs.begin(), graphs.end(), r.graph) == graphs.end()) graphs.push_back(r.graph);
    }
    std::ostringstream out;
    out << std::left << std::setw(16) << "graph";
    for (auto g : grids) out << std::setw(14) << ("grid " + std::to_string(g));
    out << "stable\n";
    for (const auto& name : graphs) {
        out << std::setw(16) << name;
        for (auto g : grids)
            for (const auto& r : runs)
                if (r.graph == name && r.grid == g) {
                    auto passed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
                    out << std::setw(14)
                        << (std::string(r.passed() ? "PASS " : "FAIL ") + std::to_string(passed) + "/" +
                            std::to_string(r.checks.size()));
                }
        std::string stable = "-";
        for (const auto& c : stability)
            if (c.name == name) stable = c.pass ? "PASS" : "FAIL";
        out << stable << "\n";
    }
    for (const auto& r : runs)
        for (const auto& c : r.checks)
            if (!c.pass)
                out << "FAIL " << r.graph << " grid " << r.grid << " " << c.group << "/" << c.name << ": " << c.detail
                    << "\n";
    for (const auto& c : stability)
        if (!c.pass) out << "FAIL " << c.name << " stability: " << c.detail << "\n";
    return out.str();
}

CorpusReport verify_corpus(const std::vector<std::size_t>& grids, VerifyLevel level) {
    CorpusReport report;
    for (const auto& entry : bundled_corpus()) {
        auto X = parse_graph(entry.text);
        std::string name(entry.name);
        for (auto g : grids) report.runs.push_back(verify_graph(name, X, g, level));
        if (level == VerifyLevel::Off || grids.size() < 2) continue;
        report.stability.push_back(guarded("stability", name, [&] {
            auto base = fingerprint(X, grids[0]);
            for (std::size_t i = 1; i < grids.size(); ++i)
                if (fingerprint(X, grids[i]) != base)
                    return Check{"stability", name, false,
                                 "grid " + std::to_string(grids[0]) + " and grid " + std::to_string(grids[i]) + " differ"};
            return Check{"stability", name, true, {}};
        }));
    }
    return report;
}

}  // namespace contree
