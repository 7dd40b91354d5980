#include "contree/actions.hpp"

#include <algorithm>
#include <climits>
#include <deque>

#include "contree/errors.hpp"

namespace contree {

std::string_view to_string(ActionType t) { return t == ActionType::Elliptic ? "elliptic" : "hyperbolic"; }

std::string_view to_string(EndKind k) {
    switch (k) {
    case EndKind::None: return "none";
    case EndKind::PlusInfinity: return "+inf";
    case EndKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

// ---------------------------------------------------------------- finite trees

namespace {

// A sample point with arc parameter in quarters, so distances are integers.
struct QPoint {
    std::size_t node_or_arc = 0;
    int q = 0;  // 0: node; 1..3: quarter position on the arc
    friend bool operator==(const QPoint&, const QPoint&) = default;
};

class QuarterMetric {
public:
    explicit QuarterMetric(const StructuralTree& t) : t_(t), d_(t.node_count(), std::vector<int>(t.node_count(), -1)) {
        for (std::size_t s = 0; s < t.node_count(); ++s) {
            std::deque<std::size_t> queue{s};
            d_[s][s] = 0;
            while (!queue.empty()) {
                auto v = queue.front();
                queue.pop_front();
                for (const auto& [w, arc] : t.incident(v))
                    if (d_[s][w] < 0) {
                        d_[s][w] = d_[s][v] + 4;
                        queue.push_back(w);
                    }
            }
        }
    }

    int to_node(const QPoint& p, std::size_t n) const {
        if (p.q == 0) return d_[p.node_or_arc][n];
        const auto& a = t_.arc(p.node_or_arc);
        return std::min(p.q + d_[a.from][n], 4 - p.q + d_[a.to][n]);
    }

    int operator()(const QPoint& p, const QPoint& r) const {
        if (r.q == 0) return to_node(p, r.node_or_arc);
        if (p.q != 0 && p.node_or_arc == r.node_or_arc) return std::abs(p.q - r.q);
        const auto& a = t_.arc(r.node_or_arc);
        return std::min(r.q + to_node(p, a.from), 4 - r.q + to_node(p, a.to));
    }

    bool inside(const QPoint& x, const QPoint& p, const QPoint& r) const {
        return (*this)(p, x) + (*this)(x, r) == (*this)(p, r);
    }

private:
    const StructuralTree& t_;
    std::vector<std::vector<int>> d_;
};

QPoint image(const TreeMap& g, const QPoint& p) {
    if (p.q == 0) return {g.node_image.at(p.node_or_arc), 0};
    return {g.arc_image.at(p.node_or_arc), g.arc_reversed.at(p.node_or_arc) ? 4 - p.q : p.q};
}

std::string name(const StructuralTree& t, const QPoint& p) {
    if (p.q == 0) return t.node(p.node_or_arc).key;
    return describe(t, TreePoint::on_arc(p.node_or_arc, Rational(p.q, 4)));
}

std::optional<std::string> find_nesting(const StructuralTree& tree, const TreeMap& g, const QuarterMetric& d,
                                        const std::vector<QPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto &p = pts[i], &q = pts[j];
            auto gp = image(g, p), gq = image(g, q);
            if (!d.inside(gp, p, q) || !d.inside(gq, p, q)) continue;
            if ((gp == p && gq == q) || (gp == q && gq == p)) continue;
            return "[" + name(tree, p) + ", " + name(tree, q) + "] -> [" + name(tree, gp) + ", " + name(tree, gq) + "]";
        }
    return std::nullopt;
}

}  // namespace

NestingVerdict is_non_nesting(const StructuralTree& tree, const TreeMap& g) {
    validate_tree_map(tree, g);
    QuarterMetric d(tree);
    std::vector<QPoint> pts;
    for (std::size_t n = 0; n < tree.node_count(); ++n) pts.push_back({n, 0});
    for (std::size_t a = 0; a < tree.arc_count(); ++a)
        for (int q = 1; q < 4; ++q) pts.push_back({a, q});
    NestingVerdict v;
    auto w = find_nesting(tree, g, d, pts);
    if (!w) w = find_nesting(tree, g.inverse(), d, pts);
    if (w) {
        v.non_nesting = false;
        v.witness = *w;
    }
    return v;
}

TreeClassification classify(const StructuralTree& tree, const TreeMap& g) {
    auto v = is_non_nesting(tree, g);
    if (!v.non_nesting) throw PreconditionError("map is nesting: " + v.witness);
    TreeClassification c;
    c.fixed = fixed_set(tree, g);
    if (c.fixed.empty()) throw InternalError("bijection of a finite tree without a fixed point");
    c.fixed_connected = is_connected(tree, c.fixed);
    return c;
}

TreeCommonFixed global_fixed_point(const StructuralTree& tree, const std::vector<TreeMap>& generators) {
    TreeCommonFixed out;
    if (generators.empty()) {
        out.point = TreePoint::at_node(0);
        return out;
    }
    std::vector<TreeFixedSet> fixed;
    for (const auto& g : generators) fixed.push_back(classify(tree, g).fixed);
    out.common = fixed[0];
    for (std::size_t i = 1; i < fixed.size(); ++i) out.common = out.common.intersect(fixed[i]);
    out.point = out.common.any_point();
    if (out.point) return out;
    for (std::size_t i = 0; i < fixed.size() && !out.disjoint_pair; ++i)
        for (std::size_t j = i + 1; j < fixed.size() && !out.disjoint_pair; ++j)
            if (fixed[i].intersect(fixed[j]).empty()) {
                out.disjoint_pair = {i, j};
                const auto &a = generators[i], &b = generators[j];
                auto comm = a.inverse().compose(b.inverse().compose(a.compose(b)));
                out.commutator_type =
                    fixed_set(tree, comm).empty() ? ActionType::Hyperbolic : ActionType::Elliptic;
            }
    return out;
}

// ---------------------------------------------------------------- the line

std::string describe(const LineInterval& I) {
    return "[" + (I.lo ? to_string(*I.lo) : std::string("-inf")) + ", " + (I.hi ? to_string(*I.hi) : std::string("+inf")) +
           "]";
}

std::optional<LineInterval> intersect(const LineInterval& a, const LineInterval& b) {
    LineInterval out;
    out.lo = !a.lo ? b.lo : !b.lo ? a.lo : std::max(*a.lo, *b.lo);
    out.hi = !a.hi ? b.hi : !b.hi ? a.hi : std::min(*a.hi, *b.hi);
    if (out.lo && out.hi && *out.lo > *out.hi) return std::nullopt;
    return out;
}

LineMap::LineMap(std::vector<std::pair<Rational, Rational>> breakpoints) : bp_(std::move(breakpoints)) {
    if (bp_.size() < 2) throw InputError("a line map needs at least two breakpoints");
    bool up = bp_[1].second > bp_[0].second;
    for (std::size_t i = 1; i < bp_.size(); ++i) {
        if (bp_[i].first <= bp_[i - 1].first) throw InputError("line map breakpoints must increase");
        if ((bp_[i].second > bp_[i - 1].second) != up || bp_[i].second == bp_[i - 1].second)
            throw InputError("line map is not strictly monotone");
    }
    // drop interior breakpoints where the slope does not change
    std::vector<std::pair<Rational, Rational>> kept{bp_[0]};
    for (std::size_t i = 1; i + 1 < bp_.size(); ++i) {
        const auto &a = kept.back(), &b = bp_[i], &c = bp_[i + 1];
        if ((b.second - a.second) * (c.first - b.first) != (c.second - b.second) * (b.first - a.first))
            kept.push_back(b);
    }
    kept.push_back(bp_.back());
    bp_ = std::move(kept);
}

LineMap LineMap::translation(const Rational& by) { return LineMap({{Rational(0), by}, {Rational(1), Rational(1) + by}}); }

LineMap LineMap::reflection(const Rational& c) {
    return LineMap({{Rational(0), 2 * c}, {Rational(1), 2 * c - 1}});
}

Rational LineMap::apply(const Rational& x) const {
    std::size_t i = 0;
    while (i + 2 < bp_.size() && x > bp_[i + 1].first) ++i;
    const auto &a = bp_[i], &b = bp_[i + 1];
    return a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
}

LineMap LineMap::inverse() const {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& [x, y] : bp_) out.emplace_back(y, x);
    std::sort(out.begin(), out.end());
    return LineMap(std::move(out));
}

LineMap LineMap::compose(const LineMap& inner) const {
    auto inv = inner.inverse();
    std::vector<Rational> xs;
    for (const auto& [x, y] : inner.bp_) xs.push_back(x);
    for (const auto& [x, y] : bp_) xs.push_back(inv.apply(x));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& x : xs) out.emplace_back(x, apply(inner.apply(x)));
    return LineMap(std::move(out));
}

bool LineMap::increasing() const { return bp_[1].second > bp_[0].second; }

bool operator==(const LineMap& a, const LineMap& b) {
    std::vector<Rational> xs;
    for (const auto& p : a.bp_) xs.push_back(p.first);
    for (const auto& p : b.bp_) xs.push_back(p.first);
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    xs.push_back(*lo - 1);
    xs.push_back(*hi + 1);
    for (const auto& x : xs)
        if (a.apply(x) != b.apply(x)) return false;
    return true;
}

std::vector<LineInterval> LineMap::fixed_set() const {
    std::vector<LineInterval> pieces;
    const std::size_t n = bp_.size();
    for (std::size_t i = 0; i <= n; ++i) {
        // piece i: (-inf, x0], [x_{i-1}, x_i], [x_{n-1}, +inf)
        std::size_t s = i == 0 ? 0 : i == n ? n - 2 : i - 1;
        const auto &a = bp_[s], &b = bp_[s + 1];
        Rational slope = (b.second - a.second) / (b.first - a.first);
        LineInterval piece;
        if (i > 0) piece.lo = bp_[i - 1].first;
        if (i < n) piece.hi = bp_[i].first;
        if (slope == 1) {
            if (a.second == a.first) pieces.push_back(piece);
            continue;
        }
        Rational x = (a.second - slope * a.first) / (1 - slope);
        if (piece.contains(x)) pieces.push_back(LineInterval{x, x});
    }
    // merge overlapping or touching pieces
    std::vector<LineInterval> out;
    for (const auto& p : pieces) {
        if (!out.empty() && out.back().hi && p.lo && *out.back().hi >= *p.lo) {
            if (!p.hi)
                out.back().hi.reset();
            else
                out.back().hi = std::max(*out.back().hi, *p.hi);
            continue;
        }
        out.push_back(p);
    }
    return out;
}

namespace {

std::optional<std::string> find_line_nesting(const LineMap& g, const std::vector<Rational>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto &p = pts[i], &q = pts[j];
            auto gp = g.apply(p), gq = g.apply(q);
            auto in = [&](const Rational& x) { return p <= x && x <= q; };
            if (!in(gp) || !in(gq)) continue;
            if ((gp == p && gq == q) || (gp == q && gq == p)) continue;
            return "[" + to_string(p) + ", " + to_string(q) + "] -> [" + to_string(gp) + ", " + to_string(gq) + "]";
        }
    return std::nullopt;
}

}  // namespace

NestingVerdict is_non_nesting(const LineMap& g, const Rational& bound) {
    std::vector<Rational> pts;
    for (const auto& [x, y] : g.breakpoints()) pts.push_back(x), pts.push_back(y);
    for (const auto& I : g.fixed_set()) {
        if (I.lo) pts.push_back(*I.lo);
        if (I.hi) pts.push_back(*I.hi);
    }
    for (Rational x = -bound; x <= bound; x += Rational(1, 4)) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    NestingVerdict v;
    auto w = find_line_nesting(g, pts);
    if (!w) w = find_line_nesting(g.inverse(), pts);
    if (w) {
        v.non_nesting = false;
        v.witness = *w;
    }
    return v;
}

LineClassification classify(const LineMap& g, const Rational& bound) {
    auto v = is_non_nesting(g, bound);
    if (!v.non_nesting) throw PreconditionError("map is nesting: " + v.witness);
    LineClassification c;
    c.fixed = g.fixed_set();
    if (!c.fixed.empty()) {
        c.fixed_connected = c.fixed.size() == 1;
        return c;
    }
    if (!g.increasing()) throw InternalError("decreasing line map without a fixed point");
    c.type = ActionType::Hyperbolic;
    // c = sup of [a, g(a)] ∩ g^-1[a, g(a)] with a = 0
    Rational a(0), ga = g.apply(a);
    LineInterval I{std::min(a, ga), std::max(a, ga)};
    auto inv = g.inverse();
    auto p = inv.apply(*I.lo), q = inv.apply(*I.hi);
    auto J = intersect(I, LineInterval{std::min(p, q), std::max(p, q)});
    if (!J) throw InternalError("empty supremum set for a translation");
    c.c = *J->hi;
    c.translation = g.apply(*c.c) - *c.c;
    return c;
}

LineCommonFixed global_fixed_point(const std::vector<LineMap>& generators) {
    LineCommonFixed out;
    std::vector<std::vector<LineInterval>> fixed;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        auto c = classify(generators[i]);
        if (c.type == ActionType::Hyperbolic)
            throw PreconditionError("generator " + std::to_string(i) + " is hyperbolic");
        fixed.push_back(c.fixed);
    }
    auto meet = [](const std::vector<LineInterval>& a, const std::vector<LineInterval>& b) {
        std::vector<LineInterval> out;
        for (const auto& x : a)
            for (const auto& y : b)
                if (auto z = intersect(x, y)) out.push_back(*z);
        return out;
    };
    std::vector<LineInterval> common{LineInterval{}};
    for (const auto& f : fixed) common = meet(common, f);
    if (!common.empty()) {
        out.common = common[0];
        out.point = common[0].lo ? *common[0].lo : common[0].hi ? *common[0].hi : Rational(0);
        return out;
    }
    for (std::size_t i = 0; i < fixed.size() && !out.disjoint_pair; ++i)
        for (std::size_t j = i + 1; j < fixed.size() && !out.disjoint_pair; ++j)
            if (meet(fixed[i], fixed[j]).empty()) {
                out.disjoint_pair = {i, j};
                const auto &a = generators[i], &b = generators[j];
                out.commutator = a.inverse().compose(b.inverse().compose(a.compose(b)));
                out.commutator_class = classify(*out.commutator);
            }
    return out;
}

Rational SyntheticLine::period() const {
    Rational p(0);
    for (const auto& l : block) p += l;
    return p;
}

LineMap SyntheticLine::shift(long k) const { return LineMap::translation(period() * k); }

std::vector<Rational> SyntheticLine::nodes(const Rational& bound) const {
    if (block.empty() || period() <= 0) throw InputError("periodic line needs positive arc lengths");
    std::vector<Rational> out;
    Rational start(0);
    while (start > -bound) start -= period();
    for (Rational x = start; x <= bound;)
        for (const auto& l : block) {
            if (x >= -bound && x <= bound) out.push_back(x);
            x += l;
        }
    return out;
}

EndReport fixed_end(const SyntheticLine& line, const LineMap& g, std::size_t bound) {
    // ellipticity only: the family need not be non-nesting
    auto fixed = g.fixed_set();
    if (fixed.empty()) throw PreconditionError("generator has no fixed point");
    if (fixed.size() != 1) return {EndKind::Inconclusive, "fixed set is not connected"};
    const auto F = fixed[0];
    const auto P = line.period();
    for (std::size_t n = 1; n <= bound; ++n) {
        auto s = line.shift(static_cast<long>(n));
        auto gn = s.compose(g.compose(s.inverse()));
        auto Fn = gn.fixed_set();
        LineInterval want{F.lo ? std::optional<Rational>(*F.lo + P * n) : std::nullopt,
                          F.hi ? std::optional<Rational>(*F.hi + P * n) : std::nullopt};
        if (Fn.size() != 1 || Fn[0] != want) throw InternalError("conjugate fixed set is not the shifted one");
    }
    if (!F.lo) return {EndKind::None, "common fixed set " + describe(F)};
    if (!F.hi)
        return {EndKind::PlusInfinity,
                "fixed rays [" + to_string(*F.lo) + " + n*" + to_string(P) + ", +inf) escape towards +inf"};
    return {EndKind::Inconclusive, "bounded fixed sets " + describe(F) + " drift apart; no common point or end"};
}

EndReport fixed_end(const StructuralTree& tree, const std::vector<TreeMap>& generators) {
    auto r = global_fixed_point(tree, generators);
    if (r.point) return {EndKind::None, "common fixed point " + describe(tree, *r.point)};
    return {EndKind::Inconclusive, "no common fixed point on a finite tree"};
}

}  // namespace contree
