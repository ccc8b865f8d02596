#include "planeorder/leafspace.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace planeorder {

std::string RatInterval::str() const {
    std::ostringstream os;
    os << (lo_closed && !lo_inf ? '[' : '(');
    os << (lo_inf ? std::string("-inf") : rat_str(lo)) << ",";
    os << (hi_inf ? std::string("inf") : rat_str(hi));
    os << (hi_closed && !hi_inf ? ']' : ')');
    return os.str();
}

namespace {

// Disjoint set over small index ranges.
struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

ValidationReport OneManifold::validate() {
    ValidationReport rep;
    prepared_ = false;
    int n = chart_count();
    if (n == 0) {
        rep.add("MalformedGluing", "no charts");
        return rep;
    }
    for (int i = 0; i < n; ++i) {
        if (charts[i].id != i) rep.add("MalformedGluing", "chart ids must be dense from 0, got " + std::to_string(charts[i].id) + " at position " + std::to_string(i));
    }
    parent_edge_.assign(n, -1);
    for (size_t gi = 0; gi < gluings.size(); ++gi) {
        const Gluing& g = gluings[gi];
        if (!has_chart(g.child) || !has_chart(g.parent)) {
            rep.add("MalformedGluing", "gluing " + std::to_string(gi) + " references unknown chart");
            continue;
        }
        if (g.child == 0) rep.add("MalformedGluing", "root chart 0 cannot be a child");
        if (g.child == g.parent) rep.add("MalformedGluing", "self gluing on chart " + std::to_string(g.child));
        if (g.child != 0 && g.child != g.parent) {
            if (parent_edge_[g.child] != -1)
                rep.add("MalformedGluing", "chart " + std::to_string(g.child) + " has two parents");
            else
                parent_edge_[g.child] = static_cast<int>(gi);
        }
    }
    for (int c = 1; c < n; ++c)
        if (parent_edge_[c] == -1) rep.add("MalformedGluing", "chart " + std::to_string(c) + " is an orphan (no gluing as child)");
    if (!rep.ok) return rep;

    // acyclicity + depths
    depth_.assign(n, -1);
    depth_[0] = 0;
    for (int c = 1; c < n; ++c) {
        if (depth_[c] != -1) continue;
        std::vector<int> stack;
        int x = c;
        while (depth_[x] == -1) {
            stack.push_back(x);
            if (static_cast<int>(stack.size()) > n) {
                rep.add("MalformedGluing", "gluing graph has a cycle");
                return rep;
            }
            x = gluings[parent_edge_[x]].parent;
        }
        int d = depth_[x];
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) depth_[*it] = ++d;
    }

    prepared_ = true;
    compute_ends();
    compute_cataclysms();
    return rep;
}

RatInterval OneManifold::edge_region(int gi) const {
    const Gluing& g = gluings[gi];
    return g.side == GlueSide::Below ? RatInterval::below(g.cut) : RatInterval::above(g.cut);
}

RatInterval OneManifold::shared_region(int x, int y) const {
    assert(prepared_);
    RatInterval r = RatInterval::full();
    // walk both up to the common ancestor, intersecting edge regions
    int a = x, b = y;
    while (a != b) {
        if (depth_[a] < depth_[b]) std::swap(a, b);
        r = r.intersect(edge_region(parent_edge_[a]));
        a = gluings[parent_edge_[a]].parent;
    }
    return r;
}

RatInterval OneManifold::owned_region(int chart) const {
    assert(prepared_);
    if (parent_edge_[chart] < 0) return RatInterval::full();
    const Gluing& g = gluings[parent_edge_[chart]];
    RatInterval r;
    if (g.side == GlueSide::Below) {  // own points are [c, +inf)
        r.lo_inf = false;
        r.lo = g.cut;
        r.lo_closed = true;
    } else {
        r.hi_inf = false;
        r.hi = g.cut;
        r.hi_closed = true;
    }
    return r;
}

Point OneManifold::canonicalize(Point p) const {
    assert(prepared_);
    if (!has_chart(p.chart)) throw DomainError("UnknownChart", "chart " + std::to_string(p.chart));
    while (parent_edge_[p.chart] >= 0 && edge_region(parent_edge_[p.chart]).contains(p.coord))
        p.chart = gluings[parent_edge_[p.chart]].parent;
    return p;
}

bool OneManifold::representable(const Point& p, int chart) const {
    if (p.chart == chart) return true;
    return shared_region(p.chart, chart).contains(p.coord);
}

std::vector<int> OneManifold::charts_of(const Point& p) const {
    std::vector<int> out;
    for (int c = 0; c < chart_count(); ++c)
        if (representable(p, c)) out.push_back(c);
    return out;
}

Order OneManifold::compare_points(Point p, Point q) const {
    p = canonicalize(p);
    q = canonicalize(q);
    if (p == q) return Order::Equal;
    for (int c = 0; c < chart_count(); ++c)
        if (representable(p, c) && representable(q, c))
            return p.coord < q.coord ? Order::Less : Order::Greater;
    return Order::Incomparable;
}

void OneManifold::compute_ends() {
    int n = chart_count();
    Dsu dsu(2 * n);  // node 2c = (c, Neg), 2c+1 = (c, Pos)
    for (size_t gi = 0; gi < gluings.size(); ++gi) {
        const Gluing& g = gluings[gi];
        if (g.side == GlueSide::Below)
            dsu.unite(2 * g.child, 2 * g.parent);
        else
            dsu.unite(2 * g.child + 1, 2 * g.parent + 1);
    }
    std::map<int, End> classes;
    for (int c = 0; c < n; ++c)
        for (Sign s : {Sign::Neg, Sign::Pos}) {
            int node = 2 * c + (s == Sign::Pos ? 1 : 0);
            End& e = classes[dsu.find(node)];
            e.sign = s;
            e.charts.push_back(c);
        }
    ends_.clear();
    for (auto& [root, e] : classes) {
        std::sort(e.charts.begin(), e.charts.end());
        ends_.push_back(e);
    }
    std::sort(ends_.begin(), ends_.end(), [](const End& a, const End& b) {
        if (a.sign != b.sign) return a.sign == Sign::Pos;
        return a.charts < b.charts;
    });
    ray_to_end_.clear();
    for (size_t i = 0; i < ends_.size(); ++i)
        for (int c : ends_[i].charts)
            ray_to_end_[{c, ends_[i].sign == Sign::Pos ? 1 : 0}] = static_cast<int>(i);
}

const End& OneManifold::end_of_ray(int chart, Sign s) const {
    auto it = ray_to_end_.find({chart, s == Sign::Pos ? 1 : 0});
    assert(it != ray_to_end_.end());
    return ends_[it->second];
}

int OneManifold::end_index(const End& e) const {
    return ray_to_end_.at({e.rep(), e.sign == Sign::Pos ? 1 : 0});
}

std::vector<End> OneManifold::positive_ends() const {
    std::vector<End> out;
    for (const End& e : ends_)
        if (e.sign == Sign::Pos) out.push_back(e);
    return out;
}

std::vector<End> OneManifold::negative_ends() const {
    std::vector<End> out;
    for (const End& e : ends_)
        if (e.sign == Sign::Neg) out.push_back(e);
    return out;
}

std::vector<int> OneManifold::germ_class(int chart, const Rat& value, GlueSide side) const {
    // connected component of `chart` under edges whose region carries the germ
    std::vector<int> comp;
    std::vector<bool> seen(chart_count(), false);
    std::deque<int> work{chart};
    seen[chart] = true;
    while (!work.empty()) {
        int x = work.front();
        work.pop_front();
        comp.push_back(x);
        for (size_t gi = 0; gi < gluings.size(); ++gi) {
            const Gluing& g = gluings[gi];
            int other = -1;
            if (g.child == x) other = g.parent;
            if (g.parent == x) other = g.child;
            if (other < 0 || seen[other]) continue;
            RatInterval region = edge_region(static_cast<int>(gi));
            bool carries = side == GlueSide::Below ? region.contains_germ_below(value)
                                                   : region.contains_germ_above(value);
            if (carries) {
                seen[other] = true;
                work.push_back(other);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

void OneManifold::compute_cataclysms() {
    cataclysms_.clear();
    std::set<Rat> values;
    for (const Gluing& g : gluings) values.insert(g.cut);
    std::set<std::pair<std::pair<Rat, int>, std::vector<Point>>> seen;
    for (const Rat& c : values) {
        for (GlueSide side : {GlueSide::Below, GlueSide::Above}) {
            std::vector<bool> used(chart_count(), false);
            for (int start = 0; start < chart_count(); ++start) {
                if (used[start]) continue;
                std::vector<int> cls = germ_class(start, c, side);
                for (int x : cls) used[x] = true;
                std::set<Point> members;
                for (int x : cls) members.insert(canonicalize(Point{x, c}));
                if (members.size() < 2) continue;
                Cataclysm k;
                k.side = side;
                k.value = c;
                k.members.assign(members.begin(), members.end());
                auto key = std::make_pair(std::make_pair(c, side == GlueSide::Below ? 0 : 1), k.members);
                if (seen.insert(key).second) cataclysms_.push_back(std::move(k));
            }
        }
    }
    std::sort(cataclysms_.begin(), cataclysms_.end(), [](const Cataclysm& a, const Cataclysm& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.side != b.side) return a.side == GlueSide::Below;
        return a.members < b.members;
    });
}

std::string OneManifold::point_str(const Point& p) const {
    return "(" + label(p.chart) + "," + rat_str(p.coord) + ")";
}

std::string OneManifold::end_str(const End& e) const {
    return std::string(1, sign_char(e.sign)) + label(e.rep());
}

OneManifold OneManifold::mirrored() const {
    OneManifold m;
    m.charts = charts;
    for (const Gluing& g : gluings) {
        Gluing h = g;
        h.cut = -g.cut;
        h.side = g.side == GlueSide::Below ? GlueSide::Above : GlueSide::Below;
        m.gluings.push_back(h);
    }
    ValidationReport rep = m.validate();
    assert(rep.ok);
    (void)rep;
    return m;
}

Point mirror_point(const Point& p) { return Point{p.chart, -p.coord}; }

ValidationReport validate_manifold(OneManifold m) { return m.validate(); }

// ---------------------------------------------------------------------------
// Sites

Order compare_sites(const OneManifold& m, const Site& a, const Site& b) {
    if (a.is_end && b.is_end) {
        if (a.end == b.end) return Order::Equal;
        // common chart => the neg end sits below the pos end
        std::set<int> ca(a.end.charts.begin(), a.end.charts.end());
        bool common = false;
        for (int c : b.end.charts)
            if (ca.count(c)) common = true;
        if (!common) return Order::Incomparable;
        if (a.end.sign == b.end.sign) return Order::Incomparable;  // same-sign distinct: no common chart anyway
        return a.end.sign == Sign::Neg ? Order::Less : Order::Greater;
    }
    if (a.is_end) return flip(compare_sites(m, b, a));
    if (b.is_end) {
        Point p = m.canonicalize(a.pt);
        for (int c : b.end.charts)
            if (m.representable(p, c))
                return b.end.sign == Sign::Pos ? Order::Less : Order::Greater;
        return Order::Incomparable;
    }
    return m.compare_points(a.pt, b.pt);
}

std::string site_str(const OneManifold& m, const Site& s) {
    return s.is_end ? m.end_str(s.end) : m.point_str(s.pt);
}

// ---------------------------------------------------------------------------
// Broken paths

namespace {

struct PathState {
    Site at;
    int parent = -1;  // index into states
    int via_cataclysm = -1;
    Point exit, enter;
};

bool comparable_or_equal(const OneManifold& m, const Site& a, const Site& b) {
    Order o = compare_sites(m, a, b);
    return o != Order::Incomparable;
}

// Deterministic choice of a chart carrying both sites.
int common_chart(const OneManifold& m, const Site& a, const Site& b) {
    auto lives = [&](const Site& s, int c) {
        if (s.is_end) return std::count(s.end.charts.begin(), s.end.charts.end(), c) > 0;
        return m.representable(s.pt, c);
    };
    for (int c = 0; c < m.chart_count(); ++c)
        if (lives(a, c) && lives(b, c)) return c;
    return -1;
}

PathSegment make_segment(const OneManifold& m, const Site& a, const Site& b) {
    int c = common_chart(m, a, b);
    assert(c >= 0);
    PathSegment seg;
    seg.chart = c;
    if (a.is_end) {
        seg.from_inf = true;
        seg.from_inf_sign = a.end.sign;
    } else {
        seg.from = a.pt.coord;
    }
    if (b.is_end) {
        seg.to_inf = true;
        seg.to_inf_sign = b.end.sign;
    } else {
        seg.to = b.pt.coord;
    }
    return seg;
}

}  // namespace

BrokenPath broken_path(const OneManifold& m, const Site& a0, const Site& b0) {
    Site a = a0, b = b0;
    if (!a.is_end) a.pt = m.canonicalize(a.pt);
    if (!b.is_end) b.pt = m.canonicalize(b.pt);
    if (a == b) throw DomainError("DegenerateQuery", "broken path endpoints coincide");

    BrokenPath path;
    if (comparable_or_equal(m, a, b)) {
        path.segments.push_back(make_segment(m, a, b));
        return path;
    }

    const auto& cats = m.cataclysms();
    std::vector<PathState> states;
    states.push_back({a, -1, -1, {}, {}});
    std::set<Point> visited;
    size_t frontier_begin = 0;
    int accept = -1;
    while (accept < 0 && frontier_begin < states.size()) {
        size_t frontier_end = states.size();
        for (size_t si = frontier_begin; si < frontier_end && accept < 0; ++si) {
            for (size_t ki = 0; ki < cats.size() && accept < 0; ++ki) {
                for (const Point& u : cats[ki].members) {
                    Site su = Site::of(u);
                    if (!(states[si].at == su) && !comparable_or_equal(m, states[si].at, su)) continue;
                    for (const Point& v : cats[ki].members) {
                        if (v == u || visited.count(v)) continue;
                        visited.insert(v);
                        states.push_back({Site::of(v), static_cast<int>(si), static_cast<int>(ki), u, v});
                        if (comparable_or_equal(m, Site::of(v), b)) {
                            accept = static_cast<int>(states.size()) - 1;
                            break;
                        }
                    }
                    if (accept >= 0) break;
                }
            }
        }
        frontier_begin = frontier_end;
    }
    if (accept < 0)
        throw DomainError("DegenerateQuery", "no broken path found (disconnected presentation?)");

    std::vector<int> chain;
    for (int s = accept; s >= 0; s = states[s].parent) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());

    Site cur = a;
    for (size_t i = 1; i < chain.size(); ++i) {
        const PathState& st = states[chain[i]];
        path.segments.push_back(make_segment(m, cur, Site::of(st.exit)));
        path.cusps.push_back({st.exit, st.enter, cats[st.via_cataclysm].side});
        cur = st.at;
    }
    path.segments.push_back(make_segment(m, cur, b));
    return path;
}

}  // namespace planeorder
