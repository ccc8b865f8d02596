#include <algorithm>
#include <cassert>

#include "planeorder/catalog.hpp"

// Planar polyline models of the catalog fixtures: each leaf is drawn as an
// exact-rational polyline inside a truncation box [-N,N]^2, oriented from its
// negative end to its positive end. Answers are read off the drawing (exit
// order along the box boundary, ray-cast sides, segment crossings) and the
// truncation is enlarged until two successive sizes agree. This code path is
// independent of the crossing-track machinery.

namespace planeorder::catalog {

namespace {

struct Pt {
    Rat x, y;
};

using Polyline = std::vector<Pt>;

struct Model {
    std::string name;
    Rat N;      // box half-width
    Rat delta;  // hug offset, denominator-coprime with the marks

    Polyline leaf(int space, const Point& p) const;
};

Rat denom_lcm(const std::vector<std::pair<int, Point>>& marks) {
    boost::multiprecision::cpp_int l = 10;
    for (const auto& [s, p] : marks)
        l = boost::multiprecision::lcm(l, denominator(p.coord));
    return Rat(l);
}

// ---- per-fixture drawings -------------------------------------------------

Polyline triv_leaf(const Model& m, int space, const Point& p) {
    if (space == 1) return {{-m.N, p.coord}, {m.N, p.coord}};
    return {{p.coord, -m.N}, {p.coord, m.N}};
}

Polyline skew1_leaf(const Model& m, int space, const Point& p) {
    if (space == 2) return {{p.coord, -m.N}, {p.coord, m.N}};
    const Rat& t = p.coord;
    Rat d = m.delta;
    // descends from north near x = t-1 to south near x = t+1
    return {{t - 1 + d, m.N}, {t - 1 + 2 * d, 2}, {t + 1 - 2 * d, -2}, {t + 1 - d, -m.N}};
}

Polyline branchplane_leaf(const Model& m, int space, const Point& p) {
    if (space == 2) return {{p.coord, -m.N}, {p.coord, m.N}};
    const Rat& t = p.coord;
    Rat d = m.delta;
    if (p.chart == 0 && t < 0) return {{-m.N, t}, {m.N, t}};
    if (p.chart == 0) return {{-m.N, t}, {-t - Rat(1, 2), t}, {-t - d, m.N}};
    return {{t + d, m.N}, {t + Rat(1, 2), t}, {m.N, t}};
}

Polyline branch3plane_leaf(const Model& m, int space, const Point& p) {
    if (space == 2) return {{p.coord, -m.N}, {p.coord, m.N}};
    const Rat& t = p.coord;
    Rat d = m.delta;
    if (p.chart == 0 && t < 0) return {{-m.N, t}, {m.N, t}};
    if (p.chart == 0) return {{-m.N, t}, {-t - Rat(1, 2), t}, {-t - d, m.N}};
    if (p.chart == 1) {
        Rat db = d * (1 + 2 * t) / (1 + t);  // nested pocket arms inside (0,4)
        return {{db, m.N}, {db, t}, {4 - db, t}, {4 - db, m.N}};
    }
    return {{4 + t + d, m.N}, {4 + t + Rat(1, 2), t}, {m.N, t}};
}

Polyline gapplane_leaf(const Model& m, int space, const Point& p) {
    if (space == 2) return {{p.coord, -m.N}, {p.coord, m.N}};
    const Rat& t = p.coord;
    Rat d = m.delta;
    if (p.chart == 0 && t < 1) {  // shared nested U over (t, 3-t)
        return {{t + d, m.N}, {t + d, t}, {3 - t - d, t}, {3 - t - d, m.N}};
    }
    Rat lo, hi;
    if (p.chart == 1) {
        lo = 1;
        hi = Rat(6, 5);
    } else if (p.chart == 0) {
        lo = Rat(7, 5);
        hi = Rat(8, 5);
    } else {
        lo = Rat(9, 5);
        hi = 2;
    }
    Rat dx = d / 2;
    if (t > 1) dx = dx * (3 * t + 1) / (2 * t + 1);  // pocket leaves nest inward
    return {{lo + dx, m.N}, {lo + dx, t}, {hi - dx, t}, {hi - dx, m.N}};
}

Polyline Model::leaf(int space, const Point& p) const {
    if (name == "TRIV") return triv_leaf(*this, space, p);
    if (name == "SKEW1") return skew1_leaf(*this, space, p);
    if (name == "BRANCHPLANE") return branchplane_leaf(*this, space, p);
    if (name == "BRANCH3PLANE") return branch3plane_leaf(*this, space, p);
    if (name == "GAPPLANE") return gapplane_leaf(*this, space, p);
    throw DomainError("UnsupportedQuery", "no planar model for fixture '" + name + "'");
}

// ---- exact geometry helpers ------------------------------------------------

int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Rat cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// 1 = proper crossing, 0 = none; throws on degenerate touch so the caller can
// retry with a bigger box.
int segments_cross(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    int d1 = sgn(cross(a, b, c)), d2 = sgn(cross(a, b, d));
    int d3 = sgn(cross(c, d, a)), d4 = sgn(cross(c, d, b));
    if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
        // collinear: overlapping means a degenerate drawing
        if (on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
            on_segment(c, d, b))
            throw DomainError("UnsupportedQuery", "degenerate drawing (collinear overlap)");
        return 0;
    }
    if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) {
        bool touch = (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
                     (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
        if (touch) throw DomainError("UnsupportedQuery", "degenerate drawing (touch)");
        return 0;
    }
    return (d1 != d2 && d3 != d4) ? 1 : 0;
}

int polylines_cross_count(const Polyline& p, const Polyline& q) {
    int n = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        for (size_t j = 0; j + 1 < q.size(); ++j)
            n += segments_cross(p[i], p[i + 1], q[j], q[j + 1]);
    return n;
}

// Cross(ray from p in direction dir) with the polyline, dir axis-aligned.
int ray_cross_count(const Pt& p, int dx, int dy, const Polyline& line, const Rat& N) {
    Pt far{p.x + dx * 4 * N, p.y + dy * 4 * N};
    int n = 0;
    for (size_t i = 0; i + 1 < line.size(); ++i) n += segments_cross(p, far, line[i], line[i + 1]);
    return n;
}

// ---- oracle drivers ---------------------------------------------------------

Rat marks_extent(const std::vector<std::pair<int, Point>>& marks) {
    Rat m = 8;
    for (const auto& [s, p] : marks) {
        Rat a = p.coord < 0 ? -p.coord : p.coord;
        if (a > m) m = a;
    }
    return m;
}

Model make_model(const std::string& name, const std::vector<std::pair<int, Point>>& marks,
                 int round) {
    Model m;
    m.name = name;
    Rat base = marks_extent(marks) + 9;
    for (int i = 0; i < round; ++i) base = base * 2 + 5;
    m.N = base;
    m.delta = Rat(1) / ((base + 3) * denom_lcm(marks));
    return m;
}

// CCW perimeter key: east edge upward, north edge leftward, west downward,
// south rightward.
std::pair<int, Rat> perimeter_key(const Pt& p, const Rat& N) {
    if (p.x == N) return {0, p.y};
    if (p.y == N) return {1, -p.x};
    if (p.x == -N) return {2, -p.y};
    if (p.y == -N) return {3, p.x};
    throw DomainError("UnsupportedQuery", "polyline end not on the truncation boundary");
}

std::vector<OracleEnd> cyclic_once(const Model& m,
                                   const std::vector<std::pair<int, Point>>& marks) {
    struct Entry {
        OracleEnd end;
        std::pair<int, Rat> key;
    };
    std::vector<Entry> entries;
    for (const auto& [space, leaf] : marks) {
        Polyline line = m.leaf(space, leaf);
        entries.push_back({{space, leaf, Sign::Neg}, perimeter_key(line.front(), m.N)});
        entries.push_back({{space, leaf, Sign::Pos}, perimeter_key(line.back(), m.N)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.key.first != b.key.first) return a.key.first < b.key.first;
        return a.key.second < b.key.second;
    });
    for (size_t i = 0; i + 1 < entries.size(); ++i)
        if (entries[i].key == entries[i + 1].key)
            throw DomainError("UnsupportedQuery", "coincident boundary exits");
    std::vector<OracleEnd> out;
    for (const Entry& e : entries) out.push_back(e.end);
    return out;
}

bool cyclic_equal(const std::vector<OracleEnd>& a, const std::vector<OracleEnd>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (size_t shift = 0; shift < a.size(); ++shift) {
        bool ok = true;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[(i + shift) % a.size()] == b[i])) ok = false;
        if (ok) return true;
    }
    return false;
}

// Points strictly on the leaf, away from its endpoints.
Pt sample_on(const Polyline& line) {
    size_t mid = line.size() / 2;
    const Pt& a = line[mid - 1];
    const Pt& b = line[mid];
    return {(a.x * 2 + b.x) / 3, (a.y * 2 + b.y) / 3};
}

bool crossing_once(const Model& m, const Point& x, const Point& y) {
    return polylines_cross_count(m.leaf(1, x), m.leaf(2, y)) == 1;
}

PlaneSide side_once(const Model& m, int space, const Point& of, const Point& rel) {
    Polyline pof = m.leaf(space, of);
    Polyline prel = m.leaf(space, rel);
    Pt p = sample_on(pof);
    if (space == 1) {
        // front of a horizontal-flavoured leaf lies above it
        int down = ray_cross_count(p, 0, -1, prel, m.N);
        return down % 2 == 1 ? PlaneSide::Front : PlaneSide::Back;
    }
    int left = ray_cross_count(p, -1, 0, prel, m.N);
    return left % 2 == 1 ? PlaneSide::Front : PlaneSide::Back;
}

template <typename T, typename F>
T stabilized(const std::string& name, const std::vector<std::pair<int, Point>>& marks, F run,
             bool (*eq)(const T&, const T&)) {
    std::optional<T> prev;
    for (int round = 0; round < 6; ++round) {
        Model m = make_model(name, marks, round);
        T cur;
        try {
            cur = run(m);
        } catch (const DomainError&) {
            prev.reset();
            continue;  // degenerate drawing at this size; enlarge
        }
        if (prev && eq(*prev, cur)) return cur;
        prev = cur;
    }
    throw DomainError("UnsupportedQuery", "oracle did not stabilize for fixture " + name);
}

bool reeb_crossing(const Point& x, const Point& y) {
    // independent reading of the bounded-trellis figure: shared leaves sweep
    // ((X,t-4),(Y,t+4)); branch pockets sweep bounded windows up their branch
    const Rat& t = x.coord;
    const Rat& u = y.coord;
    if (x.chart == 0 && t < 0) {
        if (y.chart == 0) return u < 0 && t - 4 < u && u < t + 4;
        return u >= 0 && u < t + 4;
    }
    if (x.chart == 0) return y.chart == 0 && t - 4 < u && u < t;
    return y.chart == 1 && t < u && u < t + 4;
}

}  // namespace

std::vector<OracleEnd> oracle_cyclic_order(const std::string& name,
                                           const std::vector<std::pair<int, Point>>& marks) {
    if (name == "REEB")
        throw DomainError("UnsupportedQuery", "no planar model for REEB cyclic order");
    auto eq = +[](const std::vector<OracleEnd>& a, const std::vector<OracleEnd>& b) {
        return cyclic_equal(a, b);
    };
    return stabilized<std::vector<OracleEnd>>(
        name, marks, [&](const Model& m) { return cyclic_once(m, marks); }, eq);
}

PlaneSide oracle_side(const std::string& name, int space, const Point& of, const Point& rel) {
    if (name == "REEB") throw DomainError("UnsupportedQuery", "no planar model for REEB sides");
    std::vector<std::pair<int, Point>> marks{{space, of}, {space, rel}};
    auto eq = +[](const PlaneSide& a, const PlaneSide& b) { return a == b; };
    return stabilized<PlaneSide>(
        name, marks, [&](const Model& m) { return side_once(m, space, of, rel); }, eq);
}

bool oracle_crossing(const std::string& name, const Point& x, const Point& y) {
    if (name == "REEB") return reeb_crossing(x, y);
    std::vector<std::pair<int, Point>> marks{{1, x}, {2, y}};
    auto eq = +[](const bool& a, const bool& b) { return a == b; };
    return stabilized<bool>(
        name, marks, [&](const Model& m) { return crossing_once(m, x, y); }, eq);
}

}  // namespace planeorder::catalog
