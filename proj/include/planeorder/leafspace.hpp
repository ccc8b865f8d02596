#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "planeorder/rational.hpp"

namespace planeorder {

enum class GlueSide { Below, Above };
enum class Sign { Neg = -1, Pos = +1 };

inline Sign opposite(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }
inline char sign_char(Sign s) { return s == Sign::Pos ? '+' : '-'; }

struct Chart {
    int id = 0;
    std::string label;
};

// BelowCut(c): parent and child agree on (-inf, c); AboveCut(c): on (c, +inf).
struct Gluing {
    int child = 0;
    int parent = 0;
    GlueSide side = GlueSide::Below;
    Rat cut;
};

// Open/half-open interval of rationals with optional infinite ends.
struct RatInterval {
    bool lo_inf = true;
    bool hi_inf = true;
    Rat lo, hi;
    bool lo_closed = false;
    bool hi_closed = false;

    static RatInterval full() { return RatInterval{}; }
    static RatInterval below(const Rat& c) {  // (-inf, c)
        RatInterval r;
        r.hi_inf = false;
        r.hi = c;
        return r;
    }
    static RatInterval above(const Rat& c) {  // (c, +inf)
        RatInterval r;
        r.lo_inf = false;
        r.lo = c;
        return r;
    }
    static RatInterval open(const Rat& a, const Rat& b) {
        RatInterval r;
        r.lo_inf = r.hi_inf = false;
        r.lo = a;
        r.hi = b;
        return r;
    }
    static RatInterval closed(const Rat& a, const Rat& b) {
        RatInterval r = open(a, b);
        r.lo_closed = r.hi_closed = true;
        return r;
    }
    static RatInterval point(const Rat& a) { return closed(a, a); }

    bool empty() const {
        if (lo_inf || hi_inf) return false;
        if (lo < hi) return false;
        if (lo > hi) return true;
        return !(lo_closed && hi_closed);
    }
    bool contains(const Rat& x) const {
        if (!lo_inf && (x < lo || (x == lo && !lo_closed))) return false;
        if (!hi_inf && (x > hi || (x == hi && !hi_closed))) return false;
        return true;
    }
    // (c - eps, c) subset of *this for some eps > 0
    bool contains_germ_below(const Rat& c) const {
        if (!lo_inf && lo >= c) return false;
        if (!hi_inf && hi < c) return false;
        return true;
    }
    bool contains_germ_above(const Rat& c) const {
        if (!hi_inf && hi <= c) return false;
        if (!lo_inf && lo > c) return false;
        return true;
    }
    bool contains_neg_ray() const { return lo_inf; }
    bool contains_pos_ray() const { return hi_inf; }
    RatInterval intersect(const RatInterval& o) const {
        RatInterval r = *this;
        if (!o.lo_inf) {
            if (r.lo_inf || o.lo > r.lo) {
                r.lo_inf = false;
                r.lo = o.lo;
                r.lo_closed = o.lo_closed;
            } else if (o.lo == r.lo) {
                r.lo_closed = r.lo_closed && o.lo_closed;
            }
        }
        if (!o.hi_inf) {
            if (r.hi_inf || o.hi < r.hi) {
                r.hi_inf = false;
                r.hi = o.hi;
                r.hi_closed = o.hi_closed;
            } else if (o.hi == r.hi) {
                r.hi_closed = r.hi_closed && o.hi_closed;
            }
        }
        return r;
    }
    bool contains_interval(const RatInterval& o) const {
        if (o.empty()) return true;
        if (o.lo_inf && !lo_inf) return false;
        if (o.hi_inf && !hi_inf) return false;
        if (!lo_inf && !o.lo_inf) {
            if (o.lo < lo) return false;
            if (o.lo == lo && o.lo_closed && !lo_closed) return false;
        }
        if (!hi_inf && !o.hi_inf) {
            if (o.hi > hi) return false;
            if (o.hi == hi && o.hi_closed && !hi_closed) return false;
        }
        return true;
    }
    std::string str() const;
};

struct Point {
    int chart = 0;
    Rat coord;
    bool operator==(const Point& o) const { return chart == o.chart && coord == o.coord; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    bool operator<(const Point& o) const {
        if (chart != o.chart) return chart < o.chart;
        return coord < o.coord;
    }
};

// Equivalence class of (chart, sign) rays merged across gluings.
struct End {
    Sign sign = Sign::Pos;
    std::vector<int> charts;  // sorted member charts
    int rep() const { return charts.front(); }
    bool operator==(const End& o) const { return sign == o.sign && charts == o.charts; }
    bool operator<(const End& o) const {
        if (sign != o.sign) return sign == Sign::Pos;
        return charts < o.charts;
    }
};

struct Cataclysm {
    GlueSide side = GlueSide::Below;
    Rat value;
    std::vector<Point> members;  // canonical, sorted by chart id
};

struct PathSegment {
    int chart = 0;
    // Extended coordinates: inf flags mark the corresponding end of the chart line.
    bool from_inf = false, to_inf = false;
    Sign from_inf_sign = Sign::Pos, to_inf_sign = Sign::Pos;
    Rat from, to;
};

struct Cusp {
    Point exit, enter;
    GlueSide side = GlueSide::Below;
};

struct BrokenPath {
    std::vector<PathSegment> segments;
    std::vector<Cusp> cusps;
};

enum class Order { Less, Equal, Greater, Incomparable };

inline Order flip(Order o) {
    if (o == Order::Less) return Order::Greater;
    if (o == Order::Greater) return Order::Less;
    return o;
}

struct ValidationIssue {
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
    void add(const std::string& kind, const std::string& detail) {
        ok = false;
        issues.push_back({kind, detail});
    }
};

class DomainError : public std::runtime_error {
  public:
    DomainError(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

// A simply connected oriented non-Hausdorff 1-manifold presented as a rooted
// tree of real-line charts glued along open rays. Chart 0 is the root.
class OneManifold {
  public:
    std::vector<Chart> charts;
    std::vector<Gluing> gluings;

    ValidationReport validate();
    bool prepared() const { return prepared_; }
    int chart_count() const { return static_cast<int>(charts.size()); }
    const std::string& label(int chart) const { return charts[chart].label; }
    bool has_chart(int id) const { return id >= 0 && id < chart_count(); }

    // Index into gluings for the edge to the parent, or -1 for the root.
    int parent_edge(int chart) const { return parent_edge_[chart]; }
    int depth(int chart) const { return depth_[chart]; }
    RatInterval edge_region(int gluing_index) const;
    // Intersection of glue regions along the tree path (full line when x == y).
    RatInterval shared_region(int x, int y) const;
    // Coordinates owned by the chart (where it is the canonical chart).
    RatInterval owned_region(int chart) const;

    Point canonicalize(Point p) const;
    bool representable(const Point& canonical_p, int chart) const;
    std::vector<int> charts_of(const Point& canonical_p) const;

    Order compare_points(Point p, Point q) const;

    const std::vector<Cataclysm>& cataclysms() const { return cataclysms_; }
    const std::vector<End>& ends() const { return ends_; }
    std::vector<End> positive_ends() const;
    std::vector<End> negative_ends() const;
    const End& end_of_ray(int chart, Sign s) const;
    int end_index(const End& e) const;

    // Charts whose coordinate line carries the one-sided germ at (value, side):
    // the connected class through `chart`.
    std::vector<int> germ_class(int chart, const Rat& value, GlueSide side) const;

    std::string point_str(const Point& p) const;
    std::string end_str(const End& e) const;

    OneManifold mirrored() const;  // negate coordinates, swap Below/Above

  private:
    bool prepared_ = false;
    std::vector<int> parent_edge_;
    std::vector<int> depth_;
    std::vector<Cataclysm> cataclysms_;
    std::vector<End> ends_;
    std::map<std::pair<int, int>, int> ray_to_end_;

    void compute_ends();
    void compute_cataclysms();
};

// A site is a point or an end of the manifold.
struct Site {
    bool is_end = false;
    Point pt;
    End end;

    static Site of(const Point& p) {
        Site s;
        s.pt = p;
        return s;
    }
    static Site of(const End& e) {
        Site s;
        s.is_end = true;
        s.end = e;
        return s;
    }
    bool operator==(const Site& o) const {
        if (is_end != o.is_end) return false;
        return is_end ? end == o.end : pt == o.pt;
    }
};

Order compare_sites(const OneManifold& m, const Site& a, const Site& b);
inline bool site_le(const OneManifold& m, const Site& a, const Site& b) {
    Order o = compare_sites(m, a, b);
    return o == Order::Less || o == Order::Equal;
}
std::string site_str(const OneManifold& m, const Site& s);

// Unique broken path between distinct sites (points or ends).
BrokenPath broken_path(const OneManifold& m, const Site& a, const Site& b);

ValidationReport validate_manifold(OneManifold m);

Point mirror_point(const Point& p);

}  // namespace planeorder
