#include "planeorder/interval_set.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace planeorder {

namespace {

// -1, 0, +1 comparison of lower bounds (closed sorts before open at equal value).
int cmp_lo(const RatInterval& a, const RatInterval& b) {
    if (a.lo_inf && b.lo_inf) return 0;
    if (a.lo_inf) return -1;
    if (b.lo_inf) return 1;
    if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
    if (a.lo_closed == b.lo_closed) return 0;
    return a.lo_closed ? -1 : 1;
}

// Do a and b overlap or touch so that their union is one interval?
bool joinable(const RatInterval& a, const RatInterval& b) {
    // assumes cmp_lo(a,b) <= 0
    if (a.hi_inf) return true;
    if (b.lo_inf) return true;
    if (a.hi > b.lo) return true;
    if (a.hi < b.lo) return false;
    return a.hi_closed || b.lo_closed;
}

}  // namespace

void RatIntervalSet::add(const RatInterval& iv) {
    if (iv.empty()) return;
    pieces_.push_back(iv);
    normalize();
}

void RatIntervalSet::add(const RatIntervalSet& o) {
    for (const RatInterval& iv : o.pieces_) pieces_.push_back(iv);
    normalize();
}

void RatIntervalSet::normalize() {
    std::sort(pieces_.begin(), pieces_.end(),
              [](const RatInterval& a, const RatInterval& b) { return cmp_lo(a, b) < 0; });
    std::vector<RatInterval> out;
    for (const RatInterval& iv : pieces_) {
        if (iv.empty()) continue;
        if (!out.empty() && joinable(out.back(), iv)) {
            RatInterval& last = out.back();
            if (!last.hi_inf) {
                if (iv.hi_inf) {
                    last.hi_inf = true;
                } else if (iv.hi > last.hi) {
                    last.hi = iv.hi;
                    last.hi_closed = iv.hi_closed;
                } else if (iv.hi == last.hi) {
                    last.hi_closed = last.hi_closed || iv.hi_closed;
                }
            }
        } else {
            out.push_back(iv);
        }
    }
    pieces_ = std::move(out);
}

RatIntervalSet RatIntervalSet::intersect(const RatInterval& iv) const {
    RatIntervalSet r;
    for (const RatInterval& p : pieces_) {
        RatInterval q = p.intersect(iv);
        if (!q.empty()) r.pieces_.push_back(q);
    }
    return r;
}

RatIntervalSet RatIntervalSet::intersect(const RatIntervalSet& o) const {
    RatIntervalSet r;
    for (const RatInterval& p : o.pieces_) r.add(intersect(p));
    return r;
}

bool RatIntervalSet::contains(const Rat& x) const {
    for (const RatInterval& p : pieces_)
        if (p.contains(x)) return true;
    return false;
}

bool RatIntervalSet::contains_interval(const RatInterval& iv) const {
    if (iv.empty()) return true;
    for (const RatInterval& p : pieces_)
        if (p.contains_interval(iv)) return true;
    return false;
}

bool RatIntervalSet::contains_set(const RatIntervalSet& o) const {
    for (const RatInterval& p : o.pieces_)
        if (!contains_interval(p)) return false;
    return true;
}

bool RatIntervalSet::contains_germ_below(const Rat& c) const {
    for (const RatInterval& p : pieces_)
        if (p.contains_germ_below(c)) return true;
    return false;
}

bool RatIntervalSet::contains_germ_above(const Rat& c) const {
    for (const RatInterval& p : pieces_)
        if (p.contains_germ_above(c)) return true;
    return false;
}

bool RatIntervalSet::has_interior() const {
    for (const RatInterval& p : pieces_) {
        if (p.lo_inf || p.hi_inf) return true;
        if (p.lo < p.hi) return true;
    }
    return false;
}

RatIntervalSet RatIntervalSet::affine_preimage(const Rat& slope, const Rat& offset) const {
    RatIntervalSet r;
    if (slope == 0) {
        if (contains(offset)) return full();
        return r;
    }
    for (const RatInterval& p : pieces_) {
        RatInterval q;
        auto mapb = [&](bool inf, const Rat& v, bool closed, bool is_lo) {
            if (inf) {
                if (is_lo)
                    q.lo_inf = true;
                else
                    q.hi_inf = true;
                return;
            }
            Rat t = (v - offset) / slope;
            if (is_lo) {
                q.lo_inf = false;
                q.lo = t;
                q.lo_closed = closed;
            } else {
                q.hi_inf = false;
                q.hi = t;
                q.hi_closed = closed;
            }
        };
        q.lo_inf = q.hi_inf = false;
        if (slope > 0) {
            mapb(p.lo_inf, p.lo, p.lo_closed, true);
            mapb(p.hi_inf, p.hi, p.hi_closed, false);
        } else {
            mapb(p.hi_inf, p.hi, p.hi_closed, true);
            mapb(p.lo_inf, p.lo, p.lo_closed, false);
        }
        r.pieces_.push_back(q);
    }
    r.normalize();
    return r;
}

std::string RatIntervalSet::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < pieces_.size(); ++i) os << (i ? " u " : "") << pieces_[i].str();
    if (pieces_.empty()) os << "{}";
    return os.str();
}

// ---------------------------------------------------------------------------

void ManifoldSet::add(int chart, const RatInterval& iv) {
    if (!iv.empty()) parts_[chart].add(iv);
}

void ManifoldSet::add(int chart, const RatIntervalSet& s) {
    if (!s.empty()) parts_[chart].add(s);
}

bool ManifoldSet::empty() const {
    for (const auto& [c, s] : parts_)
        if (!s.empty()) return false;
    return true;
}

RatIntervalSet ManifoldSet::on_chart(const OneManifold& m, int chart) const {
    RatIntervalSet r;
    for (const auto& [c, s] : parts_) {
        if (c == chart)
            r.add(s);
        else
            r.add(s.intersect(m.shared_region(c, chart)));
    }
    return r;
}

bool ManifoldSet::contains(const OneManifold& m, const Point& p) const {
    for (const auto& [c, s] : parts_)
        if (m.representable(m.canonicalize(p), c) && s.contains(p.coord)) return true;
    return false;
}

bool ManifoldSet::contains_set(const OneManifold& m, const ManifoldSet& o) const {
    for (const auto& [c, s] : o.parts_)
        if (!on_chart(m, c).contains_set(s)) return false;
    return true;
}

bool ManifoldSet::connected(const OneManifold& m) const {
    std::vector<std::pair<int, RatInterval>> ps;
    for (const auto& [c, s] : parts_)
        for (const RatInterval& iv : s.pieces()) ps.push_back({c, iv});
    if (ps.size() <= 1) return true;
    std::vector<int> cls(ps.size());
    for (size_t i = 0; i < cls.size(); ++i) cls[i] = static_cast<int>(i);
    auto unite = [&](int a, int b) {
        int ca = cls[a], cb = cls[b];
        for (auto& x : cls)
            if (x == ca) x = cb;
    };
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            RatInterval common = ps[i].second.intersect(ps[j].second);
            if (ps[i].first != ps[j].first)
                common = common.intersect(m.shared_region(ps[i].first, ps[j].first));
            if (!common.empty()) unite(static_cast<int>(i), static_cast<int>(j));
        }
    for (size_t i = 1; i < ps.size(); ++i)
        if (cls[i] != cls[0]) return false;
    return true;
}

bool ManifoldSet::hausdorff(const OneManifold& m) const {
    for (const Cataclysm& k : m.cataclysms())
        for (size_t i = 0; i < k.members.size(); ++i)
            for (size_t j = i + 1; j < k.members.size(); ++j)
                if (contains(m, k.members[i]) && contains(m, k.members[j])) return false;
    return true;
}

bool ManifoldSet::has_interior() const {
    for (const auto& [c, s] : parts_)
        if (s.has_interior()) return true;
    return false;
}

std::vector<Point> ManifoldSet::sample_points(const OneManifold& m) const {
    std::vector<Point> out;
    std::set<Point> seen;
    auto push = [&](int chart, const Rat& x) {
        Point p = m.canonicalize(Point{chart, x});
        if (seen.insert(p).second) out.push_back(p);
    };
    for (const auto& [c, s] : parts_)
        for (const RatInterval& iv : s.pieces()) {
            if (iv.lo_inf && iv.hi_inf) {
                push(c, Rat(0));
            } else if (iv.lo_inf) {
                push(c, iv.hi - 1);
                if (iv.hi_closed) push(c, iv.hi);
            } else if (iv.hi_inf) {
                push(c, iv.lo + 1);
                if (iv.lo_closed) push(c, iv.lo);
            } else if (iv.lo == iv.hi) {
                push(c, iv.lo);
            } else {
                push(c, (iv.lo + iv.hi) / 2);
                if (iv.lo_closed) push(c, iv.lo);
                if (iv.hi_closed) push(c, iv.hi);
            }
        }
    return out;
}

Point ManifoldSet::representative(const OneManifold& m) const {
    std::vector<Point> s = sample_points(m);
    assert(!s.empty());
    return s.front();
}

std::string ManifoldSet::str(const OneManifold& m) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, s] : parts_) {
        if (s.empty()) continue;
        if (!first) os << "; ";
        first = false;
        os << m.label(c) << ": " << s.str();
    }
    if (first) os << "{}";
    return os.str();
}

}  // namespace planeorder
