#include "planeorder/automorphism.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace planeorder {

// ---------------------------------------------------------------------------
// PLMap

void PLMap::normalize() {
    assert(!knots_.empty());
    std::sort(knots_.begin(), knots_.end());
    // drop interior knots that lie on the line through their neighbours
    std::vector<std::pair<Rat, Rat>> out;
    for (size_t i = 0; i < knots_.size(); ++i) {
        while (out.size() >= 2) {
            const auto& a = out[out.size() - 2];
            const auto& b = out.back();
            const auto& c = knots_[i];
            if ((b.second - a.second) * (c.first - a.first) ==
                (c.second - a.second) * (b.first - a.first))
                out.pop_back();
            else
                break;
        }
        out.push_back(knots_[i]);
    }
    // endpoints collinear with the unbounded slopes are redundant too
    while (out.size() >= 2) {
        const auto& a = out[0];
        const auto& b = out[1];
        if ((b.second - a.second) == slo_ * (b.first - a.first))
            out.erase(out.begin());
        else
            break;
    }
    while (out.size() >= 2) {
        const auto& a = out[out.size() - 2];
        const auto& b = out.back();
        if ((b.second - a.second) == shi_ * (b.first - a.first))
            out.pop_back();
        else
            break;
    }
    knots_ = std::move(out);
    if (knots_.size() == 1 && slo_ == shi_) {
        // pure affine map: pin the anchor at x = 0
        Rat y0 = knots_[0].second + slo_ * (Rat(0) - knots_[0].first);
        knots_[0] = {Rat(0), y0};
    }
}

PLMap PLMap::affine(const Rat& slope, const Rat& offset) {
    PLMap f;
    f.slo_ = f.shi_ = slope;
    f.knots_ = {{Rat(0), offset}};
    f.normalize();
    return f;
}

PLMap PLMap::from_knots(std::vector<std::pair<Rat, Rat>> knots, Rat slope_lo, Rat slope_hi) {
    PLMap f;
    if (knots.empty()) return affine(slope_lo, Rat(0));
    f.knots_ = std::move(knots);
    f.slo_ = std::move(slope_lo);
    f.shi_ = std::move(slope_hi);
    std::sort(f.knots_.begin(), f.knots_.end());
    for (size_t i = 0; i + 1 < f.knots_.size(); ++i)
        if (f.knots_[i].first == f.knots_[i + 1].first)
            throw DomainError("InvalidAutomorphism", "duplicate PL breakpoint");
    f.normalize();
    return f;
}

Rat PLMap::operator()(const Rat& x) const {
    if (x <= knots_.front().first)
        return knots_.front().second + slo_ * (x - knots_.front().first);
    if (x >= knots_.back().first) return knots_.back().second + shi_ * (x - knots_.back().first);
    for (size_t i = 0; i + 1 < knots_.size(); ++i)
        if (x <= knots_[i + 1].first) {
            const auto& a = knots_[i];
            const auto& b = knots_[i + 1];
            return a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
        }
    return x;  // unreachable
}

PLMap PLMap::inverse() const {
    PLMap g;
    g.knots_.clear();
    for (const auto& [x, y] : knots_) g.knots_.push_back({y, x});
    g.slo_ = 1 / slo_;
    g.shi_ = 1 / shi_;
    g.normalize();
    return g;
}

PLMap PLMap::compose_after(const PLMap& inner) const {
    std::set<Rat> xs;
    for (const auto& [x, y] : inner.knots_) xs.insert(x);
    PLMap inv = inner.inverse();
    for (const auto& [x, y] : knots_) xs.insert(inv(x));
    PLMap h;
    h.knots_.clear();
    for (const Rat& x : xs) h.knots_.push_back({x, (*this)(inner(x))});
    Rat x0 = *xs.begin(), x1 = *xs.rbegin();
    h.slo_ = (*this)(inner(x0)) - (*this)(inner(x0 - 1));
    h.shi_ = (*this)(inner(x1 + 1)) - (*this)(inner(x1));
    h.normalize();
    return h;
}

bool PLMap::orientation_preserving() const {
    if (slo_ <= 0 || shi_ <= 0) return false;
    for (size_t i = 0; i + 1 < knots_.size(); ++i)
        if (knots_[i + 1].second <= knots_[i].second) return false;
    return true;
}

bool PLMap::is_identity() const { return *this == identity(); }

bool PLMap::operator==(const PLMap& o) const {
    return knots_ == o.knots_ && slo_ == o.slo_ && shi_ == o.shi_;
}

std::vector<PLMap::Segment> PLMap::segments() const {
    std::vector<Segment> out;
    {
        Segment s;
        s.domain = RatInterval::below(knots_.front().first);
        s.domain.hi_closed = true;
        s.slope = slo_;
        s.offset = knots_.front().second - slo_ * knots_.front().first;
        out.push_back(s);
    }
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
        Segment s;
        s.domain = RatInterval::open(knots_[i].first, knots_[i + 1].first);
        s.domain.hi_closed = true;
        s.slope = (knots_[i + 1].second - knots_[i].second) /
                  (knots_[i + 1].first - knots_[i].first);
        s.offset = knots_[i].second - s.slope * knots_[i].first;
        out.push_back(s);
    }
    {
        Segment s;
        s.domain = RatInterval::above(knots_.back().first);
        s.slope = shi_;
        s.offset = knots_.back().second - shi_ * knots_.back().first;
        out.push_back(s);
    }
    return out;
}

RatInterval PLMap::image_of(const RatInterval& iv) const {
    RatInterval r;
    r.lo_inf = iv.lo_inf;
    r.hi_inf = iv.hi_inf;
    if (!iv.lo_inf) {
        r.lo = (*this)(iv.lo);
        r.lo_closed = iv.lo_closed;
    }
    if (!iv.hi_inf) {
        r.hi = (*this)(iv.hi);
        r.hi_closed = iv.hi_closed;
    }
    return r;
}

RatInterval PLMap::preimage_of(const RatInterval& iv) const { return inverse().image_of(iv); }

bool PLMap::equal_on(const PLMap& o, const RatInterval& iv) const {
    if (iv.empty()) return true;
    std::set<Rat> probes;
    auto clamp_in = [&](const Rat& x) {
        if (iv.contains(x)) probes.insert(x);
    };
    for (const auto& [x, y] : knots_) clamp_in(x);
    for (const auto& [x, y] : o.knots_) clamp_in(x);
    if (!iv.lo_inf) probes.insert(iv.lo);
    if (!iv.hi_inf) probes.insert(iv.hi);
    if (probes.empty()) probes.insert(Rat(0));
    Rat lo = *probes.begin(), hi = *probes.rbegin();
    if (iv.lo_inf) probes.insert(lo - 1);
    if (iv.hi_inf) probes.insert(hi + 1);
    // also midpoints so every affine segment pair is sampled twice
    std::vector<Rat> base(probes.begin(), probes.end());
    for (size_t i = 0; i + 1 < base.size(); ++i) probes.insert((base[i] + base[i + 1]) / 2);
    for (const Rat& x : probes)
        if ((*this)(x) != o(x)) return false;
    if (iv.lo_inf && slo_ != o.slo_) return false;
    if (iv.hi_inf && shi_ != o.shi_) return false;
    return true;
}

bool PLMap::identity_on(const RatInterval& iv) const { return equal_on(identity(), iv); }

// ---------------------------------------------------------------------------
// ChartMap / PlaneAutomorphism

ChartMap ChartMap::identity(const OneManifold& m) {
    ChartMap cm;
    for (int c = 0; c < m.chart_count(); ++c) {
        cm.perm[c] = c;
        cm.maps[c] = PLMap::identity();
    }
    return cm;
}

Point PlaneAutomorphism::apply(int space, Point p) const {
    const OneManifold& m = plane->space(space);
    p = m.canonicalize(p);
    const ChartMap& cm = chart_map(space);
    Point q{cm.perm_at(p.chart), cm.map_at(p.chart)(p.coord)};
    return m.canonicalize(q);
}

End PlaneAutomorphism::apply_end(int space, const End& e) const {
    const OneManifold& m = plane->space(space);
    const ChartMap& cm = chart_map(space);
    return m.end_of_ray(cm.perm_at(e.rep()), e.sign);
}

Site PlaneAutomorphism::apply_site(int space, const Site& s) const {
    if (s.is_end) return Site::of(apply_end(space, s.end));
    return Site::of(apply(space, s.pt));
}

bool PlaneAutomorphism::is_identity_on_plane() const {
    for (int space : {1, 2}) {
        const ChartMap& cm = chart_map(space);
        for (const auto& [c, t] : cm.perm)
            if (c != t) return false;
        for (const auto& [c, f] : cm.maps)
            if (!f.is_identity()) return false;
    }
    return true;
}

bool PlaneAutomorphism::is_identity_on_ends() const {
    for (int space : {1, 2})
        for (const End& e : plane->space(space).ends())
            if (!(apply_end(space, e) == e)) return false;
    return true;
}

PlaneAutomorphism identity_automorphism(const Plane& P) {
    PlaneAutomorphism g;
    g.plane = &P;
    g.name = "id";
    g.map1 = ChartMap::identity(P.lambda1);
    g.map2 = ChartMap::identity(P.lambda2);
    return g;
}

PlaneAutomorphism compose(const PlaneAutomorphism& g, const PlaneAutomorphism& h) {
    if (g.plane != h.plane)
        throw DomainError("PlaneMismatch", "composing automorphisms of different planes");
    PlaneAutomorphism r;
    r.plane = g.plane;
    r.name = g.name + "*" + h.name;
    for (int space : {1, 2}) {
        const ChartMap& cg = g.chart_map(space);
        const ChartMap& ch = h.chart_map(space);
        ChartMap& cr = space == 1 ? r.map1 : r.map2;
        for (const auto& [c, t] : ch.perm) {
            cr.perm[c] = cg.perm_at(t);
            cr.maps[c] = cg.map_at(t).compose_after(ch.map_at(c));
        }
    }
    return r;
}

PlaneAutomorphism inverse(const PlaneAutomorphism& g) {
    PlaneAutomorphism r;
    r.plane = g.plane;
    r.name = g.name + "^-1";
    for (int space : {1, 2}) {
        const ChartMap& cg = g.chart_map(space);
        ChartMap& cr = space == 1 ? r.map1 : r.map2;
        for (const auto& [c, t] : cg.perm) {
            cr.perm[t] = c;
            cr.maps[t] = cg.map_at(c).inverse();
        }
    }
    return r;
}

bool same_map(const PlaneAutomorphism& g, const PlaneAutomorphism& h) {
    for (int space : {1, 2}) {
        const ChartMap& a = g.chart_map(space);
        const ChartMap& b = h.chart_map(space);
        if (a.perm != b.perm) return false;
        for (const auto& [c, f] : a.maps)
            if (f != b.map_at(c)) return false;
    }
    return true;
}

std::vector<PlaneAutomorphism> words_up_to(const Plane& P,
                                           const std::vector<PlaneAutomorphism>& gens,
                                           int max_len) {
    std::vector<PlaneAutomorphism> letters;
    for (const PlaneAutomorphism& g : gens) {
        letters.push_back(g);
        letters.push_back(inverse(g));
    }
    std::vector<PlaneAutomorphism> out{identity_automorphism(P)};
    std::vector<PlaneAutomorphism> frontier = out;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<PlaneAutomorphism> next;
        for (const PlaneAutomorphism& w : frontier)
            for (const PlaneAutomorphism& l : letters) {
                PlaneAutomorphism c = compose(l, w);
                bool known = false;
                for (const PlaneAutomorphism& o : out)
                    if (same_map(c, o)) known = true;
                for (const PlaneAutomorphism& o : next)
                    if (same_map(c, o)) known = true;
                if (!known) next.push_back(c);
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Track of t -> target_track(f(t)) where f maps this chart onto the target.
Track pull_through(const Track& target, const PLMap& f) {
    Track out;
    PLMap inv = f.inverse();
    for (const TrackPiece& p : target.pieces) {
        RatInterval pre = inv.image_of(p.domain);
        for (const PLMap::Segment& s : f.segments()) {
            RatInterval d = pre.intersect(s.domain);
            if (d.empty()) continue;
            TrackPiece q;
            q.domain = d;
            if (p.value.is_end) {
                q.value = p.value;
            } else {
                // value(t) = slope*(s.slope*t + s.offset) + offset
                q.value = TrackValue::affine_of(p.value.affine.chart,
                                                p.value.affine.slope * s.slope,
                                                p.value.affine.slope * s.offset +
                                                    p.value.affine.offset);
            }
            out.pieces.push_back(q);
        }
    }
    return out;
}

// Track of t -> cm(track(t)) for a chart map of the target space.
Track push_values(const OneManifold& m2, const Track& track, const ChartMap& cm) {
    Track out;
    for (const TrackPiece& p : track.pieces) {
        if (p.value.is_end) {
            TrackPiece q;
            q.domain = p.domain;
            q.value = TrackValue::end(cm.perm_at(p.value.end_chart), p.value.end_sign);
            out.pieces.push_back(q);
            continue;
        }
        const AffineValue& a = p.value.affine;
        const PLMap& f = cm.map_at(a.chart);
        int target = cm.perm_at(a.chart);
        for (const PLMap::Segment& s : f.segments()) {
            // t-range where a(t) lies in this segment of f
            RatIntervalSet ts = RatIntervalSet(s.domain).affine_preimage(a.slope, a.offset);
            RatIntervalSet clipped = ts.intersect(p.domain);
            for (const RatInterval& d0 : clipped.pieces()) {
                TrackPiece q;
                q.domain = d0;
                q.value = TrackValue::affine_of(target, s.slope * a.slope,
                                                s.slope * a.offset + s.offset);
                out.pieces.push_back(q);
            }
        }
    }
    return out;
}

bool tracks_equal(const OneManifold& m2, const Track& a, const Track& b) {
    for (const RefinedPiece& rp : refine_tracks(a, b))
        if (!values_equal_on(m2, rp.lo, rp.hi, rp.domain)) return false;
    return true;
}

}  // namespace

ValidationReport validate_automorphism(const Plane& P, const PlaneAutomorphism& g) {
    ValidationReport rep;
    if (g.plane != &P) {
        rep.add("PlaneMismatch", "automorphism attached to a different plane");
        return rep;
    }
    for (int space : {1, 2}) {
        const OneManifold& m = P.space(space);
        const ChartMap& cm = g.chart_map(space);
        std::set<int> targets;
        for (int c = 0; c < m.chart_count(); ++c) {
            auto it = cm.perm.find(c);
            if (it == cm.perm.end() || !m.has_chart(it->second)) {
                rep.add("InvalidAutomorphism",
                        "chart permutation missing chart " + m.label(c));
                continue;
            }
            targets.insert(it->second);
            auto mt = cm.maps.find(c);
            if (mt == cm.maps.end()) {
                rep.add("InvalidAutomorphism", "PL map missing for chart " + m.label(c));
                continue;
            }
            if (!mt->second.orientation_preserving())
                rep.add("OrientationReversed",
                        "map of chart " + m.label(c) + " has a non-positive slope");
        }
        if (static_cast<int>(targets.size()) != m.chart_count())
            rep.add("InvalidAutomorphism", "chart permutation is not a bijection");
    }
    if (!rep.ok) return rep;

    // gluing respect
    for (int space : {1, 2}) {
        const OneManifold& m = P.space(space);
        const ChartMap& cm = g.chart_map(space);
        for (size_t gi = 0; gi < m.gluings.size(); ++gi) {
            const Gluing& e = m.gluings[gi];
            int ic = cm.perm_at(e.child), ip = cm.perm_at(e.parent);
            Rat cut_img_c = cm.map_at(e.child)(e.cut);
            Rat cut_img_p = cm.map_at(e.parent)(e.cut);
            bool found = false;
            for (const Gluing& f : m.gluings) {
                bool same_edge = (f.child == ic && f.parent == ip) ||
                                 (f.child == ip && f.parent == ic);
                if (same_edge && f.side == e.side && f.cut == cut_img_c && f.cut == cut_img_p)
                    found = true;
            }
            if (!found) {
                rep.add("GluingBroken", "image of gluing " + m.label(e.child) + "->" +
                                            m.label(e.parent) + " is not a gluing");
                continue;
            }
            RatInterval region = m.edge_region(static_cast<int>(gi));
            if (!cm.map_at(e.child).equal_on(cm.map_at(e.parent), region))
                rep.add("GluingBroken", "maps of charts " + m.label(e.child) + " and " +
                                            m.label(e.parent) +
                                            " disagree on their glue region");
        }
    }
    if (!rep.ok) return rep;

    // crossing equivariance: I(g(x)) = map2(I(x)) piecewise
    for (int x = 0; x < P.lambda1.chart_count(); ++x) {
        int tx = g.map1.perm_at(x);
        const PLMap& fx = g.map1.map_at(x);
        for (bool is_lo : {true, false}) {
            const Track& lhs_src =
                is_lo ? P.crossing.lo.at(tx) : P.crossing.hi.at(tx);
            const Track& rhs_src = is_lo ? P.crossing.lo.at(x) : P.crossing.hi.at(x);
            Track lhs = pull_through(lhs_src, fx);
            Track rhs = push_values(P.lambda2, rhs_src, g.map2);
            if (!tracks_equal(P.lambda2, lhs, rhs)) {
                rep.add("CrossingNotEquivariant",
                        std::string(is_lo ? "lo" : "hi") +
                            " endpoint track is not equivariant on chart " + P.lambda1.label(x));
            }
        }
    }

    // cataclysm orders must be preserved
    for (int space : {1, 2}) {
        const OneManifold& m = P.space(space);
        for (const OrderedCataclysm& oc : P.ordered_cataclysms(space)) {
            std::vector<Point> image;
            for (const Point& p : oc.sorted) image.push_back(g.apply(space, p));
            std::set<Point> img_set(image.begin(), image.end());
            const OrderedCataclysm* target = nullptr;
            for (const OrderedCataclysm& oc2 : P.ordered_cataclysms(space)) {
                std::set<Point> s2(oc2.sorted.begin(), oc2.sorted.end());
                if (s2 == img_set) target = &oc2;
            }
            if (!target) {
                rep.add("CataclysmOrderInverted",
                        "image of a cataclysm at value " + rat_str(oc.cataclysm.value) +
                            " is not a cataclysm");
                continue;
            }
            for (size_t i = 0; i + 1 < image.size(); ++i)
                if (target->rank(image[i]) > target->rank(image[i + 1])) {
                    rep.add("CataclysmOrderInverted",
                            "order of cataclysm at value " + rat_str(oc.cataclysm.value) +
                                " in " + (space == 1 ? "lambda1" : "lambda2") + " is inverted");
                    break;
                }
        }
    }
    return rep;
}

}  // namespace planeorder
