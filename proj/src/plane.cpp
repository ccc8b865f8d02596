#include "planeorder/plane.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace planeorder {

namespace {

RatInterval shared_ext(const OneManifold& m, int a, int b) {
    return a == b ? RatInterval::full() : m.shared_region(a, b);
}

RatInterval halfline(const Rat& v, Rel rel) {
    RatInterval r;
    switch (rel) {
        case Rel::Lt:
            r = RatInterval::below(v);
            break;
        case Rel::Le:
            r = RatInterval::below(v);
            r.hi_closed = true;
            break;
        case Rel::Gt:
            r = RatInterval::above(v);
            break;
        case Rel::Ge:
            r = RatInterval::above(v);
            r.lo_closed = true;
            break;
    }
    return r;
}

Rel flip_rel(Rel r) {
    switch (r) {
        case Rel::Lt: return Rel::Gt;
        case Rel::Le: return Rel::Ge;
        case Rel::Gt: return Rel::Lt;
        case Rel::Ge: return Rel::Le;
    }
    return Rel::Lt;
}

// Image of an interval under t -> slope*t + offset.
RatInterval affine_image(const AffineValue& a, const RatInterval& d) {
    if (a.slope == 0) return RatInterval::point(a.offset);
    RatInterval r;
    r.lo_inf = r.hi_inf = false;
    auto setb = [&](bool& inf, Rat& v, bool& closed, bool sinf, const Rat& sv, bool sclosed) {
        inf = sinf;
        if (!sinf) {
            v = a.at(sv);
            closed = sclosed;
        }
    };
    if (a.slope > 0) {
        setb(r.lo_inf, r.lo, r.lo_closed, d.lo_inf, d.lo, d.lo_closed);
        setb(r.hi_inf, r.hi, r.hi_closed, d.hi_inf, d.hi, d.hi_closed);
    } else {
        setb(r.lo_inf, r.lo, r.lo_closed, d.hi_inf, d.hi, d.hi_closed);
        setb(r.hi_inf, r.hi, r.hi_closed, d.lo_inf, d.lo, d.lo_closed);
    }
    return r;
}

// {t : va(t) < vb(t)} for affine values into possibly different charts.
RatIntervalSet tset_affine_less(const OneManifold& m2, const AffineValue& va,
                                const AffineValue& vb) {
    RatIntervalSet out;
    RatIntervalSet coord_less;
    Rat ds = va.slope - vb.slope;
    if (ds == 0) {
        if (va.offset < vb.offset) coord_less = RatIntervalSet::full();
    } else {
        Rat t0 = (vb.offset - va.offset) / ds;
        coord_less.add(ds > 0 ? RatInterval::below(t0) : RatInterval::above(t0));
    }
    for (int z = 0; z < m2.chart_count(); ++z) {
        RatIntervalSet sa =
            RatIntervalSet(shared_ext(m2, va.chart, z)).affine_preimage(va.slope, va.offset);
        RatIntervalSet sb =
            RatIntervalSet(shared_ext(m2, vb.chart, z)).affine_preimage(vb.slope, vb.offset);
        out.add(sa.intersect(sb).intersect(coord_less));
    }
    return out;
}

}  // namespace

RatIntervalSet coords_rel_site(const OneManifold& m, int chart, const Site& site, Rel rel) {
    RatIntervalSet out;
    if (site.is_end) {
        bool want = (rel == Rel::Lt || rel == Rel::Le) ? site.end.sign == Sign::Pos
                                                       : site.end.sign == Sign::Neg;
        if (!want) return out;
        for (int w : site.end.charts) out.add(shared_ext(m, chart, w));
        return out;
    }
    Point p = m.canonicalize(site.pt);
    for (int w = 0; w < m.chart_count(); ++w) {
        if (!m.representable(p, w)) continue;
        out.add(RatIntervalSet(shared_ext(m, chart, w)).intersect(halfline(p.coord, rel)));
    }
    return out;
}

ManifoldSet set_between(const OneManifold& m, const std::optional<Site>& lo,
                        const std::optional<Site>& hi, Rel rlo, Rel rhi) {
    ManifoldSet out;
    for (int z = 0; z < m.chart_count(); ++z) {
        RatIntervalSet s = RatIntervalSet::full();
        if (lo) s = s.intersect(coords_rel_site(m, z, *lo, flip_rel(rlo)));
        if (hi) s = s.intersect(coords_rel_site(m, z, *hi, rhi));
        out.add(z, s);
    }
    return out;
}

Site track_value_site(const OneManifold& m2, const TrackValue& v, const Rat& t) {
    if (v.is_end) return Site::of(m2.end_of_ray(v.end_chart, v.end_sign));
    return Site::of(m2.canonicalize(Point{v.affine.chart, v.affine.at(t)}));
}

std::vector<RefinedPiece> refine_tracks(const Track& lo, const Track& hi) {
    std::vector<RefinedPiece> out;
    for (const TrackPiece& a : lo.pieces)
        for (const TrackPiece& b : hi.pieces) {
            RatInterval d = a.domain.intersect(b.domain);
            if (!d.empty()) out.push_back({d, a.value, b.value});
        }
    std::sort(out.begin(), out.end(), [](const RefinedPiece& x, const RefinedPiece& y) {
        if (x.domain.lo_inf != y.domain.lo_inf) return x.domain.lo_inf;
        if (x.domain.lo_inf) return false;
        if (x.domain.lo != y.domain.lo) return x.domain.lo < y.domain.lo;
        return x.domain.lo_closed && !y.domain.lo_closed;
    });
    return out;
}

RatIntervalSet tset_value_less(const OneManifold& m2, const TrackValue& a, const TrackValue& b,
                               const RatInterval& domain) {
    RatIntervalSet out;
    if (a.is_end && b.is_end) {
        Order o = compare_sites(m2, Site::of(m2.end_of_ray(a.end_chart, a.end_sign)),
                                Site::of(m2.end_of_ray(b.end_chart, b.end_sign)));
        if (o == Order::Less) out.add(domain);
        return out;
    }
    if (a.is_end) {
        Site ea = Site::of(m2.end_of_ray(a.end_chart, a.end_sign));
        out = coords_rel_site(m2, b.affine.chart, ea, Rel::Gt)
                  .affine_preimage(b.affine.slope, b.affine.offset);
    } else if (b.is_end) {
        Site eb = Site::of(m2.end_of_ray(b.end_chart, b.end_sign));
        out = coords_rel_site(m2, a.affine.chart, eb, Rel::Lt)
                  .affine_preimage(a.affine.slope, a.affine.offset);
    } else {
        out = tset_affine_less(m2, a.affine, b.affine);
    }
    return out.intersect(domain);
}

bool values_equal_on(const OneManifold& m2, const TrackValue& a, const TrackValue& b,
                     const RatInterval& domain) {
    if (domain.empty()) return true;
    if (a.is_end != b.is_end) return false;
    if (a.is_end)
        return m2.end_of_ray(a.end_chart, a.end_sign) == m2.end_of_ray(b.end_chart, b.end_sign);
    if (a.affine.slope != b.affine.slope || a.affine.offset != b.affine.offset) return false;
    if (a.affine.chart == b.affine.chart) return true;
    RatInterval img = affine_image(a.affine, domain);
    return shared_ext(m2, a.affine.chart, b.affine.chart).contains_interval(img);
}

// ---------------------------------------------------------------------------
// Chain endpoints

namespace {

ChainEndpoint chain_bound(const OneManifold& m, const ManifoldSet& s, bool upper) {
    struct Cand {
        int chart = 0;
        bool inf = false;
        Rat value;
        bool attained = false;
    };
    std::vector<Cand> cands;
    std::map<int, RatIntervalSet> views;
    for (int z = 0; z < m.chart_count(); ++z) views[z] = s.on_chart(m, z);
    for (int z = 0; z < m.chart_count(); ++z) {
        const RatIntervalSet& v = views[z];
        if (v.empty()) continue;
        const RatInterval& iv = upper ? v.pieces().back() : v.pieces().front();
        Cand c;
        c.chart = z;
        if (upper ? iv.hi_inf : iv.lo_inf) {
            c.inf = true;
        } else {
            c.value = upper ? iv.hi : iv.lo;
            c.attained = upper ? iv.hi_closed : iv.lo_closed;
        }
        cands.push_back(c);
    }
    // dismiss bounds the chain passes through via a non-separated partner
    std::vector<Cand> keep;
    for (const Cand& c : cands) {
        if (c.inf || c.attained) {
            keep.push_back(c);
            continue;
        }
        bool dismissed = false;
        for (int z2 = 0; z2 < m.chart_count() && !dismissed; ++z2) {
            if (z2 == c.chart || !views[z2].contains(c.value)) continue;
            RatInterval sh = m.shared_region(c.chart, z2);
            if (sh.contains(c.value)) continue;  // same point, same view
            bool germ = upper ? sh.contains_germ_below(c.value) : sh.contains_germ_above(c.value);
            if (germ) dismissed = true;
        }
        if (!dismissed) keep.push_back(c);
    }
    auto site_of = [&](const Cand& c) {
        if (c.inf) return Site::of(m.end_of_ray(c.chart, upper ? Sign::Pos : Sign::Neg));
        return Site::of(m.canonicalize(Point{c.chart, c.value}));
    };
    assert(!keep.empty());
    Cand best = keep[0];
    for (const Cand& c : keep) {
        Order o = compare_sites(m, site_of(c), site_of(best));
        if ((upper && o == Order::Greater) || (!upper && o == Order::Less)) best = c;
    }
    ChainEndpoint out;
    out.site = site_of(best);
    out.attained = best.attained;
    if (!best.inf && !best.attained) {
        std::set<Point> ls;
        for (int x :
             m.germ_class(best.chart, best.value, upper ? GlueSide::Below : GlueSide::Above))
            ls.insert(m.canonicalize(Point{x, best.value}));
        out.limit_sites.assign(ls.begin(), ls.end());
    }
    return out;
}

}  // namespace

ChainEndpoint chain_sup(const OneManifold& m, const ManifoldSet& s) {
    return chain_bound(m, s, true);
}
ChainEndpoint chain_inf(const OneManifold& m, const ManifoldSet& s) {
    return chain_bound(m, s, false);
}

// ---------------------------------------------------------------------------
// Plane queries

int OrderedCataclysm::rank(const Point& p) const {
    for (size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] == p) return static_cast<int>(i);
    return -1;
}

const Track& Plane::lo_track(int chart) const { return crossing.lo.at(chart); }
const Track& Plane::hi_track(int chart) const { return crossing.hi.at(chart); }

Site Plane::lo_site(Point x) const {
    x = lambda1.canonicalize(x);
    for (const TrackPiece& p : lo_track(x.chart).pieces)
        if (p.domain.contains(x.coord)) return track_value_site(lambda2, p.value, x.coord);
    throw DomainError("EmptyCrossing", "no lo track piece covers " + lambda1.point_str(x));
}

Site Plane::hi_site(Point x) const {
    x = lambda1.canonicalize(x);
    for (const TrackPiece& p : hi_track(x.chart).pieces)
        if (p.domain.contains(x.coord)) return track_value_site(lambda2, p.value, x.coord);
    throw DomainError("EmptyCrossing", "no hi track piece covers " + lambda1.point_str(x));
}

ManifoldSet Plane::crossing_set(Point x) const {
    x = lambda1.canonicalize(x);
    return set_between(lambda2, lo_site(x), hi_site(x));
}

EmbeddedInterval Plane::crossing_interval(Point x) const {
    x = lambda1.canonicalize(x);
    EmbeddedInterval out;
    out.lo = lo_site(x);
    out.hi = hi_site(x);
    out.set = set_between(lambda2, out.lo, out.hi);
    for (const auto& [c, s] : out.set.parts())
        if (!s.empty()) out.charts.push_back(c);
    return out;
}

bool Plane::crosses(const Point& x, const Point& y) const {
    Point cx = lambda1.canonicalize(x);
    Site sy = Site::of(lambda2.canonicalize(y));
    return compare_sites(lambda2, lo_site(cx), sy) == Order::Less &&
           compare_sites(lambda2, sy, hi_site(cx)) == Order::Less;
}

ManifoldSet Plane::co_crossing_set(Point y) const {
    y = lambda2.canonicalize(y);
    Site sy = Site::of(y);
    ManifoldSet out;
    for (int x = 0; x < lambda1.chart_count(); ++x) {
        for (const RefinedPiece& rp : refine_tracks(lo_track(x), hi_track(x))) {
            RatIntervalSet ok(rp.domain);
            if (rp.lo.is_end) {
                if (compare_sites(lambda2,
                                  Site::of(lambda2.end_of_ray(rp.lo.end_chart, rp.lo.end_sign)),
                                  sy) != Order::Less)
                    continue;
            } else {
                ok = ok.intersect(coords_rel_site(lambda2, rp.lo.affine.chart, sy, Rel::Lt)
                                      .affine_preimage(rp.lo.affine.slope, rp.lo.affine.offset));
            }
            if (rp.hi.is_end) {
                if (compare_sites(lambda2, sy,
                                  Site::of(lambda2.end_of_ray(rp.hi.end_chart,
                                                              rp.hi.end_sign))) != Order::Less)
                    continue;
            } else {
                ok = ok.intersect(coords_rel_site(lambda2, rp.hi.affine.chart, sy, Rel::Gt)
                                      .affine_preimage(rp.hi.affine.slope, rp.hi.affine.offset));
            }
            out.add(x, ok);
        }
    }
    return out;
}

EmbeddedInterval Plane::co_crossing_interval(Point y) const {
    ManifoldSet J = co_crossing_set(y);
    if (J.empty()) throw DomainError("EmptyCoCrossing", "no leaf crosses " + lambda2.point_str(y));
    EmbeddedInterval out;
    out.set = J;
    out.lo = chain_inf(lambda1, J).site;
    out.hi = chain_sup(lambda1, J).site;
    for (const auto& [c, s] : J.parts())
        if (!s.empty()) out.charts.push_back(c);
    return out;
}

ManifoldSet Plane::member_cross_set(int space, const Point& m) const {
    return space == 1 ? crossing_set(m) : co_crossing_set(m);
}

PlaneSide Plane::side_via_transversal(Point s1, Point s2, Point t) const {
    s1 = lambda2.canonicalize(s1);
    s2 = lambda2.canonicalize(s2);
    if (!crosses(t, s1) || !crosses(t, s2))
        throw DomainError("NotOnTransversal", lambda2.point_str(s1) + " and " +
                                                  lambda2.point_str(s2) + " must both cross " +
                                                  lambda1.point_str(t));
    Order o = lambda2.compare_points(s1, s2);
    if (o == Order::Equal) throw DomainError("NotOnTransversal", "s1 and s2 must be distinct");
    assert(o != Order::Incomparable);
    return o == Order::Less ? PlaneSide::Back : PlaneSide::Front;
}

// ---------------------------------------------------------------------------
// Cataclysm orders

namespace {

bool sets_overlap(const OneManifold& m, const ManifoldSet& a, const ManifoldSet& b) {
    for (int z = 0; z < m.chart_count(); ++z)
        if (!a.on_chart(m, z).intersect(b.on_chart(m, z)).empty()) return true;
    return false;
}

ManifoldSet sets_intersect_any_chart(const OneManifold& m, const ManifoldSet& a,
                                     const ManifoldSet& b) {
    ManifoldSet out;
    for (int z = 0; z < m.chart_count(); ++z) {
        RatIntervalSet s = a.on_chart(m, z).intersect(b.on_chart(m, z));
        if (!s.empty()) {
            out.add(z, s);
            break;
        }
    }
    return out;
}

}  // namespace

Rat Plane::default_witness_coord(int space, const Cataclysm& k) const {
    const OneManifold& ms = space == 1 ? lambda1 : lambda2;
    const OneManifold& other = space == 1 ? lambda2 : lambda1;
    int wchart = ms.germ_class(k.members.front().chart, k.value, k.side).front();
    bool below = k.side == GlueSide::Below;
    std::optional<Rat> nearest;
    auto it = criticals(space).find(wchart);
    if (it != criticals(space).end())
        for (const Rat& c : it->second) {
            if (below && c < k.value && (!nearest || c > *nearest)) nearest = c;
            if (!below && c > k.value && (!nearest || c < *nearest)) nearest = c;
        }
    Rat start = nearest ? *nearest : (below ? Rat(k.value - 1) : Rat(k.value + 1));
    std::vector<ManifoldSet> msets;
    for (const Point& m : k.members) msets.push_back(member_cross_set(space, m));
    Rat t = (start + k.value) / 2;
    for (int iter = 0; iter < 64; ++iter) {
        Point w = ms.canonicalize(Point{wchart, t});
        ManifoldSet wset = member_cross_set(space, w);
        bool ok = true;
        for (const ManifoldSet& s : msets)
            if (!sets_overlap(other, s, wset)) ok = false;
        if (ok) return t;
        t = (t + k.value) / 2;
    }
    throw DomainError("NoCommonWitness", "no witness for the cataclysm at value " +
                                             rat_str(k.value) + " (branch continuity violated)");
}

RatInterval Plane::witness_window(int space, const Cataclysm& k) const {
    Rat t = default_witness_coord(space, k);
    return k.side == GlueSide::Below ? RatInterval::open(t, k.value)
                                     : RatInterval::open(k.value, t);
}

std::vector<Point> Plane::cataclysm_order_at(int space, const Cataclysm& k,
                                             const Rat& witness_coord) const {
    const OneManifold& ms = space == 1 ? lambda1 : lambda2;
    const OneManifold& other = space == 1 ? lambda2 : lambda1;
    if ((k.side == GlueSide::Below && witness_coord >= k.value) ||
        (k.side == GlueSide::Above && witness_coord <= k.value))
        throw DomainError("NoCommonWitness", "witness not on the approach side");
    int wchart = ms.germ_class(k.members.front().chart, k.value, k.side).front();
    Point w = ms.canonicalize(Point{wchart, witness_coord});
    ManifoldSet wset = member_cross_set(space, w);

    std::vector<ManifoldSet> msets;
    for (const Point& m : k.members) msets.push_back(member_cross_set(space, m));
    for (size_t i = 0; i < msets.size(); ++i)
        for (size_t j = i + 1; j < msets.size(); ++j)
            if (sets_overlap(other, msets[i], msets[j]))
                throw DomainError("IntransitiveOrder",
                                  "crossing intervals of non-separated leaves " +
                                      ms.point_str(k.members[i]) + " and " +
                                      ms.point_str(k.members[j]) + " overlap");

    std::vector<Point> samples;
    for (size_t i = 0; i < msets.size(); ++i) {
        ManifoldSet o = sets_intersect_any_chart(other, msets[i], wset);
        if (o.empty())
            throw DomainError("NoCommonWitness",
                              "witness misses member " + ms.point_str(k.members[i]));
        samples.push_back(o.representative(other));
    }
    std::vector<size_t> idx(k.members.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
            Order o = other.compare_points(samples[idx[i]], samples[idx[j]]);
            if (o == Order::Incomparable || o == Order::Equal)
                throw DomainError("IntransitiveOrder", "witness samples are not totally ordered");
            if (o == Order::Greater) std::swap(idx[i], idx[j]);
        }
    std::vector<Point> sorted;
    for (size_t i : idx) sorted.push_back(k.members[i]);
    return sorted;
}

std::vector<Point> Plane::cataclysm_order(int space, const Cataclysm& k) const {
    return cataclysm_order_at(space, k, default_witness_coord(space, k));
}

const std::vector<OrderedCataclysm>& Plane::ordered_cataclysms(int space) const {
    return space == 1 ? ordered1_ : ordered2_;
}

const OrderedCataclysm& Plane::ordered_cataclysm_of(int space, const Point& member) const {
    const OneManifold& ms = space == 1 ? lambda1 : lambda2;
    Point p = ms.canonicalize(member);
    for (const OrderedCataclysm& oc : ordered_cataclysms(space))
        if (oc.rank(p) >= 0) return oc;
    throw DomainError("UnknownChart", "point is not a cataclysm member: " + ms.point_str(p));
}

void Plane::compute_orders() {
    ordered1_.clear();
    ordered2_.clear();
    for (int space : {1, 2}) {
        const OneManifold& ms = space == 1 ? lambda1 : lambda2;
        for (const Cataclysm& k : ms.cataclysms()) {
            OrderedCataclysm oc;
            oc.space = space;
            oc.cataclysm = k;
            oc.sorted = cataclysm_order(space, k);
            (space == 1 ? ordered1_ : ordered2_).push_back(std::move(oc));
        }
    }
}

// ---------------------------------------------------------------------------
// Product witnesses

ManifoldSet Plane::product_witnesses(int space, const End& e) const {
    if (space == 2) {
        ManifoldSet out;
        const auto& tracks = e.sign == Sign::Pos ? crossing.hi : crossing.lo;
        for (const auto& [x, tr] : tracks)
            for (const TrackPiece& p : tr.pieces)
                if (p.value.is_end && lambda2.end_of_ray(p.value.end_chart, p.value.end_sign) == e)
                    out.add(x, p.domain);
        return out;
    }
    int rep = e.rep();
    bool pos = e.sign == Sign::Pos;
    auto final_piece = [&](const Track& tr) -> const TrackPiece& {
        for (const TrackPiece& p : tr.pieces)
            if (pos ? p.domain.hi_inf : p.domain.lo_inf) return p;
        throw DomainError("EmptyCrossing", "track does not tile the line");
    };
    const TrackPiece& lp = final_piece(lo_track(rep));
    const TrackPiece& hp = final_piece(hi_track(rep));

    std::optional<Site> L, U;
    bool dead = false;
    if (lp.value.is_end) {
        L = Site::of(lambda2.end_of_ray(lp.value.end_chart, lp.value.end_sign));
    } else {
        const AffineValue& a = lp.value.affine;
        Rat drift = pos ? a.slope : -a.slope;
        if (drift > 0)
            dead = true;
        else if (drift < 0)
            L = Site::of(lambda2.end_of_ray(a.chart, Sign::Neg));
        else
            L = Site::of(lambda2.canonicalize(Point{a.chart, a.offset}));
    }
    if (hp.value.is_end) {
        U = Site::of(lambda2.end_of_ray(hp.value.end_chart, hp.value.end_sign));
    } else {
        const AffineValue& a = hp.value.affine;
        Rat drift = pos ? a.slope : -a.slope;
        if (drift < 0)
            dead = true;
        else if (drift > 0)
            U = Site::of(lambda2.end_of_ray(a.chart, Sign::Pos));
        else
            U = Site::of(lambda2.canonicalize(Point{a.chart, a.offset}));
    }
    if (dead) return ManifoldSet{};
    return set_between(lambda2, L, U);
}

// ---------------------------------------------------------------------------
// Validation

void Plane::check_structure(ValidationReport& rep) const {
    for (int x = 0; x < lambda1.chart_count(); ++x) {
        for (bool is_lo : {true, false}) {
            auto& side = is_lo ? crossing.lo : crossing.hi;
            auto it = side.find(x);
            if (it == side.end()) {
                rep.add("EmptyCrossing", std::string(is_lo ? "lo" : "hi") +
                                             " track missing for chart " + lambda1.label(x));
                continue;
            }
            const Track& tr = it->second;
            if (tr.pieces.empty()) {
                rep.add("EmptyCrossing", "empty track on chart " + lambda1.label(x));
                continue;
            }
            std::vector<TrackPiece> ps = tr.pieces;
            std::sort(ps.begin(), ps.end(), [](const TrackPiece& a, const TrackPiece& b) {
                if (a.domain.lo_inf != b.domain.lo_inf) return a.domain.lo_inf;
                if (a.domain.lo_inf) return false;
                if (a.domain.lo != b.domain.lo) return a.domain.lo < b.domain.lo;
                return a.domain.lo_closed && !b.domain.lo_closed;
            });
            if (!ps.front().domain.lo_inf || !ps.back().domain.hi_inf)
                rep.add("EmptyCrossing",
                        "track pieces do not cover the line on chart " + lambda1.label(x));
            for (size_t i = 0; i + 1 < ps.size(); ++i) {
                const RatInterval& a = ps[i].domain;
                const RatInterval& b = ps[i + 1].domain;
                bool ok = !a.hi_inf && !b.lo_inf && a.hi == b.lo && (a.hi_closed != b.lo_closed);
                if (!ok)
                    rep.add("EmptyCrossing", "track pieces do not tile near " +
                                                 (a.hi_inf ? std::string("inf") : rat_str(a.hi)) +
                                                 " on chart " + lambda1.label(x));
            }
            for (const TrackPiece& p : tr.pieces) {
                int target = p.value.is_end ? p.value.end_chart : p.value.affine.chart;
                if (!lambda2.has_chart(target))
                    rep.add("EmptyCrossing",
                            "track targets unknown chart " + std::to_string(target));
            }
        }
    }
}

void Plane::compute_criticals() {
    std::set<Rat> set2;
    for (const Gluing& g : lambda2.gluings) set2.insert(g.cut);
    for (const auto* side : {&crossing.lo, &crossing.hi})
        for (const auto& [x, tr] : *side)
            for (const TrackPiece& p : tr.pieces) {
                if (p.value.is_end) continue;
                if (!p.domain.lo_inf) set2.insert(p.value.affine.at(p.domain.lo));
                if (!p.domain.hi_inf) set2.insert(p.value.affine.at(p.domain.hi));
                if (p.value.affine.slope == 0) set2.insert(p.value.affine.offset);
            }
    std::set<Rat> set1;
    for (const Gluing& g : lambda1.gluings) set1.insert(g.cut);
    for (const Cataclysm& k : lambda1.cataclysms()) set1.insert(k.value);
    for (const auto* side : {&crossing.lo, &crossing.hi})
        for (const auto& [x, tr] : *side)
            for (const TrackPiece& p : tr.pieces) {
                if (!p.domain.lo_inf) set1.insert(p.domain.lo);
                if (!p.domain.hi_inf) set1.insert(p.domain.hi);
                if (!p.value.is_end && p.value.affine.slope != 0)
                    for (const Rat& c : set2) {
                        Rat t = (c - p.value.affine.offset) / p.value.affine.slope;
                        if (p.domain.contains(t)) set1.insert(t);
                    }
            }
    crit1_.clear();
    crit2_.clear();
    for (int x = 0; x < lambda1.chart_count(); ++x) crit1_[x] = set1;
    for (int y = 0; y < lambda2.chart_count(); ++y) crit2_[y] = set2;
}

std::vector<Rat> Plane::probe_coords(int space, int chart) const {
    const auto& cr = criticals(space);
    std::set<Rat> vals;
    auto it = cr.find(chart);
    if (it != cr.end()) vals = it->second;
    if (vals.empty()) return {Rat(-1), Rat(0), Rat(1)};
    std::vector<Rat> sorted(vals.begin(), vals.end());
    std::vector<Rat> out;
    out.push_back(sorted.front() - 1);
    for (size_t i = 0; i < sorted.size(); ++i) {
        out.push_back(sorted[i]);
        if (i + 1 < sorted.size()) out.push_back((sorted[i] + sorted[i + 1]) / 2);
    }
    out.push_back(sorted.back() + 1);
    return out;
}

void Plane::check_shared_agreement(ValidationReport& rep) const {
    for (size_t gi = 0; gi < lambda1.gluings.size(); ++gi) {
        const Gluing& g = lambda1.gluings[gi];
        RatInterval region = lambda1.edge_region(static_cast<int>(gi));
        for (bool is_lo : {true, false}) {
            const Track& tc = is_lo ? lo_track(g.child) : hi_track(g.child);
            const Track& tp = is_lo ? lo_track(g.parent) : hi_track(g.parent);
            for (const RefinedPiece& rp : refine_tracks(tc, tp)) {
                RatInterval d = rp.domain.intersect(region);
                if (d.empty()) continue;
                if (!values_equal_on(lambda2, rp.lo, rp.hi, d))
                    rep.add("TrackMismatch",
                            std::string(is_lo ? "lo" : "hi") + " tracks of charts " +
                                lambda1.label(g.child) + " and " + lambda1.label(g.parent) +
                                " disagree on shared region " + d.str());
            }
        }
    }
}

void Plane::check_lo_less_hi(ValidationReport& rep) const {
    for (int x = 0; x < lambda1.chart_count(); ++x)
        for (const RefinedPiece& rp : refine_tracks(lo_track(x), hi_track(x))) {
            RatIntervalSet less = tset_value_less(lambda2, rp.lo, rp.hi, rp.domain);
            if (!less.contains_interval(rp.domain))
                rep.add("EmptyCrossing", "lo >= hi somewhere in " + rp.domain.str() +
                                             " on chart " + lambda1.label(x));
        }
}

void Plane::check_co_crossings(ValidationReport& rep) const {
    std::set<Point> probes;
    for (int y = 0; y < lambda2.chart_count(); ++y)
        for (const Rat& v : probe_coords(2, y)) probes.insert(lambda2.canonicalize(Point{y, v}));
    for (const Point& y : probes) {
        ManifoldSet J = co_crossing_set(y);
        std::string where = lambda2.point_str(y);
        if (J.empty()) {
            rep.add("EmptyCoCrossing", "no leaf crosses " + where);
            continue;
        }
        if (!J.has_interior()) rep.add("EmptyCoCrossing", "degenerate co-crossing at " + where);
        if (!J.connected(lambda1))
            rep.add("DisconnectedCoCrossing", "J(" + where + ") = " + J.str(lambda1));
        if (!J.hausdorff(lambda1))
            rep.add("DisconnectedCoCrossing", "J(" + where + ") contains a non-separated pair");
    }
}

void Plane::check_branch_continuity(ValidationReport& rep) const {
    for (const Cataclysm& k : lambda1.cataclysms()) {
        for (const Point& m : k.members) {
            auto germ_value = [&](const Track& tr) -> const TrackValue* {
                for (const TrackPiece& p : tr.pieces) {
                    bool carries = k.side == GlueSide::Below
                                       ? p.domain.contains_germ_below(k.value)
                                       : p.domain.contains_germ_above(k.value);
                    if (carries) return &p.value;
                }
                return nullptr;
            };
            const TrackValue* lv = germ_value(lo_track(m.chart));
            const TrackValue* hv = germ_value(hi_track(m.chart));
            if (!lv || !hv) continue;
            auto limit_bound = [&](const TrackValue& v,
                                   bool lower) -> std::pair<std::optional<Site>, Rel> {
                if (v.is_end)
                    return {Site::of(lambda2.end_of_ray(v.end_chart, v.end_sign)), Rel::Lt};
                Site s =
                    Site::of(lambda2.canonicalize(Point{v.affine.chart, v.affine.at(k.value)}));
                Rat slope = v.affine.slope;
                bool closed = k.side == GlueSide::Below ? (lower ? slope > 0 : slope < 0)
                                                        : (lower ? slope < 0 : slope > 0);
                return {s, closed ? Rel::Le : Rel::Lt};
            };
            auto [L, rl] = limit_bound(*lv, true);
            auto [U, ru] = limit_bound(*hv, false);
            ManifoldSet liminf = set_between(lambda2, L, U, rl, ru);
            ManifoldSet mem = set_between(lambda2, lo_site(m), hi_site(m));
            if (!liminf.contains_set(lambda2, mem))
                rep.add("BranchDiscontinuity",
                        "limit of crossings toward " + lambda1.point_str(m) +
                            " does not contain its crossing interval");
        }
    }
}

void Plane::check_witness_independence(ValidationReport& rep) {
    for (int space : {1, 2}) {
        const OneManifold& ms = space == 1 ? lambda1 : lambda2;
        for (const Cataclysm& k : ms.cataclysms()) {
            try {
                std::vector<Point> base = cataclysm_order(space, k);
                RatInterval win = witness_window(space, k);
                for (int step = 1; step <= 3; ++step) {
                    Rat t = win.lo + (win.hi - win.lo) * Rat(step, 4);
                    if (cataclysm_order_at(space, k, t) != base) {
                        rep.add("WitnessInconsistency",
                                "cataclysm order at value " + rat_str(k.value) +
                                    " depends on the witness choice");
                        break;
                    }
                }
            } catch (const DomainError& e) {
                rep.add(e.kind(), e.what());
            }
        }
    }
}

ValidationReport Plane::validate() {
    ValidationReport rep;
    validated_ = false;
    ValidationReport r1 = lambda1.validate();
    ValidationReport r2 = lambda2.validate();
    for (const auto& i : r1.issues) rep.add(i.kind, "lambda1: " + i.detail);
    for (const auto& i : r2.issues) rep.add(i.kind, "lambda2: " + i.detail);
    if (!rep.ok) return rep;
    check_structure(rep);
    if (!rep.ok) return rep;
    compute_criticals();
    check_shared_agreement(rep);
    check_lo_less_hi(rep);
    if (!rep.ok) return rep;
    check_co_crossings(rep);
    check_branch_continuity(rep);
    if (!rep.ok) return rep;
    try {
        compute_orders();
    } catch (const DomainError& e) {
        rep.add(e.kind(), e.what());
        return rep;
    }
    check_witness_independence(rep);
    validated_ = rep.ok;
    return rep;
}

}  // namespace planeorder
