#include "planeorder/catalog.hpp"

#include <algorithm>

namespace planeorder::catalog {

namespace {

OneManifold line_labeled(const std::string& l) {
    OneManifold m;
    m.charts = {{0, l}};
    return m;
}

Track one_piece(const TrackValue& v) {
    Track t;
    t.pieces.push_back({RatInterval::full(), v});
    return t;
}

// (-inf, cut) -> a, [cut, +inf) -> b
Track split_at(const Rat& cut, const TrackValue& a, const TrackValue& b) {
    Track t;
    RatInterval lo = RatInterval::below(cut);
    RatInterval hi = RatInterval::above(cut);
    hi.lo_closed = true;
    hi.lo = cut;
    hi.lo_inf = false;
    t.pieces.push_back({lo, a});
    t.pieces.push_back({hi, b});
    return t;
}

void require_valid(Plane& p) {
    ValidationReport rep = p.validate();
    if (!rep.ok) {
        std::string what = "fixture " + p.name + " failed validation:";
        for (const auto& i : rep.issues) what += "\n  " + i.kind + ": " + i.detail;
        throw DomainError("UnknownFixture", what);
    }
}

}  // namespace

std::vector<std::string> manifold_names() { return {"LINE", "BRANCH2", "BRANCH3", "CHAIN"}; }

std::vector<std::string> plane_names() {
    return {"TRIV", "SKEW1", "BRANCHPLANE", "BRANCH3PLANE", "GAPPLANE", "REEB"};
}

std::vector<std::string> automorphism_names() {
    return {"IDENTITY", "SHIFT1", "SKEWSHIFT", "SWAP"};
}

OneManifold make_manifold(const std::string& name) {
    OneManifold m;
    if (name == "LINE") {
        m.charts = {{0, "A"}};
    } else if (name == "BRANCH2") {
        m.charts = {{0, "A"}, {1, "B"}};
        m.gluings = {{1, 0, GlueSide::Below, Rat(0)}};
    } else if (name == "BRANCH3") {
        m.charts = {{0, "A"}, {1, "B"}, {2, "C"}};
        m.gluings = {{1, 0, GlueSide::Below, Rat(0)}, {2, 0, GlueSide::Below, Rat(0)}};
    } else if (name == "CHAIN") {
        m.charts = {{0, "A"}, {1, "B"}, {2, "C"}};
        m.gluings = {{1, 0, GlueSide::Below, Rat(0)}, {2, 1, GlueSide::Above, Rat(0)}};
    } else {
        throw DomainError("UnknownFixture", "unknown manifold fixture '" + name + "'");
    }
    ValidationReport rep = m.validate();
    if (!rep.ok) throw DomainError("UnknownFixture", "fixture manifold invalid");
    return m;
}

Plane make_plane(const std::string& name) {
    Plane p;
    p.name = name;
    const TrackValue kNeg = TrackValue::end(0, Sign::Neg);
    const TrackValue kPos = TrackValue::end(0, Sign::Pos);
    if (name == "TRIV") {
        p.lambda1 = line_labeled("x");
        p.lambda2 = line_labeled("y");
        p.crossing.lo[0] = one_piece(kNeg);
        p.crossing.hi[0] = one_piece(kPos);
    } else if (name == "SKEW1") {
        p.lambda1 = line_labeled("x");
        p.lambda2 = line_labeled("y");
        p.crossing.lo[0] = one_piece(TrackValue::affine_of(0, 1, -1));
        p.crossing.hi[0] = one_piece(TrackValue::affine_of(0, 1, 1));
    } else if (name == "BRANCHPLANE") {
        p.lambda1 = make_manifold("BRANCH2");
        p.lambda2 = line_labeled("y");
        p.crossing.lo[0] = one_piece(kNeg);
        p.crossing.hi[0] = split_at(0, kPos, TrackValue::affine_of(0, -1, 0));
        p.crossing.lo[1] = split_at(0, kNeg, TrackValue::affine_of(0, 1, 0));
        p.crossing.hi[1] = one_piece(kPos);
    } else if (name == "BRANCH3PLANE") {
        p.lambda1 = make_manifold("BRANCH3");
        p.lambda2 = line_labeled("y");
        p.crossing.lo[0] = one_piece(kNeg);
        p.crossing.hi[0] = split_at(0, kPos, TrackValue::affine_of(0, -1, 0));
        p.crossing.lo[1] = split_at(0, kNeg, TrackValue::affine_of(0, 0, 0));
        p.crossing.hi[1] = split_at(0, kPos, TrackValue::affine_of(0, 0, 4));
        p.crossing.lo[2] = split_at(0, kNeg, TrackValue::affine_of(0, 1, 4));
        p.crossing.hi[2] = one_piece(kPos);
    } else if (name == "GAPPLANE") {
        OneManifold l1;
        l1.charts = {{0, "R"}, {1, "X"}, {2, "Y"}};
        l1.gluings = {{1, 0, GlueSide::Below, Rat(1)}, {2, 0, GlueSide::Below, Rat(1)}};
        p.lambda1 = l1;
        p.lambda2 = line_labeled("y");
        TrackValue shared_lo = TrackValue::affine_of(0, 1, 0);    // t
        TrackValue shared_hi = TrackValue::affine_of(0, -1, 3);   // 3 - t
        p.crossing.lo[0] = split_at(1, shared_lo, TrackValue::affine_of(0, 0, Rat(7, 5)));
        p.crossing.hi[0] = split_at(1, shared_hi, TrackValue::affine_of(0, 0, Rat(8, 5)));
        p.crossing.lo[1] = split_at(1, shared_lo, TrackValue::affine_of(0, 0, 1));
        p.crossing.hi[1] = split_at(1, shared_hi, TrackValue::affine_of(0, 0, Rat(6, 5)));
        p.crossing.lo[2] = split_at(1, shared_lo, TrackValue::affine_of(0, 0, Rat(9, 5)));
        p.crossing.hi[2] = split_at(1, shared_hi, TrackValue::affine_of(0, 0, 2));
    } else if (name == "REEB") {
        OneManifold l1;
        l1.charts = {{0, "A"}, {1, "B"}};
        l1.gluings = {{1, 0, GlueSide::Below, Rat(0)}};
        OneManifold l2;
        l2.charts = {{0, "U"}, {1, "V"}};
        l2.gluings = {{1, 0, GlueSide::Below, Rat(0)}};
        p.lambda1 = l1;
        p.lambda2 = l2;
        // shared leaves sweep a bounded window across the Lambda2 cataclysm;
        // each branch pocket sweeps a bounded window up its own branch
        p.crossing.lo[0] = one_piece(TrackValue::affine_of(0, 1, -4));
        p.crossing.hi[0] = split_at(0, TrackValue::affine_of(1, 1, 4), TrackValue::affine_of(0, 1, 0));
        p.crossing.lo[1] = split_at(0, TrackValue::affine_of(0, 1, -4), TrackValue::affine_of(1, 1, 0));
        p.crossing.hi[1] = one_piece(TrackValue::affine_of(1, 1, 4));
    } else {
        throw DomainError("UnknownFixture", "unknown plane fixture '" + name + "'");
    }
    require_valid(p);
    return p;
}

PlaneAutomorphism make_automorphism(const Plane& plane, const std::string& name) {
    PlaneAutomorphism g = identity_automorphism(plane);
    g.name = name;
    if (name == "IDENTITY") {
        return g;
    }
    if (name == "SHIFT1") {
        for (int c = 0; c < plane.lambda1.chart_count(); ++c)
            g.map1.maps[c] = PLMap::affine(1, 1);
        return g;
    }
    if (name == "SKEWSHIFT") {
        for (int c = 0; c < plane.lambda1.chart_count(); ++c)
            g.map1.maps[c] = PLMap::affine(1, 1);
        for (int c = 0; c < plane.lambda2.chart_count(); ++c)
            g.map2.maps[c] = PLMap::affine(1, 1);
        return g;
    }
    if (name == "SWAP") {
        if (plane.lambda1.chart_count() < 3)
            throw DomainError("UnknownFixture", "SWAP needs three lambda1 charts");
        g.map1.perm[1] = 2;
        g.map1.perm[2] = 1;
        return g;
    }
    throw DomainError("UnknownFixture", "unknown automorphism fixture '" + name + "'");
}

// ---------------------------------------------------------------------------
// Expected features

namespace {

void expect(ValidationReport& rep, bool cond, const std::string& what) {
    if (!cond) rep.add("ExpectedFeature", what);
}

int count_interval_realizations(const Plane& p) {
    int n = 0;
    for (int space : {1, 2})
        for (const End& e : p.space(space).ends())
            if (p.product_witnesses(space, e).has_interior()) ++n;
    return n;
}

}  // namespace

ValidationReport check_expected_features(const Plane& p) {
    ValidationReport rep;
    if (p.name == "TRIV") {
        expect(rep, p.lambda1.ends().size() == 2 && p.lambda2.ends().size() == 2,
               "TRIV has four ends");
        expect(rep, count_interval_realizations(p) == 4, "all four TRIV ends are interval type");
        expect(rep, p.lambda1.cataclysms().empty() && p.lambda2.cataclysms().empty(),
               "TRIV is Hausdorff");
    } else if (p.name == "SKEW1") {
        expect(rep, p.lambda1.ends().size() == 2 && p.lambda2.ends().size() == 2,
               "SKEW1 has four ends");
        expect(rep, count_interval_realizations(p) == 0, "all SKEW1 ends are point type");
        expect(rep, p.lambda1.cataclysms().empty(), "SKEW1 is Hausdorff");
    } else if (p.name == "BRANCHPLANE") {
        expect(rep, p.lambda1.cataclysms().size() == 1 &&
                        p.lambda1.cataclysms()[0].members.size() == 2,
               "BRANCHPLANE has one 2-member cataclysm");
        const auto& oc = p.ordered_cataclysms(1)[0];
        expect(rep, oc.sorted == std::vector<Point>{{0, Rat(0)}, {1, Rat(0)}},
               "BRANCHPLANE cataclysm order is (A,0) < (B,0)");
    } else if (p.name == "BRANCH3PLANE") {
        expect(rep, p.lambda1.cataclysms().size() == 1 &&
                        p.lambda1.cataclysms()[0].members.size() == 3,
               "BRANCH3PLANE has one 3-member cataclysm");
        const auto& oc = p.ordered_cataclysms(1)[0];
        expect(rep,
               oc.sorted == std::vector<Point>{{0, Rat(0)}, {1, Rat(0)}, {2, Rat(0)}},
               "BRANCH3PLANE cataclysm order is A < B < C");
    } else if (p.name == "GAPPLANE") {
        expect(rep, p.lambda1.cataclysms().size() == 1 &&
                        p.lambda1.cataclysms()[0].members.size() == 3,
               "GAPPLANE has one 3-member cataclysm");
        const auto& oc = p.ordered_cataclysms(1)[0];
        expect(rep,
               oc.sorted == std::vector<Point>{{1, Rat(1)}, {0, Rat(1)}, {2, Rat(1)}},
               "GAPPLANE cataclysm order is X.1 < R.1 < Y.1");
        Point x1{1, Rat(1)}, r1{0, Rat(1)}, y1{2, Rat(1)};
        expect(rep,
               compare_sites(p.lambda2, p.lo_site(x1), Site::of(Point{0, Rat(1)})) == Order::Equal,
               "I(X.1) starts at 1");
        expect(rep,
               compare_sites(p.lambda2, p.hi_site(x1),
                             Site::of(Point{0, Rat(6, 5)})) == Order::Equal,
               "I(X.1) ends at 6/5");
        expect(rep,
               compare_sites(p.lambda2, p.lo_site(r1),
                             Site::of(Point{0, Rat(7, 5)})) == Order::Equal,
               "I(R.1) starts at 7/5");
        expect(rep,
               compare_sites(p.lambda2, p.hi_site(y1), Site::of(Point{0, Rat(2)})) == Order::Equal,
               "I(Y.1) ends at 2");
    } else if (p.name == "REEB") {
        expect(rep, p.lambda1.cataclysms().size() == 1 &&
                        p.lambda1.cataclysms()[0].members.size() == 2,
               "REEB lambda1 has one 2-member cataclysm");
        expect(rep, p.lambda2.cataclysms().size() == 1 &&
                        p.lambda2.cataclysms()[0].members.size() == 2,
               "REEB lambda2 has one 2-member cataclysm");
        // bounded crossing band: no track value is an end, so every crossing
        // interval and every co-crossing interval is bounded
        for (const auto* side : {&p.crossing.lo, &p.crossing.hi})
            for (const auto& [c, tr] : *side)
                for (const TrackPiece& piece : tr.pieces)
                    expect(rep, !piece.value.is_end, "REEB crossing band is bounded");
        expect(rep, count_interval_realizations(p) == 0, "all REEB ends are point type");
    } else {
        rep.add("UnknownFixture", "no expected features for '" + p.name + "'");
    }
    return rep;
}

}  // namespace planeorder::catalog
