#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "planeorder/catalog.hpp"
#include "planeorder/plane.hpp"

using namespace planeorder;
using catalog::make_plane;
using catalog::oracle_crossing;

namespace {

Site pt(int chart, const Rat& c) { return Site::of(Point{chart, c}); }

std::vector<Point> lambda2_probes(const Plane& p) {
    std::vector<Point> out;
    for (int y = 0; y < p.lambda2.chart_count(); ++y)
        for (const Rat& v : p.probe_coords(2, y)) out.push_back(p.lambda2.canonicalize({y, v}));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Point> lambda1_probes(const Plane& p) {
    std::vector<Point> out;
    for (int x = 0; x < p.lambda1.chart_count(); ++x)
        for (const Rat& v : p.probe_coords(1, x)) out.push_back(p.lambda1.canonicalize({x, v}));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("validate_plane accepts the catalog fixtures") {
    for (const std::string& name : catalog::plane_names()) {
        INFO(name);
        Plane p = make_plane(name);  // throws if validation fails
        CHECK(p.validated());
    }
}

TEST_CASE("validate_plane rejects an empty crossing interval") {
    Plane p = make_plane("TRIV");
    Track bad;
    bad.pieces.push_back({RatInterval::full(), TrackValue::end(0, Sign::Neg)});
    p.crossing.hi[0] = bad;
    ValidationReport rep = p.validate();
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.kind == "EmptyCrossing") found = true;
    CHECK(found);
}

TEST_CASE("SKEW1 co-crossings match the symbolic inverse") {
    // oracle first: J(y) = (y-1, y+1) by inverting |x - y| < 1
    Plane p = make_plane("SKEW1");
    for (const Point& y : lambda2_probes(p)) {
        ManifoldSet J = p.co_crossing_set(y);
        RatIntervalSet expected(RatInterval::open(y.coord - 1, y.coord + 1));
        CHECK(J.on_chart(p.lambda1, 0).contains_set(expected));
        CHECK(expected.contains_set(J.on_chart(p.lambda1, 0)));
        CHECK(J.connected(p.lambda1));
    }
}

TEST_CASE("crossing_interval endpoints") {
    Plane triv = make_plane("TRIV");
    EmbeddedInterval i = triv.crossing_interval({0, Rat(5)});
    CHECK(i.lo.is_end);
    CHECK(i.lo.end.sign == Sign::Neg);
    CHECK(i.hi.is_end);
    CHECK(i.hi.end.sign == Sign::Pos);

    Plane skew = make_plane("SKEW1");
    EmbeddedInterval s = skew.crossing_interval({0, Rat(0)});
    CHECK(compare_sites(skew.lambda2, s.lo, pt(0, Rat(-1))) == Order::Equal);
    CHECK(compare_sites(skew.lambda2, s.hi, pt(0, Rat(1))) == Order::Equal);

    Plane bp = make_plane("BRANCHPLANE");
    EmbeddedInterval b = bp.crossing_interval({0, Rat(0)});
    CHECK(b.lo.is_end);
    CHECK(b.lo.end.sign == Sign::Neg);
    CHECK(compare_sites(bp.lambda2, b.hi, pt(0, Rat(0))) == Order::Equal);
}

TEST_CASE("crossing membership agrees with the geometric oracle") {
    for (const std::string& name : {"TRIV", "SKEW1", "BRANCHPLANE", "BRANCH3PLANE", "GAPPLANE"}) {
        INFO(name);
        Plane p = make_plane(name);
        for (const Point& x : lambda1_probes(p))
            for (const Point& y : lambda2_probes(p)) {
                INFO(p.lambda1.point_str(x) << " vs " << p.lambda2.point_str(y));
                CHECK(p.crosses(x, y) == oracle_crossing(name, x, y));
            }
    }
}

TEST_CASE("REEB crossing membership agrees with the independent table") {
    Plane p = make_plane("REEB");
    for (const Point& x : lambda1_probes(p))
        for (const Point& y : lambda2_probes(p)) {
            INFO(p.lambda1.point_str(x) << " vs " << p.lambda2.point_str(y));
            CHECK(p.crosses(x, y) == oracle_crossing("REEB", x, y));
        }
}

TEST_CASE("SKEW1 oracle example: x=0 does not cross y=3/2") {
    CHECK_FALSE(oracle_crossing("SKEW1", {0, Rat(0)}, {0, Rat(3, 2)}));
    Plane p = make_plane("SKEW1");
    CHECK_FALSE(p.crosses({0, Rat(0)}, {0, Rat(3, 2)}));
}

TEST_CASE("side_via_transversal") {
    Plane triv = make_plane("TRIV");
    CHECK(triv.side_via_transversal({0, Rat(-1)}, {0, Rat(2)}, {0, Rat(0)}) == PlaneSide::Back);
    CHECK(triv.side_via_transversal({0, Rat(2)}, {0, Rat(-1)}, {0, Rat(0)}) == PlaneSide::Front);

    Plane bp = make_plane("BRANCHPLANE");
    // s1 = -1 crosses (A,0), s2 = 1 crosses (B,0), shared witness at -1/2
    CHECK(bp.crosses({0, Rat(0)}, {0, Rat(-1)}));
    CHECK(bp.crosses({1, Rat(0)}, {0, Rat(1)}));
    CHECK(bp.side_via_transversal({0, Rat(-1)}, {0, Rat(1)}, {0, Rat(-1, 2)}) == PlaneSide::Back);

    CHECK_THROWS_AS((void)bp.side_via_transversal({0, Rat(-1)}, {0, Rat(1)}, {0, Rat(2)}),
                    DomainError);

    for (const std::string& name : {"TRIV", "SKEW1", "GAPPLANE"}) {
        Plane p = make_plane(name);
        for (const Point& t : lambda1_probes(p))
            for (const Point& s1 : lambda2_probes(p))
                for (const Point& s2 : lambda2_probes(p)) {
                    if (!(p.crosses(t, s1) && p.crosses(t, s2))) continue;
                    if (p.lambda2.compare_points(s1, s2) == Order::Equal) continue;
                    CHECK(p.side_via_transversal(s1, s2, t) !=
                          p.side_via_transversal(s2, s1, t));
                }
    }
}

namespace {

// Expected cataclysm order derived from oracle data alone: members sorted by
// oracle-confirmed opposite-foliation samples that a shared witness crosses.
std::vector<Point> oracle_order(const std::string& name, const Cataclysm& k,
                                const std::map<Point, Rat>& sample_vert,
                                const Point& shared_witness) {
    std::vector<Point> members = k.members;
    for (const Point& m : members) {
        CHECK(oracle_crossing(name, m, Point{0, sample_vert.at(m)}));
        CHECK(oracle_crossing(name, shared_witness, Point{0, sample_vert.at(m)}));
    }
    std::sort(members.begin(), members.end(), [&](const Point& a, const Point& b) {
        return sample_vert.at(a) < sample_vert.at(b);
    });
    return members;
}

}  // namespace

TEST_CASE("cataclysm orders (oracle-derived)") {
    {
        Plane p = make_plane("BRANCHPLANE");
        const Cataclysm& k = p.lambda1.cataclysms()[0];
        std::map<Point, Rat> samples{{{0, Rat(0)}, Rat(-1)}, {{1, Rat(0)}, Rat(1)}};
        std::vector<Point> expected =
            oracle_order("BRANCHPLANE", k, samples, {0, Rat(-1, 2)});
        CHECK(p.cataclysm_order(1, k) == expected);
        CHECK(expected == std::vector<Point>{{0, Rat(0)}, {1, Rat(0)}});
    }
    {
        Plane p = make_plane("BRANCH3PLANE");
        const Cataclysm& k = p.lambda1.cataclysms()[0];
        std::map<Point, Rat> samples{
            {{0, Rat(0)}, Rat(-1)}, {{1, Rat(0)}, Rat(2)}, {{2, Rat(0)}, Rat(5)}};
        std::vector<Point> expected =
            oracle_order("BRANCH3PLANE", k, samples, {0, Rat(-1, 2)});
        std::vector<Point> got = p.cataclysm_order(1, k);
        CHECK(got == expected);
        // transitivity: every pair ordered consistently with the total order
        for (size_t i = 0; i < got.size(); ++i)
            for (size_t j = i + 1; j < got.size(); ++j) {
                Cataclysm pair;
                pair.side = k.side;
                pair.value = k.value;
                pair.members = {std::min(got[i], got[j]), std::max(got[i], got[j])};
                CHECK(p.cataclysm_order(1, pair).front() == got[i]);
            }
    }
    {
        Plane p = make_plane("GAPPLANE");
        const Cataclysm& k = p.lambda1.cataclysms()[0];
        std::map<Point, Rat> samples{{{1, Rat(1)}, Rat(11, 10)},
                                     {{0, Rat(1)}, Rat(3, 2)},
                                     {{2, Rat(1)}, Rat(19, 10)}};
        std::vector<Point> expected = oracle_order("GAPPLANE", k, samples, {0, Rat(9, 10)});
        CHECK(p.cataclysm_order(1, k) == expected);
        CHECK(expected == std::vector<Point>{{1, Rat(1)}, {0, Rat(1)}, {2, Rat(1)}});
    }
}

TEST_CASE("witness independence: 10 randomized witnesses per cataclysm") {
    std::mt19937 rng(11);
    for (const std::string& name : catalog::plane_names()) {
        INFO(name);
        Plane p = make_plane(name);
        for (int space : {1, 2}) {
            for (const Cataclysm& k : p.space(space).cataclysms()) {
                std::vector<Point> base = p.cataclysm_order(space, k);
                RatInterval win = p.witness_window(space, k);
                for (int i = 0; i < 10; ++i) {
                    Rat num(static_cast<int>(rng() % 997) + 1, 1000);
                    Rat t = win.lo + (win.hi - win.lo) * num;
                    CHECK(p.cataclysm_order_at(space, k, t) == base);
                }
            }
        }
    }
}

TEST_CASE("product witnesses") {
    Plane triv = make_plane("TRIV");
    for (const End& e : triv.lambda1.ends()) {
        ManifoldSet w = triv.product_witnesses(1, e);
        CHECK(w.on_chart(triv.lambda2, 0).contains_neg_ray());
        CHECK(w.on_chart(triv.lambda2, 0).contains_pos_ray());
    }

    // SKEW1: liminf of (t-1, t+1) is empty; oracle: any y is eventually missed
    Plane skew = make_plane("SKEW1");
    for (const Rat& y : {Rat(-3), Rat(0), Rat(7)}) {
        CHECK_FALSE(oracle_crossing("SKEW1", {0, y + 2}, {0, y}));
        CHECK_FALSE(oracle_crossing("SKEW1", {0, y + 7}, {0, y}));
    }
    for (const End& e : skew.lambda1.ends()) CHECK(skew.product_witnesses(1, e).empty());

    Plane bp = make_plane("BRANCHPLANE");
    End plusA = bp.lambda1.end_of_ray(0, Sign::Pos);
    End plusB = bp.lambda1.end_of_ray(1, Sign::Pos);
    End minus = bp.lambda1.end_of_ray(0, Sign::Neg);
    CHECK(bp.product_witnesses(1, plusA).empty());
    CHECK(bp.product_witnesses(1, plusB).empty());
    CHECK(bp.product_witnesses(1, minus).has_interior());
    End plus2 = bp.lambda2.end_of_ray(0, Sign::Pos);
    ManifoldSet w2 = bp.product_witnesses(2, plus2);
    CHECK(w2.has_interior());
    CHECK(w2.contains(bp.lambda1, {1, Rat(3)}));
    CHECK_FALSE(w2.contains(bp.lambda1, {0, Rat(3)}));
}

TEST_CASE("duality: y in I(x) iff x in J(y)") {
    for (const std::string& name : catalog::plane_names()) {
        INFO(name);
        Plane p = make_plane(name);
        for (const Point& x : lambda1_probes(p))
            for (const Point& y : lambda2_probes(p)) {
                bool in_i = p.crosses(x, y);
                bool in_j = p.co_crossing_set(y).contains(p.lambda1, x);
                CHECK(in_i == in_j);
            }
    }
}

TEST_CASE("co_crossing_interval endpoints on BRANCHPLANE") {
    Plane bp = make_plane("BRANCHPLANE");
    // J(0) = shared (-inf, 0): bounded above at the cataclysm
    EmbeddedInterval j = bp.co_crossing_interval({0, Rat(0)});
    CHECK(j.lo.is_end);
    CHECK(j.lo.end.sign == Sign::Neg);
    CHECK_FALSE(j.hi.is_end);
    CHECK(j.hi.pt.coord == 0);
    ManifoldSet J = bp.co_crossing_set({0, Rat(0)});
    ChainEndpoint top = chain_sup(bp.lambda1, J);
    CHECK(top.limit_sites.size() == 2);  // dangles at both cataclysm members
}
