#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "planeorder/leafspace.hpp"

using namespace planeorder;

namespace {

OneManifold line() {
    OneManifold m;
    m.charts = {{0, "A"}};
    REQUIRE(m.validate().ok);
    return m;
}

OneManifold branch2() {
    OneManifold m;
    m.charts = {{0, "A"}, {1, "B"}};
    m.gluings = {{1, 0, GlueSide::Below, Rat(0)}};
    REQUIRE(m.validate().ok);
    return m;
}

OneManifold branch3() {
    OneManifold m;
    m.charts = {{0, "A"}, {1, "B"}, {2, "C"}};
    m.gluings = {{1, 0, GlueSide::Below, Rat(0)}, {2, 0, GlueSide::Below, Rat(0)}};
    REQUIRE(m.validate().ok);
    return m;
}

OneManifold chain() {
    OneManifold m;
    m.charts = {{0, "A"}, {1, "B"}, {2, "C"}};
    m.gluings = {{1, 0, GlueSide::Below, Rat(0)}, {2, 1, GlueSide::Above, Rat(0)}};
    REQUIRE(m.validate().ok);
    return m;
}

// Independent oracle: canonical owner by exhaustive path intersection over all
// charts, picking the tree-minimal (smallest depth, then id) one.
Point oracle_canonical(const OneManifold& m, const Point& p) {
    Point best = p;
    for (int c = 0; c < m.chart_count(); ++c) {
        if (c == p.chart || !m.shared_region(p.chart, c).contains(p.coord)) continue;
        if (m.depth(c) < m.depth(best.chart) ||
            (m.depth(c) == m.depth(best.chart) && c < best.chart))
            best = Point{c, p.coord};
    }
    return best;
}

// Independent oracle for ends: enumerate (chart, sign) rays and merge two rays
// whenever, beyond some threshold, they consist of identified points.
std::set<std::set<std::pair<int, int>>> oracle_ends(const OneManifold& m) {
    std::vector<std::pair<int, int>> rays;
    for (int c = 0; c < m.chart_count(); ++c)
        for (int s : {0, 1}) rays.push_back({c, s});
    std::vector<int> cls(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) cls[i] = static_cast<int>(i);
    for (size_t i = 0; i < rays.size(); ++i)
        for (size_t j = 0; j < rays.size(); ++j) {
            auto [ci, si] = rays[i];
            auto [cj, sj] = rays[j];
            if (si != sj) continue;
            RatInterval sh = m.shared_region(ci, cj);
            bool merged = si == 1 ? sh.contains_pos_ray() : sh.contains_neg_ray();
            if (merged) {
                int a = cls[i], b = cls[j];
                for (auto& x : cls)
                    if (x == a) x = b;
            }
        }
    std::set<std::set<std::pair<int, int>>> out;
    std::map<int, std::set<std::pair<int, int>>> groups;
    for (size_t i = 0; i < rays.size(); ++i) groups[cls[i]].insert(rays[i]);
    for (auto& [k, g] : groups) out.insert(g);
    return out;
}

std::set<std::set<std::pair<int, int>>> lib_ends_as_sets(const OneManifold& m) {
    std::set<std::set<std::pair<int, int>>> out;
    for (const End& e : m.ends()) {
        std::set<std::pair<int, int>> g;
        for (int c : e.charts) g.insert({c, e.sign == Sign::Pos ? 1 : 0});
        out.insert(g);
    }
    return out;
}

std::vector<Point> sample_points(const OneManifold& m) {
    std::vector<Point> pts;
    std::set<Rat> coords{Rat(0)};
    for (const Gluing& g : m.gluings) {
        coords.insert(g.cut);
        coords.insert(g.cut - 1);
        coords.insert(g.cut + 1);
        coords.insert(g.cut - Rat(1, 2));
        coords.insert(g.cut + Rat(1, 2));
    }
    coords.insert(Rat(-7));
    coords.insert(Rat(7));
    for (int c = 0; c < m.chart_count(); ++c)
        for (const Rat& x : coords) pts.push_back({c, x});
    return pts;
}

bool non_separated(const OneManifold& m, const Point& p, const Point& q, GlueSide side) {
    // p, q canonical and distinct, same coordinate: germ shared, point not shared
    if (p == q || p.coord != q.coord) return false;
    RatInterval sh = m.shared_region(p.chart, q.chart);
    if (sh.contains(p.coord)) return false;
    return side == GlueSide::Below ? sh.contains_germ_below(p.coord)
                                   : sh.contains_germ_above(p.coord);
}

}  // namespace

TEST_CASE("validate_manifold basics") {
    CHECK(validate_manifold(line()).ok);
    CHECK(validate_manifold(branch2()).ok);

    OneManifold bad = branch2();
    bad.gluings.push_back({1, 0, GlueSide::Above, Rat(5)});  // second parent for B
    ValidationReport rep = validate_manifold(bad);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.issues.empty());
    CHECK(rep.issues[0].kind == "MalformedGluing");

    OneManifold orphan;
    orphan.charts = {{0, "A"}, {1, "B"}};
    CHECK_FALSE(validate_manifold(orphan).ok);

    OneManifold cyc;
    cyc.charts = {{0, "A"}, {1, "B"}, {2, "C"}};
    cyc.gluings = {{1, 2, GlueSide::Below, Rat(0)}, {2, 1, GlueSide::Below, Rat(0)}};
    CHECK_FALSE(validate_manifold(cyc).ok);
}

TEST_CASE("canonicalize") {
    OneManifold b2 = branch2();
    CHECK(b2.canonicalize({1, Rat(-3)}) == Point{0, Rat(-3)});
    CHECK(b2.canonicalize({1, Rat(2)}) == Point{1, Rat(2)});

    // CHAIN, (C,7): the exhaustive path-intersection oracle decides the owner.
    OneManifold ch = chain();
    Point expect = oracle_canonical(ch, {2, Rat(7)});
    CHECK(expect == Point{1, Rat(7)});  // shared(C,B) = (0,inf) contains 7
    CHECK(ch.canonicalize({2, Rat(7)}) == expect);

    for (const OneManifold& m : {line(), branch2(), branch3(), chain()})
        for (const Point& p : sample_points(m)) {
            Point c1 = m.canonicalize(p);
            CHECK(c1 == oracle_canonical(m, p));
            CHECK(m.canonicalize(c1) == c1);  // idempotence
        }

    CHECK_THROWS_AS((void)b2.canonicalize({9, Rat(0)}), DomainError);
}

TEST_CASE("cataclysms") {
    CHECK(line().cataclysms().empty());

    OneManifold b2 = branch2();
    REQUIRE(b2.cataclysms().size() == 1);
    const Cataclysm& k = b2.cataclysms()[0];
    CHECK(k.side == GlueSide::Below);
    CHECK(k.value == 0);
    CHECK(k.members == std::vector<Point>{{0, Rat(0)}, {1, Rat(0)}});

    OneManifold b3 = branch3();
    REQUIRE(b3.cataclysms().size() == 1);
    CHECK(b3.cataclysms()[0].members.size() == 3);

    // CHAIN: two overlapping 2-cataclysms; (A,0) and (C,0) separated.
    OneManifold ch = chain();
    REQUIRE(ch.cataclysms().size() == 2);
    CHECK(ch.cataclysms()[0].side == GlueSide::Below);
    CHECK(ch.cataclysms()[0].members == std::vector<Point>{{0, Rat(0)}, {1, Rat(0)}});
    CHECK(ch.cataclysms()[1].side == GlueSide::Above);
    CHECK(ch.cataclysms()[1].members == std::vector<Point>{{1, Rat(0)}, {2, Rat(0)}});
    CHECK(ch.compare_points({0, Rat(0)}, {2, Rat(0)}) == Order::Incomparable);
}

TEST_CASE("non-separation is symmetric and transitive within a germ class") {
    for (const OneManifold& m : {branch2(), branch3(), chain()}) {
        std::vector<Point> pts;
        for (const Point& p : sample_points(m)) pts.push_back(m.canonicalize(p));
        for (GlueSide side : {GlueSide::Below, GlueSide::Above}) {
            for (const Point& p : pts)
                for (const Point& q : pts) {
                    CHECK(non_separated(m, p, q, side) == non_separated(m, q, p, side));
                    for (const Point& r : pts)
                        if (non_separated(m, p, q, side) && non_separated(m, q, r, side) && p != r)
                            CHECK(non_separated(m, p, r, side));
                }
        }
    }
}

TEST_CASE("ends") {
    OneManifold l = line();
    CHECK(l.positive_ends().size() == 1);
    CHECK(l.negative_ends().size() == 1);

    OneManifold b2 = branch2();
    CHECK(b2.positive_ends().size() == 2);
    REQUIRE(b2.negative_ends().size() == 1);
    CHECK(b2.negative_ends()[0].charts == std::vector<int>{0, 1});

    OneManifold b3 = branch3();
    CHECK(b3.positive_ends().size() == 3);
    CHECK(b3.negative_ends().size() == 1);

    for (const OneManifold& m : {line(), branch2(), branch3(), chain()})
        CHECK(lib_ends_as_sets(m) == oracle_ends(m));
}

TEST_CASE("end count formula for uniform gluing sides") {
    // all BelowCut: every gluing adds one positive end; dually for AboveCut
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        for (GlueSide side : {GlueSide::Below, GlueSide::Above}) {
            OneManifold m;
            for (int i = 0; i < n; ++i) m.charts.push_back({i, "c" + std::to_string(i)});
            for (int i = 1; i < n; ++i) {
                int parent = static_cast<int>(rng() % i);
                Rat cut(static_cast<int>(rng() % 11) - 5);
                m.gluings.push_back({i, parent, side, cut});
            }
            REQUIRE(m.validate().ok);
            CHECK(static_cast<int>(m.ends().size()) == n + 1);
            if (side == GlueSide::Below)
                CHECK(static_cast<int>(m.positive_ends().size()) == n);
            else
                CHECK(static_cast<int>(m.negative_ends().size()) == n);
            CHECK(lib_ends_as_sets(m) == oracle_ends(m));
        }
    }
}

TEST_CASE("compare_points") {
    OneManifold b2 = branch2();
    CHECK(b2.compare_points({0, Rat(-1)}, {1, Rat(3)}) == Order::Less);
    CHECK(b2.compare_points({0, Rat(2)}, {1, Rat(2)}) == Order::Incomparable);
    CHECK(b2.compare_points({0, Rat(-1)}, {1, Rat(-1)}) == Order::Equal);

    OneManifold ch = chain();
    CHECK(ch.compare_points({0, Rat(0)}, {2, Rat(0)}) == Order::Incomparable);
    CHECK(ch.compare_points({0, Rat(-1)}, {2, Rat(4)}) == Order::Less);

    // antisymmetry on samples
    for (const OneManifold& m : {branch2(), branch3(), chain()})
        for (const Point& p : sample_points(m))
            for (const Point& q : sample_points(m))
                CHECK(m.compare_points(p, q) == flip(m.compare_points(q, p)));
}

TEST_CASE("broken_path") {
    OneManifold b2 = branch2();
    Site plusA = Site::of(b2.end_of_ray(0, Sign::Pos));
    Site plusB = Site::of(b2.end_of_ray(1, Sign::Pos));
    BrokenPath p = broken_path(b2, plusA, plusB);
    REQUIRE(p.cusps.size() == 1);
    CHECK(p.cusps[0].exit == Point{0, Rat(0)});
    CHECK(p.cusps[0].enter == Point{1, Rat(0)});
    CHECK(p.cusps[0].side == GlueSide::Below);
    REQUIRE(p.segments.size() == 2);
    CHECK(p.segments[0].chart == 0);
    CHECK(p.segments[0].from_inf);
    CHECK(p.segments[0].to == 0);
    CHECK(p.segments[1].chart == 1);
    CHECK(p.segments[1].to_inf);

    // LINE: single segment, no cusps
    OneManifold l = line();
    BrokenPath q = broken_path(l, Site::of(Point{0, Rat(0)}), Site::of(Point{0, Rat(5)}));
    CHECK(q.cusps.empty());
    REQUIRE(q.segments.size() == 1);

    // CHAIN, (A,3) -> (C,-3): two cusps, sides Below then Above
    OneManifold ch = chain();
    BrokenPath r = broken_path(ch, Site::of(Point{0, Rat(3)}), Site::of(Point{2, Rat(-3)}));
    REQUIRE(r.cusps.size() == 2);
    CHECK(r.cusps[0].side == GlueSide::Below);
    CHECK(r.cusps[1].side == GlueSide::Above);
    CHECK(r.cusps[0].exit == Point{0, Rat(0)});
    CHECK(r.cusps[0].enter == Point{1, Rat(0)});
    CHECK(r.cusps[1].exit == Point{1, Rat(0)});
    CHECK(r.cusps[1].enter == Point{2, Rat(0)});

    CHECK_THROWS_AS((void)broken_path(b2, Site::of(Point{0, Rat(-1)}), Site::of(Point{1, Rat(-1)})),
                    DomainError);
}

TEST_CASE("broken path reversal and cusp count vs comparability") {
    for (const OneManifold& m : {branch2(), branch3(), chain()}) {
        std::vector<Site> sites;
        for (const Point& p : sample_points(m)) sites.push_back(Site::of(m.canonicalize(p)));
        for (const End& e : m.ends()) sites.push_back(Site::of(e));
        for (size_t i = 0; i < sites.size(); ++i)
            for (size_t j = 0; j < sites.size(); ++j) {
                if (sites[i] == sites[j]) continue;
                BrokenPath f = broken_path(m, sites[i], sites[j]);
                BrokenPath b = broken_path(m, sites[j], sites[i]);
                REQUIRE(f.cusps.size() == b.cusps.size());
                REQUIRE(f.segments.size() == b.segments.size());
                for (size_t k = 0; k < f.cusps.size(); ++k) {
                    const Cusp& fc = f.cusps[k];
                    const Cusp& bc = b.cusps[f.cusps.size() - 1 - k];
                    CHECK(fc.exit == bc.enter);
                    CHECK(fc.enter == bc.exit);
                    CHECK(fc.side == bc.side);
                }
                bool comparable = compare_sites(m, sites[i], sites[j]) != Order::Incomparable;
                CHECK(comparable == (f.cusps.empty()));
            }
    }
}

TEST_CASE("mirror swaps sides, signs and cataclysm sides") {
    for (const OneManifold& m : {branch2(), branch3(), chain()}) {
        OneManifold w = m.mirrored();
        CHECK(w.positive_ends().size() == m.negative_ends().size());
        CHECK(w.negative_ends().size() == m.positive_ends().size());
        REQUIRE(w.cataclysms().size() == m.cataclysms().size());
        for (const Cataclysm& k : m.cataclysms()) {
            bool found = false;
            for (const Cataclysm& j : w.cataclysms()) {
                if (j.value != -k.value || j.side == k.side) continue;
                std::vector<Point> mm;
                for (const Point& p : k.members) mm.push_back(w.canonicalize(mirror_point(p)));
                std::sort(mm.begin(), mm.end());
                if (mm == j.members) found = true;
            }
            CHECK(found);
        }
        // mirroring twice is the identity presentation
        OneManifold ww = w.mirrored();
        for (const Point& p : sample_points(m))
            CHECK(ww.canonicalize(p) == m.canonicalize(p));
    }
}
