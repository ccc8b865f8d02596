#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planeorder/catalog.hpp"
#include "planeorder/orders.hpp"

using namespace planeorder;
using catalog::make_automorphism;
using catalog::make_plane;

namespace {

End pos_end(const Plane& p, int space, int chart) {
    return p.space(space).end_of_ray(chart, Sign::Pos);
}
End neg_end(const Plane& p, int space, int chart) {
    return p.space(space).end_of_ray(chart, Sign::Neg);
}

std::vector<End> same_sign_ends(const Plane& p, int space, Sign s) {
    std::vector<End> out;
    for (const End& e : p.space(space).ends())
        if (e.sign == s) out.push_back(e);
    return out;
}

}  // namespace

TEST_CASE("zhao_n on BRANCHPLANE") {
    Plane p = make_plane("BRANCHPLANE");
    End a = pos_end(p, 1, 0), b = pos_end(p, 1, 1);
    CHECK(zhao_n(p, 1, a, b) == -1);
    CHECK(zhao_n(p, 1, b, a) == 1);
    CHECK(compare_ends(p, 1, a, 1, b) == Order::Less);
}

TEST_CASE("zhao_n on BRANCH3PLANE: +A < +B < +C") {
    Plane p = make_plane("BRANCH3PLANE");
    End a = pos_end(p, 1, 0), b = pos_end(p, 1, 1), c = pos_end(p, 1, 2);
    CHECK(zhao_n(p, 1, a, b) == -1);
    CHECK(zhao_n(p, 1, b, c) == -1);
    CHECK(zhao_n(p, 1, a, c) == -1);
}

TEST_CASE("zhao antisymmetry and trichotomy on all catalog planes") {
    for (const std::string& name : catalog::plane_names()) {
        INFO(name);
        Plane p = make_plane(name);
        for (int space : {1, 2})
            for (Sign s : {Sign::Pos, Sign::Neg}) {
                std::vector<End> ends = same_sign_ends(p, space, s);
                for (const End& e1 : ends)
                    for (const End& e2 : ends) {
                        if (e1 == e2) continue;
                        long n12 = zhao_n(p, space, e1, e2);  // throws if degenerate
                        long n21 = zhao_n(p, space, e2, e1);
                        CHECK(n12 == -n21);
                        CHECK(n12 != 0);
                    }
            }
    }
}

TEST_CASE("compare_ends layers and transitivity") {
    Plane triv = make_plane("TRIV");
    CHECK(compare_ends(triv, 1, neg_end(triv, 1, 0), 2, pos_end(triv, 2, 0)) == Order::Less);

    Plane bp = make_plane("BRANCHPLANE");
    CHECK(compare_ends(bp, 1, pos_end(bp, 1, 0), 1, neg_end(bp, 1, 0)) == Order::Less);
    CHECK(compare_ends(bp, 1, pos_end(bp, 1, 1), 1, pos_end(bp, 1, 0)) == Order::Greater);

    for (const std::string& name : catalog::plane_names()) {
        INFO(name);
        Plane p = make_plane(name);
        std::vector<std::pair<int, End>> ends = end_enumeration(p);
        // the enumeration itself must be strictly increasing
        for (size_t i = 0; i + 1 < ends.size(); ++i)
            CHECK(compare_ends(p, ends[i].first, ends[i].second, ends[i + 1].first,
                               ends[i + 1].second) == Order::Less);
        // transitivity over all triples
        for (size_t i = 0; i < ends.size(); ++i)
            for (size_t j = 0; j < ends.size(); ++j)
                for (size_t k = 0; k < ends.size(); ++k) {
                    auto ord = [&](size_t u, size_t v) {
                        return compare_ends(p, ends[u].first, ends[u].second, ends[v].first,
                                            ends[v].second);
                    };
                    if (ord(i, j) == Order::Less && ord(j, k) == Order::Less)
                        CHECK(ord(i, k) == Order::Less);
                }
    }
}

TEST_CASE("compare_ends is invariant under valid catalog automorphisms") {
    struct Case {
        std::string plane, gen;
    };
    for (const Case& c : {Case{"TRIV", "SHIFT1"}, Case{"SKEW1", "SKEWSHIFT"},
                          Case{"BRANCH3PLANE", "IDENTITY"}, Case{"GAPPLANE", "IDENTITY"}}) {
        Plane p = make_plane(c.plane);
        PlaneAutomorphism g = make_automorphism(p, c.gen);
        REQUIRE(validate_automorphism(p, g).ok);
        std::vector<std::pair<int, End>> ends = end_enumeration(p);
        for (const auto& [si, ei] : ends)
            for (const auto& [sj, ej] : ends) {
                Order base = compare_ends(p, si, ei, sj, ej);
                Order img = compare_ends(p, si, g.apply_end(si, ei), sj, g.apply_end(sj, ej));
                CHECK(base == img);
            }
    }
}

TEST_CASE("compare_automorphisms examples") {
    Plane triv = make_plane("TRIV");
    PlaneAutomorphism id = make_automorphism(triv, "IDENTITY");
    PlaneAutomorphism shift = make_automorphism(triv, "SHIFT1");

    OrderDecision d = compare_automorphisms(triv, shift, id);
    CHECK(d.value == Order::Greater);
    CHECK(d.witness.find("stage 2") != std::string::npos);
    CHECK(d.witness.find("probe 0") != std::string::npos);
    // SHIFT1 agrees with the identity on every end
    for (const auto& [space, e] : end_enumeration(triv)) CHECK(shift.apply_end(space, e) == e);

    CHECK(compare_automorphisms(triv, id, id).value == Order::Equal);

    Plane skew = make_plane("SKEW1");
    PlaneAutomorphism s = make_automorphism(skew, "SKEWSHIFT");
    PlaneAutomorphism s2 = compose(s, s);
    OrderDecision d2 = compare_automorphisms(skew, s, s2);
    CHECK(d2.value == Order::Less);
    CHECK(d2.witness.find("1 < 2") != std::string::npos);
}

TEST_CASE("left invariance and totality on generated words") {
    struct Case {
        std::string plane, gen;
    };
    for (const Case& c : {Case{"TRIV", "SHIFT1"}, Case{"SKEW1", "SKEWSHIFT"}}) {
        Plane p = make_plane(c.plane);
        std::vector<PlaneAutomorphism> words =
            words_up_to(p, {make_automorphism(p, c.gen)}, 3);
        for (const PlaneAutomorphism& g : words)
            for (const PlaneAutomorphism& h : words) {
                Order o = compare_automorphisms(p, g, h).value;
                CHECK((o == Order::Equal) == same_map(g, h));
                CHECK(compare_automorphisms(p, h, g).value == flip(o));
                for (const PlaneAutomorphism& f : words) {
                    Order left =
                        compare_automorphisms(p, compose(f, g), compose(f, h)).value;
                    CHECK(left == o);
                }
            }
    }
}

TEST_CASE("no valid automorphism of BRANCH3PLANE permutes the branch ends") {
    Plane p = make_plane("BRANCH3PLANE");
    // exhaustive over the catalog automorphisms valid on this plane
    for (const std::string& name : catalog::automorphism_names()) {
        PlaneAutomorphism g = make_automorphism(p, name);
        if (!validate_automorphism(p, g).ok) continue;
        for (const End& e : p.lambda1.ends()) CHECK(g.apply_end(1, e) == e);
    }
}
