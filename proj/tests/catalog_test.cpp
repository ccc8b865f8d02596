#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planeorder/catalog.hpp"

using namespace planeorder;
using namespace planeorder::catalog;

TEST_CASE("manifold fixtures") {
    CHECK(make_manifold("LINE").chart_count() == 1);
    OneManifold b3 = make_manifold("BRANCH3");
    REQUIRE(b3.cataclysms().size() == 1);
    CHECK(b3.cataclysms()[0].members.size() == 3);
    OneManifold ch = make_manifold("CHAIN");
    REQUIRE(ch.cataclysms().size() == 2);
    CHECK(ch.compare_points({0, Rat(0)}, {2, Rat(0)}) == Order::Incomparable);
    CHECK_THROWS_AS((void)make_manifold("NOPE"), DomainError);
}

TEST_CASE("plane fixtures construct, validate and match their expected features") {
    for (const std::string& name : plane_names()) {
        INFO(name);
        Plane p = make_plane(name);
        ValidationReport feats = check_expected_features(p);
        for (const auto& i : feats.issues) {
            INFO(i.kind << ": " << i.detail);
            CHECK(false);
        }
        CHECK(feats.ok);
    }
    CHECK_THROWS_AS((void)make_plane("NOPE"), DomainError);
}

TEST_CASE("automorphism fixtures") {
    Plane triv = make_plane("TRIV");
    CHECK(validate_automorphism(triv, make_automorphism(triv, "IDENTITY")).ok);
    CHECK(validate_automorphism(triv, make_automorphism(triv, "SHIFT1")).ok);

    Plane skew = make_plane("SKEW1");
    CHECK(validate_automorphism(skew, make_automorphism(skew, "SKEWSHIFT")).ok);

    Plane b3 = make_plane("BRANCH3PLANE");
    ValidationReport rep = validate_automorphism(b3, make_automorphism(b3, "SWAP"));
    CHECK_FALSE(rep.ok);
    bool equivariance = false, inverted = false;
    for (const auto& i : rep.issues) {
        if (i.kind == "CrossingNotEquivariant") equivariance = true;
        if (i.kind == "CataclysmOrderInverted") inverted = true;
    }
    CHECK(equivariance);
    CHECK(inverted);
    CHECK_THROWS_AS((void)make_automorphism(triv, "NOPE"), DomainError);
}

TEST_CASE("oracle basics") {
    // TRIV axes exit order: (x+, y+, x-, y-)
    std::vector<std::pair<int, Point>> marks{{1, {0, Rat(0)}}, {2, {0, Rat(0)}}};
    std::vector<OracleEnd> cyc = oracle_cyclic_order("TRIV", marks);
    REQUIRE(cyc.size() == 4);
    size_t xp = 0;
    for (size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i].space == 1 && cyc[i].sign == Sign::Pos) xp = i;
    CHECK(cyc[(xp + 1) % 4].space == 2);
    CHECK(cyc[(xp + 1) % 4].sign == Sign::Pos);
    CHECK(cyc[(xp + 2) % 4].space == 1);
    CHECK(cyc[(xp + 2) % 4].sign == Sign::Neg);
    CHECK(cyc[(xp + 3) % 4].space == 2);
    CHECK(cyc[(xp + 3) % 4].sign == Sign::Neg);

    // BRANCHPLANE: the branch leaves are in the back of each other
    CHECK(oracle_side("BRANCHPLANE", 1, {1, Rat(0)}, {0, Rat(0)}) == PlaneSide::Back);
    CHECK(oracle_side("BRANCHPLANE", 1, {0, Rat(0)}, {1, Rat(0)}) == PlaneSide::Back);
    // comparable leaves: bigger is in front
    CHECK(oracle_side("TRIV", 1, {0, Rat(2)}, {0, Rat(0)}) == PlaneSide::Front);
    CHECK(oracle_side("TRIV", 1, {0, Rat(-2)}, {0, Rat(0)}) == PlaneSide::Back);
    CHECK(oracle_side("TRIV", 2, {0, Rat(2)}, {0, Rat(0)}) == PlaneSide::Front);

    CHECK_THROWS_AS((void)oracle_cyclic_order("REEB", marks), DomainError);
}
