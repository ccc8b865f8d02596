#pragma once

#include <string>
#include <vector>

#include "planeorder/automorphism.hpp"
#include "planeorder/plane.hpp"

namespace planeorder::catalog {

std::vector<std::string> manifold_names();
std::vector<std::string> plane_names();
std::vector<std::string> automorphism_names();

// LINE, BRANCH2, BRANCH3, CHAIN (validated).
OneManifold make_manifold(const std::string& name);

// TRIV, SKEW1, BRANCHPLANE, BRANCH3PLANE, GAPPLANE, REEB (validated).
Plane make_plane(const std::string& name);

// IDENTITY, SHIFT1, SKEWSHIFT, SWAP built over the given plane. SWAP is
// intentionally invalid on BRANCH3PLANE; callers validate.
PlaneAutomorphism make_automorphism(const Plane& plane, const std::string& name);

// Machine-checked expected features of each fixture.
ValidationReport check_expected_features(const Plane& plane);

// ---------------------------------------------------------------------------
// Geometric oracle: answers computed from explicit planar polyline models,
// independent of the plane/boundary code paths. Truncations are enlarged
// until two successive sizes report the same answer.

struct OracleEnd {
    int space = 1;
    Point leaf;
    Sign sign = Sign::Pos;
    bool operator==(const OracleEnd& o) const {
        return space == o.space && leaf == o.leaf && sign == o.sign;
    }
};

// Cyclic order of the marked leaves' ideal points (exit order along the
// truncation boundary, counterclockwise). Marks are (space, leaf) pairs.
std::vector<OracleEnd> oracle_cyclic_order(const std::string& name,
                                           const std::vector<std::pair<int, Point>>& marks);

// Side of `of` relative to `rel`, both leaves of the same foliation.
PlaneSide oracle_side(const std::string& name, int space, const Point& of, const Point& rel);

// Does the Lambda1 leaf x cross the Lambda2 leaf y?
bool oracle_crossing(const std::string& name, const Point& x, const Point& y);

}  // namespace planeorder::catalog
