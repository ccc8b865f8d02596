#pragma once

#include "planeorder/automorphism.hpp"
#include "planeorder/plane.hpp"

namespace planeorder {

struct OrderDecision {
    Order value = Order::Equal;
    std::string witness;  // first discriminating stage
};

// Zhao's count: positive minus negative cusps along the broken path between
// two distinct same-sign ends of a leaf space. Below cusps count +1 when the
// entered member precedes the exited one in the cataclysm order; Above cusps
// count +1 in the opposite case (this is the Below rule on the mirrored
// manifold). Throws DegenerateOrder when the sum vanishes for distinct ends.
long zhao_n(const Plane& P, int space, const End& e1, const End& e2);

// Layered total order on all ends: Lambda1 before Lambda2, positive before
// negative, Zhao order inside a sign class.
Order compare_ends(const Plane& P, int space1, const End& e1, int space2, const End& e2);

// All ends of both spaces sorted by compare_ends.
std::vector<std::pair<int, End>> end_enumeration(const Plane& P);

// Two-stage left-invariant comparator: first difference of the end actions in
// the enumeration order, then per-chart first differing dyadic probe.
OrderDecision compare_automorphisms(const Plane& P, const PlaneAutomorphism& g,
                                    const PlaneAutomorphism& h);

}  // namespace planeorder
