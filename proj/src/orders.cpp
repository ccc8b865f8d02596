#include "planeorder/orders.hpp"

#include <algorithm>

namespace planeorder {

namespace {

const OrderedCataclysm& cataclysm_of_cusp(const Plane& P, int space, const Cusp& c) {
    const OneManifold& m = P.space(space);
    for (const OrderedCataclysm& oc : P.ordered_cataclysms(space)) {
        if (oc.cataclysm.side == c.side && oc.rank(c.exit) >= 0 && oc.rank(c.enter) >= 0)
            return oc;
    }
    throw DomainError("DegenerateOrder", "cusp pair " + m.point_str(c.exit) + ", " +
                                             m.point_str(c.enter) +
                                             " is not inside a single cataclysm");
}

}  // namespace

long zhao_n(const Plane& P, int space, const End& e1, const End& e2) {
    const OneManifold& m = P.space(space);
    if (e1 == e2) throw DomainError("DegenerateOrder", "ends must be distinct");
    if (e1.sign != e2.sign) throw DomainError("DegenerateOrder", "ends must have the same sign");
    BrokenPath path = broken_path(m, Site::of(e1), Site::of(e2));
    long n = 0;
    for (const Cusp& c : path.cusps) {
        const OrderedCataclysm& oc = cataclysm_of_cusp(P, space, c);
        bool enter_first = oc.rank(c.enter) < oc.rank(c.exit);
        if (c.side == GlueSide::Below)
            n += enter_first ? 1 : -1;
        else
            n += enter_first ? -1 : 1;
    }
    if (n == 0)
        throw DomainError("DegenerateOrder", "vanishing cusp count between distinct ends " +
                                                 m.end_str(e1) + " and " + m.end_str(e2));
    return n;
}

Order compare_ends(const Plane& P, int space1, const End& e1, int space2, const End& e2) {
    if (space1 != space2) return space1 < space2 ? Order::Less : Order::Greater;
    if (e1 == e2) return Order::Equal;
    if (e1.sign != e2.sign) return e1.sign == Sign::Pos ? Order::Less : Order::Greater;
    return zhao_n(P, space1, e1, e2) < 0 ? Order::Less : Order::Greater;
}

std::vector<std::pair<int, End>> end_enumeration(const Plane& P) {
    std::vector<std::pair<int, End>> out;
    for (int space : {1, 2})
        for (const End& e : P.space(space).ends()) out.push_back({space, e});
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return compare_ends(P, a.first, a.second, b.first, b.second) == Order::Less;
    });
    return out;
}

namespace {

// Fixed diagonal enumeration of the dyadic rationals: 0, then for each level
// L = 1, 2, ... the reduced fractions k/2^d with d <= L and |k| <= L * 2^d.
struct DyadicSweep {
    long level = 0;
    long d = 0;
    long k = 0;
    bool started = false;

    Rat next() {
        for (;;) {
            if (!started) {
                started = true;
                level = 1;
                d = 0;
                k = -(level << d) - 1;
            }
            ++k;
            long bound = level << d;
            if (k > bound) {
                ++d;
                if (d > level) {
                    ++level;
                    d = 0;
                }
                k = -(level << d) - 1;
                continue;
            }
            if (k == 0) continue;  // 0 was probed first implicitly via level 1, k=0 skip
            if (d > 0 && k % 2 == 0) continue;
            return Rat(k, 1L << d);
        }
    }
};

}  // namespace

OrderDecision compare_automorphisms(const Plane& P, const PlaneAutomorphism& g,
                                    const PlaneAutomorphism& h) {
    for (const PlaneAutomorphism* a : {&g, &h}) {
        ValidationReport rep = validate_automorphism(P, *a);
        if (!rep.ok)
            throw DomainError("InvalidAutomorphism", a->name + ": " + rep.issues.front().detail);
    }

    // Stage 1: first end (in the invariant enumeration) moved differently.
    for (const auto& [space, e] : end_enumeration(P)) {
        End ge = g.apply_end(space, e);
        End he = h.apply_end(space, e);
        if (ge == he) continue;
        OrderDecision d;
        d.value = compare_ends(P, space, ge, space, he);
        d.witness = "stage 1: end " + P.space(space).end_str(e) + " of lambda" +
                    std::to_string(space) + ": " + P.space(space).end_str(ge) + " vs " +
                    P.space(space).end_str(he);
        return d;
    }

    // Stage 2: same coset behaviour; sweep charts in id order, probe dyadics
    // only where exact PL comparison says the maps differ.
    for (int space : {1, 2}) {
        const OneManifold& m = P.space(space);
        const ChartMap& cg = g.chart_map(space);
        const ChartMap& ch = h.chart_map(space);
        for (int c = 0; c < m.chart_count(); ++c) {
            if (cg.perm_at(c) != ch.perm_at(c))
                throw DomainError("InvalidAutomorphism",
                                  "equal end actions with different chart permutations");
            const PLMap& fg = cg.map_at(c);
            const PLMap& fh = ch.map_at(c);
            if (fg == fh) continue;
            Rat zero(0);
            if (fg(zero) != fh(zero)) {
                OrderDecision d;
                d.value = fg(zero) < fh(zero) ? Order::Less : Order::Greater;
                d.witness = "stage 2: chart lambda" + std::to_string(space) + "-" + m.label(c) +
                            ", probe 0: " + rat_str(fg(zero)) +
                            (d.value == Order::Less ? " < " : " > ") + rat_str(fh(zero));
                return d;
            }
            DyadicSweep sweep;
            for (int guard = 0; guard < 4000000; ++guard) {
                Rat x = sweep.next();
                Rat gy = fg(x), hy = fh(x);
                if (gy == hy) continue;
                OrderDecision d;
                d.value = gy < hy ? Order::Less : Order::Greater;
                d.witness = "stage 2: chart lambda" + std::to_string(space) + "-" + m.label(c) +
                            ", probe " + rat_str(x) + ": " + rat_str(gy) +
                            (gy < hy ? " < " : " > ") + rat_str(hy);
                return d;
            }
            throw DomainError("DegenerateOrder", "dyadic sweep failed to separate PL maps");
        }
    }
    return {Order::Equal, "equal as plane maps"};
}

}  // namespace planeorder
