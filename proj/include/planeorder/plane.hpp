#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "planeorder/interval_set.hpp"
#include "planeorder/leafspace.hpp"

namespace planeorder {

enum class PlaneSide { Front, Back };

// One piece of an endpoint track: over `domain` (coords of a Lambda1 chart)
// the crossing-interval endpoint is either a fixed end of Lambda2 or the point
// slope*t + offset in a Lambda2 chart.
struct AffineValue {
    int chart = 0;
    Rat slope, offset;
    Rat at(const Rat& t) const { return slope * t + offset; }
};

struct TrackValue {
    bool is_end = false;
    int end_chart = 0;
    Sign end_sign = Sign::Pos;
    AffineValue affine;

    static TrackValue end(int chart, Sign s) {
        TrackValue v;
        v.is_end = true;
        v.end_chart = chart;
        v.end_sign = s;
        return v;
    }
    static TrackValue affine_of(int chart, Rat slope, Rat offset) {
        TrackValue v;
        v.affine = {chart, std::move(slope), std::move(offset)};
        return v;
    }
};

struct TrackPiece {
    RatInterval domain;
    TrackValue value;
};

struct Track {
    std::vector<TrackPiece> pieces;
};

struct CrossingMap {
    std::map<int, Track> lo, hi;  // per Lambda1 chart id
};

// Relation selectors for coordinate sets relative to a site.
enum class Rel { Lt, Le, Gt, Ge };

// {c on chart `chart` : (chart,c) rel site} as an exact interval set.
RatIntervalSet coords_rel_site(const OneManifold& m, int chart, const Site& site, Rel rel);

// {p : lo rlo p and p rhi hi}; std::nullopt bounds mean unconstrained.
ManifoldSet set_between(const OneManifold& m, const std::optional<Site>& lo,
                        const std::optional<Site>& hi, Rel rlo = Rel::Lt, Rel rhi = Rel::Lt);

Site track_value_site(const OneManifold& m2, const TrackValue& v, const Rat& t);

// Common refinement of the lo/hi piece tilings of one chart.
struct RefinedPiece {
    RatInterval domain;
    TrackValue lo, hi;
};
std::vector<RefinedPiece> refine_tracks(const Track& lo, const Track& hi);

// {t in domain : value_a(t) < value_b(t)} in the site order of m2.
RatIntervalSet tset_value_less(const OneManifold& m2, const TrackValue& a, const TrackValue& b,
                               const RatInterval& domain);
// Are two track values equal as site functions over the whole domain?
bool values_equal_on(const OneManifold& m2, const TrackValue& a, const TrackValue& b,
                     const RatInterval& domain);

struct EmbeddedInterval {
    Site lo, hi;
    std::vector<int> charts;
    ManifoldSet set;
};

struct OrderedCataclysm {
    int space = 1;
    Cataclysm cataclysm;
    std::vector<Point> sorted;  // increasing in the cataclysm order
    int rank(const Point& p) const;
};

// Bifoliated plane presentation: two leaf spaces plus lo/hi crossing tracks
// for every Lambda1 chart (J is derived).
class Plane {
  public:
    std::string name;
    OneManifold lambda1, lambda2;
    CrossingMap crossing;

    ValidationReport validate();
    bool validated() const { return validated_; }

    const OneManifold& space(int i) const { return i == 1 ? lambda1 : lambda2; }

    Site lo_site(Point x) const;
    Site hi_site(Point x) const;
    EmbeddedInterval crossing_interval(Point x) const;
    EmbeddedInterval co_crossing_interval(Point y) const;
    bool crosses(const Point& x, const Point& y) const;  // y in I(x)
    ManifoldSet crossing_set(Point x) const;             // I(x) as a set
    ManifoldSet co_crossing_set(Point y) const;          // J(y) as a set
    // I(m) for a space-1 member, J(m) for space-2.
    ManifoldSet member_cross_set(int space, const Point& m) const;

    PlaneSide side_via_transversal(Point s1, Point s2, Point t) const;

    std::vector<Point> cataclysm_order(int space, const Cataclysm& k) const;
    // Order computed from an explicit witness leaf coordinate (for
    // witness-independence checks). Throws NoCommonWitness if unusable.
    std::vector<Point> cataclysm_order_at(int space, const Cataclysm& k,
                                          const Rat& witness_coord) const;
    Rat default_witness_coord(int space, const Cataclysm& k) const;
    RatInterval witness_window(int space, const Cataclysm& k) const;
    const std::vector<OrderedCataclysm>& ordered_cataclysms(int space) const;
    const OrderedCataclysm& ordered_cataclysm_of(int space, const Point& member) const;

    // W(e): opposite-space leaves whose crossing interval eventually contains a
    // final ray toward e.
    ManifoldSet product_witnesses(int space, const End& e) const;

    // Critical coordinates per chart (cuts, breakpoints, endpoint images and
    // preimages, cataclysm values).
    const std::map<int, std::set<Rat>>& criticals(int space) const {
        return space == 1 ? crit1_ : crit2_;
    }
    std::vector<Rat> probe_coords(int space, int chart) const;  // criticals + midpoints

  private:
    bool validated_ = false;
    std::map<int, std::set<Rat>> crit1_, crit2_;
    std::vector<OrderedCataclysm> ordered1_, ordered2_;

    const Track& lo_track(int chart) const;
    const Track& hi_track(int chart) const;
    void compute_criticals();
    void compute_orders();
    void check_structure(ValidationReport& rep) const;
    void check_shared_agreement(ValidationReport& rep) const;
    void check_lo_less_hi(ValidationReport& rep) const;
    void check_co_crossings(ValidationReport& rep) const;
    void check_branch_continuity(ValidationReport& rep) const;
    void check_witness_independence(ValidationReport& rep);
};

// Endpoint site of a connected Hausdorff chain, plus the non-separated limit
// points it dangles at (if the bound is finite and open).
struct ChainEndpoint {
    Site site;
    bool attained = false;          // the set contains its endpoint
    std::vector<Point> limit_sites;  // canonical germ-class points at the bound
};
ChainEndpoint chain_sup(const OneManifold& m, const ManifoldSet& s);
ChainEndpoint chain_inf(const OneManifold& m, const ManifoldSet& s);

}  // namespace planeorder
