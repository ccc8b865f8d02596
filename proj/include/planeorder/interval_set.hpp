#pragma once

#include <map>
#include <vector>

#include "planeorder/leafspace.hpp"

namespace planeorder {

// Finite union of rational intervals on one chart line, kept sorted and
// disjoint (adjacent pieces merged when they touch).
class RatIntervalSet {
  public:
    RatIntervalSet() = default;
    explicit RatIntervalSet(const RatInterval& iv) { add(iv); }
    static RatIntervalSet full() { return RatIntervalSet(RatInterval::full()); }

    void add(const RatInterval& iv);
    void add(const RatIntervalSet& o);
    RatIntervalSet intersect(const RatInterval& iv) const;
    RatIntervalSet intersect(const RatIntervalSet& o) const;

    bool empty() const { return pieces_.empty(); }
    bool contains(const Rat& x) const;
    bool contains_interval(const RatInterval& iv) const;
    bool contains_set(const RatIntervalSet& o) const;
    bool contains_germ_below(const Rat& c) const;
    bool contains_germ_above(const Rat& c) const;
    bool contains_neg_ray() const { return !pieces_.empty() && pieces_.front().lo_inf; }
    bool contains_pos_ray() const { return !pieces_.empty() && pieces_.back().hi_inf; }
    bool has_interior() const;

    // Preimage of this set under t -> slope*t + offset (exact; slope may be 0).
    RatIntervalSet affine_preimage(const Rat& slope, const Rat& offset) const;

    const std::vector<RatInterval>& pieces() const { return pieces_; }
    std::string str() const;

  private:
    std::vector<RatInterval> pieces_;
    void normalize();
};

// Subset of a OneManifold given per chart; a piece on a chart covers the
// given coordinates of that chart line (shared coordinates included).
class ManifoldSet {
  public:
    void add(int chart, const RatInterval& iv);
    void add(int chart, const RatIntervalSet& s);
    bool empty() const;
    bool contains(const OneManifold& m, const Point& p) const;
    // All coordinates of the set expressed on `chart` (折 through shared regions).
    RatIntervalSet on_chart(const OneManifold& m, int chart) const;
    bool contains_set(const OneManifold& m, const ManifoldSet& o) const;
    bool connected(const OneManifold& m) const;
    // No two members of any cataclysm both inside (subspace is Hausdorff).
    bool hausdorff(const OneManifold& m) const;
    bool has_interior() const;
    // Canonical interior sample points, one per piece (midpoints etc).
    std::vector<Point> sample_points(const OneManifold& m) const;
    Point representative(const OneManifold& m) const;

    const std::map<int, RatIntervalSet>& parts() const { return parts_; }
    std::string str(const OneManifold& m) const;

  private:
    std::map<int, RatIntervalSet> parts_;
};

}  // namespace planeorder
