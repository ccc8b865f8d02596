#pragma once

#include <map>
#include <string>
#include <vector>

#include "planeorder/plane.hpp"

namespace planeorder {

// Orientation-preserving piecewise-linear bijection of the line with rational
// breakpoints. Stored as knots (x, f(x)) plus the two unbounded slopes.
class PLMap {
  public:
    PLMap() : knots_{{Rat(0), Rat(0)}} {}
    static PLMap identity() { return PLMap(); }
    static PLMap affine(const Rat& slope, const Rat& offset);
    static PLMap from_knots(std::vector<std::pair<Rat, Rat>> knots, Rat slope_lo, Rat slope_hi);

    Rat operator()(const Rat& x) const;
    PLMap inverse() const;
    PLMap compose_after(const PLMap& inner) const;  // (*this) o inner

    bool orientation_preserving() const;
    bool is_identity() const;
    bool identity_on(const RatInterval& iv) const;
    bool operator==(const PLMap& o) const;
    bool operator!=(const PLMap& o) const { return !(*this == o); }
    bool equal_on(const PLMap& o, const RatInterval& iv) const;

    const std::vector<std::pair<Rat, Rat>>& knots() const { return knots_; }
    Rat slope_lo() const { return slo_; }
    Rat slope_hi() const { return shi_; }

    struct Segment {
        RatInterval domain;
        Rat slope, offset;  // f(x) = slope*x + offset on domain
    };
    std::vector<Segment> segments() const;
    RatInterval image_of(const RatInterval& iv) const;
    RatInterval preimage_of(const RatInterval& iv) const;

  private:
    std::vector<std::pair<Rat, Rat>> knots_;  // nonempty, strictly increasing in x and y
    Rat slo_ = 1, shi_ = 1;
    void normalize();
};

// Chart permutation plus per-chart PL maps for one leaf space.
struct ChartMap {
    std::map<int, int> perm;
    std::map<int, PLMap> maps;

    static ChartMap identity(const OneManifold& m);
    int perm_at(int chart) const { return perm.at(chart); }
    const PLMap& map_at(int chart) const { return maps.at(chart); }
};

struct PlaneAutomorphism {
    const Plane* plane = nullptr;
    std::string name;
    ChartMap map1, map2;

    const ChartMap& chart_map(int space) const { return space == 1 ? map1 : map2; }
    Point apply(int space, Point p) const;
    End apply_end(int space, const End& e) const;
    Site apply_site(int space, const Site& s) const;
    bool is_identity_on_plane() const;
    bool is_identity_on_ends() const;
};

ValidationReport validate_automorphism(const Plane& P, const PlaneAutomorphism& g);
PlaneAutomorphism identity_automorphism(const Plane& P);
PlaneAutomorphism compose(const PlaneAutomorphism& g, const PlaneAutomorphism& h);  // g o h
PlaneAutomorphism inverse(const PlaneAutomorphism& g);
bool same_map(const PlaneAutomorphism& g, const PlaneAutomorphism& h);

// All distinct products of generators and their inverses up to the given word
// length, the identity included.
std::vector<PlaneAutomorphism> words_up_to(const Plane& P,
                                           const std::vector<PlaneAutomorphism>& gens,
                                           int max_len);

}  // namespace planeorder
