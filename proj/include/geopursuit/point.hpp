#pragma once

#include <string_view>
#include <utility>
#include <variant>

#include "geopursuit/errors.hpp"

namespace geopursuit {

enum class SpaceKind {
    euclidean,    // the plane R^2
    poincare,     // open unit disk with the hyperbolic metric
    sphere_cap,   // open upper cap of the unit sphere, colatitude < pi/2
    river,        // R^2 with the river metric (an R-tree)
    star,         // countably many rays glued at a hub (an R-tree)
};

std::string_view space_name(SpaceKind kind);
SpaceKind space_kind_from_name(std::string_view name);

struct PlanarPoint {
    double x;
    double y;
};

struct DiskPoint {
    double x;
    double y;
};

struct SpherePoint {
    double colat; // colatitude in [0, pi/2)
    double lon;   // longitude in [0, 2*pi)
};

struct RiverPoint {
    double x;
    double y;
};

struct StarPoint {
    int ray;  // nonnegative; 0 when s == 0 (the hub is canonical)
    double s; // arclength from the hub, >= 0
};

// Space-tagged coordinate record. Factories validate the per-space
// invariants; accessors throw ContractViolation on a tag mismatch.
class PointValue {
public:
    static PointValue make_planar(double x, double y);
    static PointValue make_disk(double x, double y);
    static PointValue make_sphere(double colat, double lon);
    static PointValue make_river(double x, double y);
    static PointValue make_star(int ray, double s);

    // Builds a point from the two-column coordinate convention used by the
    // CLI and CSV export: (x,y) for planar-like spaces, (colat,lon) for the
    // sphere, (ray,s) for the star tree.
    static PointValue from_coords(SpaceKind kind, double c1, double c2);

    SpaceKind kind() const;

    const PlanarPoint& planar() const;
    const DiskPoint& disk() const;
    const SpherePoint& sphere() const;
    const RiverPoint& river() const;
    const StarPoint& star() const;

    std::pair<double, double> coords() const;

private:
    using Rep = std::variant<PlanarPoint, DiskPoint, SpherePoint, RiverPoint, StarPoint>;
    explicit PointValue(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

} // namespace geopursuit
