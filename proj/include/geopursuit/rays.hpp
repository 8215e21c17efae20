#pragma once

#include <variant>

#include "geopursuit/space.hpp"

namespace geopursuit {

struct PlanarDirection {
    double dx; // unit vector
    double dy;
};

struct DiskIdealPoint {
    double x; // point on the boundary circle of the disk model
    double y;
};

// Descend to the x-axis (if off it), then travel along the axis forever.
struct RiverDirection {
    int sign; // +1 toward +x, -1 toward -x
};

// Toward the hub (if on another ray), then outward along the indexed ray.
struct StarDirection {
    int ray;
};

using RayDirection = std::variant<PlanarDirection, DiskIdealPoint, RiverDirection, StarDirection>;

// A geodesic ray: an isometric image of [0, inf) starting at the basepoint.
// Rays exist only in the noncompact spaces on their whole-space domain; the
// sphere cap is compact and has none.
struct RayDescriptor {
    SpaceHandle space;
    PointValue basepoint;
    RayDirection direction;
};

// Validates the space/domain/direction combination. Throws
// UnsupportedOperation for the sphere cap or any non-whole-space domain, and
// ContractViolation on a malformed direction (zero vector, negative index).
RayDescriptor make_ray(const SpaceHandle& space, const DomainDescriptor& domain,
                       const PointValue& basepoint, const RayDirection& direction);

// Point at arclength s >= 0 along the ray: d(eval(s), eval(s')) == |s - s'|.
PointValue ray_eval(const RayDescriptor& ray, double s);

} // namespace geopursuit
