#pragma once

#include <random>
#include <variant>

#include "geopursuit/point.hpp"

namespace geopursuit {

// Point-equality tolerance shared by all spaces.
inline constexpr double kPointEqTol = 1e-10;

// Default geodesic-identity tolerance: tighter where arithmetic is exact
// (planar and tree spaces), looser where transcendental formulas are involved.
double default_geo_tol(SpaceKind kind);

// One of the five bundled uniquely geodesic model spaces. The sphere space is
// the closed cap of colatitude radius pi/2 - sphere_cap_margin; the margin
// keeps every pair of points strictly inside an open hemisphere, where
// geodesics are unique and caps are strongly convex.
struct SpaceHandle {
    SpaceKind kind;
    double sphere_cap_margin = 1e-3;
};

SpaceHandle make_space(SpaceKind kind);

struct WholeSpace {};

struct ClosedBall {
    PointValue center;
    double radius;
};

// {p : lo <= n . p <= hi} in the Euclidean plane.
struct HalfPlaneStrip {
    double nx;
    double ny;
    double lo;
    double hi;
};

// A closed convex arena inside one space. Factories validate the per-space
// constraints (sphere balls must fit inside the cap).
class DomainDescriptor {
public:
    static DomainDescriptor whole();
    static DomainDescriptor ball(const SpaceHandle& space, PointValue center, double radius);
    static DomainDescriptor strip(double nx, double ny, double lo, double hi);

    bool is_whole() const { return std::holds_alternative<WholeSpace>(rep_); }
    bool is_ball() const { return std::holds_alternative<ClosedBall>(rep_); }
    bool is_strip() const { return std::holds_alternative<HalfPlaneStrip>(rep_); }
    const ClosedBall& as_ball() const;
    const HalfPlaneStrip& as_strip() const;

private:
    using Rep = std::variant<WholeSpace, ClosedBall, HalfPlaneStrip>;
    explicit DomainDescriptor(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

bool domain_contains(const SpaceHandle& space, const DomainDescriptor& domain,
                     const PointValue& p, double tol);

// Farthest point p on the segment [from, toward] with d(from, p) <= max_step
// and p inside the domain. Bisection on the segment parameter; `from` must lie
// in the domain.
PointValue clip_to_domain(const SpaceHandle& space, const DomainDescriptor& domain,
                          const PointValue& from, const PointValue& toward, double max_step);

// Draws a point of the domain. Whole-space domains are sampled within
// distance `whole_extent` of the space's origin; ball domains are sampled by
// radius + direction from the center (nonuniform, which is fine for probing).
PointValue sample_in_domain(const SpaceHandle& space, const DomainDescriptor& domain,
                            std::mt19937_64& rng, double whole_extent = 5.0);

} // namespace geopursuit
