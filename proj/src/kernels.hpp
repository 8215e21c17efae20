#pragma once

// Per-space closed-form kernels behind the public metric operations. Every
// space here is uniquely geodesic on its bundled extent, so each kernel can
// return *the* geodesic with no search.

#include <algorithm>
#include <cmath>
#include <complex>

#include "geopursuit/errors.hpp"
#include "geopursuit/point.hpp"
#include "geopursuit/space.hpp"

namespace geopursuit::kernels {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Euclidean plane

inline double euclid_dist(const PlanarPoint& p, const PlanarPoint& q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

inline PointValue euclid_geodesic(const PlanarPoint& p, const PlanarPoint& q, double t) {
    return PointValue::make_planar(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y));
}

inline PointValue euclid_extend(const PlanarPoint& p, const PlanarPoint& q, double extra) {
    double len = euclid_dist(p, q);
    if (len == 0.0) throw ContractViolation("extension direction undefined: coincident points");
    double f = extra / len;
    return PointValue::make_planar(q.x + f * (q.x - p.x), q.y + f * (q.y - p.y));
}

// ---------------------------------------------------------------------------
// Poincare disk
//
// Distances use d(p,q) = 2 atanh(|q-p| / |1 - conj(p) q|), the stable form of
// arcosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))). Geodesics are evaluated by
// Moebius transport: move p to the origin, walk along a diameter, move back.

using Cx = std::complex<double>;

inline Cx disk_cx(const DiskPoint& p) { return {p.x, p.y}; }

inline PointValue disk_point(Cx z) {
    double n = std::abs(z);
    if (n >= 1.0) z *= std::nextafter(1.0, 0.0) / n; // rounding guard at the ideal boundary
    return PointValue::make_disk(z.real(), z.imag());
}

// (z - a) / (1 - conj(a) z): disk automorphism sending a to the origin.
inline Cx mobius_to_origin(Cx a, Cx z) { return (z - a) / (1.0 - std::conj(a) * z); }

inline Cx mobius_from_origin(Cx a, Cx w) { return (w + a) / (1.0 + std::conj(a) * w); }

inline double disk_dist(const DiskPoint& p, const DiskPoint& q) {
    Cx zp = disk_cx(p), zq = disk_cx(q);
    double num = std::abs(zq - zp);
    double den = std::abs(1.0 - std::conj(zp) * zq);
    return 2.0 * std::atanh(num / den);
}

// Point at hyperbolic arclength s from p toward q (s may exceed d(p,q)).
inline PointValue disk_walk(const DiskPoint& p, const DiskPoint& q, double s) {
    Cx zp = disk_cx(p), zq = disk_cx(q);
    Cx delta = mobius_to_origin(zp, zq);
    double r = std::abs(delta);
    if (r == 0.0) {
        if (s == 0.0) return PointValue::make_disk(p.x, p.y);
        throw ContractViolation("extension direction undefined: coincident points");
    }
    double rho = std::tanh(0.5 * s);
    Cx w = delta * (rho / r);
    return disk_point(mobius_from_origin(zp, w));
}

inline PointValue disk_geodesic(const DiskPoint& p, const DiskPoint& q, double t) {
    if (p.x == q.x && p.y == q.y) return PointValue::make_disk(p.x, p.y);
    return disk_walk(p, q, t * disk_dist(p, q));
}

inline PointValue disk_extend(const DiskPoint& p, const DiskPoint& q, double extra) {
    return disk_walk(p, q, disk_dist(p, q) + extra);
}

// ---------------------------------------------------------------------------
// Sphere cap (unit sphere, colatitude < pi/2)

struct Vec3 {
    double x, y, z;
};

inline Vec3 sphere_embed(const SpherePoint& p) {
    double st = std::sin(p.colat);
    return {st * std::cos(p.lon), st * std::sin(p.lon), std::cos(p.colat)};
}

inline PointValue sphere_unembed(const Vec3& v) {
    double colat = std::atan2(std::hypot(v.x, v.y), v.z);
    // rounding guard: cap points stay strictly above the equator
    colat = std::min(colat, std::nextafter(kPi / 2.0, 0.0));
    double lon = std::atan2(v.y, v.x);
    return PointValue::make_sphere(colat, lon);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double sphere_dist(const SpherePoint& p, const SpherePoint& q) {
    Vec3 a = sphere_embed(p), b = sphere_embed(q);
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

// Walks arclength s along the great circle from p toward q. Both points lie
// strictly inside an open hemisphere, so the angle between them is < pi and
// the direction is well defined.
inline Vec3 sphere_walk_embedded(const SpherePoint& p, const SpherePoint& q, double s) {
    Vec3 a = sphere_embed(p), b = sphere_embed(q);
    double alpha = std::atan2(norm(cross(a, b)), dot(a, b));
    if (alpha == 0.0) {
        if (s == 0.0) return a;
        throw ContractViolation("extension direction undefined: coincident points");
    }
    double sa = std::sin(alpha);
    Vec3 u{(b.x - a.x * std::cos(alpha)) / sa, (b.y - a.y * std::cos(alpha)) / sa,
           (b.z - a.z * std::cos(alpha)) / sa};
    double cs = std::cos(s), sn = std::sin(s);
    return {a.x * cs + u.x * sn, a.y * cs + u.y * sn, a.z * cs + u.z * sn};
}

inline PointValue sphere_geodesic(const SpherePoint& p, const SpherePoint& q, double t) {
    if (p.colat == q.colat && p.lon == q.lon) return PointValue::make_sphere(p.colat, p.lon);
    double alpha = sphere_dist(p, q);
    return sphere_unembed(sphere_walk_embedded(p, q, t * alpha));
}

// Continuation beyond q, truncated where the walk would leave the cap of
// colatitude pi/2 - margin/2 (slightly wider than the space extent, so
// downstream domain clipping still sees a valid point).
inline PointValue sphere_extend(const SpherePoint& p, const SpherePoint& q, double extra,
                                double cap_margin) {
    double base = sphere_dist(p, q);
    if (base == 0.0) throw ContractViolation("extension direction undefined: coincident points");
    double z_limit = std::cos(kPi / 2.0 - 0.5 * cap_margin);
    auto walk = [&](double s) { return sphere_walk_embedded(p, q, base + s); };
    if (walk(extra).z >= z_limit) return sphere_unembed(walk(extra));
    double lo = 0.0, hi = extra;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (walk(mid).z >= z_limit ? lo : hi) = mid;
    }
    return sphere_unembed(walk(lo));
}

// ---------------------------------------------------------------------------
// River metric
//
// d((x1,x2),(y1,y2)) = |x2-y2| when x1 == y1, else |x2| + |y2| + |x1-y1|.
// Geodesics with distinct abscissas descend to the axis, run along it, and
// ascend; with equal abscissas they are vertical segments.

inline double river_dist(const RiverPoint& p, const RiverPoint& q) {
    if (p.x == q.x) return std::abs(p.y - q.y);
    return std::abs(p.y) + std::abs(q.y) + std::abs(p.x - q.x);
}

inline double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Point at arclength s from p toward q (0 <= s <= d(p,q)).
inline PointValue river_walk(const RiverPoint& p, const RiverPoint& q, double s) {
    if (p.x == q.x) {
        double len = std::abs(q.y - p.y);
        if (s >= len) return PointValue::make_river(q.x, q.y);
        return PointValue::make_river(p.x, p.y + s * sign_of(q.y - p.y));
    }
    double down = std::abs(p.y);
    double along = std::abs(q.x - p.x);
    if (s <= down) return PointValue::make_river(p.x, (down - s) * sign_of(p.y));
    if (s <= down + along) return PointValue::make_river(p.x + (s - down) * sign_of(q.x - p.x), 0.0);
    double up = s - down - along;
    if (up >= std::abs(q.y)) return PointValue::make_river(q.x, q.y);
    return PointValue::make_river(q.x, up * sign_of(q.y));
}

inline PointValue river_geodesic(const RiverPoint& p, const RiverPoint& q, double t) {
    return river_walk(p, q, t * river_dist(p, q));
}

// Continuation beyond q: vertical legs keep their heading (the full vertical
// line at fixed abscissa is a geodesic), axis legs keep running along the
// axis.
inline PointValue river_extend(const RiverPoint& p, const RiverPoint& q, double extra) {
    if (river_dist(p, q) == 0.0)
        throw ContractViolation("extension direction undefined: coincident points");
    if (p.x == q.x) {
        return PointValue::make_river(q.x, q.y + extra * sign_of(q.y - p.y));
    }
    if (q.y != 0.0) return PointValue::make_river(q.x, q.y + extra * sign_of(q.y));
    return PointValue::make_river(q.x + extra * sign_of(q.x - p.x), 0.0);
}

// ---------------------------------------------------------------------------
// Star tree
//
// Countably many rays glued at the hub: same-ray distance |s - s'|, otherwise
// s + s' through the hub.

inline double star_dist(const StarPoint& p, const StarPoint& q) {
    if (p.ray == q.ray) return std::abs(p.s - q.s);
    return p.s + q.s;
}

inline PointValue star_walk(const StarPoint& p, const StarPoint& q, double s) {
    if (p.ray == q.ray) {
        double len = std::abs(q.s - p.s);
        if (s >= len) return PointValue::make_star(q.ray, q.s);
        return PointValue::make_star(p.ray, p.s + s * sign_of(q.s - p.s));
    }
    if (s <= p.s) return PointValue::make_star(p.ray, p.s - s);
    return PointValue::make_star(q.ray, s - p.s);
}

inline PointValue star_geodesic(const StarPoint& p, const StarPoint& q, double t) {
    return star_walk(p, q, t * star_dist(p, q));
}

// Ray index used when a continuation passes through the hub; any ray other
// than the incoming one extends the geodesic, so pick the smallest.
inline int star_detour_ray(int incoming) { return incoming == 0 ? 1 : 0; }

inline PointValue star_extend(const StarPoint& p, const StarPoint& q, double extra) {
    if (star_dist(p, q) == 0.0)
        throw ContractViolation("extension direction undefined: coincident points");
    if (q.s == 0.0) {
        // arrived at the hub; continue outward on a fresh ray
        return PointValue::make_star(star_detour_ray(p.ray), extra);
    }
    if (p.ray != q.ray || q.s > p.s) return PointValue::make_star(q.ray, q.s + extra);
    // heading toward the hub on the shared ray
    if (extra <= q.s) return PointValue::make_star(q.ray, q.s - extra);
    return PointValue::make_star(star_detour_ray(q.ray), extra - q.s);
}

} // namespace geopursuit::kernels
