#include "geopursuit/space.hpp"

#include <cmath>
#include <random>

#include "geopursuit/metric.hpp"
#include "geopursuit/rays.hpp"
#include "kernels.hpp"

namespace geopursuit {

namespace {

constexpr int kStarSampleRays = 8; // whole-space star samples draw from this palette

bool finite2(double a, double b) { return std::isfinite(a) && std::isfinite(b); }

} // namespace

double default_geo_tol(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::poincare:
    case SpaceKind::sphere_cap:
        return 1e-7;
    default:
        return 1e-9;
    }
}

SpaceHandle make_space(SpaceKind kind) { return SpaceHandle{kind}; }

DomainDescriptor DomainDescriptor::whole() { return DomainDescriptor(Rep{WholeSpace{}}); }

DomainDescriptor DomainDescriptor::ball(const SpaceHandle& space, PointValue center,
                                        double radius) {
    if (center.kind() != space.kind)
        throw ContractViolation("ball center does not belong to the space");
    if (!std::isfinite(radius) || radius <= 0.0)
        throw ContractViolation("ball radius must be positive and finite");
    if (space.kind == SpaceKind::sphere_cap) {
        double reach = center.sphere().colat + radius;
        if (reach > kernels::kPi / 2.0 - space.sphere_cap_margin)
            throw ContractViolation("sphere ball leaves the cap; shrink the radius");
    }
    return DomainDescriptor(Rep{ClosedBall{std::move(center), radius}});
}

DomainDescriptor DomainDescriptor::strip(double nx, double ny, double lo, double hi) {
    if (!finite2(nx, ny) || (nx == 0.0 && ny == 0.0))
        throw ContractViolation("strip normal must be a nonzero finite vector");
    if (!finite2(lo, hi) || lo > hi) throw ContractViolation("strip bounds must satisfy lo <= hi");
    double n = std::hypot(nx, ny);
    return DomainDescriptor(Rep{HalfPlaneStrip{nx / n, ny / n, lo / n, hi / n}});
}

const ClosedBall& DomainDescriptor::as_ball() const {
    if (const auto* b = std::get_if<ClosedBall>(&rep_)) return *b;
    throw ContractViolation("domain is not a ball");
}

const HalfPlaneStrip& DomainDescriptor::as_strip() const {
    if (const auto* s = std::get_if<HalfPlaneStrip>(&rep_)) return *s;
    throw ContractViolation("domain is not a strip");
}

bool domain_contains(const SpaceHandle& space, const DomainDescriptor& domain,
                     const PointValue& p, double tol) {
    if (p.kind() != space.kind) throw ContractViolation("point does not belong to the space");
    if (domain.is_whole()) {
        if (space.kind == SpaceKind::sphere_cap)
            return p.sphere().colat <= kernels::kPi / 2.0 - space.sphere_cap_margin + tol;
        return true; // the point-type invariants already pin the extent
    }
    if (domain.is_ball()) {
        const ClosedBall& b = domain.as_ball();
        return distance(space, b.center, p) <= b.radius + tol;
    }
    const HalfPlaneStrip& s = domain.as_strip();
    if (space.kind != SpaceKind::euclidean)
        throw UnsupportedOperation("strip domains exist only in the Euclidean plane");
    double v = s.nx * p.planar().x + s.ny * p.planar().y;
    return s.lo - tol <= v && v <= s.hi + tol;
}

PointValue clip_to_domain(const SpaceHandle& space, const DomainDescriptor& domain,
                          const PointValue& from, const PointValue& toward, double max_step) {
    if (!std::isfinite(max_step) || max_step < 0.0)
        throw ContractViolation("max_step must be nonnegative and finite");
    if (!domain_contains(space, domain, from, kPointEqTol))
        throw ContractViolation("clip_to_domain: starting point is outside the domain");
    double d = distance(space, from, toward);
    if (d == 0.0 || max_step == 0.0) return from;
    double t_hi = std::min(1.0, max_step / d);
    auto at = [&](double t) { return geodesic_point(space, from, toward, t); };
    if (domain_contains(space, domain, at(t_hi), kPointEqTol)) return at(t_hi);
    // convexity of the domain makes the feasible parameter set an interval
    double lo = 0.0, hi = t_hi;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (domain_contains(space, domain, at(mid), kPointEqTol) ? lo : hi) = mid;
    }
    return at(lo);
}

namespace {

PointValue whole_space_sample(const SpaceHandle& space, std::mt19937_64& rng, double extent) {
    std::uniform_real_distribution<double> sym(-extent, extent);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (space.kind) {
    case SpaceKind::euclidean:
        return PointValue::make_planar(sym(rng), sym(rng));
    case SpaceKind::poincare: {
        double psi = 2.0 * kernels::kPi * unit(rng);
        double rho = std::tanh(0.5 * extent * unit(rng)); // radius uniform in hyperbolic distance
        return PointValue::make_disk(rho * std::cos(psi), rho * std::sin(psi));
    }
    case SpaceKind::sphere_cap: {
        double max_colat = kernels::kPi / 2.0 - space.sphere_cap_margin;
        return PointValue::make_sphere(max_colat * unit(rng), 2.0 * kernels::kPi * unit(rng));
    }
    case SpaceKind::river:
        return PointValue::make_river(sym(rng), sym(rng));
    case SpaceKind::star: {
        std::uniform_int_distribution<int> ray(0, kStarSampleRays - 1);
        return PointValue::make_star(ray(rng), extent * unit(rng));
    }
    }
    throw ContractViolation("unknown space kind");
}

// A point of the closed ball, drawn as (direction, radius) from the center.
PointValue ball_sample(const SpaceHandle& space, const ClosedBall& ball, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double r = ball.radius;
    switch (space.kind) {
    case SpaceKind::euclidean: {
        const PlanarPoint& c = ball.center.planar();
        double psi = 2.0 * kernels::kPi * unit(rng), s = r * unit(rng);
        return PointValue::make_planar(c.x + s * std::cos(psi), c.y + s * std::sin(psi));
    }
    case SpaceKind::poincare: {
        kernels::Cx zc = kernels::disk_cx(ball.center.disk());
        double psi = 2.0 * kernels::kPi * unit(rng);
        double rho = std::tanh(0.5 * r * unit(rng));
        kernels::Cx w = rho * kernels::Cx{std::cos(psi), std::sin(psi)};
        return kernels::disk_point(kernels::mobius_from_origin(zc, w));
    }
    case SpaceKind::sphere_cap: {
        kernels::Vec3 c = kernels::sphere_embed(ball.center.sphere());
        // orthonormal tangent frame at the center
        double ct = std::cos(ball.center.sphere().colat), st = std::sin(ball.center.sphere().colat);
        double cp = std::cos(ball.center.sphere().lon), sp = std::sin(ball.center.sphere().lon);
        kernels::Vec3 e1{ct * cp, ct * sp, -st};
        kernels::Vec3 e2{-sp, cp, 0.0};
        double psi = 2.0 * kernels::kPi * unit(rng), s = r * unit(rng);
        double cs = std::cos(s), sn = std::sin(s);
        kernels::Vec3 u{std::cos(psi) * e1.x + std::sin(psi) * e2.x,
                        std::cos(psi) * e1.y + std::sin(psi) * e2.y,
                        std::cos(psi) * e1.z + std::sin(psi) * e2.z};
        return kernels::sphere_unembed(
            {c.x * cs + u.x * sn, c.y * cs + u.y * sn, c.z * cs + u.z * sn});
    }
    case SpaceKind::river: {
        const RiverPoint& c = ball.center.river();
        double fan = r - std::abs(c.y); // radius left after descending to the axis
        // the ball is a vertical segment plus (when fan > 0) a diamond on the axis
        if (fan <= 0.0 || unit(rng) < 0.5) {
            std::uniform_real_distribution<double> dy(-r, r);
            return PointValue::make_river(c.x, c.y + dy(rng));
        }
        std::uniform_real_distribution<double> da(-fan, fan);
        double a = da(rng);
        double rest = fan - std::abs(a);
        std::uniform_real_distribution<double> db(-rest, rest);
        return PointValue::make_river(c.x + a, db(rng));
    }
    case SpaceKind::star: {
        const StarPoint& c = ball.center.star();
        std::uniform_int_distribution<int> ray(0, kStarSampleRays - 1);
        if (c.s >= r || unit(rng) < 0.5) {
            // stay on the center's ray
            std::uniform_real_distribution<double> ds(std::max(0.0, c.s - r), c.s + r);
            return PointValue::make_star(c.ray, ds(rng));
        }
        int k = ray(rng);
        if (k == c.ray) k = (k + 1) % kStarSampleRays;
        std::uniform_real_distribution<double> ds(0.0, r - c.s);
        return PointValue::make_star(k, ds(rng));
    }
    }
    throw ContractViolation("unknown space kind");
}

} // namespace

PointValue sample_in_domain(const SpaceHandle& space, const DomainDescriptor& domain,
                            std::mt19937_64& rng, double whole_extent) {
    if (domain.is_whole()) return whole_space_sample(space, rng, whole_extent);
    if (domain.is_ball()) return ball_sample(space, domain.as_ball(), rng);
    const HalfPlaneStrip& s = domain.as_strip();
    if (space.kind != SpaceKind::euclidean)
        throw UnsupportedOperation("strip domains exist only in the Euclidean plane");
    std::uniform_real_distribution<double> off(s.lo, s.hi);
    std::uniform_real_distribution<double> along(-whole_extent, whole_extent);
    double o = off(rng), w = along(rng);
    return PointValue::make_planar(s.nx * o - s.ny * w, s.ny * o + s.nx * w);
}

RayDescriptor make_ray(const SpaceHandle& space, const DomainDescriptor& domain,
                       const PointValue& basepoint, const RayDirection& direction) {
    if (basepoint.kind() != space.kind)
        throw ContractViolation("ray basepoint does not belong to the space");
    if (space.kind == SpaceKind::sphere_cap)
        throw UnsupportedOperation("the sphere cap is compact and carries no geodesic ray");
    if (!domain.is_whole())
        throw UnsupportedOperation("geodesic rays require the whole-space domain");

    RayDirection dir = direction;
    switch (space.kind) {
    case SpaceKind::euclidean: {
        auto* d = std::get_if<PlanarDirection>(&dir);
        if (!d) throw ContractViolation("euclidean rays take a planar direction");
        double n = std::hypot(d->dx, d->dy);
        if (!std::isfinite(n) || n == 0.0)
            throw ContractViolation("ray direction must be a nonzero finite vector");
        d->dx /= n;
        d->dy /= n;
        break;
    }
    case SpaceKind::poincare: {
        auto* d = std::get_if<DiskIdealPoint>(&dir);
        if (!d) throw ContractViolation("poincare rays take an ideal boundary point");
        double n = std::hypot(d->x, d->y);
        if (!std::isfinite(n) || n == 0.0)
            throw ContractViolation("ideal point must be a nonzero finite vector");
        d->x /= n;
        d->y /= n;
        break;
    }
    case SpaceKind::river: {
        auto* d = std::get_if<RiverDirection>(&dir);
        if (!d) throw ContractViolation("river rays take an axis direction");
        if (d->sign != 1 && d->sign != -1) throw ContractViolation("river ray sign must be +-1");
        break;
    }
    case SpaceKind::star: {
        auto* d = std::get_if<StarDirection>(&dir);
        if (!d) throw ContractViolation("star rays take a ray index");
        if (d->ray < 0) throw ContractViolation("star ray index must be nonnegative");
        break;
    }
    default:
        break;
    }
    return RayDescriptor{space, basepoint, dir};
}

PointValue ray_eval(const RayDescriptor& ray, double s) {
    if (!std::isfinite(s) || s < 0.0)
        throw ContractViolation("ray parameter must be nonnegative and finite");
    switch (ray.space.kind) {
    case SpaceKind::euclidean: {
        const auto& d = std::get<PlanarDirection>(ray.direction);
        const PlanarPoint& b = ray.basepoint.planar();
        return PointValue::make_planar(b.x + s * d.dx, b.y + s * d.dy);
    }
    case SpaceKind::poincare: {
        const auto& d = std::get<DiskIdealPoint>(ray.direction);
        kernels::Cx zb = kernels::disk_cx(ray.basepoint.disk());
        // transport the ideal endpoint to the origin's boundary, walk, come back
        kernels::Cx xi = kernels::mobius_to_origin(zb, {d.x, d.y});
        xi /= std::abs(xi);
        kernels::Cx w = std::tanh(0.5 * s) * xi;
        return kernels::disk_point(kernels::mobius_from_origin(zb, w));
    }
    case SpaceKind::river: {
        const auto& d = std::get<RiverDirection>(ray.direction);
        const RiverPoint& b = ray.basepoint.river();
        double drop = std::abs(b.y);
        if (s <= drop) return PointValue::make_river(b.x, (drop - s) * kernels::sign_of(b.y));
        return PointValue::make_river(b.x + (s - drop) * d.sign, 0.0);
    }
    case SpaceKind::star: {
        const auto& d = std::get<StarDirection>(ray.direction);
        const StarPoint& b = ray.basepoint.star();
        if (b.ray == d.ray || b.s == 0.0) return PointValue::make_star(d.ray, b.s + s);
        if (s <= b.s) return PointValue::make_star(b.ray, b.s - s);
        return PointValue::make_star(d.ray, s - b.s);
    }
    default:
        throw UnsupportedOperation("no rays on this space");
    }
}

} // namespace geopursuit
