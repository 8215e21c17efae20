#include "geopursuit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels.hpp"

namespace geopursuit {

double distance(const SpaceHandle& space, const PointValue& x, const PointValue& y) {
    switch (space.kind) {
    case SpaceKind::euclidean:
        return kernels::euclid_dist(x.planar(), y.planar());
    case SpaceKind::poincare:
        return kernels::disk_dist(x.disk(), y.disk());
    case SpaceKind::sphere_cap:
        return kernels::sphere_dist(x.sphere(), y.sphere());
    case SpaceKind::river:
        return kernels::river_dist(x.river(), y.river());
    case SpaceKind::star:
        return kernels::star_dist(x.star(), y.star());
    }
    throw ContractViolation("unknown space kind");
}

bool points_equal(const SpaceHandle& space, const PointValue& x, const PointValue& y, double tol) {
    return distance(space, x, y) <= tol;
}

PointValue geodesic_point(const SpaceHandle& space, const PointValue& x, const PointValue& y,
                          double t) {
    if (!(t >= 0.0 && t <= 1.0)) // also rejects NaN
        throw ContractViolation("geodesic parameter must lie in [0, 1]");
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    switch (space.kind) {
    case SpaceKind::euclidean:
        return kernels::euclid_geodesic(x.planar(), y.planar(), t);
    case SpaceKind::poincare:
        return kernels::disk_geodesic(x.disk(), y.disk(), t);
    case SpaceKind::sphere_cap:
        return kernels::sphere_geodesic(x.sphere(), y.sphere(), t);
    case SpaceKind::river:
        return kernels::river_geodesic(x.river(), y.river(), t);
    case SpaceKind::star:
        return kernels::star_geodesic(x.star(), y.star(), t);
    }
    throw ContractViolation("unknown space kind");
}

PointValue geodesic_point(const SpaceHandle& space, const GeodesicEvalRequest& request) {
    return geodesic_point(space, request.x, request.y, request.t);
}

PointValue extend_beyond(const SpaceHandle& space, const PointValue& from,
                         const PointValue& through, double extra) {
    if (!std::isfinite(extra) || extra < 0.0)
        throw ContractViolation("extension length must be nonnegative and finite");
    switch (space.kind) {
    case SpaceKind::euclidean:
        return kernels::euclid_extend(from.planar(), through.planar(), extra);
    case SpaceKind::poincare:
        return kernels::disk_extend(from.disk(), through.disk(), extra);
    case SpaceKind::sphere_cap:
        return kernels::sphere_extend(from.sphere(), through.sphere(), extra,
                                      space.sphere_cap_margin);
    case SpaceKind::river:
        return kernels::river_extend(from.river(), through.river(), extra);
    case SpaceKind::star:
        return kernels::star_extend(from.star(), through.star(), extra);
    }
    throw ContractViolation("unknown space kind");
}

bool is_between(const SpaceHandle& space, const PointValue& x, const PointValue& y,
                const PointValue& z, double tol) {
    if (!(tol >= 0.0)) throw ContractViolation("tolerance must be nonnegative");
    return distance(space, x, y) + distance(space, y, z) <= distance(space, x, z) + tol;
}

BetweennessResult betweenness_holds(const SpaceHandle& space, const PointValue& x,
                                    const PointValue& y, const PointValue& z,
                                    const PointValue& w, double tol) {
    if (!(tol >= 0.0)) throw ContractViolation("tolerance must be nonnegative");
    const PointValue* pts[4] = {&x, &y, &z, &w};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (points_equal(space, *pts[i], *pts[j], tol)) return BetweennessResult::hypothesis_not_met;
    if (!is_between(space, x, y, z, tol) || !is_between(space, y, z, w, tol))
        return BetweennessResult::hypothesis_not_met;
    bool ok = is_between(space, x, y, w, tol) && is_between(space, x, z, w, tol);
    return ok ? BetweennessResult::holds : BetweennessResult::fails;
}

namespace {

double clamp_cos(double c) { return std::clamp(c, -1.0, 1.0); }

// Angle at the vertex shared by sides a and b, from the kappa-law of cosines.
double vertex_angle(double a, double b, double c, double kappa) {
    if (a == 0.0 || b == 0.0) return 0.0; // degenerate; never consulted downstream
    if (kappa == 0.0) {
        return std::acos(clamp_cos((a * a + b * b - c * c) / (2.0 * a * b)));
    }
    double r = std::sqrt(std::abs(kappa));
    if (kappa > 0.0) {
        double ca = std::cos(r * a), cb = std::cos(r * b), cc = std::cos(r * c);
        double sa = std::sin(r * a), sb = std::sin(r * b);
        return std::acos(clamp_cos((cc - ca * cb) / (sa * sb)));
    }
    double ca = std::cosh(r * a), cb = std::cosh(r * b), cc = std::cosh(r * c);
    double sa = std::sinh(r * a), sb = std::sinh(r * b);
    return std::acos(clamp_cos((ca * cb - cc) / (sa * sb)));
}

// Side opposite the angle gamma between sides s1 and s2, in curvature kappa.
double opposite_side(double s1, double s2, double gamma, double kappa) {
    if (s1 == 0.0) return s2;
    if (s2 == 0.0) return s1;
    if (kappa == 0.0) {
        double c2 = s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * std::cos(gamma);
        return std::sqrt(std::max(0.0, c2));
    }
    double r = std::sqrt(std::abs(kappa));
    if (kappa > 0.0) {
        double cc = std::cos(r * s1) * std::cos(r * s2) +
                    std::sin(r * s1) * std::sin(r * s2) * std::cos(gamma);
        return std::acos(clamp_cos(cc)) / r;
    }
    double cc = std::cosh(r * s1) * std::cosh(r * s2) -
                std::sinh(r * s1) * std::sinh(r * s2) * std::cos(gamma);
    return std::acosh(std::max(1.0, cc)) / r;
}

} // namespace

ComparisonTriangle make_comparison_triangle(double a, double b, double c, double kappa) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || a < 0.0 || b < 0.0 ||
        c < 0.0)
        throw ContractViolation("triangle sides must be nonnegative and finite");
    if (!std::isfinite(kappa)) throw ContractViolation("curvature must be finite");
    double perim = a + b + c;
    double slack = 1e-12 * std::max(1.0, perim);
    if (c > a + b + slack || a > b + c + slack || b > a + c + slack)
        throw ContractViolation("side lengths violate the triangle inequality");
    if (kappa > 0.0 && perim >= 2.0 * kernels::kPi / std::sqrt(kappa))
        throw ContractViolation("triangle perimeter too large for positive curvature");
    return ComparisonTriangle{a, b, c, kappa};
}

double comparison_point_distance(const ComparisonTriangle& tri, double s1, double s2) {
    double slack = 1e-9 + 1e-12 * std::max(tri.a, tri.b);
    if (s1 < -slack || s1 > tri.a + slack || s2 < -slack || s2 > tri.b + slack)
        throw ContractViolation("comparison parameters must lie on the sides");
    s1 = std::clamp(s1, 0.0, tri.a);
    s2 = std::clamp(s2, 0.0, tri.b);
    double gamma = vertex_angle(tri.a, tri.b, tri.c, tri.kappa);
    if (tri.a == 0.0) return s2; // the two sides leave the same point
    if (tri.b == 0.0) return s1;
    return opposite_side(s1, s2, gamma, tri.kappa);
}

double cat_inequality_residual(const SpaceHandle& space, const PointValue& x1,
                               const PointValue& x2, const PointValue& x3, double kappa,
                               int grid) {
    if (grid < 1) throw ContractViolation("grid must be at least 1");
    double a = distance(space, x1, x2);
    double b = distance(space, x1, x3);
    double c = distance(space, x2, x3);
    ComparisonTriangle tri = make_comparison_triangle(a, b, c, kappa);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        double u = static_cast<double>(i) / grid;
        PointValue p = geodesic_point(space, x1, x2, u);
        for (int j = 0; j <= grid; ++j) {
            double v = static_cast<double>(j) / grid;
            PointValue q = geodesic_point(space, x1, x3, v);
            double model = comparison_point_distance(tri, u * a, v * b);
            worst = std::max(worst, distance(space, p, q) - model);
        }
    }
    return worst;
}

bool cat_inequality_check(const SpaceHandle& space, const PointValue& x1, const PointValue& x2,
                          const PointValue& x3, double kappa, int grid, double tol) {
    return cat_inequality_residual(space, x1, x2, x3, kappa, grid) <= tol;
}

double busemann_convexity_residual(const SpaceHandle& space, const PointValue& g1_start,
                                   const PointValue& g1_end, const PointValue& g2_start,
                                   const PointValue& g2_end, int grid) {
    if (grid < 1) throw ContractViolation("grid must be at least 1");
    double d0 = distance(space, g1_start, g2_start);
    double d1 = distance(space, g1_end, g2_end);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        double t = static_cast<double>(i) / grid;
        PointValue p = geodesic_point(space, g1_start, g1_end, t);
        PointValue q = geodesic_point(space, g2_start, g2_end, t);
        worst = std::max(worst, distance(space, p, q) - ((1.0 - t) * d0 + t * d1));
    }
    return worst;
}

bool busemann_convexity_check(const SpaceHandle& space, const PointValue& g1_start,
                              const PointValue& g1_end, const PointValue& g2_start,
                              const PointValue& g2_end, int grid, double tol) {
    return busemann_convexity_residual(space, g1_start, g1_end, g2_start, g2_end, grid) <= tol;
}

std::vector<double> geodesic_uniform_convergence_gap(
    const SpaceHandle& space, const std::vector<std::pair<PointValue, PointValue>>& endpoints,
    const PointValue& limit_x, const PointValue& limit_y, int grid) {
    if (grid < 1) throw ContractViolation("grid must be at least 1");
    std::vector<double> gaps;
    gaps.reserve(endpoints.size());
    for (const auto& [xn, yn] : endpoints) {
        double sup = 0.0;
        for (int i = 0; i <= grid; ++i) {
            double t = static_cast<double>(i) / grid;
            sup = std::max(sup, distance(space, geodesic_point(space, xn, yn, t),
                                         geodesic_point(space, limit_x, limit_y, t)));
        }
        gaps.push_back(sup);
    }
    return gaps;
}

} // namespace geopursuit
