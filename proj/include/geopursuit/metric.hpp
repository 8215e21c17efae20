#pragma once

#include <vector>

#include "geopursuit/space.hpp"

namespace geopursuit {

// Distance in the given model space. Symmetric, zero iff the points coincide,
// and satisfies the triangle inequality (up to double rounding).
double distance(const SpaceHandle& space, const PointValue& x, const PointValue& y);

bool points_equal(const SpaceHandle& space, const PointValue& x, const PointValue& y,
                  double tol = kPointEqTol);

struct GeodesicEvalRequest {
    PointValue x;
    PointValue y;
    double t; // in [0, 1]
};

// Point at parameter t on the linearly reparametrized geodesic from x to y:
// d(x, result) = t * d(x, y) and d(result, y) = (1 - t) * d(x, y).
PointValue geodesic_point(const SpaceHandle& space, const PointValue& x, const PointValue& y,
                          double t);
PointValue geodesic_point(const SpaceHandle& space, const GeodesicEvalRequest& request);

// Point at distance `extra` beyond `through` on the geodesic continuation of
// [from, through]. In the tree spaces a continuation through the hub or axis
// bifurcates; the convention is documented at the implementation. On the
// sphere the continuation is truncated at the cap boundary when reached.
PointValue extend_beyond(const SpaceHandle& space, const PointValue& from,
                         const PointValue& through, double extra);

// True iff y lies on the geodesic segment [x, z], tested through the metric:
// d(x, y) + d(y, z) <= d(x, z) + tol.
bool is_between(const SpaceHandle& space, const PointValue& x, const PointValue& y,
                const PointValue& z, double tol);

enum class BetweennessResult {
    holds,
    fails,
    hypothesis_not_met, // points not pairwise distinct, or y not on [x,z], or z not on [y,w]
};

// Betweenness probe for a quadruple: given pairwise distinct x, y, z, w with
// y on [x,z] and z on [y,w], reports whether both y and z lie on [x,w].
BetweennessResult betweenness_holds(const SpaceHandle& space, const PointValue& x,
                                    const PointValue& y, const PointValue& z,
                                    const PointValue& w, double tol);

// Side lengths of a geodesic triangle together with the curvature of the
// model plane the comparison triangle lives in. Vertices are labeled so that
// side a and side b share the base vertex.
struct ComparisonTriangle {
    double a;
    double b;
    double c; // opposite the shared vertex
    double kappa;
};

ComparisonTriangle make_comparison_triangle(double a, double b, double c, double kappa);

// Model-plane distance between the point at arclength s1 along side a and the
// point at arclength s2 along side b, both measured from the shared vertex.
// The vertex angle comes from the kappa-law of cosines.
double comparison_point_distance(const ComparisonTriangle& tri, double s1, double s2);

// Largest value of d(p, q) - comparison_distance over a (grid+1)^2 sampling
// of the two sides of triangle (x1, x2, x3) rooted at x1. Positive residual
// means the triangle is fatter than its model-plane comparison triangle.
double cat_inequality_residual(const SpaceHandle& space, const PointValue& x1,
                               const PointValue& x2, const PointValue& x3, double kappa,
                               int grid);

bool cat_inequality_check(const SpaceHandle& space, const PointValue& x1, const PointValue& x2,
                          const PointValue& x3, double kappa, int grid, double tol);

// Largest value of d(g1(t), g2(t)) - [(1-t) d(g1(0), g2(0)) + t d(g1(1), g2(1))]
// over grid+1 parameter samples, for the linearly reparametrized geodesics
// with the given endpoints. Nonpositive (up to tol) in Busemann NPC spaces.
double busemann_convexity_residual(const SpaceHandle& space, const PointValue& g1_start,
                                   const PointValue& g1_end, const PointValue& g2_start,
                                   const PointValue& g2_end, int grid);

bool busemann_convexity_check(const SpaceHandle& space, const PointValue& g1_start,
                              const PointValue& g1_end, const PointValue& g2_start,
                              const PointValue& g2_end, int grid, double tol);

// For each endpoint pair (x_n, y_n), the sup over grid+1 parameter samples of
// d(gamma_n(t), gamma(t)) where gamma joins the limit endpoints. Callers
// assert the decay; no rate is promised.
std::vector<double> geodesic_uniform_convergence_gap(
    const SpaceHandle& space, const std::vector<std::pair<PointValue, PointValue>>& endpoints,
    const PointValue& limit_x, const PointValue& limit_y, int grid);

} // namespace geopursuit
