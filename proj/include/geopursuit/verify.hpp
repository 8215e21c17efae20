#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geopursuit/game.hpp"

namespace geopursuit {

// ---------------------------------------------------------------------------
// Sampled suites for the metric machinery. Each returns the extremal residual
// observed; callers assert against their tolerance of choice.

struct MetricAxiomStats {
    int samples;
    double max_identity_residual; // d(x, x)
    double max_symmetry_residual; // |d(x,y) - d(y,x)|
    double max_triangle_defect;   // d(x,z) - d(x,y) - d(y,z)
    double min_distance;
};
MetricAxiomStats run_metric_axioms(const SpaceHandle& space, const DomainDescriptor& domain,
                                   int samples, std::mt19937_64& rng);

struct GeodesicParamStats {
    int samples;
    double max_param_residual; // |d(x, g(t)) - t d(x,y)| and the mirrored leg
    double max_swap_gap;       // d(g_{x,y}(t), g_{y,x}(1-t))
};
GeodesicParamStats run_geodesic_params(const SpaceHandle& space, const DomainDescriptor& domain,
                                       int samples, std::mt19937_64& rng);

// Rebuilds quarter points of [x, y] by iterated metric bisection (solving
// d(x, m) = d(m, y) with no use of the linear parametrization) and compares
// with the direct formula.
struct UniquenessProbeStats {
    int samples;
    double max_gap;
};
UniquenessProbeStats run_uniqueness_probe(const SpaceHandle& space,
                                          const DomainDescriptor& domain, int samples,
                                          std::mt19937_64& rng);

// Containment defect of geodesics between domain members (strong-convexity
// precondition of the pursuit theorem).
struct ConvexityStats {
    int samples;
    double max_defect; // how far outside the domain a sampled geodesic point lands
};
ConvexityStats run_domain_convexity(const SpaceHandle& space, const DomainDescriptor& domain,
                                    int samples, int grid, std::mt19937_64& rng);

// R-tree concatenation law: segments [y,x] and [x,z] meeting only at x chain
// into a geodesic, so d(y,x) + d(x,z) = d(y,z).
struct RTreeStats {
    int samples;
    int tested; // triples whose segments actually diverge at x
    double max_defect;
};
RTreeStats run_rtree_concat(const SpaceHandle& space, const DomainDescriptor& domain, int samples,
                            std::mt19937_64& rng);

struct RayIsometryStats {
    int pairs;
    double max_residual; // |d(eval(s), eval(s')) - |s - s'||
};
RayIsometryStats run_ray_isometry(const RayDescriptor& ray, int pairs, double s_max,
                                  std::mt19937_64& rng);

// Betweenness on constructed admissible quadruples: x, z sampled; y strictly
// inside [x,z]; w on the continuation beyond z (clipped to the domain).
struct BetweennessProbeStats {
    int requested;
    int tested;
    int holds;
    int fails;
};
BetweennessProbeStats run_betweenness_probe(const SpaceHandle& space,
                                            const DomainDescriptor& domain, int samples, int grid,
                                            double tol, std::mt19937_64& rng);

// True iff no constructed quadruple fails (the falsifier found nothing).
bool strong_convexity_probe(const SpaceHandle& space, const DomainDescriptor& domain, int samples,
                            int grid, double tol, std::mt19937_64& rng);

struct CatSampleStats {
    int triangles;
    double max_residual;     // signed: positive means fatter than the model
    double max_abs_residual; // for equality assertions in the plane
    int violations;          // residual > violation_threshold
};
CatSampleStats run_cat_samples(const SpaceHandle& space, const DomainDescriptor& domain,
                               double kappa, int triangles, int grid, double violation_threshold,
                               std::mt19937_64& rng);

struct BusemannSampleStats {
    int pairs;
    double max_residual;
};
BusemannSampleStats run_busemann_samples(const SpaceHandle& space, const DomainDescriptor& domain,
                                         int pairs, int grid, std::mt19937_64& rng);

// Endpoint sequences x_n, y_n at distance ~1/n from fixed limits, for the
// uniform-convergence check; defined for the euclidean and poincare spaces.
std::vector<double> convergence_gap_sequence(const SpaceHandle& space, int n_max, int grid);

// ---------------------------------------------------------------------------
// Example 4.1 invariant report

struct Example41Report {
    double jump_bound;
    std::vector<double> t_series;             // t_{i+1} = d(L_{i+1}, M_i)
    std::vector<double> alpha_series;         // arctan(t_{i+1} / D)
    std::vector<double> partial_sums;         // running sum of t_series
    std::vector<double> recurrence_residuals; // |(D + t_{i+2})^2 - D^2 - t_{i+1}^2|
    double containment_max_L;                 // max_i d(L_0, L_i)
    double containment_max_M;                 // max_i d(L_0, M_i)
    bool all_gaps_above_D;                    // no D_i within the capture guard
};

// Requires a transcript of a spiral strategy in the Euclidean plane.
Example41Report example41_report(const GameTranscript& transcript, double jump_bound);

// ---------------------------------------------------------------------------
// Fixed-point-free witness f(x) = ray(d(ray(0), x) + 1): nonexpansive with
// displacement at least 1 everywhere, so the whole space cannot have the
// fixed point property.

struct FppWitness {
    RayDescriptor ray;
};

FppWitness make_fpp_witness(RayDescriptor ray);

PointValue fpp_map_eval(const FppWitness& witness, const SpaceHandle& space,
                        const PointValue& x);

// Minimum displacement d(x, f(x)) over the samples.
double fpp_no_fixed_point_check(const FppWitness& witness, const SpaceHandle& space,
                                const std::vector<PointValue>& samples);

// Maximum of d(f(x), f(y)) - d(x, y) over the pairs.
double fpp_nonexpansiveness_defect(const FppWitness& witness, const SpaceHandle& space,
                                   const std::vector<std::pair<PointValue, PointValue>>& pairs);

// ---------------------------------------------------------------------------
// Assembled battery for the CLI verify mode.

struct CheckResult {
    std::string name;
    bool passed;
    double value;
    double bound;
    std::string relation; // "<=" or ">="
};

std::vector<CheckResult> run_verification_battery(std::optional<SpaceKind> only_space,
                                                  std::uint64_t seed);

} // namespace geopursuit
