#include "geopursuit/verify.hpp"

#include <algorithm>
#include <cmath>

#include "geopursuit/strategy.hpp"

namespace geopursuit {

namespace {

std::pair<PointValue, PointValue> sample_pair(const SpaceHandle& space,
                                              const DomainDescriptor& domain,
                                              std::mt19937_64& rng) {
    return {sample_in_domain(space, domain, rng), sample_in_domain(space, domain, rng)};
}

// Signed containment defect: positive when p sits outside the domain.
double domain_defect(const SpaceHandle& space, const DomainDescriptor& domain,
                     const PointValue& p) {
    if (domain.is_ball()) {
        const ClosedBall& b = domain.as_ball();
        return distance(space, b.center, p) - b.radius;
    }
    if (domain.is_strip()) {
        const HalfPlaneStrip& s = domain.as_strip();
        double v = s.nx * p.planar().x + s.ny * p.planar().y;
        return std::max(s.lo - v, v - s.hi);
    }
    if (space.kind == SpaceKind::sphere_cap)
        return p.sphere().colat - (3.14159265358979323846 / 2.0 - space.sphere_cap_margin);
    return 0.0; // whole space of an unbounded model
}

} // namespace

MetricAxiomStats run_metric_axioms(const SpaceHandle& space, const DomainDescriptor& domain,
                                   int samples, std::mt19937_64& rng) {
    MetricAxiomStats st{samples, 0.0, 0.0, -1e300, 1e300};
    for (int i = 0; i < samples; ++i) {
        PointValue x = sample_in_domain(space, domain, rng);
        PointValue y = sample_in_domain(space, domain, rng);
        PointValue z = sample_in_domain(space, domain, rng);
        double dxy = distance(space, x, y);
        double dyz = distance(space, y, z);
        double dxz = distance(space, x, z);
        st.max_identity_residual = std::max(st.max_identity_residual, distance(space, x, x));
        st.max_symmetry_residual =
            std::max(st.max_symmetry_residual, std::abs(dxy - distance(space, y, x)));
        st.max_triangle_defect = std::max(st.max_triangle_defect, dxz - dxy - dyz);
        st.min_distance = std::min({st.min_distance, dxy, dyz, dxz});
    }
    return st;
}

GeodesicParamStats run_geodesic_params(const SpaceHandle& space, const DomainDescriptor& domain,
                                       int samples, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    GeodesicParamStats st{samples, 0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
        auto [x, y] = sample_pair(space, domain, rng);
        double t = unit(rng);
        double d = distance(space, x, y);
        PointValue p = geodesic_point(space, x, y, t);
        st.max_param_residual = std::max({st.max_param_residual,
                                          std::abs(distance(space, x, p) - t * d),
                                          std::abs(distance(space, p, y) - (1.0 - t) * d)});
        st.max_swap_gap =
            std::max(st.max_swap_gap, distance(space, p, geodesic_point(space, y, x, 1.0 - t)));
    }
    return st;
}

namespace {

// Equidistant point of [x, y] located by bisection on the parameter, using
// only distance comparisons (no appeal to the linear parametrization).
PointValue bisect_midpoint(const SpaceHandle& space, const PointValue& x, const PointValue& y) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        PointValue p = geodesic_point(space, x, y, mid);
        (distance(space, x, p) < distance(space, p, y) ? lo : hi) = mid;
    }
    return geodesic_point(space, x, y, 0.5 * (lo + hi));
}

} // namespace

UniquenessProbeStats run_uniqueness_probe(const SpaceHandle& space,
                                          const DomainDescriptor& domain, int samples,
                                          std::mt19937_64& rng) {
    UniquenessProbeStats st{samples, 0.0};
    for (int i = 0; i < samples; ++i) {
        auto [x, y] = sample_pair(space, domain, rng);
        if (distance(space, x, y) < 1e-6) continue;
        PointValue mid = bisect_midpoint(space, x, y);
        PointValue q1 = bisect_midpoint(space, x, mid);
        PointValue q3 = bisect_midpoint(space, mid, y);
        st.max_gap = std::max({st.max_gap,
                               distance(space, mid, geodesic_point(space, x, y, 0.5)),
                               distance(space, q1, geodesic_point(space, x, y, 0.25)),
                               distance(space, q3, geodesic_point(space, x, y, 0.75))});
    }
    return st;
}

ConvexityStats run_domain_convexity(const SpaceHandle& space, const DomainDescriptor& domain,
                                    int samples, int grid, std::mt19937_64& rng) {
    if (grid < 1) throw ContractViolation("grid must be at least 1");
    ConvexityStats st{samples, -1e300};
    for (int i = 0; i < samples; ++i) {
        auto [x, y] = sample_pair(space, domain, rng);
        for (int j = 0; j <= grid; ++j) {
            PointValue p = geodesic_point(space, x, y, static_cast<double>(j) / grid);
            st.max_defect = std::max(st.max_defect, domain_defect(space, domain, p));
        }
    }
    return st;
}

RTreeStats run_rtree_concat(const SpaceHandle& space, const DomainDescriptor& domain, int samples,
                            std::mt19937_64& rng) {
    if (space.kind != SpaceKind::river && space.kind != SpaceKind::star)
        throw UnsupportedOperation("the concatenation law is probed in the tree spaces only");
    const double tol = default_geo_tol(space.kind);
    RTreeStats st{samples, 0, 0.0};
    std::bernoulli_distribution at_branch(0.5);
    for (int i = 0; i < samples; ++i) {
        PointValue x = sample_in_domain(space, domain, rng);
        // Generic points have only two germ directions (both legs descend the
        // same vertical line), so concatenation configurations are rare there.
        // Half the probes sit on the branch locus, where they are generic.
        if (at_branch(rng)) {
            PointValue branch = space.kind == SpaceKind::river
                                    ? PointValue::make_river(x.river().x, 0.0)
                                    : PointValue::make_star(0, 0.0);
            if (domain_contains(space, domain, branch, kPointEqTol)) x = branch;
        }
        PointValue y = sample_in_domain(space, domain, rng);
        PointValue z = sample_in_domain(space, domain, rng);
        if (distance(space, x, y) < 1e-6 || distance(space, x, z) < 1e-6) continue;
        // interior neighbors of x on [x,y] and [x,z]
        PointValue u = geodesic_point(space, x, y, 1e-3);
        PointValue v = geodesic_point(space, x, z, 1e-3);
        if (distance(space, u, v) < 1e-9) continue;   // segments share an initial piece
        if (!is_between(space, u, x, v, tol)) continue; // likewise
        ++st.tested;
        double defect =
            std::abs(distance(space, y, x) + distance(space, x, z) - distance(space, y, z));
        st.max_defect = std::max(st.max_defect, defect);
    }
    return st;
}

RayIsometryStats run_ray_isometry(const RayDescriptor& ray, int pairs, double s_max,
                                  std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(0.0, s_max);
    RayIsometryStats st{pairs, 0.0};
    for (int i = 0; i < pairs; ++i) {
        double s = len(rng), t = len(rng);
        double d = distance(ray.space, ray_eval(ray, s), ray_eval(ray, t));
        st.max_residual = std::max(st.max_residual, std::abs(d - std::abs(s - t)));
    }
    return st;
}

BetweennessProbeStats run_betweenness_probe(const SpaceHandle& space,
                                            const DomainDescriptor& domain, int samples, int grid,
                                            double tol, std::mt19937_64& rng) {
    if (grid < 1) throw ContractViolation("grid must be at least 1");
    std::uniform_real_distribution<double> inner(0.2, 0.8);
    std::uniform_real_distribution<double> stretch(0.1, 1.0);
    BetweennessProbeStats st{samples, 0, 0, 0};
    for (int i = 0; i < samples; ++i) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto [x, z] = sample_pair(space, domain, rng);
            double d = distance(space, x, z);
            if (d < 1e-3) continue;
            PointValue y = geodesic_point(space, x, z, inner(rng));
            PointValue beyond = extend_beyond(space, y, z, stretch(rng) * d);
            PointValue w = clip_to_domain(space, domain, z, beyond, d);
            // quadruple must be honestly nondegenerate and satisfy the chain
            // hypotheses; extension clipping can collapse w onto z
            if (distance(space, z, w) < 1e-6) continue;
            BetweennessResult r = betweenness_holds(space, x, y, z, w, tol);
            if (r == BetweennessResult::hypothesis_not_met) continue;
            ++st.tested;
            (r == BetweennessResult::holds ? st.holds : st.fails)++;
            break;
        }
    }
    return st;
}

bool strong_convexity_probe(const SpaceHandle& space, const DomainDescriptor& domain, int samples,
                            int grid, double tol, std::mt19937_64& rng) {
    BetweennessProbeStats st = run_betweenness_probe(space, domain, samples, grid, tol, rng);
    return st.fails == 0 && st.tested > 0;
}

CatSampleStats run_cat_samples(const SpaceHandle& space, const DomainDescriptor& domain,
                               double kappa, int triangles, int grid, double violation_threshold,
                               std::mt19937_64& rng) {
    if (grid < 1) throw ContractViolation("grid must be at least 1");
    CatSampleStats st{0, -1e300, 0.0, 0};
    for (int i = 0; i < triangles; ++i) {
        PointValue x1 = sample_in_domain(space, domain, rng);
        PointValue x2 = sample_in_domain(space, domain, rng);
        PointValue x3 = sample_in_domain(space, domain, rng);
        double a = distance(space, x1, x2);
        double b = distance(space, x1, x3);
        double c = distance(space, x2, x3);
        if (kappa > 0.0 && a + b + c >= 2.0 * 3.14159265358979323846 / std::sqrt(kappa) - 1e-9)
            continue; // outside the comparison theory's reach
        ComparisonTriangle tri = make_comparison_triangle(a, b, c, kappa);
        double tri_max = -1e300;
        for (int iu = 0; iu <= grid; ++iu) {
            double u = static_cast<double>(iu) / grid;
            PointValue p = geodesic_point(space, x1, x2, u);
            for (int iv = 0; iv <= grid; ++iv) {
                double v = static_cast<double>(iv) / grid;
                PointValue q = geodesic_point(space, x1, x3, v);
                double res = distance(space, p, q) - comparison_point_distance(tri, u * a, v * b);
                tri_max = std::max(tri_max, res);
                st.max_abs_residual = std::max(st.max_abs_residual, std::abs(res));
            }
        }
        ++st.triangles;
        st.max_residual = std::max(st.max_residual, tri_max);
        if (tri_max > violation_threshold) ++st.violations;
    }
    return st;
}

BusemannSampleStats run_busemann_samples(const SpaceHandle& space,
                                         const DomainDescriptor& domain, int pairs, int grid,
                                         std::mt19937_64& rng) {
    BusemannSampleStats st{pairs, -1e300};
    for (int i = 0; i < pairs; ++i) {
        auto [a0, a1] = sample_pair(space, domain, rng);
        auto [b0, b1] = sample_pair(space, domain, rng);
        st.max_residual =
            std::max(st.max_residual, busemann_convexity_residual(space, a0, a1, b0, b1, grid));
    }
    return st;
}

std::vector<double> convergence_gap_sequence(const SpaceHandle& space, int n_max, int grid) {
    std::vector<std::pair<PointValue, PointValue>> endpoints;
    endpoints.reserve(static_cast<size_t>(n_max));
    if (space.kind == SpaceKind::euclidean) {
        for (int n = 1; n <= n_max; ++n)
            endpoints.emplace_back(PointValue::make_planar(1.0 / n, 0.0),
                                   PointValue::make_planar(2.0, 1.0 / n));
        return geodesic_uniform_convergence_gap(space, endpoints, PointValue::make_planar(0, 0),
                                                PointValue::make_planar(2, 0), grid);
    }
    if (space.kind == SpaceKind::poincare) {
        for (int n = 1; n <= n_max; ++n)
            endpoints.emplace_back(PointValue::make_disk(0.1 / n, 0.0),
                                   PointValue::make_disk(0.8, 0.1 / n));
        return geodesic_uniform_convergence_gap(space, endpoints, PointValue::make_disk(0, 0),
                                                PointValue::make_disk(0.8, 0), grid);
    }
    throw UnsupportedOperation("convergence sequences are defined for the plane and the disk");
}

Example41Report example41_report(const GameTranscript& transcript, double jump_bound) {
    if (transcript.config.space.kind != SpaceKind::euclidean)
        throw UnsupportedOperation("the spiral analysis applies to Euclidean transcripts");
    if (transcript.strategy_name.rfind("spiral", 0) != 0)
        throw UnsupportedOperation("the spiral analysis needs a spiral transcript");
    if (transcript.steps.empty()) throw ContractViolation("empty transcript");

    const SpaceHandle& space = transcript.config.space;
    const PointValue& L0 = transcript.config.lion_start;
    Example41Report rep{jump_bound, transcript.post_gaps, {}, {}, {}, 0.0, 0.0, true};

    rep.alpha_series.reserve(rep.t_series.size());
    rep.partial_sums.reserve(rep.t_series.size());
    double sum = 0.0;
    for (double t : rep.t_series) {
        rep.alpha_series.push_back(std::atan(t / jump_bound));
        sum += t;
        rep.partial_sums.push_back(sum);
    }
    for (size_t i = 0; i + 1 < rep.t_series.size(); ++i) {
        double next = jump_bound + rep.t_series[i + 1];
        rep.recurrence_residuals.push_back(
            std::abs(next * next - jump_bound * jump_bound - rep.t_series[i] * rep.t_series[i]));
    }
    for (const StepRecord& s : transcript.steps) {
        rep.containment_max_L = std::max(rep.containment_max_L, distance(space, L0, s.lion));
        rep.containment_max_M = std::max(rep.containment_max_M, distance(space, L0, s.man));
        if (gap_within_capture(s.gap, jump_bound)) rep.all_gaps_above_D = false;
    }
    rep.containment_max_L =
        std::max(rep.containment_max_L, distance(space, L0, transcript.final_lion));
    rep.containment_max_M =
        std::max(rep.containment_max_M, distance(space, L0, transcript.final_man));
    if (gap_within_capture(transcript.final_gap, jump_bound)) rep.all_gaps_above_D = false;
    return rep;
}

FppWitness make_fpp_witness(RayDescriptor ray) { return FppWitness{std::move(ray)}; }

PointValue fpp_map_eval(const FppWitness& witness, const SpaceHandle& space,
                        const PointValue& x) {
    if (space.kind != witness.ray.space.kind)
        throw ContractViolation("witness and space disagree");
    return ray_eval(witness.ray, distance(space, witness.ray.basepoint, x) + 1.0);
}

double fpp_no_fixed_point_check(const FppWitness& witness, const SpaceHandle& space,
                                const std::vector<PointValue>& samples) {
    double min_disp = 1e300;
    for (const PointValue& x : samples)
        min_disp = std::min(min_disp, distance(space, x, fpp_map_eval(witness, space, x)));
    return min_disp;
}

double fpp_nonexpansiveness_defect(const FppWitness& witness, const SpaceHandle& space,
                                   const std::vector<std::pair<PointValue, PointValue>>& pairs) {
    double defect = -1e300;
    for (const auto& [x, y] : pairs) {
        double lhs = distance(space, fpp_map_eval(witness, space, x),
                              fpp_map_eval(witness, space, y));
        defect = std::max(defect, lhs - distance(space, x, y));
    }
    return defect;
}

// ---------------------------------------------------------------------------
// Battery

namespace {

struct BatteryContext {
    std::vector<CheckResult> results;
    std::mt19937_64 rng;

    void expect_le(std::string name, double value, double bound) {
        results.push_back({std::move(name), value <= bound, value, bound, "<="});
    }
    void expect_ge(std::string name, double value, double bound) {
        results.push_back({std::move(name), value >= bound, value, bound, ">="});
    }
};

DomainDescriptor bundled_ball(const SpaceHandle& space) {
    switch (space.kind) {
    case SpaceKind::euclidean:
        return DomainDescriptor::ball(space, PointValue::make_planar(0, 0), 7.0);
    case SpaceKind::poincare:
        return DomainDescriptor::ball(space, PointValue::make_disk(0, 0), 2.0);
    case SpaceKind::sphere_cap:
        return DomainDescriptor::ball(space, PointValue::make_sphere(0.5, 1.0), 0.9);
    case SpaceKind::river:
        return DomainDescriptor::ball(space, PointValue::make_river(0, 1), 3.0);
    case SpaceKind::star:
        return DomainDescriptor::ball(space, PointValue::make_star(1, 1.5), 2.5);
    }
    throw ContractViolation("unknown space kind");
}

RayDescriptor bundled_ray(const SpaceHandle& space) {
    DomainDescriptor whole = DomainDescriptor::whole();
    switch (space.kind) {
    case SpaceKind::euclidean:
        return make_ray(space, whole, PointValue::make_planar(0.3, -0.2), PlanarDirection{1, 0});
    case SpaceKind::poincare:
        return make_ray(space, whole, PointValue::make_disk(0.1, 0.2), DiskIdealPoint{0.6, 0.8});
    case SpaceKind::river:
        return make_ray(space, whole, PointValue::make_river(0.5, 1.5), RiverDirection{1});
    case SpaceKind::star:
        return make_ray(space, whole, PointValue::make_star(1, 1.0), StarDirection{2});
    default:
        throw UnsupportedOperation("no rays on this space");
    }
}

void battery_for_domain(BatteryContext& ctx, const SpaceHandle& space,
                        const DomainDescriptor& domain, const std::string& prefix) {
    const double geo_tol = default_geo_tol(space.kind);

    MetricAxiomStats ax = run_metric_axioms(space, domain, 2000, ctx.rng);
    ctx.expect_le(prefix + "/metric-identity", ax.max_identity_residual, 1e-12);
    ctx.expect_le(prefix + "/metric-symmetry", ax.max_symmetry_residual, 1e-12);
    ctx.expect_le(prefix + "/metric-triangle", ax.max_triangle_defect, geo_tol);
    ctx.expect_ge(prefix + "/metric-nonneg", ax.min_distance, 0.0);

    GeodesicParamStats gp = run_geodesic_params(space, domain, 500, ctx.rng);
    ctx.expect_le(prefix + "/geodesic-param", gp.max_param_residual, geo_tol);
    ctx.expect_le(prefix + "/geodesic-swap", gp.max_swap_gap, geo_tol);

    UniquenessProbeStats up = run_uniqueness_probe(space, domain, 200, ctx.rng);
    ctx.expect_le(prefix + "/uniqueness-probe", up.max_gap, 10.0 * geo_tol);

    ConvexityStats cv = run_domain_convexity(space, domain, 500, 8, ctx.rng);
    ctx.expect_le(prefix + "/convexity", cv.max_defect, 1e-9);

    BetweennessProbeStats bp =
        run_betweenness_probe(space, domain, 300, 8, 10.0 * geo_tol, ctx.rng);
    ctx.expect_le(prefix + "/betweenness-fails", bp.fails, 0.0);
    ctx.expect_ge(prefix + "/betweenness-tested", bp.tested, 200.0);

    if (space.kind == SpaceKind::river || space.kind == SpaceKind::star) {
        RTreeStats rt = run_rtree_concat(space, domain, 500, ctx.rng);
        ctx.expect_le(prefix + "/rtree-concat", rt.max_defect, geo_tol);
        ctx.expect_ge(prefix + "/rtree-tested", rt.tested, 50.0);
    }
}

void battery_for_space(BatteryContext& ctx, SpaceKind kind) {
    SpaceHandle space = make_space(kind);
    std::string name(space_name(kind));
    DomainDescriptor whole = DomainDescriptor::whole();
    DomainDescriptor ball = bundled_ball(space);

    battery_for_domain(ctx, space, whole, name + "/whole");
    battery_for_domain(ctx, space, ball, name + "/ball");

    const double geo_tol = default_geo_tol(kind);

    if (kind == SpaceKind::sphere_cap) {
        // positively curved: CAT(0) and Busemann convexity must fail somewhere,
        // while CAT(1) holds
        CatSampleStats cat0 = run_cat_samples(space, ball, 0.0, 50, 8, 1e-6, ctx.rng);
        ctx.expect_ge(name + "/cat0-violation", cat0.max_residual, 1e-6);
        CatSampleStats cat1 = run_cat_samples(space, ball, 1.0, 50, 8, 1e-7, ctx.rng);
        ctx.expect_le(name + "/cat1-residual", cat1.max_residual, 1e-7);
        BusemannSampleStats bus = run_busemann_samples(space, whole, 100, 8, ctx.rng);
        ctx.expect_ge(name + "/busemann-violation", bus.max_residual, 1e-6);
    } else {
        double cat_tol = kind == SpaceKind::poincare ? 1e-7 : 1e-9;
        CatSampleStats cat0 = run_cat_samples(space, whole, 0.0, 50, 8, cat_tol, ctx.rng);
        if (kind == SpaceKind::euclidean)
            ctx.expect_le(name + "/cat0-equality", cat0.max_abs_residual, 1e-9);
        else
            ctx.expect_le(name + "/cat0-residual", cat0.max_residual, cat_tol);
        BusemannSampleStats bus = run_busemann_samples(space, whole, 50, 8, ctx.rng);
        ctx.expect_le(name + "/busemann-residual", bus.max_residual, geo_tol);

        RayDescriptor ray = bundled_ray(space);
        RayIsometryStats ri = run_ray_isometry(ray, 100, 10.0, ctx.rng);
        ctx.expect_le(name + "/ray-isometry", ri.max_residual, geo_tol);

        FppWitness witness = make_fpp_witness(ray);
        std::vector<PointValue> samples;
        std::vector<std::pair<PointValue, PointValue>> pairs;
        for (int i = 0; i < 500; ++i) {
            samples.push_back(sample_in_domain(space, whole, ctx.rng));
            pairs.push_back(sample_pair(space, whole, ctx.rng));
        }
        ctx.expect_ge(name + "/fpp-min-displacement",
                      fpp_no_fixed_point_check(witness, space, samples), 1.0 - 1e-9);
        ctx.expect_le(name + "/fpp-nonexpansive-defect",
                      fpp_nonexpansiveness_defect(witness, space, pairs), 1e-9);
    }

    if (kind == SpaceKind::euclidean || kind == SpaceKind::poincare) {
        std::vector<double> gaps = convergence_gap_sequence(space, 2000, 4);
        ctx.expect_le(name + "/convergence-final-gap", gaps.back(), 1e-3);
        int increases = 0;
        for (size_t i = gaps.size() / 10; i + 1 < gaps.size(); ++i)
            if (gaps[i + 1] > gaps[i] + 1e-12) ++increases;
        ctx.expect_le(name + "/convergence-tail-increases", increases, 0.0);
    }
}

} // namespace

std::vector<CheckResult> run_verification_battery(std::optional<SpaceKind> only_space,
                                                  std::uint64_t seed) {
    BatteryContext ctx;
    ctx.rng.seed(seed);
    const SpaceKind all[] = {SpaceKind::euclidean, SpaceKind::poincare, SpaceKind::sphere_cap,
                             SpaceKind::river, SpaceKind::star};
    for (SpaceKind kind : all) {
        if (only_space && *only_space != kind) continue;
        battery_for_space(ctx, kind);
    }
    return ctx.results;
}

} // namespace geopursuit
