#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geopursuit/strategy.hpp"
#include "geopursuit/verify.hpp"

using namespace geopursuit;

namespace {
const SpaceHandle euclid = make_space(SpaceKind::euclidean);
const SpaceHandle disk = make_space(SpaceKind::poincare);
const SpaceHandle sphere = make_space(SpaceKind::sphere_cap);
const SpaceHandle river = make_space(SpaceKind::river);
const SpaceHandle star = make_space(SpaceKind::star);
const DomainDescriptor whole = DomainDescriptor::whole();

GameTranscript spiral_run(int horizon) {
    GameConfig cfg = make_game_config(euclid, whole, 1.0, PointValue::make_planar(0, 0),
                                      PointValue::make_planar(1.5, 0), horizon);
    ManStrategy strategy = ManStrategy::spiral();
    return play(cfg, strategy);
}
} // namespace

TEST_CASE("spiral report invariants") {
    GameTranscript tr = spiral_run(100);
    Example41Report rep = example41_report(tr, 1.0);
    REQUIRE(rep.t_series.size() == 100);
    CHECK(rep.t_series[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.t_series[1] == doctest::Approx(0.1180339887498949).epsilon(1e-11));
    CHECK(rep.alpha_series[0] == doctest::Approx(0.4636476090008061).epsilon(1e-12));
    for (double r : rep.recurrence_residuals) CHECK(r < 1e-9);
    // the halving law, while the terms are numerically meaningful
    for (size_t i = 0; i + 1 < rep.t_series.size(); ++i)
        if (rep.t_series[i] > 1e-12) CHECK(rep.t_series[i + 1] < rep.t_series[i] / 2);
    CHECK(rep.partial_sums.back() <= 2.0 + 1e-9);
    CHECK(rep.containment_max_L <= 6.0);
    CHECK(rep.containment_max_M <= 7.0);
    CHECK(rep.all_gaps_above_D);
}

TEST_CASE("spiral report rejects other transcripts") {
    GameConfig cfg = make_game_config(euclid, whole, 1.0, PointValue::make_planar(0, 0),
                                      PointValue::make_planar(1.5, 0), 10);
    ManStrategy strategy = ManStrategy::stationary();
    GameTranscript tr = play(cfg, strategy);
    CHECK_THROWS_AS(example41_report(tr, 1.0), UnsupportedOperation);
}

TEST_CASE("metric axiom suites") {
    std::mt19937_64 rng(5);
    for (const SpaceHandle& space : {euclid, disk, sphere, river, star}) {
        MetricAxiomStats st = run_metric_axioms(space, whole, 2000, rng);
        CHECK(st.max_identity_residual <= 1e-12);
        CHECK(st.max_symmetry_residual <= 1e-12);
        CHECK(st.max_triangle_defect <= default_geo_tol(space.kind));
        CHECK(st.min_distance >= 0.0);
    }
}

TEST_CASE("geodesic parameter suites") {
    std::mt19937_64 rng(6);
    for (const SpaceHandle& space : {euclid, disk, sphere, river, star}) {
        GeodesicParamStats st = run_geodesic_params(space, whole, 400, rng);
        CHECK(st.max_param_residual <= default_geo_tol(space.kind));
        CHECK(st.max_swap_gap <= default_geo_tol(space.kind));
        UniquenessProbeStats uq = run_uniqueness_probe(space, whole, 100, rng);
        CHECK(uq.max_gap <= 10 * default_geo_tol(space.kind));
    }
}

TEST_CASE("ball domains are geodesically convex") {
    std::mt19937_64 rng(7);
    struct Case {
        SpaceHandle space;
        DomainDescriptor ball;
    };
    const Case cases[] = {
        {euclid, DomainDescriptor::ball(euclid, PointValue::make_planar(0, 0), 7.0)},
        {disk, DomainDescriptor::ball(disk, PointValue::make_disk(0, 0), 2.0)},
        {sphere, DomainDescriptor::ball(sphere, PointValue::make_sphere(0.5, 1.0), 0.9)},
        {river, DomainDescriptor::ball(river, PointValue::make_river(0, 1), 3.0)},
        {star, DomainDescriptor::ball(star, PointValue::make_star(1, 1.5), 2.5)},
    };
    for (const Case& c : cases) {
        ConvexityStats st = run_domain_convexity(c.space, c.ball, 300, 8, rng);
        CHECK(st.max_defect <= 1e-9);
    }
}

TEST_CASE("tree concatenation law") {
    std::mt19937_64 rng(8);
    RTreeStats rv = run_rtree_concat(river, whole, 400, rng);
    CHECK(rv.tested >= 40);
    CHECK(rv.max_defect <= 1e-9);
    RTreeStats st = run_rtree_concat(star, whole, 400, rng);
    CHECK(st.tested >= 40);
    CHECK(st.max_defect <= 1e-9);
    CHECK_THROWS_AS(run_rtree_concat(euclid, whole, 10, rng), UnsupportedOperation);
}

TEST_CASE("betweenness probe finds no counterexample") {
    std::mt19937_64 rng(9);
    for (const SpaceHandle& space : {euclid, disk, sphere, river, star}) {
        BetweennessProbeStats st =
            run_betweenness_probe(space, whole, 200, 8, 10 * default_geo_tol(space.kind), rng);
        CHECK(st.fails == 0);
        CHECK(st.tested >= 100);
        CHECK(st.holds == st.tested);
    }
    CHECK(strong_convexity_probe(euclid, whole, 100, 8, 1e-8, rng));
}

TEST_CASE("cat samples by curvature sign") {
    std::mt19937_64 rng(10);
    CatSampleStats flat = run_cat_samples(euclid, whole, 0.0, 60, 6, 1e-6, rng);
    CHECK(flat.max_abs_residual <= 1e-9);
    CHECK(flat.violations == 0);
    CatSampleStats hyp = run_cat_samples(disk, whole, 0.0, 60, 6, 1e-6, rng);
    CHECK(hyp.max_residual <= 1e-7);
    DomainDescriptor cap = DomainDescriptor::ball(sphere, PointValue::make_sphere(0.5, 1.0), 0.9);
    CatSampleStats bad = run_cat_samples(sphere, cap, 0.0, 60, 6, 1e-6, rng);
    CHECK(bad.violations >= 1); // positive curvature betrays itself
    CatSampleStats ok = run_cat_samples(sphere, cap, 1.0, 60, 6, 1e-6, rng);
    CHECK(ok.max_residual <= 1e-7);
}

TEST_CASE("busemann samples") {
    std::mt19937_64 rng(11);
    BusemannSampleStats eu = run_busemann_samples(euclid, whole, 60, 6, rng);
    CHECK(eu.max_residual <= 1e-9);
    BusemannSampleStats sp = run_busemann_samples(sphere, whole, 120, 6, rng);
    CHECK(sp.max_residual > 1e-6); // convexity fails on the sphere
}

TEST_CASE("ray isometry suite") {
    std::mt19937_64 rng(12);
    RayDescriptor ray = make_ray(disk, whole, PointValue::make_disk(0.1, 0.2),
                                 DiskIdealPoint{0.6, 0.8});
    RayIsometryStats st = run_ray_isometry(ray, 200, 10.0, rng);
    CHECK(st.max_residual <= 1e-7);
}

TEST_CASE("fpp witness oracles in the plane") {
    RayDescriptor ray = make_ray(euclid, whole, PointValue::make_planar(0, 0),
                                 PlanarDirection{1, 0});
    FppWitness witness = make_fpp_witness(ray);
    PointValue fx = fpp_map_eval(witness, euclid, PointValue::make_planar(3, 4));
    CHECK(fx.planar().x == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(fx.planar().y == doctest::Approx(0.0));
    CHECK(distance(euclid, PointValue::make_planar(3, 4), fx) == doctest::Approx(5.0));
    // a point already on the ray is pushed one unit outward
    PointValue on = fpp_map_eval(witness, euclid, PointValue::make_planar(2, 0));
    CHECK(on.planar().x == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("fpp witness oracles in the river space") {
    RayDescriptor ray = make_ray(river, whole, PointValue::make_river(0, 1), RiverDirection{1});
    FppWitness witness = make_fpp_witness(ray);
    // d(base, (2,1)) = 4, so f lands at arclength 5: down 1, then 4 along
    PointValue fx = fpp_map_eval(witness, river, PointValue::make_river(2, 1));
    CHECK(fx.river().x == doctest::Approx(4.0));
    CHECK(fx.river().y == doctest::Approx(0.0));
    CHECK(distance(river, PointValue::make_river(2, 1), fx) == doctest::Approx(3.0));
}

TEST_CASE("fpp witness has no fixed point and is nonexpansive") {
    std::mt19937_64 rng(13);
    struct Case {
        SpaceHandle space;
        RayDescriptor ray;
    };
    const Case cases[] = {
        {euclid, make_ray(euclid, whole, PointValue::make_planar(0.3, -0.2),
                          PlanarDirection{0.6, 0.8})},
        {disk, make_ray(disk, whole, PointValue::make_disk(0.1, 0.2), DiskIdealPoint{0.6, 0.8})},
        {river, make_ray(river, whole, PointValue::make_river(0.5, 1.5), RiverDirection{1})},
        {star, make_ray(star, whole, PointValue::make_star(1, 1.0), StarDirection{2})},
    };
    for (const Case& c : cases) {
        FppWitness witness = make_fpp_witness(c.ray);
        std::vector<PointValue> samples;
        std::vector<std::pair<PointValue, PointValue>> pairs;
        for (int i = 0; i < 400; ++i) {
            samples.push_back(sample_in_domain(c.space, whole, rng));
            pairs.emplace_back(sample_in_domain(c.space, whole, rng),
                               sample_in_domain(c.space, whole, rng));
        }
        CHECK(fpp_no_fixed_point_check(witness, c.space, samples) >= 1.0 - 1e-9);
        CHECK(fpp_nonexpansiveness_defect(witness, c.space, pairs) <= 1e-9);
    }
}

TEST_CASE("convergence gaps shrink with the endpoints") {
    std::vector<double> eu = convergence_gap_sequence(euclid, 200, 4);
    REQUIRE(eu.size() == 200);
    CHECK(eu[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eu.back() == doctest::Approx(1.0 / 200).epsilon(1e-9));
    std::vector<double> pc = convergence_gap_sequence(disk, 200, 4);
    CHECK(pc.back() < 1e-2);
    for (size_t i = 20; i < pc.size(); ++i) CHECK(pc[i] <= pc[i - 1] + 1e-12);
    CHECK_THROWS_AS(convergence_gap_sequence(star, 10, 4), UnsupportedOperation);
}

TEST_CASE("assembled battery passes per space") {
    for (SpaceKind kind : {SpaceKind::euclidean, SpaceKind::river}) {
        std::vector<CheckResult> checks = run_verification_battery(kind, 0);
        CHECK(!checks.empty());
        for (const CheckResult& c : checks) {
            INFO(c.name, " value=", c.value, " bound=", c.bound);
            CHECK(c.passed);
        }
    }
}
