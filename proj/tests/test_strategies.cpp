#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "geopursuit/strategy.hpp"

using namespace geopursuit;

namespace {
const SpaceHandle euclid = make_space(SpaceKind::euclidean);
const SpaceHandle disk = make_space(SpaceKind::poincare);
const SpaceHandle sphere = make_space(SpaceKind::sphere_cap);
const SpaceHandle river = make_space(SpaceKind::river);
const SpaceHandle star = make_space(SpaceKind::star);
const DomainDescriptor whole = DomainDescriptor::whole();
const PointValue origin = PointValue::make_planar(0, 0);

GameTranscript run_game(const SpaceHandle& space, const DomainDescriptor& domain, double d,
                        PointValue l0, PointValue m0, const std::string& id, int horizon,
                        std::uint64_t seed = 0) {
    GameConfig cfg = make_game_config(space, domain, d, l0, m0, horizon);
    ManStrategy strategy = make_strategy(id, space, domain, l0, seed);
    return play(cfg, strategy);
}
} // namespace

TEST_CASE("identifier parsing") {
    CHECK(make_strategy("stationary", euclid, whole, origin, 0).name() == "stationary");
    CHECK(make_strategy("spiral", euclid, whole, origin, 0).name() == "spiral");
    CHECK(make_strategy("spiral-ccw", euclid, whole, origin, 0).name() == "spiral-ccw");
    CHECK(make_strategy("reverse@2", euclid, whole, origin, 0).name() == "reverse@2");
    CHECK(make_strategy("flee", euclid, whole, origin, 0).name() == "flee");
    CHECK(make_strategy("random", euclid, whole, origin, 0).name() == "random");
    CHECK(make_strategy("ray:+x", euclid, whole, origin, 0).name() == "ray");

    CHECK_THROWS_AS(make_strategy("amble", euclid, whole, origin, 0), ParseError);
    CHECK_THROWS_AS(make_strategy("reverse@0", euclid, whole, origin, 0), ParseError);
    CHECK_THROWS_AS(make_strategy("reverse@x", euclid, whole, origin, 0), ParseError);
    CHECK_THROWS_AS(make_strategy("ray:", euclid, whole, origin, 0), ParseError);
    // parses as a direction but fails ray validation
    CHECK_THROWS_AS(make_strategy("ray:0,0", euclid, whole, origin, 0), ContractViolation);
}

TEST_CASE("ray direction grammar per space") {
    CHECK_NOTHROW(make_strategy("ray:0.6,0.8", euclid, whole, origin, 0));
    CHECK_NOTHROW(make_strategy("ray:-y", euclid, whole, origin, 0));
    CHECK_NOTHROW(make_strategy("ray:1,0", disk, whole, PointValue::make_disk(0, 0), 0));
    CHECK_NOTHROW(make_strategy("ray:+x", river, whole, PointValue::make_river(0, 1), 0));
    CHECK_NOTHROW(make_strategy("ray:2", star, whole, PointValue::make_star(1, 1), 0));
    CHECK_THROWS_AS(make_strategy("ray:+y", river, whole, PointValue::make_river(0, 1), 0),
                    ParseError);
    CHECK_THROWS_AS(make_strategy("ray:-1", star, whole, PointValue::make_star(1, 1), 0),
                    ContractViolation);
    CHECK_THROWS_AS(make_strategy("ray:up", star, whole, PointValue::make_star(1, 1), 0),
                    ParseError);
    // no rays in a compact space: the direction grammar already has none
    CHECK_THROWS_AS(make_strategy("ray:+x", sphere, whole, PointValue::make_sphere(0.5, 0), 0),
                    ParseError);
    // nor on a proper subdomain
    DomainDescriptor ball = DomainDescriptor::ball(euclid, origin, 5.0);
    CHECK_THROWS_AS(make_strategy("ray:+x", euclid, ball, origin, 0), UnsupportedOperation);
}

TEST_CASE("spiral normative step") {
    GameTranscript tr = run_game(euclid, whole, 1.0, origin, PointValue::make_planar(1.5, 0),
                                 "spiral", 2);
    // from M = (1.5, 0) with the lion at the origin: perpendicular, clockwise
    CHECK(tr.steps[1].man.planar().x == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(tr.steps[1].man.planar().y == doctest::Approx(-1.0).epsilon(1e-12));
    GameTranscript ccw = run_game(euclid, whole, 1.0, origin, PointValue::make_planar(1.5, 0),
                                  "spiral-ccw", 2);
    CHECK(ccw.steps[1].man.planar().y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spiral is euclidean-only") {
    GameConfig cfg = make_game_config(river, whole, 1.0, PointValue::make_river(0, 1),
                                      PointValue::make_river(2, 1), 10);
    ManStrategy strategy = make_strategy("spiral", river, whole, PointValue::make_river(0, 1), 0);
    CHECK_THROWS_AS(play(cfg, strategy), UnsupportedOperation);
}

TEST_CASE("reverse base behaves like spiral before and after step k") {
    GameTranscript rev = run_game(euclid, whole, 1.0, origin, PointValue::make_planar(1.5, 0),
                                  "reverse@4", 3);
    GameTranscript spi = run_game(euclid, whole, 1.0, origin, PointValue::make_planar(1.5, 0),
                                  "spiral", 3);
    for (size_t i = 0; i < rev.steps.size(); ++i) {
        CHECK(rev.steps[i].man.planar().x == doctest::Approx(spi.steps[i].man.planar().x));
        CHECK(rev.steps[i].man.planar().y == doctest::Approx(spi.steps[i].man.planar().y));
    }
}

TEST_CASE("ray escape demands the man on the ray") {
    GameConfig cfg = make_game_config(river, whole, 1.0, PointValue::make_river(0, 3),
                                      PointValue::make_river(0, 5), 10);
    // the ray from (0,3) toward +x descends; (0,5) sits on the far side
    ManStrategy strategy =
        make_strategy("ray:+x", river, whole, PointValue::make_river(0, 3), 0);
    CHECK_THROWS_AS(play(cfg, strategy), UnsupportedOperation);
}

TEST_CASE("ray escape walks the ray at constant speed") {
    GameTranscript tr = run_game(river, whole, 1.0, PointValue::make_river(0, 3),
                                 PointValue::make_river(0, 1), "ray:+x", 50);
    for (const StepRecord& s : tr.steps) CHECK(s.gap == doctest::Approx(2.0).epsilon(1e-12));
    // after descending 3 the man runs along the axis
    CHECK(tr.final_man.river().y == doctest::Approx(0.0));
    CHECK(tr.final_man.river().x > 40.0);
}

TEST_CASE("flee runs directly away and respects the domain") {
    DomainDescriptor ball = DomainDescriptor::ball(euclid, origin, 3.0);
    GameTranscript tr = run_game(euclid, ball, 1.0, origin, PointValue::make_planar(1.5, 0),
                                 "flee", 100);
    // pinned at the boundary, then caught
    Outcome outcome = classify_outcome(tr, 1e-6);
    CHECK(std::holds_alternative<LionCapture>(outcome));
    for (const StepRecord& s : tr.steps)
        CHECK(domain_contains(euclid, ball, s.man, 1e-9));
    bool touched_boundary = false;
    for (const StepRecord& s : tr.steps)
        if (std::abs(distance(euclid, origin, s.man) - 3.0) <= 1e-6) touched_boundary = true;
    CHECK(touched_boundary);
}

TEST_CASE("scripted replays and then holds") {
    std::vector<PointValue> moves = {PointValue::make_planar(2.5, 0),
                                     PointValue::make_planar(3.0, 0.5)};
    GameConfig cfg = make_game_config(euclid, whole, 1.0, origin,
                                      PointValue::make_planar(1.5, 0), 10);
    ManStrategy strategy = ManStrategy::scripted(moves);
    GameTranscript tr = play(cfg, strategy);
    CHECK(tr.steps[1].man.planar().x == doctest::Approx(2.5));
    CHECK(tr.steps[2].man.planar().x == doctest::Approx(3.0));
    CHECK(tr.steps[2].man.planar().y == doctest::Approx(0.5));
    // after the script: stationary, so the lion closes in
    Outcome outcome = classify_outcome(tr, 1e-6);
    CHECK(std::holds_alternative<LionCapture>(outcome));
}

TEST_CASE("scripted file parsing") {
    const char* path = "scripted_moves_test.txt";
    {
        std::ofstream out(path);
        out << "# a comment line\n2.5,0\n3.0,0.5\n";
    }
    ManStrategy ok = make_strategy(std::string("scripted:") + path, euclid, whole, origin, 0);
    CHECK(ok.name() == "scripted");
    {
        std::ofstream out(path);
        out << "2.5,0\nnot-a-move\n";
    }
    try {
        make_strategy(std::string("scripted:") + path, euclid, whole, origin, 0);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(make_strategy("scripted:no_such_file.txt", euclid, whole, origin, 0),
                    IoError);
    std::remove(path);
}

TEST_CASE("random walks are seed-deterministic and legal") {
    DomainDescriptor ball = DomainDescriptor::ball(euclid, origin, 5.0);
    GameTranscript a = run_game(euclid, ball, 1.0, origin, PointValue::make_planar(1.5, 0),
                                "random", 200, 42);
    GameTranscript b = run_game(euclid, ball, 1.0, origin, PointValue::make_planar(1.5, 0),
                                "random", 200, 42);
    REQUIRE(a.steps.size() == b.steps.size());
    for (size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].man.planar().x == b.steps[i].man.planar().x);
        CHECK(a.steps[i].man.planar().y == b.steps[i].man.planar().y);
    }
    for (const StepRecord& s : a.steps) {
        CHECK(domain_contains(euclid, ball, s.man, 1e-9));
        CHECK(s.man_move_len <= 1.0 + 1e-9);
    }
}

TEST_CASE("clones replay identically") {
    ManStrategy original = ManStrategy::random_walk(7);
    ManStrategy copy = original.clone();
    GameConfig cfg = make_game_config(euclid, whole, 1.0, origin,
                                      PointValue::make_planar(1.5, 0), 50);
    GameTranscript a = play(cfg, original);
    GameTranscript b = play(cfg, copy);
    REQUIRE(a.steps.size() == b.steps.size());
    for (size_t i = 0; i < a.steps.size(); ++i)
        CHECK(a.steps[i].man.planar().x == b.steps[i].man.planar().x);
}

TEST_CASE("next_move hook matches the member call") {
    ManStrategy s1 = ManStrategy::stationary();
    GameConfig cfg = make_game_config(euclid, whole, 1.0, origin,
                                      PointValue::make_planar(1.5, 0), 5);
    GameTranscript tr = play(cfg, s1);
    ManStrategy s2 = ManStrategy::stationary();
    PointValue m = next_move(s2, tr, euclid, whole, 1.0);
    CHECK(m.planar().x == tr.steps.back().man.planar().x);
}
