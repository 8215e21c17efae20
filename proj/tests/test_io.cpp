#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geopursuit/runio.hpp"

using namespace geopursuit;
using Flags = std::vector<std::pair<std::string, std::string>>;

namespace {
RunSpec play_spec(const std::string& strategy = "stationary", int horizon = 10) {
    RunSpec spec;
    spec.mode = "play";
    spec.space = "euclidean";
    spec.jump_bound = 1.0;
    spec.lion_start = {0.0, 0.0};
    spec.man_start = {2.5, 0.0};
    spec.strategy = strategy;
    spec.horizon = horizon;
    return spec;
}
} // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    // 17 significant digits round-trip every double
    for (double v : {3.14159, -2.75e-8, 1e300, 0.9999999999999999}) {
        CHECK(std::stod(format_number(v)) == v);
    }
}

TEST_CASE("spec from flags alone") {
    Flags flags = {{"space", "euclidean"}, {"D", "1.5"},       {"L0", "0,0"},
                   {"M0", "3,4"},          {"strategy", "spiral"}, {"horizon", "250"},
                   {"eps", "1e-4"},        {"seed", "99"}};
    RunSpec spec = parse_run_spec(flags, std::nullopt, "play");
    CHECK(spec.mode == "play");
    CHECK(*spec.space == "euclidean");
    CHECK(*spec.jump_bound == 1.5);
    CHECK(spec.lion_start->first == 0.0);
    CHECK(spec.man_start->second == 4.0);
    CHECK(spec.strategy == "spiral");
    CHECK(spec.horizon == 250);
    CHECK(spec.eps == 1e-4);
    CHECK(*spec.seed == 99);
    CHECK(spec.domain == "whole"); // defaults survive
}

TEST_CASE("config file parsing with sweep section") {
    std::string cfg = "# pursuit setup\n"
                      "space = river\n"
                      "D = 2\n"
                      "L0 = 0,3\n"
                      "\n"
                      "M0 = 0,1\n"
                      "domain = whole\n"
                      "[sweep]\n"
                      "D0 = 1.5, 2.5,4\n"
                      "horizon = 50, 100\n";
    RunSpec spec = parse_run_spec({}, cfg, "sweep");
    CHECK(*spec.space == "river");
    CHECK(*spec.jump_bound == 2.0);
    REQUIRE(spec.sweep.d0_values.size() == 3);
    CHECK(spec.sweep.d0_values[1] == 2.5);
    REQUIRE(spec.sweep.horizons.size() == 2);
    CHECK(spec.sweep.horizons[1] == 100);
}

TEST_CASE("flags override config") {
    std::string cfg = "space = euclidean\nD = 2\nL0 = 0,0\nM0 = 5,0\nhorizon = 10\n";
    Flags flags = {{"D", "3"}, {"strategy", "flee"}};
    RunSpec spec = parse_run_spec(flags, cfg, "play");
    CHECK(*spec.jump_bound == 3.0);
    CHECK(spec.strategy == "flee");
    CHECK(spec.horizon == 10);
}

TEST_CASE("spec rejections carry key and line") {
    std::string base = "space = euclidean\nD = 1\nL0 = 0,0\nM0 = 2,0\n";
    try {
        parse_run_spec({}, base + "colour = red\n", "play");
        FAIL("unknown key accepted");
    } catch (const ParseError& e) {
        CHECK(e.key() == "colour");
        CHECK(e.line() == 5);
    }
    CHECK_THROWS_AS(parse_run_spec({}, base + "no equals sign here\n", "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({}, base + "[lair]\n", "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({}, base, "chase"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({{"D", "-1"}}, base, "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({{"D", "one"}}, base, "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({{"horizon", "0"}}, base, "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({{"eps", "-1e-6"}}, base, "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({{"seed", "-4"}}, base, "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({{"L0", "1;2"}}, base, "play"), ParseError);
    // mandatory keys per mode
    CHECK_THROWS_AS(parse_run_spec({}, "space = euclidean\n", "play"), ParseError);
    CHECK_THROWS_AS(parse_run_spec({}, base, "sweep"), ParseError);
    // verify needs none of them
    RunSpec v = parse_run_spec({}, std::nullopt, "verify");
    CHECK(v.mode == "verify");
}

TEST_CASE("domain strings resolve or reject") {
    RunSpec spec = play_spec();
    spec.domain = "ball c=0,0 r=5";
    ResolvedGame game = resolve_game(spec);
    CHECK(!game.domain.is_whole());
    CHECK(domain_contains(game.space, game.domain, PointValue::make_planar(4.9, 0), 1e-9));
    CHECK(!domain_contains(game.space, game.domain, PointValue::make_planar(5.1, 0), 1e-9));

    spec.domain = "blob";
    CHECK_THROWS_AS(resolve_game(spec), ParseError);
    spec.domain = "ball c=0,0 r=-2";
    CHECK_THROWS_AS(resolve_game(spec), ContractViolation);
    spec.domain = "ball r=2";
    CHECK_THROWS_AS(resolve_game(spec), ParseError);
}

TEST_CASE("seed resolution order") {
    RunSpec spec = play_spec();
    unsetenv("GEOPURSUIT_SEED");
    CHECK(resolve_seed(spec) == 0);
    setenv("GEOPURSUIT_SEED", "77", 1);
    CHECK(resolve_seed(spec) == 77);
    spec.seed = 5;
    CHECK(resolve_seed(spec) == 5); // explicit wins over environment
    spec.seed.reset();
    setenv("GEOPURSUIT_SEED", "soon", 1);
    CHECK_THROWS_AS(resolve_seed(spec), ParseError);
    unsetenv("GEOPURSUIT_SEED");
}

TEST_CASE("transcript csv is stable") {
    RunSpec spec = play_spec();
    ResolvedGame game = resolve_game(spec);
    GameTranscript tr = play(game.config, game.strategy);
    std::string csv = transcript_csv(tr);
    CHECK(csv == "i,Lc1,Lc2,Mc1,Mc2,D_i,post_gap\n"
                 "0,0,0,2.5,0,2.5,1.5\n"
                 "1,1,0,2.5,0,1.5,0.5\n"
                 "2,2,0,2.5,0,0.5,0\n"
                 "3,2.5,0,2.5,0,0,0\n"
                 "4,2.5,0,2.5,0,0,0\n"
                 "5,2.5,0,2.5,0,0,0\n");
}

TEST_CASE("outcome json shape") {
    RunSpec spec = play_spec();
    ResolvedGame game = resolve_game(spec);
    GameTranscript tr = play(game.config, game.strategy);
    Outcome outcome = classify_outcome(tr, spec.eps);
    nlohmann::json j = nlohmann::json::parse(outcome_json(spec, tr, outcome));
    CHECK(j["mode"] == "play");
    CHECK(j["space"] == "euclidean");
    CHECK(j["domain"] == "whole");
    CHECK(j["D"] == 1.0);
    CHECK(j["L0"] == nlohmann::json::array({0.0, 0.0}));
    CHECK(j["strategy"] == "stationary");
    CHECK(j["rounds"] == 6);
    CHECK(j["outcome"]["variant"] == "LionCapture");
    CHECK(j["outcome"]["i0"] == 2);
    CHECK(j["final"]["gap"] == 0.0);
    CHECK(j["final"]["lion"] == j["final"]["man"]);
}

TEST_CASE("identical specs give identical bytes") {
    RunSpec spec = play_spec("random", 40);
    spec.seed = 1234;
    std::string csv_a, csv_b, json_a, json_b;
    for (std::string* csv : {&csv_a, &csv_b}) {
        ResolvedGame game = resolve_game(spec);
        GameTranscript tr = play(game.config, game.strategy);
        *csv = transcript_csv(tr);
        (csv == &csv_a ? json_a : json_b) = outcome_json(spec, tr, classify_outcome(tr, spec.eps));
    }
    CHECK(csv_a == csv_b);
    CHECK(json_a == json_b);
    CHECK(csv_a.find("i,Lc1,Lc2,Mc1,Mc2,D_i,post_gap\n") == 0);
}

TEST_CASE("sweep rows and serialization") {
    RunSpec spec = play_spec();
    spec.mode = "sweep";
    spec.sweep.d0_values = {1.5, 3.5};
    spec.sweep.horizons = {50};
    std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].d0 == 1.5);
    CHECK(rows[0].outcome == "LionCapture");
    CHECK(rows[0].capture_index == 1);
    CHECK(rows[1].capture_index == 3);
    CHECK(rows[0].final_gap == 0.0);
    CHECK(rows[0].min_gap == 0.0);
    std::string csv = sweep_csv(rows);
    CHECK(csv.find("D0,horizon,outcome,capture_index,final_gap,min_gap,rounds\n") == 0);
    CHECK(csv.find("\n1.5,50,LionCapture,1,") != std::string::npos);
    nlohmann::json j = nlohmann::json::parse(sweep_json(spec, rows));
    CHECK(j["mode"] == "sweep");
    CHECK(j["rows"].size() == 2);
    // same grid, same rows
    std::vector<SweepRow> again = run_sweep(spec);
    CHECK(sweep_csv(again) == csv);
}

TEST_CASE("svg for planar-coordinate spaces only") {
    RunSpec spec = play_spec();
    ResolvedGame game = resolve_game(spec);
    GameTranscript tr = play(game.config, game.strategy);
    std::string svg = trajectory_svg(tr);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);

    RunSpec sspec = play_spec();
    sspec.space = "star";
    sspec.lion_start = {0.0, 0.0};
    sspec.man_start = {1.0, 2.0};
    ResolvedGame sgame = resolve_game(sspec);
    GameTranscript str = play(sgame.config, sgame.strategy);
    CHECK_THROWS_AS(trajectory_svg(str), UnsupportedOperation);
}

TEST_CASE("run exit codes") {
    std::ostringstream out, err;
    RunSpec spaces;
    spaces.mode = "spaces";
    CHECK(run(spaces, out, err) == 0);
    CHECK(out.str().find("euclidean") != std::string::npos);
    CHECK(out.str().find("star") != std::string::npos);

    out.str("");
    RunSpec ok = play_spec();
    CHECK(run(ok, out, err) == 0);
    CHECK(out.str().find("outcome: LionCapture") != std::string::npos);

    RunSpec bad_strategy = play_spec("amble");
    CHECK(run(bad_strategy, out, err) == 2);

    RunSpec bad_path = play_spec();
    bad_path.csv_path = "/nonexistent-dir/run.csv";
    CHECK(run(bad_path, out, err) == 3);

    // a scripted man that teleports trips the legality check
    {
        std::ofstream moves("io_bad_moves.txt");
        moves << "9,9\n";
    }
    RunSpec illegal = play_spec("scripted:io_bad_moves.txt");
    CHECK(run(illegal, out, err) == 1);
    std::remove("io_bad_moves.txt");
}

TEST_CASE("verify mode reports checks") {
    std::ostringstream out, err;
    RunSpec spec;
    spec.mode = "verify";
    spec.space = "star";
    spec.seed = 3;
    spec.json_path = "io_battery.json";
    CHECK(run(spec, out, err) == 0);
    CHECK(out.str().find("all checks passed") != std::string::npos);
    CHECK(out.str().find("pass") != std::string::npos);
    std::ifstream in("io_battery.json");
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["all_passed"] == true);
    CHECK(j["checks"].size() > 0);
    std::remove("io_battery.json");
}
