#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geopursuit/game.hpp"
#include "geopursuit/strategy.hpp"
#include "geopursuit/verify.hpp"

namespace geopursuit {

struct SweepGrid {
    std::vector<double> d0_values; // initial gaps, placed along [L0, M0) and beyond
    std::vector<int> horizons;
};

// Textual run description assembled from a config file and/or flags. Values
// stay as close to the wire format as practical; resolve_game() turns them
// into live objects.
struct RunSpec {
    std::string mode; // play | sweep | verify | spaces
    std::optional<std::string> space;
    std::string domain = "whole";
    std::optional<double> jump_bound;
    std::optional<std::pair<double, double>> lion_start;
    std::optional<std::pair<double, double>> man_start;
    std::string strategy = "stationary";
    int horizon = 100;
    double eps = 1e-6;
    std::optional<std::string> csv_path;
    std::optional<std::string> json_path;
    std::optional<std::string> svg_path;
    SweepGrid sweep;
    std::optional<std::uint64_t> seed;
};

// Merges a config file (flat key = value lines, with a [sweep] section for
// the grids) and command-line flags; flags win. Unknown keys are rejected
// with the offending line. Mandatory keys per mode are enforced here.
RunSpec parse_run_spec(const std::vector<std::pair<std::string, std::string>>& flags,
                       const std::optional<std::string>& config_text, const std::string& mode);

struct ResolvedGame {
    SpaceHandle space;
    DomainDescriptor domain;
    GameConfig config;
    ManStrategy strategy;
};

// Builds the live space/domain/config/strategy from a play or sweep spec.
ResolvedGame resolve_game(const RunSpec& spec);

// The seed actually used: the spec's, else the GEOPURSUIT_SEED environment
// variable, else zero.
std::uint64_t resolve_seed(const RunSpec& spec);

// Locale-independent formatting with 17 significant digits.
std::string format_number(double v);

std::string transcript_csv(const GameTranscript& transcript);
std::string outcome_json(const RunSpec& spec, const GameTranscript& transcript,
                         const Outcome& outcome);
// Trajectory plot; defined for the planar-coordinate spaces (euclidean,
// poincare, river).
std::string trajectory_svg(const GameTranscript& transcript);

struct SweepRow {
    double d0;
    int horizon;
    std::string outcome;
    int capture_index; // -1 unless LionCapture
    double final_gap;
    double min_gap;
    int rounds;
};

std::vector<SweepRow> run_sweep(const RunSpec& spec);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const RunSpec& spec, const std::vector<SweepRow>& rows);

std::string battery_json(const RunSpec& spec, const std::vector<CheckResult>& checks);

// Executes the spec end to end, writing any requested artifacts. Returns the
// exit status: 0 pass, 1 invariant failure, 2 usage error, 3 I/O error.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

} // namespace geopursuit
