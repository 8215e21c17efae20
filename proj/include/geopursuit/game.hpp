#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geopursuit/metric.hpp"
#include "geopursuit/rays.hpp"

namespace geopursuit {

struct GameConfig {
    SpaceHandle space;
    DomainDescriptor domain;
    double jump_bound; // D
    PointValue lion_start;
    PointValue man_start;
    int horizon;
    double win_tol; // epsilon used by classify_outcome
};

// Validates D > 0, horizon >= 1, win_tol > 0 and both starting points in the
// domain.
GameConfig make_game_config(const SpaceHandle& space, const DomainDescriptor& domain,
                            double jump_bound, PointValue lion_start, PointValue man_start,
                            int horizon, double win_tol = 1e-6);

struct StepRecord {
    int index;
    PointValue lion;      // L_i
    PointValue man;       // M_i
    double gap;           // D_i = d(L_i, M_i)
    double lion_move_len; // d(L_i, L_{i+1}) = min{D, D_i}
    double man_move_len;  // d(M_i, M_{i+1}) <= D
};

// Full play record. steps[i] holds the state at the start of round i;
// post_gaps[i] = d(L_{i+1}, M_i) is the quantity whose convergence to zero
// defines a lion win. The final_* fields carry the state after the last
// recorded round.
//
// While a strategy is being consulted for round i, the partially built
// transcript it receives has steps[i] as its last record (man_move_len still
// zero), post_gaps filled through round i, and final_lion already advanced to
// L_{i+1}: the man moves with full information.
struct GameTranscript {
    GameConfig config;
    std::string strategy_name;
    std::vector<StepRecord> steps;
    std::vector<double> post_gaps;
    PointValue final_lion;
    PointValue final_man;
    double final_gap;
    std::optional<RayDescriptor> ray_certificate;
};

// L' on [L, M] with d(L, L') = min{D, d(L, M)}; jumping onto M when the gap
// is within reach (ties included).
PointValue lion_step(const SpaceHandle& space, const PointValue& lion, const PointValue& man,
                     double jump_bound);

// True when a recorded gap counts as a capture: D_i <= D, up to the roundoff
// guard described at classify_outcome.
bool gap_within_capture(double gap, double jump_bound);

// True iff the proposed man move stays in the domain and has length at most
// jump_bound + tol.
bool validate_man_move(const DomainDescriptor& domain, const SpaceHandle& space,
                       const PointValue& man, const PointValue& man_next, double jump_bound,
                       double tol);

struct LionCapture {
    int i0; // earliest round with D_i <= D
};

struct LionLimit {
    double final_gap;
    bool monotone_certified;
};

struct ManEscapeCertified {
    double liminf_gap; // smallest recorded gap
    RayDescriptor certificate;
};

struct Undecided {
    double final_gap;
    double trend; // (D_last - D_mid) / (index distance), slope of the tail
};

using Outcome = std::variant<LionCapture, LionLimit, ManEscapeCertified, Undecided>;

std::string_view outcome_name(const Outcome& outcome);

class ManStrategy; // strategies module

// Runs the game: each round the lion moves first (from L_i toward M_i), then
// the man replies. Stops at the horizon, or a few rounds after the first
// capture (the post-capture rounds witness that capture is absorbing). A
// strategy move failing validate_man_move aborts with IllegalMoveError.
GameTranscript play(const GameConfig& config, ManStrategy& strategy);

// Applies the game's dichotomy to a finite transcript, honestly: capture if
// some recorded gap is <= D (up to a roundoff guard, so gaps converging to D
// from above are not misread as captures); the limit case needs the final gap
// within eps of D plus a monotonicity certificate; a man win needs the
// strategy's ray certificate and a near-constant gap above D + eps; anything
// else is Undecided.
Outcome classify_outcome(const GameTranscript& transcript, double eps);

} // namespace geopursuit
