#include "geopursuit/game.hpp"

#include <algorithm>
#include <cmath>

#include "geopursuit/strategy.hpp"

namespace geopursuit {

namespace {

// Rounds recorded past the first capture; they witness that capture is
// absorbing (the lion keeps landing on M_i) without padding the transcript
// out to the horizon.
constexpr int kPostCaptureRounds = 3;

// Gap spread below which a certified escape counts as "constant gap".
constexpr double kEscapeConstancyTol = 1e-6;

} // namespace

// Capture means D_i <= D. Evaluated on computed gaps this needs a roundoff
// guard: a true gap of D + 1e-20 can round to one ulp below D, and declaring
// capture on such noise would cut off limit-mode games that never close the
// gap. The slack is far below any gap a strategy can produce deliberately.
bool gap_within_capture(double gap, double jump_bound) {
    return gap <= jump_bound - 1e-12 * std::max(1.0, jump_bound);
}

GameConfig make_game_config(const SpaceHandle& space, const DomainDescriptor& domain,
                            double jump_bound, PointValue lion_start, PointValue man_start,
                            int horizon, double win_tol) {
    if (!std::isfinite(jump_bound) || jump_bound <= 0.0)
        throw ContractViolation("jump bound D must be positive and finite");
    if (horizon < 1) throw ContractViolation("horizon must be at least 1");
    if (!std::isfinite(win_tol) || win_tol <= 0.0)
        throw ContractViolation("win tolerance must be positive and finite");
    if (!domain_contains(space, domain, lion_start, kPointEqTol))
        throw ContractViolation("lion start lies outside the domain");
    if (!domain_contains(space, domain, man_start, kPointEqTol))
        throw ContractViolation("man start lies outside the domain");
    return GameConfig{space,    domain,  jump_bound, std::move(lion_start), std::move(man_start),
                      horizon,  win_tol};
}

PointValue lion_step(const SpaceHandle& space, const PointValue& lion, const PointValue& man,
                     double jump_bound) {
    double d = distance(space, lion, man);
    if (d <= jump_bound) return man;
    return geodesic_point(space, lion, man, jump_bound / d);
}

bool validate_man_move(const DomainDescriptor& domain, const SpaceHandle& space,
                       const PointValue& man, const PointValue& man_next, double jump_bound,
                       double tol) {
    if (!domain_contains(space, domain, man_next, tol)) return false;
    return distance(space, man, man_next) <= jump_bound + tol;
}

GameTranscript play(const GameConfig& config, ManStrategy& strategy) {
    const SpaceHandle& space = config.space;
    const double D = config.jump_bound;
    const double tol = default_geo_tol(space.kind);

    GameTranscript tr{config,
                      strategy.name(),
                      {},
                      {},
                      config.lion_start,
                      config.man_start,
                      distance(space, config.lion_start, config.man_start),
                      strategy.ray_certificate()};
    tr.steps.reserve(static_cast<size_t>(std::min(config.horizon, 1 << 20)));

    PointValue lion = config.lion_start;
    PointValue man = config.man_start;
    int first_capture = -1;

    for (int i = 0; i < config.horizon; ++i) {
        double gap = distance(space, lion, man);
        PointValue lion_next = lion_step(space, lion, man, D);

        tr.steps.push_back(StepRecord{i, lion, man, gap, distance(space, lion, lion_next), 0.0});
        tr.post_gaps.push_back(distance(space, lion_next, man));
        tr.final_lion = lion_next;
        tr.final_man = man;
        tr.final_gap = tr.post_gaps.back();

        PointValue man_next = strategy.next(tr, space, config.domain, D);
        if (!validate_man_move(config.domain, space, man, man_next, D, tol))
            throw IllegalMoveError(i, "strategy emitted an invalid move at round " +
                                          std::to_string(i));
        tr.steps.back().man_move_len = distance(space, man, man_next);

        lion = lion_next;
        man = man_next;
        tr.final_man = man;
        tr.final_gap = distance(space, lion, man);

        if (first_capture < 0 && gap_within_capture(gap, D)) first_capture = i;
        if (first_capture >= 0 && i - first_capture >= kPostCaptureRounds) break;
    }
    return tr;
}

std::string_view outcome_name(const Outcome& outcome) {
    struct Visitor {
        std::string_view operator()(const LionCapture&) const { return "LionCapture"; }
        std::string_view operator()(const LionLimit&) const { return "LionLimit"; }
        std::string_view operator()(const ManEscapeCertified&) const {
            return "ManEscapeCertified";
        }
        std::string_view operator()(const Undecided&) const { return "Undecided"; }
    };
    return std::visit(Visitor{}, outcome);
}

Outcome classify_outcome(const GameTranscript& transcript, double eps) {
    if (transcript.steps.empty()) throw ContractViolation("cannot classify an empty transcript");
    const double D = transcript.config.jump_bound;
    const double slack = default_geo_tol(transcript.config.space.kind);

    std::vector<double> gaps;
    gaps.reserve(transcript.steps.size() + 1);
    for (const StepRecord& s : transcript.steps) gaps.push_back(s.gap);
    gaps.push_back(transcript.final_gap);

    for (size_t i = 0; i < gaps.size(); ++i)
        if (gap_within_capture(gaps[i], D)) return LionCapture{static_cast<int>(i)};

    bool monotone = true;
    double lo = gaps.front(), hi = gaps.front();
    for (size_t i = 0; i + 1 < gaps.size(); ++i) {
        if (gaps[i + 1] > gaps[i] + slack) monotone = false;
        lo = std::min(lo, gaps[i + 1]);
        hi = std::max(hi, gaps[i + 1]);
    }

    if (gaps.back() - D <= eps && monotone) return LionLimit{gaps.back(), true};

    if (transcript.ray_certificate && lo - D > eps && hi - lo <= kEscapeConstancyTol)
        return ManEscapeCertified{lo, *transcript.ray_certificate};

    size_t last = gaps.size() - 1;
    size_t mid = last / 2;
    double trend = last > mid ? (gaps[last] - gaps[mid]) / static_cast<double>(last - mid) : 0.0;
    return Undecided{gaps.back(), trend};
}

} // namespace geopursuit
