#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "geopursuit/game.hpp"

namespace geopursuit {

// A man policy. Strategy values are immutable apart from an owned random
// generator (random walks) and replay cursors; clone() yields an independent
// instance with the generator re-seeded, safe to hand to a parallel game.
class ManStrategy {
public:
    static ManStrategy stationary();
    // Besicovitch-style spiral: step of length exactly D, perpendicular to
    // the direction man -> lion (clockwise by default). Euclidean plane only.
    static ManStrategy spiral(bool clockwise = true);
    // Plays like `base` except that the k-th man move (1-based) goes from
    // M_i straight toward L_i with length min{D, d(M_i, L_i)}: a blunder
    // that hands the lion a capture.
    static ManStrategy reverse_at_step(int k, ManStrategy base);
    // Walks outward along the ray: the move from M_i lands at arclength
    // d(base, M_i) + D. Requires every M_i on the ray; the starting point is
    // checked on the first move.
    static ManStrategy ray_escape(RayDescriptor ray);
    // Moves up to D directly away from L_i along the geodesic extension of
    // [L_i, M_i], clipped to the domain. Stays put when L_i = M_i.
    static ManStrategy radial_flee();
    // Replays the supplied moves, then holds position.
    static ManStrategy scripted(std::vector<PointValue> moves);
    // Moves toward a random domain point by a random fraction of D.
    static ManStrategy random_walk(std::uint64_t seed);

    const std::string& name() const { return name_; }
    ManStrategy clone() const;

    // Engaged for ray_escape; attached to transcripts as the escape
    // certificate consumed by classify_outcome.
    std::optional<RayDescriptor> ray_certificate() const;

    PointValue next(const GameTranscript& history, const SpaceHandle& space,
                    const DomainDescriptor& domain, double jump_bound);

private:
    struct Stationary {};
    struct Spiral {
        bool clockwise;
    };
    struct ReverseAt {
        int k;
        std::shared_ptr<ManStrategy> base;
    };
    struct RayEscape {
        RayDescriptor ray;
    };
    struct RadialFlee {};
    struct Scripted {
        std::vector<PointValue> moves;
    };
    struct RandomWalk {
        std::uint64_t seed;
        std::mt19937_64 rng;
    };
    using Policy =
        std::variant<Stationary, Spiral, ReverseAt, RayEscape, RadialFlee, Scripted, RandomWalk>;

    ManStrategy(std::string name, Policy policy) : name_(std::move(name)), policy_(std::move(policy)) {}

    std::string name_;
    Policy policy_;
};

// The strategy consultation hook used by play(): history's last step record
// is the current round (see GameTranscript).
PointValue next_move(ManStrategy& strategy, const GameTranscript& history,
                     const SpaceHandle& space, const DomainDescriptor& domain, double jump_bound);

// Builds a strategy from its CLI identifier: "stationary", "spiral",
// "spiral-ccw", "reverse@<k>" (spiral base), "ray:<direction>", "flee",
// "scripted:<path>", "random". Ray directions: "dx,dy" or "+x"/"-x"/"+y"/"-y"
// in the plane, "bx,by" (ideal point) in the disk, "+x"/"-x" in the river
// space, a ray index in the star tree. The ray is based at the lion's start,
// matching the escape construction.
ManStrategy make_strategy(const std::string& id, const SpaceHandle& space,
                          const DomainDescriptor& domain, const PointValue& lion_start,
                          std::uint64_t seed);

} // namespace geopursuit
