#include "geopursuit/strategy.hpp"

#include <cmath>
#include <fstream>

#include "textutil.hpp"

namespace geopursuit {

ManStrategy ManStrategy::stationary() { return ManStrategy("stationary", Stationary{}); }

ManStrategy ManStrategy::spiral(bool clockwise) {
    return ManStrategy(clockwise ? "spiral" : "spiral-ccw", Spiral{clockwise});
}

ManStrategy ManStrategy::reverse_at_step(int k, ManStrategy base) {
    if (k < 1) throw ContractViolation("reverse step index is 1-based");
    return ManStrategy("reverse@" + std::to_string(k),
                       ReverseAt{k, std::make_shared<ManStrategy>(std::move(base))});
}

ManStrategy ManStrategy::ray_escape(RayDescriptor ray) {
    return ManStrategy("ray", RayEscape{std::move(ray)});
}

ManStrategy ManStrategy::radial_flee() { return ManStrategy("flee", RadialFlee{}); }

ManStrategy ManStrategy::scripted(std::vector<PointValue> moves) {
    return ManStrategy("scripted", Scripted{std::move(moves)});
}

ManStrategy ManStrategy::random_walk(std::uint64_t seed) {
    return ManStrategy("random", RandomWalk{seed, std::mt19937_64(seed)});
}

ManStrategy ManStrategy::clone() const {
    struct Visitor {
        ManStrategy operator()(const Stationary&) const { return stationary(); }
        ManStrategy operator()(const Spiral& p) const { return spiral(p.clockwise); }
        ManStrategy operator()(const ReverseAt& p) const {
            return reverse_at_step(p.k, p.base->clone());
        }
        ManStrategy operator()(const RayEscape& p) const { return ray_escape(p.ray); }
        ManStrategy operator()(const RadialFlee&) const { return radial_flee(); }
        ManStrategy operator()(const Scripted& p) const { return scripted(p.moves); }
        ManStrategy operator()(const RandomWalk& p) const { return random_walk(p.seed); }
    };
    return std::visit(Visitor{}, policy_);
}

std::optional<RayDescriptor> ManStrategy::ray_certificate() const {
    if (const auto* p = std::get_if<RayEscape>(&policy_)) return p->ray;
    return std::nullopt;
}

namespace {

PointValue spiral_move(const GameTranscript& history, const SpaceHandle& space,
                       double jump_bound, bool clockwise) {
    if (space.kind != SpaceKind::euclidean)
        throw UnsupportedOperation("the spiral strategy is defined in the Euclidean plane only");
    const StepRecord& cur = history.steps.back();
    const PlanarPoint& lion = cur.lion.planar();
    const PlanarPoint& man = cur.man.planar();
    double vx = man.x - lion.x, vy = man.y - lion.y;
    double n = std::hypot(vx, vy);
    if (n == 0.0) return cur.man; // on top of the lion; the perpendicular is undefined
    double ux = vy / n, uy = -vx / n; // clockwise perpendicular to the lion->man direction
    if (!clockwise) {
        ux = -ux;
        uy = -uy;
    }
    return PointValue::make_planar(man.x + jump_bound * ux, man.y + jump_bound * uy);
}

} // namespace

PointValue ManStrategy::next(const GameTranscript& history, const SpaceHandle& space,
                             const DomainDescriptor& domain, double jump_bound) {
    if (history.steps.empty()) throw ContractViolation("strategy consulted with no current round");
    const StepRecord& cur = history.steps.back();

    struct Visitor {
        const GameTranscript& history;
        const StepRecord& cur;
        const SpaceHandle& space;
        const DomainDescriptor& domain;
        double D;

        PointValue operator()(const Stationary&) const { return cur.man; }

        PointValue operator()(const Spiral& p) const {
            return spiral_move(history, space, D, p.clockwise);
        }

        PointValue operator()(ReverseAt& p) const {
            if (cur.index + 1 == p.k) {
                double d = distance(space, cur.man, cur.lion);
                if (d <= kPointEqTol) return cur.man;
                return geodesic_point(space, cur.man, cur.lion, std::min(D, d) / d);
            }
            return p.base->next(history, space, domain, D);
        }

        PointValue operator()(const RayEscape& p) const {
            double s = distance(space, p.ray.basepoint, cur.man);
            if (distance(space, ray_eval(p.ray, s), cur.man) > 1e-6)
                throw UnsupportedOperation("ray escape: the man is not on the escape ray");
            return ray_eval(p.ray, s + D);
        }

        PointValue operator()(const RadialFlee&) const {
            double d = distance(space, cur.lion, cur.man);
            if (d <= kPointEqTol) return cur.man;
            PointValue target = extend_beyond(space, cur.lion, cur.man, D);
            return clip_to_domain(space, domain, cur.man, target, D);
        }

        PointValue operator()(const Scripted& p) const {
            size_t i = static_cast<size_t>(cur.index);
            if (i < p.moves.size()) return p.moves[i];
            return cur.man;
        }

        PointValue operator()(RandomWalk& p) const {
            PointValue target = sample_in_domain(space, domain, p.rng);
            double d = distance(space, cur.man, target);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            double len = unit(p.rng) * D;
            if (d <= 1e-12) return cur.man;
            return geodesic_point(space, cur.man, target, std::min(1.0, len / d));
        }
    };
    return std::visit(Visitor{history, cur, space, domain, jump_bound}, policy_);
}

PointValue next_move(ManStrategy& strategy, const GameTranscript& history,
                     const SpaceHandle& space, const DomainDescriptor& domain,
                     double jump_bound) {
    return strategy.next(history, space, domain, jump_bound);
}

namespace {

[[noreturn]] void bad_strategy(const std::string& id, const std::string& why) {
    throw ParseError("strategy", 0, "strategy \"" + id + "\": " + why);
}

RayDirection parse_ray_direction(const std::string& id, std::string_view spec,
                                 const SpaceHandle& space) {
    auto planar_like = [&](double& dx, double& dy) {
        if (spec == "+x") { dx = 1; dy = 0; return true; }
        if (spec == "-x") { dx = -1; dy = 0; return true; }
        if (spec == "+y") { dx = 0; dy = 1; return true; }
        if (spec == "-y") { dx = 0; dy = -1; return true; }
        auto parts = text::split(spec, ',');
        return parts.size() == 2 && text::parse_double(parts[0], dx) &&
               text::parse_double(parts[1], dy);
    };
    switch (space.kind) {
    case SpaceKind::euclidean: {
        double dx, dy;
        if (!planar_like(dx, dy)) bad_strategy(id, "expected a planar direction like 1,0 or +x");
        return PlanarDirection{dx, dy};
    }
    case SpaceKind::poincare: {
        double dx, dy;
        if (!planar_like(dx, dy)) bad_strategy(id, "expected an ideal boundary point like 1,0");
        return DiskIdealPoint{dx, dy};
    }
    case SpaceKind::river: {
        if (spec == "+x") return RiverDirection{1};
        if (spec == "-x") return RiverDirection{-1};
        bad_strategy(id, "river rays take +x or -x");
    }
    case SpaceKind::star: {
        int ray;
        if (!text::parse_int(spec, ray)) bad_strategy(id, "star rays take a ray index");
        return StarDirection{ray};
    }
    default:
        bad_strategy(id, "no rays on this space");
    }
}

std::vector<PointValue> load_scripted_moves(const std::string& path, SpaceKind kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scripted-moves file: " + path);
    std::vector<PointValue> moves;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = text::trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto parts = text::split(s, ',');
        double c1, c2;
        if (parts.size() != 2 || !text::parse_double(parts[0], c1) ||
            !text::parse_double(parts[1], c2))
            throw ParseError("scripted", line_no, "expected \"c1,c2\" in " + path);
        moves.push_back(PointValue::from_coords(kind, c1, c2));
    }
    return moves;
}

} // namespace

ManStrategy make_strategy(const std::string& id, const SpaceHandle& space,
                          const DomainDescriptor& domain, const PointValue& lion_start,
                          std::uint64_t seed) {
    if (id == "stationary") return ManStrategy::stationary();
    if (id == "spiral") return ManStrategy::spiral(true);
    if (id == "spiral-ccw") return ManStrategy::spiral(false);
    if (id == "flee") return ManStrategy::radial_flee();
    if (id == "random") return ManStrategy::random_walk(seed);
    if (id.rfind("reverse@", 0) == 0) {
        int k;
        if (!text::parse_int(std::string_view(id).substr(8), k) || k < 1)
            bad_strategy(id, "expected reverse@<positive step>");
        return ManStrategy::reverse_at_step(k, ManStrategy::spiral(true));
    }
    if (id.rfind("ray:", 0) == 0) {
        RayDirection dir = parse_ray_direction(id, std::string_view(id).substr(4), space);
        return ManStrategy::ray_escape(make_ray(space, domain, lion_start, dir));
    }
    if (id.rfind("scripted:", 0) == 0)
        return ManStrategy::scripted(load_scripted_moves(id.substr(9), space.kind));
    bad_strategy(id, "unknown strategy identifier");
}

} // namespace geopursuit
