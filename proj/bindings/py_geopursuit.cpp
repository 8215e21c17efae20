#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "geopursuit/runio.hpp"

namespace py = pybind11;
using namespace geopursuit;

namespace {

using Coords = std::pair<double, double>;

SpaceHandle space_from(const std::string& name) {
    return make_space(space_kind_from_name(name));
}

PointValue point_from(const SpaceHandle& space, const Coords& c) {
    return PointValue::from_coords(space.kind, c.first, c.second);
}

Coords coords_of(const PointValue& p) {
    auto [c1, c2] = p.coords();
    return {c1, c2};
}

RunSpec build_spec(const std::string& space, double jump_bound, const Coords& l0, const Coords& m0,
                   const std::string& strategy, const std::string& domain, int horizon, double eps,
                   std::uint64_t seed) {
    RunSpec spec;
    spec.mode = "play";
    spec.space = space;
    spec.domain = domain;
    spec.jump_bound = jump_bound;
    spec.lion_start = l0;
    spec.man_start = m0;
    spec.strategy = strategy;
    spec.horizon = horizon;
    spec.eps = eps;
    spec.seed = seed;
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pursuit games and geodesic geometry on the bundled model spaces.";

    m.def("space_names", [] {
        return std::vector<std::string>{"euclidean", "poincare", "sphere-cap", "river", "star"};
    });

    m.def(
        "distance",
        [](const std::string& space, const Coords& p, const Coords& q) {
            SpaceHandle s = space_from(space);
            return distance(s, point_from(s, p), point_from(s, q));
        },
        py::arg("space"), py::arg("p"), py::arg("q"));

    m.def(
        "geodesic_point",
        [](const std::string& space, const Coords& p, const Coords& q, double t) {
            SpaceHandle s = space_from(space);
            return coords_of(geodesic_point(s, point_from(s, p), point_from(s, q), t));
        },
        py::arg("space"), py::arg("p"), py::arg("q"), py::arg("t"));

    m.def(
        "extend_beyond",
        [](const std::string& space, const Coords& p, const Coords& q, double extra) {
            SpaceHandle s = space_from(space);
            return coords_of(extend_beyond(s, point_from(s, p), point_from(s, q), extra));
        },
        py::arg("space"), py::arg("p"), py::arg("q"), py::arg("extra"));

    m.def(
        "is_between",
        [](const std::string& space, const Coords& x, const Coords& y, const Coords& z,
           double tol) {
            SpaceHandle s = space_from(space);
            return is_between(s, point_from(s, x), point_from(s, y), point_from(s, z), tol);
        },
        py::arg("space"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("tol") = 1e-9);

    m.def(
        "lion_step",
        [](const std::string& space, const Coords& lion, const Coords& man, double jump_bound) {
            SpaceHandle s = space_from(space);
            return coords_of(lion_step(s, point_from(s, lion), point_from(s, man), jump_bound));
        },
        py::arg("space"), py::arg("lion"), py::arg("man"), py::arg("jump_bound"));

    // Returns (outcome_json, transcript_csv); the package wrapper decodes.
    m.def(
        "play",
        [](const std::string& space, double jump_bound, const Coords& l0, const Coords& m0,
           const std::string& strategy, const std::string& domain, int horizon, double eps,
           std::uint64_t seed) {
            RunSpec spec =
                build_spec(space, jump_bound, l0, m0, strategy, domain, horizon, eps, seed);
            ResolvedGame game = resolve_game(spec);
            GameTranscript tr = play(game.config, game.strategy);
            Outcome outcome = classify_outcome(tr, spec.eps);
            return py::make_tuple(outcome_json(spec, tr, outcome), transcript_csv(tr));
        },
        py::arg("space"), py::arg("jump_bound"), py::arg("l0"), py::arg("m0"),
        py::arg("strategy") = "stationary", py::arg("domain") = "whole", py::arg("horizon") = 100,
        py::arg("eps") = 1e-6, py::arg("seed") = 0);

    m.def(
        "verify",
        [](const std::optional<std::string>& space, std::uint64_t seed) {
            std::optional<SpaceKind> kind;
            if (space) kind = space_kind_from_name(*space);
            py::list out;
            for (const CheckResult& c : run_verification_battery(kind, seed)) {
                py::dict row;
                row["name"] = c.name;
                row["passed"] = c.passed;
                row["value"] = c.value;
                row["bound"] = c.bound;
                row["relation"] = c.relation;
                out.append(std::move(row));
            }
            return out;
        },
        py::arg("space") = py::none(), py::arg("seed") = 0);
}
