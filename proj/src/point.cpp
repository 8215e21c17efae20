#include "geopursuit/point.hpp"

#include <cmath>
#include <string>

namespace geopursuit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double normalize_longitude(double lon) {
    double two_pi = 2.0 * kPi;
    double r = std::fmod(lon, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

} // namespace

std::string_view space_name(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::euclidean: return "euclidean";
        case SpaceKind::poincare: return "poincare";
        case SpaceKind::sphere_cap: return "sphere-cap";
        case SpaceKind::river: return "river";
        case SpaceKind::star: return "star";
    }
    throw ContractViolation("unknown space kind");
}

SpaceKind space_kind_from_name(std::string_view name) {
    if (name == "euclidean") return SpaceKind::euclidean;
    if (name == "poincare") return SpaceKind::poincare;
    if (name == "sphere-cap") return SpaceKind::sphere_cap;
    if (name == "river") return SpaceKind::river;
    if (name == "star") return SpaceKind::star;
    throw ContractViolation("unknown space name: " + std::string(name));
}

PointValue PointValue::make_planar(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw ContractViolation("planar point must be finite");
    return PointValue(PlanarPoint{x, y});
}

PointValue PointValue::make_disk(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw ContractViolation("disk point must be finite");
    if (x * x + y * y >= 1.0)
        throw ContractViolation("disk point must satisfy x^2 + y^2 < 1");
    return PointValue(DiskPoint{x, y});
}

PointValue PointValue::make_sphere(double colat, double lon) {
    if (!std::isfinite(colat) || !std::isfinite(lon))
        throw ContractViolation("sphere point must be finite");
    if (colat < 0.0 || colat >= kPi / 2.0)
        throw ContractViolation("sphere colatitude must lie in [0, pi/2)");
    return PointValue(SpherePoint{colat, normalize_longitude(lon)});
}

PointValue PointValue::make_river(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw ContractViolation("river point must be finite");
    return PointValue(RiverPoint{x, y});
}

PointValue PointValue::make_star(int ray, double s) {
    if (ray < 0) throw ContractViolation("star ray index must be nonnegative");
    if (!(s >= 0.0) || !std::isfinite(s))
        throw ContractViolation("star arclength must be nonnegative and finite");
    if (s == 0.0) ray = 0; // the hub is one point no matter the ray label
    return PointValue(StarPoint{ray, s});
}

PointValue PointValue::from_coords(SpaceKind kind, double c1, double c2) {
    switch (kind) {
        case SpaceKind::euclidean: return make_planar(c1, c2);
        case SpaceKind::poincare: return make_disk(c1, c2);
        case SpaceKind::sphere_cap: return make_sphere(c1, c2);
        case SpaceKind::river: return make_river(c1, c2);
        case SpaceKind::star: {
            double ray_index = std::round(c1);
            if (std::abs(ray_index - c1) > 0.0)
                throw ContractViolation("star ray index must be an integer");
            return make_star(static_cast<int>(ray_index), c2);
        }
    }
    throw ContractViolation("unknown space kind");
}

SpaceKind PointValue::kind() const {
    struct Visitor {
        SpaceKind operator()(const PlanarPoint&) const { return SpaceKind::euclidean; }
        SpaceKind operator()(const DiskPoint&) const { return SpaceKind::poincare; }
        SpaceKind operator()(const SpherePoint&) const { return SpaceKind::sphere_cap; }
        SpaceKind operator()(const RiverPoint&) const { return SpaceKind::river; }
        SpaceKind operator()(const StarPoint&) const { return SpaceKind::star; }
    };
    return std::visit(Visitor{}, rep_);
}

namespace {

[[noreturn]] void mismatch(const char* wanted) {
    throw ContractViolation(std::string("point variant mismatch: expected ") + wanted);
}

} // namespace

const PlanarPoint& PointValue::planar() const {
    if (const auto* p = std::get_if<PlanarPoint>(&rep_)) return *p;
    mismatch("planar");
}

const DiskPoint& PointValue::disk() const {
    if (const auto* p = std::get_if<DiskPoint>(&rep_)) return *p;
    mismatch("disk");
}

const SpherePoint& PointValue::sphere() const {
    if (const auto* p = std::get_if<SpherePoint>(&rep_)) return *p;
    mismatch("sphere");
}

const RiverPoint& PointValue::river() const {
    if (const auto* p = std::get_if<RiverPoint>(&rep_)) return *p;
    mismatch("river");
}

const StarPoint& PointValue::star() const {
    if (const auto* p = std::get_if<StarPoint>(&rep_)) return *p;
    mismatch("star");
}

std::pair<double, double> PointValue::coords() const {
    switch (kind()) {
        case SpaceKind::euclidean: return {planar().x, planar().y};
        case SpaceKind::poincare: return {disk().x, disk().y};
        case SpaceKind::sphere_cap: return {sphere().colat, sphere().lon};
        case SpaceKind::river: return {river().x, river().y};
        case SpaceKind::star: return {static_cast<double>(star().ray), star().s};
    }
    throw ContractViolation("unknown space kind");
}

} // namespace geopursuit
