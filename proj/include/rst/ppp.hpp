#pragma once

#include <cstdint>
#include <vector>

#include "rst/geometry.hpp"

namespace rst {

/// Finite planar configuration containing the origin (Palm version).
/// The origin is always stored at index 0. All points lie in the closed disk
/// of radius window_radius, and no two points share a squared norm or an
/// abscissa (ties are measure-zero under the continuous model and are
/// rejected at construction so that downstream orderings are strict).
struct PointSet {
    std::vector<Point> points;
    double window_radius = 0.0;

    std::int32_t size() const { return static_cast<std::int32_t>(points.size()); }
    Point operator[](std::int32_t i) const { return points[i]; }
};

/// Throws std::invalid_argument if any PointSet invariant is violated.
void validate_point_set(const PointSet& ps);

/// Samples the Palm version of a homogeneous Poisson point process in the
/// disk of the given radius: a Poisson(intensity * pi * r^2) number of
/// uniform points, with the origin prepended. Deterministic in the seed.
PointSet sample_palm_ppp(double intensity, double window_radius, std::uint64_t seed);

/// Deterministic configuration on which the origin has exactly one child:
/// six points at angles k*pi/3 with geometrically increasing moduli, each
/// closer to its predecessor than to the origin.
PointSet make_m1_config(double epsilon);

/// Deterministic configuration on which the origin has exactly two children:
/// two cardioid-shaped chains of points spiralling into the origin from
/// opposite sides, plus straight chains along the abscissa axis bridging the
/// radii min(r1,r2)..max(r1,r2).
PointSet make_m2_config(double r1, double r2, double epsilon, double angle_step);

}  // namespace rst
