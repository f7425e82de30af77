#pragma once

#include <cmath>
#include <vector>

#include "rst/ppp.hpp"
#include "rst/tree.hpp"

namespace rst::test {

/// Point set from explicit coordinates; origin must come first. A few
/// RST-only fixtures reuse abscissas and skip validation.
inline PointSet points(std::vector<Point> pts, double window_radius, bool validate = true) {
    PointSet ps;
    ps.points = std::move(pts);
    ps.window_radius = window_radius;
    if (validate) validate_point_set(ps);
    return ps;
}

inline Point polar(double rho, double theta) {
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

/// A straight chain of points along direction `theta` at the given radii,
/// appended to `pts`.
inline void add_chain(std::vector<Point>& pts, double theta, const std::vector<double>& radii) {
    for (const double rho : radii) pts.push_back(polar(rho, theta));
}

inline int index_of(const PointSet& ps, Point p) {
    for (std::int32_t i = 0; i < ps.size(); ++i)
        if (dist2(ps[i], p) < 1e-18) return i;
    return -1;
}

}  // namespace rst::test
