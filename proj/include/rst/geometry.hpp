#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace rst {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

inline double norm2(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::sqrt(norm2(p)); }
inline double dist2(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    return a;
}

/// Argument of p in [0, 2pi); 0 for the origin.
inline double argument(Point p) {
    if (p.x == 0.0 && p.y == 0.0) return 0.0;
    return wrap_angle(std::atan2(p.y, p.x));
}

/// Counterclockwise gap from angle `from` to angle `to`, in [0, 2pi).
inline double ccw_gap(double from, double to) { return wrap_angle(to - from); }

/// Shortest circular distance between two angles, in [0, pi].
inline double angle_distance(double a, double b) {
    const double g = wrap_angle(a - b);
    return std::min(g, two_pi - g);
}

/// Signed angle from vector `ref` to vector `v`, in (-pi, pi].
inline double signed_angle(Point ref, Point v) {
    const double cross = ref.x * v.y - ref.y * v.x;
    const double dot = ref.x * v.x + ref.y * v.y;
    return std::atan2(cross, dot);
}

/// Sign of the cross product (b - a) x (c - a), computed exactly.
/// +1 if c lies left of the directed line a->b, -1 if right, 0 if collinear.
int orient(Point a, Point b, Point c);

/// True iff the open interiors of segments (a1,a2) and (b1,b2) intersect.
/// Touching at endpoints does not count; collinear overlap does.
bool open_segments_intersect(Point a1, Point a2, Point b1, Point b2);

/// Intersections of the open segment (p,q) with the circle of radius r
/// centered at the origin. Tangencies count as zero hits.
struct CircleHits {
    int count = 0;
    std::array<Point, 2> point{};
    std::array<double, 2> t{};  // segment parameters, ascending
};

CircleHits segment_circle_intersections(Point p, Point q, double r);

}  // namespace rst
