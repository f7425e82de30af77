#include "rst/ppp.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "rst/rng.hpp"

namespace rst {

namespace {

std::uint64_t key_of(double v) { return std::bit_cast<std::uint64_t>(v); }

// Tracks occupied squared norms and abscissas so sampled/generated sets stay
// strictly ordered in both keys.
class TieGuard {
  public:
    bool admit(Point p) {
        if (norms_.count(key_of(norm2(p))) || xs_.count(key_of(p.x))) return false;
        norms_.insert(key_of(norm2(p)));
        xs_.insert(key_of(p.x));
        return true;
    }

  private:
    std::unordered_set<std::uint64_t> norms_;
    std::unordered_set<std::uint64_t> xs_;
};

}  // namespace

void validate_point_set(const PointSet& ps) {
    if (ps.window_radius <= 0.0 || !std::isfinite(ps.window_radius))
        throw std::invalid_argument("point set: window_radius must be positive");
    if (ps.points.empty() || !(ps.points[0] == Point{0.0, 0.0}))
        throw std::invalid_argument("point set: origin must be present at index 0");
    std::unordered_set<std::uint64_t> norms, xs;
    const double w2 = ps.window_radius * ps.window_radius;
    for (const Point& p : ps.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("point set: non-finite coordinate");
        if (norm2(p) > w2 * (1.0 + 1e-12))
            throw std::invalid_argument("point set: point outside window");
        if (!norms.insert(key_of(norm2(p))).second)
            throw std::invalid_argument("point set: duplicate norm");
        if (!xs.insert(key_of(p.x)).second)
            throw std::invalid_argument("point set: duplicate abscissa");
    }
}

PointSet sample_palm_ppp(double intensity, double window_radius, std::uint64_t seed) {
    if (!(intensity > 0.0) || !std::isfinite(intensity))
        throw std::invalid_argument("sample_palm_ppp: intensity must be positive");
    if (!(window_radius > 0.0) || !std::isfinite(window_radius))
        throw std::invalid_argument("sample_palm_ppp: window_radius must be positive");

    Rng rng(mix_seed(seed, 0x70707ULL));
    const double mean = intensity * std::numbers::pi * window_radius * window_radius;
    const long count = poisson_count(mean, rng);

    PointSet ps;
    ps.window_radius = window_radius;
    ps.points.reserve(static_cast<std::size_t>(count) + 1);
    ps.points.push_back(Point{0.0, 0.0});

    TieGuard guard;
    guard.admit(ps.points[0]);
    for (long i = 0; i < count; ++i) {
        Point p;
        do {
            const double rho = window_radius * std::sqrt(rng.uniform01());
            const double theta = two_pi * rng.uniform01();
            p = Point{rho * std::cos(theta), rho * std::sin(theta)};
        } while (!guard.admit(p));
        ps.points.push_back(p);
    }
    return ps;
}

PointSet make_m1_config(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("make_m1_config: epsilon must be positive");

    // Moduli grow by the fixed ratio 1.9, which keeps each point closer to
    // its predecessor than to the origin for consecutive angles pi/3 apart.
    constexpr int k_points = 6;
    double moduli[k_points];
    moduli[0] = 1.0;
    for (int k = 1; k < k_points; ++k) moduli[k] = 1.9 * moduli[k - 1];

    // The epsilon-balls around consecutive centers must stay disjoint in
    // modulus, and the innermost ball must not reach the origin.
    double prev = 0.0;
    for (int k = 0; k < k_points; ++k) {
        if (!(moduli[k] - epsilon > prev + epsilon))
            throw std::invalid_argument("make_m1_config: epsilon too large for ball separation");
        prev = moduli[k];
    }

    PointSet ps;
    ps.points.push_back(Point{0.0, 0.0});
    for (int k = 1; k <= k_points; ++k) {
        const double ang = k * std::numbers::pi / 3.0;
        ps.points.push_back(Point{moduli[k - 1] * std::cos(ang), moduli[k - 1] * std::sin(ang)});
    }
    ps.window_radius = moduli[k_points - 1] + 1.0;
    validate_point_set(ps);
    return ps;
}

PointSet make_m2_config(double r1, double r2, double epsilon, double angle_step) {
    if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2))
        throw std::invalid_argument("make_m2_config: radii must be positive");
    if (!(angle_step > 0.0) || !(angle_step < std::numbers::pi / 8.0))
        throw std::invalid_argument("make_m2_config: angle_step out of range");
    const double c = std::min(r1, r2);
    if (!(epsilon > 0.0) || !(epsilon < c * angle_step / 2.0))
        throw std::invalid_argument("make_m2_config: epsilon too large for angle_step");

    PointSet ps;
    ps.points.push_back(Point{0.0, 0.0});
    TieGuard guard;
    guard.admit(ps.points[0]);

    // Two cardioid lobes rho = c(1+cos(theta)): one sampled at angles
    // theta_j, the other at theta_j + pi. The second lobe uses half-step
    // offset angles so no two points share a modulus.
    const auto cardioid = [c](double theta) { return c * (1.0 + std::cos(theta)); };
    for (double theta = 0.0; theta < std::numbers::pi; theta += angle_step) {
        const double rho = cardioid(theta);
        const Point p{rho * std::cos(theta), rho * std::sin(theta)};
        if (guard.admit(p)) ps.points.push_back(p);
    }
    for (double theta = angle_step / 2.0; theta < std::numbers::pi; theta += angle_step) {
        const double rho = cardioid(theta);
        const Point p{-rho * std::cos(theta), -rho * std::sin(theta)};
        if (guard.admit(p)) ps.points.push_back(p);
    }

    // Axis chains bridging radii min..max in steps of 2*epsilon. The chain on
    // the negative axis is offset by epsilon to keep norms distinct from the
    // positive one. A chain point whose norm collides with a lobe point is
    // dropped; the lobe point itself keeps the chain connected there.
    const double lo = std::min(r1, r2);
    const double hi = std::max(r1, r2);
    for (int n = 0; lo + 2.0 * n * epsilon <= hi; ++n) {
        const Point p{lo + 2.0 * n * epsilon, 0.0};
        if (guard.admit(p)) ps.points.push_back(p);
    }
    for (int n = 0; lo + (2.0 * n + 1.0) * epsilon <= hi; ++n) {
        const Point p{-(lo + (2.0 * n + 1.0) * epsilon), 0.0};
        if (guard.admit(p)) ps.points.push_back(p);
    }

    ps.window_radius = std::max(2.0 * c, hi) + 1.0;
    validate_point_set(ps);
    return ps;
}

}  // namespace rst
