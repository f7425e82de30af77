#include "rst/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rst/geometry.hpp"

namespace rst {

namespace {

void require_radius(double r, const SurvivorConfig& cfg, double lower = 0.0) {
    if (!(r > lower) || r > cfg.analysis_radius)
        throw std::invalid_argument("radius outside the trusted analysis range");
}

// Surviving leaves in norm order: surviving vertices with no surviving child.
std::vector<std::int32_t> surviving_leaves(const Tree& t, const std::vector<char>& mask) {
    std::vector<std::int32_t> leaves;
    for (const std::int32_t v : t.norm_order) {
        if (!mask[v]) continue;
        bool has_surviving_child = false;
        for (const std::int32_t c : t.children(v)) {
            if (mask[c]) {
                has_surviving_child = true;
                break;
            }
        }
        if (!has_surviving_child) leaves.push_back(v);
    }
    return leaves;
}

std::vector<std::int32_t> path_from_origin(const Tree& t, std::int32_t leaf) {
    std::vector<std::int32_t> rev;
    for (std::int32_t v = leaf; v != 0; v = t.ancestor[v]) rev.push_back(v);
    rev.push_back(0);
    std::reverse(rev.begin(), rev.end());
    return rev;
}

// Proxy spine: surviving leaf of terminal argument closest to 0, ties broken
// by larger norm. Empty when nothing survives.
std::vector<std::int32_t> spine_of(const Tree& t, const std::vector<char>& mask) {
    const PointSet& ps = *t.ps;
    std::int32_t best = -1;
    double best_gap = 0.0;
    for (const std::int32_t leaf : surviving_leaves(t, mask)) {
        if (leaf == 0) continue;
        const double gap = angle_distance(argument(ps[leaf]), 0.0);
        if (best < 0 || gap < best_gap ||
            (gap == best_gap && norm2(ps[leaf]) > norm2(ps[best]))) {
            best = leaf;
            best_gap = gap;
        }
    }
    if (best < 0) return {};
    return path_from_origin(t, best);
}

}  // namespace

SurvivorConfig default_survivor_config(const PointSet& ps) {
    return {0.8 * ps.window_radius, 0.5 * ps.window_radius};
}

void validate_survivor_config(const SurvivorConfig& cfg, const PointSet& ps) {
    if (!(cfg.analysis_radius > 0.0) || !(cfg.analysis_radius <= cfg.cut_radius) ||
        !(cfg.cut_radius <= ps.window_radius))
        throw std::invalid_argument(
            "survivor config: need 0 < analysis_radius <= cut_radius <= window_radius");
}

std::vector<double> subtree_reach(const Tree& t) {
    const PointSet& ps = *t.ps;
    std::vector<double> reach(t.size());
    for (std::int32_t i = 0; i < t.size(); ++i) reach[i] = norm(ps[i]);
    // Descending norm order visits every child before its ancestor.
    for (auto it = t.norm_order.rbegin(); it != t.norm_order.rend(); ++it) {
        const std::int32_t v = *it;
        if (v != 0) reach[t.ancestor[v]] = std::max(reach[t.ancestor[v]], reach[v]);
    }
    return reach;
}

std::vector<char> surviving_mask(const Tree& t, const SurvivorConfig& cfg) {
    validate_survivor_config(cfg, *t.ps);
    const std::vector<double> reach = subtree_reach(t);
    std::vector<char> mask(t.size(), 0);
    for (std::int32_t v = 0; v < t.size(); ++v) mask[v] = reach[v] > cfg.cut_radius ? 1 : 0;
    return mask;
}

std::vector<std::int32_t> surviving_set(const Tree& t, const SurvivorConfig& cfg) {
    const std::vector<char> mask = surviving_mask(t, cfg);
    std::vector<std::int32_t> out;
    for (std::int32_t v = 0; v < t.size(); ++v)
        if (mask[v]) out.push_back(v);
    return out;
}

long chi(const Tree& t, double r, const SurvivorConfig& cfg) {
    return chi(t, r, cfg, surviving_mask(t, cfg));
}

long chi(const Tree& t, double r, const SurvivorConfig& cfg, const std::vector<char>& mask) {
    require_radius(r, cfg);
    const PointSet& ps = *t.ps;
    long count = 0;
    for (std::int32_t v = 1; v < t.size(); ++v) {
        if (!mask[v]) continue;
        count += segment_circle_intersections(ps[v], ps[t.ancestor[v]], r).count;
    }
    return count;
}

long chi_tilde(const Tree& t, double r, const SurvivorConfig& cfg) {
    return chi_tilde(t, r, cfg, surviving_mask(t, cfg));
}

long chi_tilde(const Tree& t, double r, const SurvivorConfig& cfg,
               const std::vector<char>& mask) {
    require_radius(r, cfg, 2.0 / std::numbers::pi);
    const PointSet& ps = *t.ps;
    const double half_arc = 1.0 / r;
    long count = 0;
    for (std::int32_t v = 1; v < t.size(); ++v) {
        if (!mask[v]) continue;
        const CircleHits hits = segment_circle_intersections(ps[v], ps[t.ancestor[v]], r);
        for (int k = 0; k < hits.count; ++k)
            if (angle_distance(argument(hits.point[k]), 0.0) <= half_arc) ++count;
    }
    return count;
}

PathProxy extreme_path(const Tree& t, std::int32_t x, Side side, const SurvivorConfig& cfg) {
    const std::vector<char> mask = surviving_mask(t, cfg);
    if (x < 0 || x >= t.size() || !mask[x])
        throw std::invalid_argument("extreme_path: vertex is not in the surviving set");

    PathProxy path;
    std::int32_t v = x;
    path.vertices.push_back(v);
    for (;;) {
        // children are stored sorted by oriented angle, so the extreme
        // surviving child is the first/last surviving entry
        std::int32_t next = -1;
        const auto kids = t.children(v);
        if (side == Side::leftmost) {
            for (const std::int32_t c : kids)
                if (mask[c]) {
                    next = c;
                    break;
                }
        } else {
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                if (mask[*it]) {
                    next = *it;
                    break;
                }
        }
        if (next < 0) break;
        path.vertices.push_back(next);
        v = next;
    }
    return path;
}

std::vector<PathProxy> directional_paths(const Tree& t, double theta, double half_width,
                                         const SurvivorConfig& cfg) {
    if (!(half_width > 0.0) || !(half_width < std::numbers::pi))
        throw std::invalid_argument("directional_paths: half_width out of (0, pi)");
    const PointSet& ps = *t.ps;
    const std::vector<char> mask = surviving_mask(t, cfg);
    const double a2 = cfg.analysis_radius * cfg.analysis_radius;

    // One candidate per surviving leaf. Geometry is only trusted up to
    // analysis_radius, so the direction is read at the last vertex inside it
    // and the returned path stops there. Two branches that agree inside the
    // analysis disk yield two entries: they are distinct surviving paths
    // whose multiplicity in this direction is exactly what is being counted.
    std::vector<PathProxy> out;
    for (const std::int32_t leaf : surviving_leaves(t, mask)) {
        std::int32_t v = leaf;
        while (v != 0 && norm2(ps[v]) > a2) v = t.ancestor[v];
        if (v == 0) continue;
        if (angle_distance(argument(ps[v]), theta) > half_width) continue;
        PathProxy p;
        p.vertices = path_from_origin(t, v);
        out.push_back(std::move(p));
    }
    return out;
}

long spine_bifurcations(const Tree& t, const SurvivorConfig& cfg, double r) {
    require_radius(r, cfg);
    const PointSet& ps = *t.ps;
    const std::vector<char> mask = surviving_mask(t, cfg);
    const std::vector<std::int32_t> spine = spine_of(t, mask);
    if (spine.empty()) return 0;

    std::vector<char> on_spine(t.size(), 0);
    for (const std::int32_t v : spine) on_spine[v] = 1;

    long count = 0;
    const double r2 = r * r;
    for (const std::int32_t v : spine) {
        if (v == 0 || norm2(ps[v]) >= r2) continue;
        for (const std::int32_t c : t.children(v)) {
            if (mask[c] && !on_spine[c]) {
                ++count;
                break;
            }
        }
    }
    return count;
}

bool dsf_rst_agreement(const PointSet& ps, double center_abscissa, double ball_radius) {
    const Tree t = build_rst_indexed(ps);
    const Forest f = build_dsf(ps);
    return dsf_rst_agreement(t, f, center_abscissa, ball_radius);
}

bool dsf_rst_agreement(const Tree& t, const Forest& f, double center_abscissa,
                       double ball_radius) {
    const PointSet& ps = *t.ps;
    if (!(ball_radius > 0.0))
        throw std::invalid_argument("dsf_rst_agreement: ball_radius must be positive");
    const Point center{center_abscissa, 0.0};
    if (norm(center) + 2.0 * ball_radius > ps.window_radius)
        throw std::invalid_argument("dsf_rst_agreement: ball too close to the window edge");

    // The origin needs no special case: its tree ancestor is itself, which a
    // forest ancestor (strictly smaller abscissa, or -1) can never be.
    const double b2 = ball_radius * ball_radius;
    for (std::int32_t v = 0; v < ps.size(); ++v) {
        if (dist2(ps[v], center) >= b2) continue;
        if (t.ancestor[v] != f.ancestor[v]) return false;
    }
    return true;
}

}  // namespace rst
